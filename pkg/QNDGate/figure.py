from abc import ABC, abstractmethod
from typing import Dict

import pandas as pd


class Figure(ABC):
    @abstractmethod
    def __init__(
        self,
        parameters: dict,
        slices: int,
        workers: int = 1,
        ordering: str = "preserved"
    ) -> None:
        """Instantiate the figure recipe. This gets called from QNDGate with
        the PARAMETERS block of the figure's yaml configuration.
        """
        super().__init__()
        self.parameters = parameters
        self.slices = slices
        self.workers = workers
        self.ordering = ordering

    @abstractmethod
    def generate_tables(self) -> Dict[str, pd.DataFrame]:
        """Compute the figure's data, one table per output file."""
