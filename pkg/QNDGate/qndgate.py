import importlib.util
import logging
import os
from pathlib import Path
from typing import Dict, Iterable, Optional

import pandas as pd

from protocol.params import ORDERINGS
from QNDGate.tools.utilities import load_defaults, read_yaml

logger = logging.getLogger(__name__)

FIGURES = ("fig2", "fig3a", "fig3b")


class QNDGate:
    """Reproduces the fidelity figures of the atomic-ensemble controlled-Z gate.

    Methods
    -------
    configure(...)
        Configures run settings for QNDGate.

    set_figure(...)
        Loads a figure recipe from figures_config/ and figures/.

    run()
        Computes the tables of the loaded figure.
    """

    def __init__(self) -> None:
        """QNDGate initialisation. Called when creating a new QNDGate
        instance.
        """
        self.defaults = load_defaults()
        self.slices = None
        self.ordering = self.defaults["ORDERING"]
        self.workers = 1
        self.figure_name = None
        self.figure_config = {}
        self.figure_class = None

        self.root_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

    def __repr__(self):
        return f"QNDGate instance ({self.figure_name})"

    def __str__(self):
        return "QNDGate instance"

    def configure(
        self,
        slices: Optional[int] = None,
        ordering: str = 'preserved',
        workers: int = 1
    ) -> None:
        """Configures run settings for QNDGate.

        Parameters
        ----------
        slices : int, optional
            Slice count of the simulation. The default is None, which takes
            the figure's SLICES entry, then the package default.

        ordering : str, optional
            Pass-two slice order, 'preserved' or 'reversed'. The default is
            'preserved'.

        workers : int, optional
            Threads used by sweeps. The default is 1.

        Returns
        -------
        None
        """
        if slices is not None and slices < 1:
            raise ValueError("Invalid slice count")
        if ordering not in ORDERINGS:
            raise ValueError("Invalid ordering")
        if workers < 1:
            raise ValueError("Invalid worker count")
        self.slices = slices
        self.ordering = ordering
        self.workers = workers

    def set_figure(
        self,
        figure_config_filename: str
    ) -> None:
        """Adds a figure recipe to QNDGate.

        Parameters
        ----------
        figure_config_filename : str
            The prefix of the yaml figure configuration file, located in
            home_dir/figures_config. The recipe class lives in
            home_dir/figures/<prefix>.py.

        Raises
        ------
        ValueError
            When the configuration misses a required key or the class is
            not found.
        """
        config_file_path = os.path.join(self.root_dir, "figures_config", figure_config_filename)
        figure_config = read_yaml(config_file_path + ".yaml")

        required_keys = ["CLASS", "PARAMETERS"]
        for key in required_keys:
            if key not in figure_config:
                raise ValueError(f"Please include the '{key}' key in your figure configuration.")

        figure_module_name = Path(figure_config_filename).stem
        class_name = figure_config["CLASS"]
        figure_file_path_py = os.path.join(self.root_dir, "figures", f"{figure_config_filename}.py")
        spec = importlib.util.spec_from_file_location(figure_module_name, figure_file_path_py)
        figure_module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(figure_module)

        if not hasattr(figure_module, class_name):
            raise ValueError(f"Class '{class_name}' not found in module '{figure_module_name}'")

        self.figure_name = figure_config_filename
        self.figure_config = figure_config
        self.figure_class = getattr(figure_module, class_name)

    def run(self) -> Dict[str, pd.DataFrame]:
        """Run QNDGate on the loaded figure."""
        if self.figure_class is None:
            raise ValueError("No figure set")
        slices = self.slices or self.figure_config.get("SLICES") or self.defaults["SLICES"]["optimize"]
        figure = self.figure_class(
            parameters=self.figure_config["PARAMETERS"],
            slices=slices,
            workers=self.workers,
            ordering=self.ordering
        )
        logger.info("running %s with %d slices", self.figure_name, slices)
        return figure.generate_tables()


def figure_tables(
    names: Iterable[str] = FIGURES,
    slices: Optional[int] = None,
    workers: int = 1,
    ordering: Optional[str] = None
) -> Dict[str, pd.DataFrame]:
    """Named tables for the requested figures, keyed by table name."""
    tables = {}
    for name in names:
        if name not in FIGURES:
            raise ValueError(f"Unknown figure {name!r}")
        qg = QNDGate()
        qg.configure(slices=slices, ordering=ordering or qg.ordering, workers=workers)
        qg.set_figure(name)
        tables.update(qg.run())
    return tables
