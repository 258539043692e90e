import logging

import numpy as np
import pandas as pd

from QNDGate.figure import Figure
from QNDGate.optimizer import optimize_kappa0
from QNDGate.tools.utilities import db_to_s

logger = logging.getLogger(__name__)


class Fig3b(Figure):
    """kappa0-optimized fidelity vs decay for several reflection coefficients.

    The inset table holds the optimal kappa0 of every point.
    """

    def __init__(self, parameters: dict, slices: int, workers: int = 1, ordering: str = "preserved") -> None:
        super().__init__(parameters, slices, workers, ordering)
        lo, hi = parameters["eta_range"]
        self.etas = np.round(np.linspace(lo, hi, parameters["count"]), 10)
        self.r_values = parameters["r_values"]
        self.s = db_to_s(parameters["squeezing_db"])
        self.bounds = tuple(parameters["bounds"])
        self.scan_points = parameters["scan_points"]

    def generate_tables(self):
        logger.info("building fig3b with %d slices", self.slices)
        fidelities = {"eta": self.etas}
        optima = {"eta": self.etas}
        for r in self.r_values:
            results = [
                optimize_kappa0(r, float(eta), self.s, self.slices, self.bounds, self.scan_points, ordering=self.ordering)
                for eta in self.etas
            ]
            fidelities[f"F_opt_r{r:g}"] = [res.fidelity_opt for res in results]
            optima[f"kappa0_opt_r{r:g}"] = [res.kappa0_opt for res in results]
        return {"fig3b": pd.DataFrame(fidelities), "fig3b_inset": pd.DataFrame(optima)}
