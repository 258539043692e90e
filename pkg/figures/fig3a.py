import logging

from QNDGate.figure import Figure
from QNDGate.sweep import SweepSpec, sweep
from QNDGate.tools.utilities import db_to_s

logger = logging.getLogger(__name__)


class Fig3a(Figure):
    """Fidelity vs kappa0 with wall reflection and atomic decay."""

    def __init__(self, parameters: dict, slices: int, workers: int = 1, ordering: str = "preserved") -> None:
        super().__init__(parameters, slices, workers, ordering)
        self.kappa0_range = parameters["kappa0_range"]
        self.count = parameters["count"]
        self.s = db_to_s(parameters["squeezing_db"])
        self.losses = parameters["losses"]  # [r, eta] pairs

    def generate_tables(self):
        logger.info("building fig3a with %d slices", self.slices)
        table = None
        for r, eta in self.losses:
            spec = SweepSpec(
                kappa0_min=self.kappa0_range[0],
                kappa0_max=self.kappa0_range[1],
                count=self.count,
                r=r,
                eta=eta,
                s=self.s,
                slices=self.slices,
                branch="noisy-simulated",
                ordering=self.ordering,
            )
            rows = sweep(spec, self.workers).rename(columns={"fidelity": f"F_r{r:g}_eta{eta:g}"})
            table = rows if table is None else table.merge(rows, on="kappa0")
        return {"fig3a": table}
