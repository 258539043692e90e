import logging

from QNDGate.figure import Figure
from QNDGate.sweep import SweepSpec, sweep
from QNDGate.tools.utilities import db_to_s

logger = logging.getLogger(__name__)


class Fig2(Figure):
    """Loss-free fidelity vs kappa0 for several input squeezings (closed form)."""

    def __init__(self, parameters: dict, slices: int, workers: int = 1, ordering: str = "preserved") -> None:
        super().__init__(parameters, slices, workers, ordering)
        self.kappa0_range = parameters["kappa0_range"]
        self.count = parameters["count"]
        self.squeezing_db = parameters["squeezing_db"]

    def generate_tables(self):
        logger.info("building fig2")
        table = None
        for db in self.squeezing_db:
            spec = SweepSpec(
                kappa0_min=self.kappa0_range[0],
                kappa0_max=self.kappa0_range[1],
                count=self.count,
                s=db_to_s(db),
                branch="ideal-closed-form",
            )
            rows = sweep(spec, self.workers).rename(columns={"fidelity": f"F_{db:g}dB"})
            table = rows if table is None else table.merge(rows, on="kappa0")
        return {"fig2": table}
