import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import pandas as pd

from engines import BRANCHES, get_engine
from protocol import GateParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepSpec:
    """A kappa0 grid with every other gate parameter held fixed.

    ``spacing`` is 'linear' or 'log'; ``branch`` selects the fidelity
    engine ('ideal-closed-form', 'ideal-simulated', 'noisy-simulated').
    """

    kappa0_min: float
    kappa0_max: float
    count: int
    spacing: str = "linear"
    r: float = 0.0
    eta: float = 0.0
    s: float = 0.0
    kappa: float = 1.0
    slices: int = 512
    branch: str = "ideal-closed-form"
    s_probe: float = 0.0
    ordering: str = "preserved"

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"Invalid grid count {self.count}: need at least 2 points")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"Invalid spacing {self.spacing!r}")
        if self.spacing == "log" and self.kappa0_min <= 0:
            raise ValueError("Log spacing needs kappa0_min > 0")
        if self.kappa0_min < 0 or self.kappa0_max <= self.kappa0_min:
            raise ValueError(f"Invalid kappa0 range [{self.kappa0_min}, {self.kappa0_max}]")
        if self.branch not in BRANCHES:
            raise ValueError(f"Invalid branch {self.branch!r}")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.kappa0_min, self.kappa0_max, self.count)
        return np.linspace(self.kappa0_min, self.kappa0_max, self.count)

    def params(self, kappa0: float) -> GateParams:
        return GateParams(
            kappa=self.kappa,
            kappa0=float(kappa0),
            s_light=self.s,
            r=self.r,
            eta=self.eta,
            s_probe=self.s_probe,
        )


def sweep(spec: SweepSpec, workers: int = 1) -> pd.DataFrame:
    """Fidelity at every grid point, one row per kappa0 in ascending order.

    Each evaluation is an independent pure call, so ``workers > 1`` spreads
    them over a thread pool; ``map`` keeps the row order.
    """
    engine = get_engine(spec.branch, spec.slices, spec.ordering)
    grid = spec.grid()
    logger.info("sweep %s over %d points of kappa0 in [%g, %g]", engine.name, grid.size, grid[0], grid[-1])

    def evaluate(kappa0):
        return engine.fidelity(spec.params(kappa0))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(evaluate, grid))
    else:
        values = [evaluate(k) for k in grid]
    return pd.DataFrame({"kappa0": grid, "fidelity": values})
