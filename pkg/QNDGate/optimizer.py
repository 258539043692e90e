import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from protocol import GateParams, noisy_gate_fidelity

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi


@dataclass
class OptimizationResult:
    """Best kappa0 for one (r, eta, s) and how it was found.

    ``monotone_flag`` is set when the scan maximum sits on a bound; the
    result is then that bound and ``bracket`` is the full search interval.
    ``trace`` lists every (kappa0, fidelity) evaluated, in order.
    """

    kappa0_opt: float
    fidelity_opt: float
    evaluations: int
    bracket: Tuple[float, float]
    monotone_flag: bool
    trace: List[Tuple[float, float]] = field(default_factory=list)

    def as_record(self) -> dict:
        return {
            "kappa0_opt": self.kappa0_opt,
            "fidelity_opt": self.fidelity_opt,
            "evaluations": self.evaluations,
            "bracket_lo": self.bracket[0],
            "bracket_hi": self.bracket[1],
            "monotone": self.monotone_flag,
        }


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-3):
    """Golden-section search for the maximum of a unimodal f on [a, b].

    Returns
    -------
    tuple
        (x, f(x), evaluations) with the final bracket no wider than ``tol``.
    """
    a, b = min(a, b), max(a, b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    evaluations = 2
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        evaluations += 1
    if fc >= fd:
        return c, fc, evaluations
    return d, fd, evaluations


def optimize_kappa0(
    r: float,
    eta: float,
    s: float,
    K: int = 512,
    bounds: Tuple[float, float] = (0.1, 100.0),
    scan_points: int = 200,
    tol: float = 1e-3,
    kappa: float = 1.0,
    s_probe: float = 0.0,
    ordering: str = "preserved",
    objective: Optional[Callable[[float], float]] = None,
) -> OptimizationResult:
    """Maximize the gate fidelity over kappa0.

    A log-spaced scan over ``bounds`` locates the best grid point (ties go
    to the smaller kappa0); golden-section search then refines inside the
    neighbouring grid points. A maximum on either bound sets the monotone
    flag and skips the refinement.

    Parameters
    ----------
    r, eta, s : float
        Reflection coefficient, decay parameter and input squeezing.
    K : int, optional
        Slice count of the simulation. The default is 512.
    bounds : tuple, optional
        Search interval, 0 < lo < hi. The default is (0.1, 100).
    scan_points : int, optional
        Coarse grid size. The default is 200.
    tol : float, optional
        Final bracket width in kappa0. The default is 1e-3.
    objective : callable, optional
        Replaces the sliced simulation as the function of kappa0 to maximize.

    Returns
    -------
    OptimizationResult
    """
    lo, hi = bounds
    if not 0 < lo < hi:
        raise ValueError(f"Invalid bounds {bounds}: need 0 < lo < hi")
    if scan_points < 3:
        raise ValueError(f"Invalid scan size {scan_points}")

    if objective is None:
        def objective(kappa0):
            params = GateParams(kappa=kappa, kappa0=kappa0, s_light=s, r=r, eta=eta, s_probe=s_probe)
            return noisy_gate_fidelity(params, K, ordering)

    trace = []

    def f(kappa0):
        value = objective(float(kappa0))
        trace.append((float(kappa0), value))
        return value

    grid = np.geomspace(lo, hi, scan_points)
    values = np.array([f(k) for k in grid])
    best = int(np.argmax(values))
    if best in (0, scan_points - 1):
        logger.info("fidelity is monotone on [%g, %g] (r=%g, eta=%g)", lo, hi, r, eta)
        return OptimizationResult(float(grid[best]), float(values[best]), len(trace), (lo, hi), True, trace)

    bracket = (float(grid[best - 1]), float(grid[best + 1]))
    logger.info("refining kappa0 in [%.4f, %.4f] (r=%g, eta=%g)", bracket[0], bracket[1], r, eta)
    x, fx, _ = golden_section_max(f, bracket[0], bracket[1], tol)
    if fx < values[best]:
        x, fx = float(grid[best]), float(values[best])
    return OptimizationResult(float(x), float(fx), len(trace), bracket, False, trace)
