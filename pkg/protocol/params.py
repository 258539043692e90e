import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from gaussian import GaussianState

ORDERINGS = ("preserved", "reversed")


@dataclass(frozen=True)
class GateParams:
    """Protocol parameters of the double-pass controlled-Z gate.

    Attributes
    ----------
    kappa : float
        Dimensionless gate coupling; 1 realizes the controlled-Z gate.
    kappa0 : float
        Dimensionless spin-squeezing coupling, >= 0.
    s_light : float
        Squeezing parameter of each input beam.
    r : float
        Wall reflection coefficient in [0, 1).
    eta : float
        Integrated atomic decay parameter (rate eta / T), >= 0.
    s_probe : float
        Squeezing of the probe light used to prepare the spin-squeezed state.
    """

    kappa: float = 1.0
    kappa0: float = 0.0
    s_light: float = 0.0
    r: float = 0.0
    eta: float = 0.0
    s_probe: float = 0.0

    def __post_init__(self):
        for name in ("kappa", "kappa0", "s_light", "r", "eta", "s_probe"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"Invalid {name}: must be finite")
        if self.kappa0 < 0:
            raise ValueError(f"Invalid kappa0 {self.kappa0}: must be >= 0")
        if not 0.0 <= self.r < 1.0:
            raise ValueError(f"Invalid r {self.r}: must lie in [0, 1)")
        if self.eta < 0:
            raise ValueError(f"Invalid eta {self.eta}: must be >= 0")

    @property
    def is_ideal(self) -> bool:
        return self.r == 0.0 and self.eta == 0.0


@dataclass(frozen=True)
class PhysicalCoupling:
    """Microscopic parameters behind the dimensionless coupling kappa0.

    ``a`` is the effective atom-photon coupling, ``Jx`` and ``Sx`` the
    macroscopic spin and Stokes components, ``T`` the pulse duration in
    seconds.
    """

    a: float
    Jx: float
    Sx: float
    T: float

    def __post_init__(self):
        for name in ("a", "Jx", "Sx", "T"):
            if not getattr(self, name) > 0:
                raise ValueError(f"Invalid {name}: must be positive")

    @property
    def kappa_tilde0(self) -> float:
        return self.a * math.sqrt(self.Jx * self.Sx)

    @property
    def kappa0(self) -> float:
        return self.kappa_tilde0 * math.sqrt(self.T)


@dataclass(frozen=True)
class AtomicState:
    """Transverse spin quadratures of the ensemble (variances in vacuum units)."""

    var_x: float
    var_p: float
    mean: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.var_x <= 0 or self.var_p <= 0:
            raise ValueError("Variances must be positive")
        if self.var_x * self.var_p < 1.0 - 1e-12:
            raise ValueError(f"Uncertainty product {self.var_x * self.var_p:.6g} below 1")

    def rotated(self) -> "AtomicState":
        """Quarter-turn phase rotation x -> p, p -> -x (swaps the variances)."""
        return AtomicState(self.var_p, self.var_x, (self.mean[1], -self.mean[0]))

    def to_gaussian_state(self) -> GaussianState:
        return GaussianState(self.mean, np.diag([self.var_x, self.var_p]))


@dataclass(frozen=True)
class SimConfig:
    """Slice count and pulse layout of the time-sliced simulation.

    ``ordering`` is the temporal slice order on the second pass:
    'preserved' (leading edge re-enters first) or 'reversed'.
    ``record_states`` also propagates the full (1 + 2K)-mode state event by
    event and tests every intermediate state for physicality; the minimum
    eigenvalue and determinant are recorded every ``check_stride`` slice
    events and after each wall crossing.
    """

    K: int
    gate: GateParams
    ordering: str = "preserved"
    record_states: bool = False
    check_stride: int = 1

    def __post_init__(self):
        if self.check_stride < 1:
            raise ValueError(f"Invalid check stride {self.check_stride}")
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"Invalid slice count {self.K}")
        if self.ordering not in ORDERINGS:
            raise ValueError(f"Invalid ordering {self.ordering!r}")


class ModeFunction:
    """Discretized temporal mode function over K slices.

    Parameters
    ----------
    kind : str
        'symmetric' (flat) or 'antisymmetric' (ramp 1 - 2t/T sampled at
        slice centres).
    K : int
        Number of slices.
    """

    KINDS = ("symmetric", "antisymmetric")

    def __init__(self, kind: str, K: int) -> None:
        if kind not in self.KINDS:
            raise ValueError(f"Invalid mode kind {kind!r}")
        if K < 1:
            raise ValueError(f"Invalid slice count {K}")
        if kind == "symmetric":
            weights = np.full(K, 1.0 / np.sqrt(K))
        else:
            centres = (np.arange(1, K + 1) - 0.5) / K
            weights = 1.0 - 2.0 * centres
            norm = np.linalg.norm(weights)
            if norm == 0.0:
                raise ValueError("Antisymmetric mode needs at least two slices")
            weights = weights / norm
        weights.flags.writeable = False
        self.kind = kind
        self.K = K
        self.weights = weights

    def __repr__(self):
        return f"ModeFunction({self.kind!r}, K={self.K})"

    def basis_change(self) -> np.ndarray:
        """Orthogonal K x K matrix whose first row is the mode function.

        Built as the Householder reflection sending e_1 to the weights.
        """
        e1 = np.zeros(self.K)
        e1[0] = 1.0
        v = self.weights - e1
        vv = float(v @ v)
        if vv < 1e-30:
            return np.eye(self.K)
        return np.eye(self.K) - 2.0 * np.outer(v, v) / vv


@dataclass(frozen=True)
class NoiseCoefficients:
    eps1_minus: float
    eps1_plus: float
    eps2_minus: float
    eps2_plus: float

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.eps1_minus, self.eps1_plus, self.eps2_minus, self.eps2_plus)


@dataclass
class SimOutput:
    """Result of one time-sliced run.

    ``full_state`` is only populated when the run recorded states.
    """

    collective_state: GaussianState
    fidelity: float
    response: Any
    full_state: Optional[GaussianState] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)
