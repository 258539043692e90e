from typing import Iterable, Sequence, Union

import numpy as np
from scipy.linalg import LinAlgError, block_diag, cholesky

SYMMETRY_TOL = 1e-10
PHYSICALITY_TOL = 1e-9


class NonPhysicalStateError(ValueError):
    """A covariance matrix violates cov + iΩ ⪰ 0."""


class SymplecticForm:
    """The symplectic form Ω for N modes in (x1, p1, x2, p2, ...) ordering.

    Parameters
    ----------
    n_modes : int
        Number of bosonic modes, at least one.
    """

    def __init__(self, n_modes: int) -> None:
        if n_modes < 1:
            raise ValueError(f"Invalid mode count {n_modes}")
        self.n_modes = n_modes
        self.matrix = block_diag(*[np.array([[0.0, 1.0], [-1.0, 0.0]])] * n_modes)
        self.matrix.flags.writeable = False

    def __repr__(self):
        return f"SymplecticForm(n_modes={self.n_modes})"


def symplectic_form(n_modes: int) -> np.ndarray:
    return SymplecticForm(n_modes).matrix


def quadrature_indices(modes: Iterable[int]) -> np.ndarray:
    """Row/column indices of the (x, p) pairs of the given modes, in order."""
    modes = np.asarray(list(modes), dtype=int)
    return np.stack([2 * modes, 2 * modes + 1], axis=1).ravel()


class GaussianState:
    """Mean vector and covariance matrix of an N-mode Gaussian state.

    The covariance convention is γ_ij = 2⟨Δξ_i Δξ_j⟩_sym, so the vacuum
    covariance is the identity. Both arrays are stored read-only; every
    operation on a state returns a new state.

    Parameters
    ----------
    mean : array_like
        Length-2N vector of first moments (x1, p1, x2, p2, ...).
    cov : array_like
        Symmetric 2N x 2N covariance matrix.

    Raises
    ------
    ValueError
        When the shapes disagree or the covariance is not symmetric.
    """

    def __init__(self, mean: Sequence[float], cov: np.ndarray) -> None:
        mean = np.array(mean, dtype=float).ravel()
        cov = np.array(cov, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2 or cov.shape[0] == 0:
            raise ValueError(f"Invalid covariance shape {cov.shape}")
        if mean.shape[0] != cov.shape[0]:
            raise ValueError(f"Mean length {mean.shape[0]} does not match covariance size {cov.shape[0]}")
        if not np.allclose(cov, cov.T, rtol=0.0, atol=SYMMETRY_TOL * max(1.0, np.abs(cov).max())):
            raise ValueError("Covariance matrix is not symmetric")
        cov = 0.5 * (cov + cov.T)
        mean.flags.writeable = False
        cov.flags.writeable = False
        self.mean = mean
        self.cov = cov

    @property
    def n_modes(self) -> int:
        return self.cov.shape[0] // 2

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.cov))

    def is_pure(self, tol: float = 1e-6) -> bool:
        return abs(self.det - 1.0) <= tol

    def __repr__(self):
        return f"GaussianState(n_modes={self.n_modes}, det={self.det:.6g})"

    def __str__(self):
        return f"{self.n_modes}-mode Gaussian state"


def vacuum_state(n: int) -> GaussianState:
    if n < 1:
        raise ValueError(f"Invalid mode count {n}")
    return GaussianState(np.zeros(2 * n), np.eye(2 * n))


def squeezed_vacuum(s: Union[float, Sequence[float]], n: int = 1) -> GaussianState:
    """Squeezed vacuum with x-variance e^{-2s} and p-variance e^{+2s} per mode.

    ``s`` may be a scalar applied to every mode or one value per mode.
    Negative ``s`` squeezes p instead of x.
    """
    s = np.broadcast_to(np.asarray(s, dtype=float), (n,))
    if not np.all(np.isfinite(s)):
        raise ValueError("Squeezing parameter must be finite")
    if n < 1:
        raise ValueError(f"Invalid mode count {n}")
    diag = np.stack([np.exp(-2.0 * s), np.exp(2.0 * s)], axis=1).ravel()
    return GaussianState(np.zeros(2 * n), np.diag(diag))


def tensor(a: GaussianState, b: GaussianState) -> GaussianState:
    """Product state with the modes of ``a`` first, then those of ``b``."""
    return GaussianState(np.concatenate([a.mean, b.mean]), block_diag(a.cov, b.cov))


def reduce(state: GaussianState, modes: Sequence[int]) -> GaussianState:
    """Marginal of ``state`` on ``modes`` (0-based, kept in the given order)."""
    modes = list(modes)
    if not modes:
        raise ValueError("Empty mode subset")
    if len(set(modes)) != len(modes) or min(modes) < 0 or max(modes) >= state.n_modes:
        raise ValueError(f"Invalid mode subset {modes} for {state.n_modes} modes")
    idx = quadrature_indices(modes)
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def physicality_margin(cov: np.ndarray) -> float:
    """Smallest eigenvalue of cov + iΩ; negative values mean an unphysical state."""
    omega = symplectic_form(cov.shape[0] // 2)
    return float(np.linalg.eigvalsh(cov + 1j * omega)[0])


def is_physical(state: GaussianState, tol: float = PHYSICALITY_TOL) -> bool:
    """Whether cov + iΩ + tol·I admits a Cholesky factor."""
    shifted = state.cov + 1j * symplectic_form(state.n_modes) + tol * np.eye(state.cov.shape[0])
    try:
        cholesky(shifted, lower=True, check_finite=False)
    except LinAlgError:
        return False
    return True
