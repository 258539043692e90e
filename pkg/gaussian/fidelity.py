import numpy as np
from scipy.linalg import cho_factor, cho_solve

from gaussian.state import GaussianState

PURITY_TOL = 1e-6


def fidelity(a: GaussianState, b: GaussianState, purity_tol: float = PURITY_TOL) -> float:
    """Overlap of a pure Gaussian state ``a`` with an arbitrary Gaussian state ``b``.

    F = 2^N / sqrt(det(γ + γ')) * exp(-(m - m')(γ + γ')^{-1}(m - m')^T),
    evaluated through a Cholesky factorization of γ + γ'.

    Parameters
    ----------
    a : GaussianState
        The pure reference state (det(cov) = 1 within ``purity_tol``).
    b : GaussianState
        The state compared against it.

    Returns
    -------
    float
        Fidelity in [0, 1].

    Raises
    ------
    ValueError
        When ``a`` is not pure or the mode counts differ.
    """
    if a.n_modes != b.n_modes:
        raise ValueError(f"Mode counts differ ({a.n_modes} vs {b.n_modes})")
    if not a.is_pure(purity_tol):
        raise ValueError(f"Reference state is not pure (det = {a.det:.8g})")
    n = a.n_modes
    factor = cho_factor(a.cov + b.cov, lower=True)
    log_det = 2.0 * np.sum(np.log(np.diag(factor[0])))
    delta = a.mean - b.mean
    exponent = float(delta @ cho_solve(factor, delta))
    value = np.exp(n * np.log(2.0) - 0.5 * log_det - exponent)
    return float(min(value, 1.0))
