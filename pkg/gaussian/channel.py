from typing import Optional, Sequence

import numpy as np

from gaussian.state import (
    PHYSICALITY_TOL,
    GaussianState,
    NonPhysicalStateError,
    physicality_margin,
    quadrature_indices,
    symplectic_form,
)


class GaussianChannel:
    """Gaussian channel cov -> X cov X^T + Y, mean -> X mean.

    Parameters
    ----------
    X : array_like
        2N' x 2N linear part.
    Y : array_like, optional
        Symmetric 2N' x 2N' added noise in the vacuum-is-identity
        convention. The default is zero, i.e. a linear (symplectic) map.
    """

    def __init__(self, X: np.ndarray, Y: Optional[np.ndarray] = None) -> None:
        X = np.array(X, dtype=float)
        if X.ndim != 2 or X.shape[0] % 2 or X.shape[1] % 2:
            raise ValueError(f"Invalid linear part shape {X.shape}")
        Y = np.zeros((X.shape[0], X.shape[0])) if Y is None else np.array(Y, dtype=float)
        if Y.shape != (X.shape[0], X.shape[0]):
            raise ValueError(f"Noise shape {Y.shape} does not match output size {X.shape[0]}")
        if not np.allclose(Y, Y.T, rtol=0.0, atol=1e-10):
            raise ValueError("Noise matrix is not symmetric")
        X.flags.writeable = False
        Y.flags.writeable = False
        self.X = X
        self.Y = Y

    @property
    def n_in(self) -> int:
        return self.X.shape[1] // 2

    @property
    def n_out(self) -> int:
        return self.X.shape[0] // 2

    def __repr__(self):
        return f"GaussianChannel({self.n_in} -> {self.n_out} modes)"


def identity_channel(n: int) -> GaussianChannel:
    return GaussianChannel(np.eye(2 * n))


def compose(first: GaussianChannel, second: GaussianChannel) -> GaussianChannel:
    """Channel applying ``first`` and then ``second``."""
    if second.n_in != first.n_out:
        raise ValueError("Channel dimensions do not chain")
    return GaussianChannel(second.X @ first.X, second.X @ first.Y @ second.X.T + second.Y)


def loss_channel(modes: Sequence[int], r: float, n: int) -> GaussianChannel:
    """Beam-splitter admixture of vacuum with reflection ``r`` on ``modes``.

    Each selected quadrature maps to sqrt(1 - r) q + sqrt(r) q_vac.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"Invalid reflection coefficient {r}")
    idx = quadrature_indices(modes)
    if idx.size and (idx.min() < 0 or idx.max() >= 2 * n):
        raise ValueError(f"Invalid mode subset {list(modes)} for {n} modes")
    x_diag = np.ones(2 * n)
    y_diag = np.zeros(2 * n)
    x_diag[idx] = np.sqrt(1.0 - r)
    y_diag[idx] = r
    return GaussianChannel(np.diag(x_diag), np.diag(y_diag))


def qnd_symplectic(G: float, mode_i: int, mode_j: int, n: int) -> GaussianChannel:
    """QND interaction x_i -> x_i + G p_j, x_j -> x_j + G p_i, momenta unchanged.

    G = 1 is the controlled-Z gate.
    """
    if mode_i == mode_j:
        raise ValueError("QND interaction needs two distinct modes")
    if not (0 <= mode_i < n and 0 <= mode_j < n):
        raise ValueError(f"Invalid modes ({mode_i}, {mode_j}) for {n} modes")
    X = np.eye(2 * n)
    X[2 * mode_i, 2 * mode_j + 1] = G
    X[2 * mode_j, 2 * mode_i + 1] = G
    return GaussianChannel(X)


def is_symplectic(X: np.ndarray, tol: float = PHYSICALITY_TOL) -> bool:
    X = np.asarray(X, dtype=float)
    if X.shape[0] != X.shape[1]:
        return False
    omega = symplectic_form(X.shape[0] // 2)
    return float(np.abs(X @ omega @ X.T - omega).max()) <= tol


def is_completely_positive(ch: GaussianChannel, tol: float = PHYSICALITY_TOL) -> bool:
    """Eigenvalue test of Y + iΩ - iXΩX^T ⪰ 0 for channels with n_in == n_out."""
    if ch.n_in != ch.n_out:
        raise ValueError("Complete positivity test needs a square channel")
    omega = symplectic_form(ch.n_in)
    m = ch.Y + 1j * omega - 1j * ch.X @ omega @ ch.X.T
    return float(np.linalg.eigvalsh(m)[0]) >= -tol


def apply_channel(
    state: GaussianState,
    ch: GaussianChannel,
    modes: Optional[Sequence[int]] = None,
    check: bool = True,
) -> GaussianState:
    """Apply ``ch`` to ``state``.

    Parameters
    ----------
    state : GaussianState
        Input state.
    ch : GaussianChannel
        Channel acting on all modes, or on ``modes`` only when given (a
        local channel, which must then be square).
    modes : sequence of int, optional
        Modes the channel acts on; the remaining modes are untouched.
    check : bool, optional
        Verify physicality of the output. The default is True.

    Raises
    ------
    ValueError
        On a dimension mismatch.
    NonPhysicalStateError
        When the output fails cov + iΩ ⪰ 0.
    """
    if modes is None:
        if ch.n_in != state.n_modes:
            raise ValueError(f"Channel expects {ch.n_in} modes, state has {state.n_modes}")
        mean = ch.X @ state.mean
        cov = ch.X @ state.cov @ ch.X.T + ch.Y
    else:
        modes = list(modes)
        if ch.n_in != len(modes) or ch.n_out != len(modes):
            raise ValueError(f"Local channel size {ch.n_in} does not match {len(modes)} modes")
        idx = quadrature_indices(modes)
        mean = np.array(state.mean)
        cov = np.array(state.cov)
        mean[idx] = ch.X @ mean[idx]
        cov[idx, :] = ch.X @ cov[idx, :]
        cov[:, idx] = cov[:, idx] @ ch.X.T
        cov[np.ix_(idx, idx)] += ch.Y
    out = GaussianState(mean, cov)
    if check:
        margin = physicality_margin(out.cov)
        if margin < -PHYSICALITY_TOL:
            raise NonPhysicalStateError(f"Channel output is not physical (min eigenvalue {margin:.3e})")
    return out
