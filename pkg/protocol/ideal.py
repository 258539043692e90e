import math

import numpy as np

from gaussian import (
    GaussianChannel,
    GaussianState,
    apply_channel,
    qnd_symplectic,
    squeezed_vacuum,
    tensor,
    vacuum_state,
)
from protocol.params import GateParams
from protocol.squeezing import effective_coupling


def target_state(s: float) -> GaussianState:
    """Ideal controlled-Z image of two squeezed vacua with parameter ``s``."""
    return apply_channel(squeezed_vacuum(s, 2), qnd_symplectic(1.0, 0, 1, 2))


def ideal_gate_output(params: GateParams) -> GaussianState:
    """Two-mode (L, M) output of the loss-free double pass.

    x_L -> x_L + kappa^2 p_M
    x_M -> x_M + kappa^2 p_L + 2 kappa / sqrt(1 + kappa0^2) x_a
    with momenta unchanged and x_a a unit-variance atomic quadrature.
    """
    if not params.is_ideal:
        raise ValueError("ideal_gate_output needs r = eta = 0; use the sliced simulation")
    kappa0 = effective_coupling(params.kappa0, params.s_probe)
    k2 = params.kappa ** 2
    # inputs ordered (x_L, p_L, x_M, p_M, x_a, p_a)
    X = np.zeros((4, 6))
    X[0, 0] = 1.0
    X[0, 3] = k2
    X[1, 1] = 1.0
    X[2, 2] = 1.0
    X[2, 1] = k2
    X[2, 4] = 2.0 * params.kappa / math.sqrt(1.0 + kappa0 ** 2)
    X[3, 3] = 1.0
    inputs = tensor(squeezed_vacuum(params.s_light, 2), vacuum_state(1))
    return apply_channel(inputs, GaussianChannel(X))


def closed_form_fidelity(kappa0: float, s: float, s_probe: float = 0.0) -> float:
    """F = 1 / sqrt(1 + 2 e^{2s} / (1 + kappa0^2)) at kappa = 1.

    A squeezed probe enters through the effective coupling e^{s_probe} kappa0.
    """
    kappa0 = effective_coupling(kappa0, s_probe)
    return 1.0 / math.sqrt(1.0 + 2.0 * math.exp(2.0 * s) / (1.0 + kappa0 ** 2))
