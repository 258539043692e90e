import math
from typing import Union

from protocol.params import AtomicState


def effective_coupling(kappa0: float, s_probe: float) -> float:
    """Squeezed-probe enhanced coupling e^{s} kappa0."""
    if kappa0 < 0:
        raise ValueError(f"Invalid kappa0 {kappa0}: must be >= 0")
    return math.exp(s_probe) * kappa0


def effective_coupling_quadratic(kappa0: float, s_probe: float) -> float:
    """The e^{2s} kappa0 reading of the enhanced coupling."""
    if kappa0 < 0:
        raise ValueError(f"Invalid kappa0 {kappa0}: must be >= 0")
    return math.exp(2.0 * s_probe) * kappa0


def optimal_gain(kappa0: float, s_probe: float = 0.0) -> float:
    """Feedback gain minimizing the conditional momentum variance."""
    noise = math.exp(-2.0 * s_probe)
    return kappa0 / (kappa0 ** 2 + noise)


def prepare_sss(kappa0: float, g: Union[float, str] = "optimal", s_probe: float = 0.0) -> AtomicState:
    """Spin-squeezed state from a QND measurement of a coherent spin state plus feedback.

    The probe reads out p_a through x_ph -> x_ph + kappa0 p_a; the outcome
    displaces p_a by -g x_ph, leaving the momentum variance
    (1 - g kappa0)^2 + g^2 e^{-2 s_probe} while x_a picks up the probe's
    momentum noise, 1 + kappa0^2 e^{2 s_probe}. The random outcome only
    shifts the first moments, which the feedback removes, so the state is
    centred.

    Parameters
    ----------
    kappa0 : float
        Squeezing coupling, >= 0.
    g : float or 'optimal'
        Feedback gain.
    s_probe : float, optional
        Probe-light squeezing (x squeezed). The default is 0.

    Returns
    -------
    AtomicState
        Momentum-squeezed state.
    """
    if kappa0 < 0:
        raise ValueError(f"Invalid kappa0 {kappa0}: must be >= 0")
    if isinstance(g, str):
        if g != "optimal":
            raise ValueError(f"Invalid gain {g!r}")
        enhanced = math.exp(2.0 * s_probe) * kappa0 ** 2
        return AtomicState(var_x=1.0 + enhanced, var_p=1.0 / (1.0 + enhanced))
    var_p = (1.0 - g * kappa0) ** 2 + g ** 2 * math.exp(-2.0 * s_probe)
    var_x = 1.0 + kappa0 ** 2 * math.exp(2.0 * s_probe)
    return AtomicState(var_x=var_x, var_p=var_p)
