import math

from gaussian import quadrature_indices
from protocol.params import ModeFunction, NoiseCoefficients
from protocol.sliced import OUTPUTS, GateResponse


def analytic_epsilons(r: float, eta: float) -> NoiseCoefficients:
    """First-order wall-loss and decay coefficients of the double pass.

    eps1(±) = (1 - r)(1 ± 2r)(1 - eta/2 ∓ 2r/(1 ± 2r))
    eps2(±) = (1 - r)(1 ± 2r)/sqrt(3) (eta/2 ± 2r/(1 ± 2r))
    """
    if not 0.0 <= r < 0.5:
        raise ValueError(f"Invalid r {r}: must lie in [0, 1/2)")
    if eta < 0:
        raise ValueError(f"Invalid eta {eta}: must be >= 0")
    values = {}
    for name, sign in (("minus", -1.0), ("plus", 1.0)):
        f = 1.0 + sign * 2.0 * r
        shift = 2.0 * r / f
        values[f"eps1_{name}"] = (1.0 - r) * f * (1.0 - eta / 2.0 - sign * shift)
        values[f"eps2_{name}"] = (1.0 - r) * f / math.sqrt(3.0) * (eta / 2.0 + sign * shift)
    return NoiseCoefficients(**values)


def first_order_coefficients(r: float, eta: float) -> dict:
    """Analytic p-transfer coefficients including the wall damping sqrt(1 - 3r) sqrt(1 - r)."""
    eps = analytic_epsilons(r, eta)
    damping = math.sqrt(1.0 - 3.0 * r) * math.sqrt(1.0 - r)
    return {
        ("x_L", "M", "symmetric"): damping * eps.eps1_minus,
        ("x_M", "L", "symmetric"): damping * eps.eps1_plus,
        ("x_L", "M", "antisymmetric"): damping * eps.eps2_minus,
        ("x_M", "L", "antisymmetric"): damping * eps.eps2_plus,
    }


def transfer_coefficient(
    response: GateResponse,
    output: str,
    beam: str,
    quadrature: str = "p",
    kind: str = "symmetric",
) -> float:
    """Coefficient of a collective input quadrature in a collective output quadrature.

    Parameters
    ----------
    response : GateResponse
        Readout of a sliced run.
    output : str
        One of 'x_L', 'p_L', 'x_M', 'p_M'.
    beam : str
        Input beam, 'L' or 'M'.
    quadrature : str, optional
        Input quadrature, 'x' or 'p'. The default is 'p'.
    kind : str, optional
        Temporal mode of the input, 'symmetric' or 'antisymmetric'.
    """
    if output not in OUTPUTS:
        raise ValueError(f"Invalid output {output!r}")
    if beam not in ("L", "M") or quadrature not in ("x", "p"):
        raise ValueError(f"Invalid input {quadrature}_{beam}")
    K = response.K
    first = 1 if beam == "L" else K + 1
    offset = 0 if quadrature == "x" else 1
    cols = quadrature_indices(range(first, first + K))[offset::2]
    weights = ModeFunction(kind, K).weights
    return float(response.readout[OUTPUTS.index(output), cols] @ weights)


def atom_coefficient(response: GateResponse, output: str, quadrature: str) -> float:
    """Coefficient of the initial atomic quadrature in a collective output quadrature."""
    if output not in OUTPUTS or quadrature not in ("x", "p"):
        raise ValueError(f"Invalid coefficient {output} <- {quadrature}_a")
    return float(response.readout[OUTPUTS.index(output), 0 if quadrature == "x" else 1])

