from engines.engine import Engine
from protocol import GateParams, closed_form_fidelity


class ClosedFormEngine(Engine):
    """Loss-free closed form; valid at kappa = 1."""

    name = "ideal-closed-form"

    def fidelity(self, params: GateParams) -> float:
        if not params.is_ideal:
            raise ValueError("Closed form only covers r = eta = 0")
        if params.kappa != 1.0:
            raise ValueError("Closed form only covers kappa = 1")
        return closed_form_fidelity(params.kappa0, params.s_light, params.s_probe)
