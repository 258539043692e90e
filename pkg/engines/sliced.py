import dataclasses

from engines.engine import Engine
from protocol import GateParams, noisy_gate_fidelity


class SlicedEngine(Engine):
    """Time-sliced simulation; ``ideal`` drops reflection and decay."""

    def __init__(self, slices: int, ordering: str = "preserved", ideal: bool = False) -> None:
        if slices < 1:
            raise ValueError(f"Invalid slice count {slices}")
        self.slices = slices
        self.ordering = ordering
        self.ideal = ideal
        self.name = "ideal-simulated" if ideal else "noisy-simulated"

    def fidelity(self, params: GateParams) -> float:
        if self.ideal:
            params = dataclasses.replace(params, r=0.0, eta=0.0)
        return noisy_gate_fidelity(params, self.slices, self.ordering)
