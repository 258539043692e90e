from abc import ABC, abstractmethod

from protocol import GateParams


class Engine(ABC):
    """Evaluates the gate fidelity for one parameter point."""

    name = ""

    @abstractmethod
    def fidelity(self, params: GateParams) -> float:
        """Fidelity of the gate output against the ideal controlled-Z image."""

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"
