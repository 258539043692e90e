from engines.engine import Engine
from engines.closed_form import ClosedFormEngine
from engines.sliced import SlicedEngine

BRANCHES = ("ideal-closed-form", "ideal-simulated", "noisy-simulated")


def get_engine(branch: str, slices: int = 512, ordering: str = "preserved") -> Engine:
    if branch not in BRANCHES:
        raise ValueError(f"Unsupported branch {branch!r}")
    if branch == "ideal-closed-form":
        return ClosedFormEngine()
    return SlicedEngine(slices, ordering, ideal=branch == "ideal-simulated")
