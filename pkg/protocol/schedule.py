"""Event schedule of the double-pass protocol on (atom, K L-slices, K M-slices).

Mode 0 is the atom, modes 1..K the L slices and K+1..2K the M slices.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from gaussian import GaussianChannel, loss_channel
from protocol.params import SimConfig

ATOM = 0


def l_mode(k: int) -> int:
    return 1 + k


def m_mode(k: int, K: int) -> int:
    return 1 + K + k


def slice_generator(coupling: float, second_pass: bool) -> np.ndarray:
    """Generator A of one slice interaction on (x_a, p_a, x_L, p_L, x_M, p_M).

    Pass one: H = c (p_L p_a + p_M x_a). Pass two flips the L term, the
    beam runs along -z and sees -x_a.
    """
    sign = -1.0 if second_pass else 1.0
    A = np.zeros((6, 6))
    A[0, 3] = sign * coupling   # dx_a = ±c p_L
    A[1, 5] = -coupling         # dp_a = -c p_M
    A[2, 1] = sign * coupling   # dx_L = ±c p_a
    A[4, 0] = coupling          # dx_M = c x_a
    return A


def slice_symplectic(coupling: float, second_pass: bool) -> np.ndarray:
    # A^3 = 0, so the exponential series terminates
    A = slice_generator(coupling, second_pass)
    return np.eye(6) + A + 0.5 * A @ A


def slice_channel(coupling: float, decay_transmission: float, second_pass: bool) -> GaussianChannel:
    """Slice interaction followed by atomic decay toward the vacuum."""
    S = slice_symplectic(coupling, second_pass)
    amp = np.ones(6)
    amp[:2] = math.sqrt(decay_transmission)
    Y = np.zeros((6, 6))
    Y[0, 0] = Y[1, 1] = 1.0 - decay_transmission
    return GaussianChannel(amp[:, None] * S, Y)


@dataclass(frozen=True)
class Event:
    """One local channel of the schedule.

    ``transmission`` is set for pure attenuations (wall crossings); those
    events carry no matrix, since they act on every slice mode at once.
    """

    label: str
    modes: Tuple[int, ...]
    channel: Optional[GaussianChannel] = None
    transmission: Optional[float] = None

    def local_channel(self) -> GaussianChannel:
        if self.channel is not None:
            return self.channel
        return loss_channel(range(len(self.modes)), 1.0 - self.transmission, len(self.modes))


def build_schedule(cfg: SimConfig) -> List[Event]:
    K = cfg.K
    gate = cfg.gate
    coupling = gate.kappa / math.sqrt(K)
    decay = math.exp(-gate.eta / K)
    light = tuple(range(1, 2 * K + 1))
    wall = 1.0 - gate.r

    pass_one = slice_channel(coupling, decay, second_pass=False)
    pass_two = slice_channel(coupling, decay, second_pass=True)
    order_two = range(K) if cfg.ordering == "preserved" else range(K - 1, -1, -1)

    events = [Event("entry wall", light, transmission=wall)]
    events += [Event(f"pass 1 slice {k}", (ATOM, l_mode(k), m_mode(k, K)), channel=pass_one) for k in range(K)]
    events.append(Event("intermediate wall 1", light, transmission=wall))
    events.append(Event("intermediate wall 2", light, transmission=wall))
    events += [Event(f"pass 2 slice {k}", (ATOM, l_mode(k), m_mode(k, K)), channel=pass_two) for k in order_two]
    events.append(Event("exit wall", light, transmission=wall))
    return events
