import logging
from functools import lru_cache
from typing import Dict, List

import numpy as np
from scipy.linalg import block_diag

from gaussian import (
    GaussianChannel,
    GaussianState,
    NonPhysicalStateError,
    apply_channel,
    fidelity,
    is_physical,
    physicality_margin,
    quadrature_indices,
    reduce,
    squeezed_vacuum,
    symplectic_form,
    tensor,
)
from gaussian.state import PHYSICALITY_TOL
from protocol.ideal import target_state
from protocol.params import GateParams, ModeFunction, SimConfig, SimOutput
from protocol.schedule import Event, build_schedule
from protocol.squeezing import prepare_sss

logger = logging.getLogger(__name__)

OUTPUTS = ("x_L", "p_L", "x_M", "p_M")


class GateResponse:
    """Collective outputs (x_L, p_L, x_M, p_M) as a channel of all inputs.

    ``readout`` maps the (atom, L slices, M slices) quadratures to the four
    symmetric collective output quadratures, ``noise`` is the covariance
    contributed by every vacuum admitted along the way and
    ``commutator_noise`` the matching share of the canonical commutators.
    None of these depend on kappa0 or on the input squeezing.
    """

    def __init__(self, K: int, readout: np.ndarray, noise: np.ndarray, commutator_noise: np.ndarray) -> None:
        noise = 0.5 * (noise + noise.T)
        for arr in (readout, noise, commutator_noise):
            arr.flags.writeable = False
        self.K = K
        self.readout = readout
        self.noise = noise
        self.commutator_noise = commutator_noise

    def __repr__(self):
        return f"GateResponse(K={self.K})"

    def channel(self) -> GaussianChannel:
        return GaussianChannel(self.readout, self.noise)

    def output_state(self, atom: GaussianState, s_light: float) -> GaussianState:
        """Collective (L, M) state for a given atomic input and input squeezing."""
        R_atom = self.readout[:, :2]
        R_light = self.readout[:, 2:]
        light_var = np.tile([np.exp(-2.0 * s_light), np.exp(2.0 * s_light)], 2 * self.K)
        cov = R_atom @ atom.cov @ R_atom.T + (R_light * light_var) @ R_light.T + self.noise
        mean = R_atom @ atom.mean
        return GaussianState(mean, 0.5 * (cov + cov.T))

    def commutator_residual(self) -> float:
        """max |R Ω R^T + N_Ω - Ω|, zero when the noise bookkeeping is consistent."""
        R = self.readout
        omega_out = symplectic_form(2)
        signal = R[:, 0::2] @ R[:, 1::2].T - R[:, 1::2] @ R[:, 0::2].T
        return float(np.abs(signal + self.commutator_noise - omega_out).max())


def _pull_back_attenuation(R, N, N_omega, idx, transmission):
    Rl = R[:, idx]
    loss = 1.0 - transmission
    N += loss * Rl @ Rl.T
    N_omega += loss * (Rl[:, 0::2] @ Rl[:, 1::2].T - Rl[:, 1::2] @ Rl[:, 0::2].T)
    R[:, idx] = np.sqrt(transmission) * Rl


def _pull_back_channel(R, N, N_omega, idx, ch, omega_defect):
    Rl = R[:, idx]
    N += Rl @ ch.Y @ Rl.T
    N_omega += Rl @ omega_defect @ Rl.T
    R[:, idx] = Rl @ ch.X


def initial_readout(K: int) -> np.ndarray:
    """Rows selecting the symmetric collective quadratures of L and M."""
    w = ModeFunction("symmetric", K).weights
    R = np.zeros((4, 2 * (1 + 2 * K)))
    l_cols = quadrature_indices(range(1, K + 1))
    m_cols = quadrature_indices(range(K + 1, 2 * K + 1))
    R[0, l_cols[0::2]] = w
    R[1, l_cols[1::2]] = w
    R[2, m_cols[0::2]] = w
    R[3, m_cols[1::2]] = w
    return R


def propagate_readout(K: int, events: List[Event]) -> GateResponse:
    """Pull the collective readout back through the schedule, last event first."""
    R = initial_readout(K)
    N = np.zeros((4, 4))
    N_omega = np.zeros((4, 4))
    defects: Dict[int, np.ndarray] = {}
    for event in reversed(events):
        idx = quadrature_indices(event.modes)
        if event.transmission is not None:
            _pull_back_attenuation(R, N, N_omega, idx, event.transmission)
            continue
        ch = event.channel
        key = id(ch)
        if key not in defects:
            omega = symplectic_form(ch.n_in)
            defects[key] = omega - ch.X @ omega @ ch.X.T
        _pull_back_channel(R, N, N_omega, idx, ch, defects[key])
    return GateResponse(K, R, N, N_omega)


@lru_cache(maxsize=128)
def gate_response(kappa: float, r: float, eta: float, K: int, ordering: str = "preserved") -> GateResponse:
    """Cached response of the sliced protocol for one (kappa, r, eta, K, ordering)."""
    cfg = SimConfig(K=K, gate=GateParams(kappa=kappa, r=r, eta=eta), ordering=ordering)
    logger.debug("building gate response kappa=%g r=%g eta=%g K=%d %s", kappa, r, eta, K, ordering)
    return propagate_readout(K, build_schedule(cfg))


def prepared_atom(gate: GateParams) -> GaussianState:
    # squeeze x rather than p: quarter-turn of the measured-and-fed-back state
    return prepare_sss(gate.kappa0, "optimal", gate.s_probe).rotated().to_gaussian_state()


def collective_projection(K: int) -> GaussianChannel:
    """Symplectic basis change putting each beam's symmetric mode first."""
    O = ModeFunction("symmetric", K).basis_change()
    beam = np.kron(O, np.eye(2))
    return GaussianChannel(block_diag(np.eye(2), beam, beam))


def _forward(cfg: SimConfig, events: List[Event], atom: GaussianState):
    """Propagate the full (1 + 2K)-mode state event by event.

    Every intermediate state is tested for physicality. The minimum
    eigenvalue of cov + iΩ and the determinant are recorded every
    ``cfg.check_stride`` slice events, after every wall crossing and at
    the end.
    """
    state = tensor(atom, squeezed_vacuum(cfg.gate.s_light, 2 * cfg.K))
    margins = [physicality_margin(state.cov)]
    dets = [state.det]
    for i, event in enumerate(events):
        state = apply_channel(state, event.local_channel(), modes=event.modes, check=False)
        if not is_physical(state):
            margin = physicality_margin(state.cov)
            raise NonPhysicalStateError(f"State after '{event.label}' is not physical (min eigenvalue {margin:.3e})")
        last = i == len(events) - 1
        if event.transmission is None and not last and (i + 1) % cfg.check_stride:
            continue
        margin = physicality_margin(state.cov)
        if margin < -PHYSICALITY_TOL:
            raise NonPhysicalStateError(f"State after '{event.label}' is not physical (min eigenvalue {margin:.3e})")
        margins.append(margin)
        dets.append(state.det)
    return state, margins, dets


def sliced_simulation(cfg: SimConfig) -> SimOutput:
    """Time-sliced double-pass simulation with wall losses and atomic decay.

    The L and M pulses are cut into K slices, each an independent squeezed
    vacuum. After the entry wall crossing, every slice interacts in turn
    with the atom through the exact slice propagator, each interaction
    followed by decay of the atom over one slice duration. Two wall
    crossings separate the passes; the second pass uses the reflected
    Hamiltonian and the exit crossing closes the sequence. The output is
    reduced onto the symmetric collective modes and compared with the ideal
    controlled-Z image of the input.

    Parameters
    ----------
    cfg : SimConfig
        Slice count, gate parameters and pass-two ordering.

    Returns
    -------
    SimOutput
        Collective state, fidelity, diagnostics, and the full state when
        ``cfg.record_states`` is set.

    Raises
    ------
    NonPhysicalStateError
        When an intermediate or final state fails the physicality test.
    """
    gate = cfg.gate
    response = gate_response(gate.kappa, gate.r, gate.eta, cfg.K, cfg.ordering)
    atom = prepared_atom(gate)
    collective = response.output_state(atom, gate.s_light)
    margin = physicality_margin(collective.cov)
    if margin < -PHYSICALITY_TOL:
        raise NonPhysicalStateError(f"Collective output is not physical (min eigenvalue {margin:.3e})")
    diagnostics = {
        "slices": cfg.K,
        "ordering": cfg.ordering,
        "collective_physical": True,
        "collective_min_eigenvalue": margin,
        "commutator_residual": response.commutator_residual(),
    }
    full_state = None
    if cfg.record_states:
        full_state, margins, dets = _forward(cfg, build_schedule(cfg), atom)
        projected = apply_channel(full_state, collective_projection(cfg.K), check=False)
        forward_collective = reduce(projected, [1, cfg.K + 1])
        diagnostics.update(
            intermediate_physical=True,
            intermediate_min_eigenvalue=min(margins),
            determinants=dets,
            forward_readout_mismatch=float(np.abs(forward_collective.cov - collective.cov).max()),
        )
    value = fidelity(target_state(gate.s_light), collective)
    logger.debug("sliced simulation K=%d kappa0=%g r=%g eta=%g -> F=%.6f", cfg.K, gate.kappa0, gate.r, gate.eta, value)
    return SimOutput(
        collective_state=collective,
        fidelity=value,
        response=response,
        full_state=full_state,
        diagnostics=diagnostics,
    )


def noisy_gate_fidelity(params: GateParams, K: int, ordering: str = "preserved") -> float:
    """Fidelity of the sliced protocol output against the ideal controlled-Z image."""
    if params.r >= 1.0 / 3.0:
        raise ValueError(f"Invalid r {params.r}: must be below 1/3")
    return sliced_simulation(SimConfig(K=K, gate=params, ordering=ordering)).fidelity
