from protocol.params import (
    AtomicState,
    GateParams,
    ModeFunction,
    NoiseCoefficients,
    PhysicalCoupling,
    SimConfig,
    SimOutput,
)
from protocol.squeezing import (
    effective_coupling,
    effective_coupling_quadratic,
    optimal_gain,
    prepare_sss,
)
from protocol.ideal import closed_form_fidelity, ideal_gate_output, target_state
from protocol.sliced import GateResponse, gate_response, noisy_gate_fidelity, sliced_simulation
from protocol.noise import analytic_epsilons, atom_coefficient, first_order_coefficients, transfer_coefficient
