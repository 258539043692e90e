from gaussian.state import (
    GaussianState,
    NonPhysicalStateError,
    SymplecticForm,
    is_physical,
    physicality_margin,
    quadrature_indices,
    reduce,
    squeezed_vacuum,
    symplectic_form,
    tensor,
    vacuum_state,
)
from gaussian.channel import (
    GaussianChannel,
    apply_channel,
    compose,
    identity_channel,
    is_completely_positive,
    is_symplectic,
    loss_channel,
    qnd_symplectic,
)
from gaussian.fidelity import fidelity
