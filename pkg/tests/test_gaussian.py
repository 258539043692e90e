import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaussian import (
    GaussianChannel,
    GaussianState,
    NonPhysicalStateError,
    apply_channel,
    compose,
    fidelity,
    identity_channel,
    is_completely_positive,
    is_physical,
    is_symplectic,
    loss_channel,
    physicality_margin,
    qnd_symplectic,
    reduce,
    squeezed_vacuum,
    symplectic_form,
    tensor,
    vacuum_state,
)

S_5DB = 0.25 * math.log(10.0)

squeezings = st.floats(min_value=-2.0, max_value=2.0)
reflections = st.floats(min_value=0.0, max_value=1.0)
gains = st.floats(min_value=-5.0, max_value=5.0)
unit = st.floats(min_value=-1.0, max_value=1.0)


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def wigner(state, points):
    """Wigner function of ``state`` at the rows of ``points``."""
    V = state.cov / 2.0
    d = points - state.mean
    quad = np.einsum("ij,jk,ik->i", d, np.linalg.inv(V), d)
    n = state.n_modes
    return np.exp(-0.5 * quad) / ((2.0 * math.pi) ** n * math.sqrt(np.linalg.det(V)))


def overlap_on_grid(a, b, half_width, count):
    """(2π)^N ∫ W_a W_b on a uniform grid, one x1 plane at a time."""
    axis = np.linspace(-half_width, half_width, count)
    h = axis[1] - axis[0]
    n = a.n_modes
    rest = np.stack(np.meshgrid(*[axis] * (2 * n - 1), indexing="ij"), axis=-1).reshape(-1, 2 * n - 1)
    total = 0.0
    for x1 in axis:
        points = np.column_stack([np.full(rest.shape[0], x1), rest])
        total += float(np.sum(wigner(a, points) * wigner(b, points)))
    return (2.0 * math.pi) ** n * total * h ** (2 * n)


def random_one_mode_pair(rng):
    s = rng.uniform(-0.6, 0.6)
    R = rotation(rng.uniform(0, math.pi))
    pure = GaussianState(rng.uniform(-1, 1, 2), R @ np.diag([math.exp(-2 * s), math.exp(2 * s)]) @ R.T)
    s_b = rng.uniform(-0.5, 0.5)
    R_b = rotation(rng.uniform(0, math.pi))
    nu = rng.uniform(1.0, 2.0)
    mixed = GaussianState(rng.uniform(-1, 1, 2), nu * R_b @ np.diag([math.exp(-2 * s_b), math.exp(2 * s_b)]) @ R_b.T)
    return pure, mixed


def random_two_mode_pair(rng):
    def symplectic():
        s = rng.uniform(-0.25, 0.25, 2)
        local = np.diag([math.exp(-s[0]), math.exp(s[0]), math.exp(-s[1]), math.exp(s[1])])
        rot = np.zeros((4, 4))
        rot[:2, :2] = rotation(rng.uniform(0, math.pi))
        rot[2:, 2:] = rotation(rng.uniform(0, math.pi))
        return qnd_symplectic(rng.uniform(-0.3, 0.3), 0, 1, 2).X @ rot @ local

    S = symplectic()
    pure = GaussianState(rng.uniform(-0.5, 0.5, 4), S @ S.T)
    S_b = symplectic()
    nu = np.repeat(rng.uniform(1.0, 1.5, 2), 2)
    mixed = GaussianState(rng.uniform(-0.5, 0.5, 4), S_b @ np.diag(nu) @ S_b.T)
    return pure, mixed


@st.composite
def pure_two_mode_states(draw):
    """Random symplectic (local squeezing, rotations, QND coupling) applied to displaced vacuum."""
    s = [draw(unit), draw(unit)]
    local = np.diag([math.exp(-s[0]), math.exp(s[0]), math.exp(-s[1]), math.exp(s[1])])
    rot = np.zeros((4, 4))
    rot[:2, :2] = rotation(math.pi * draw(unit))
    rot[2:, 2:] = rotation(math.pi * draw(unit))
    S = qnd_symplectic(draw(unit), 0, 1, 2).X @ rot @ local
    mean = [draw(unit) for _ in range(4)]
    return GaussianState(mean, S @ S.T)


class TestStates:
    def test_vacuum(self):
        state = vacuum_state(1)
        np.testing.assert_array_equal(state.mean, [0.0, 0.0])
        np.testing.assert_array_equal(state.cov, np.eye(2))
        assert vacuum_state(2).det == pytest.approx(1.0)
        assert vacuum_state(2).is_pure()

    def test_vacuum_sits_on_the_physicality_boundary(self):
        assert physicality_margin(vacuum_state(1).cov) == pytest.approx(0.0, abs=1e-12)
        assert is_physical(vacuum_state(1))

    def test_half_vacuum_is_not_physical(self):
        state = GaussianState(np.zeros(2), 0.5 * np.eye(2))
        assert physicality_margin(state.cov) == pytest.approx(-0.5)
        assert not is_physical(state)

    def test_physicality_tolerance_band(self):
        inside = GaussianState(np.zeros(2), (1.0 - 1e-11) * np.eye(2))
        outside = GaussianState(np.zeros(2), (1.0 - 1e-6) * np.eye(2))
        assert is_physical(inside)
        assert not is_physical(outside)
        assert not is_physical(outside, tol=0.0)
        assert is_physical(outside, tol=1e-5)

    def test_zero_squeezing_is_vacuum(self):
        np.testing.assert_array_equal(squeezed_vacuum(0.0).cov, np.eye(2))

    def test_five_db_squeezing(self):
        assert squeezed_vacuum(S_5DB).cov[0, 0] == pytest.approx(10 ** -0.5)
        assert squeezed_vacuum(S_5DB).cov[0, 0] == pytest.approx(0.31623, abs=1e-5)

    @given(squeezings)
    def test_squeezed_vacuum_is_pure(self, s):
        assert squeezed_vacuum(s).det == pytest.approx(1.0)

    def test_per_mode_squeezing(self):
        cov = squeezed_vacuum([0.0, 0.5], 2).cov
        np.testing.assert_allclose(np.diag(cov), [1, 1, math.exp(-1), math.exp(1)])

    def test_state_arrays_are_read_only(self):
        state = vacuum_state(1)
        with pytest.raises(ValueError):
            state.cov[0, 0] = 2.0

    def test_invalid_states(self):
        with pytest.raises(ValueError):
            GaussianState(np.zeros(3), np.eye(3))
        with pytest.raises(ValueError):
            GaussianState(np.zeros(2), np.array([[1.0, 0.5], [0.0, 1.0]]))
        with pytest.raises(ValueError):
            GaussianState(np.zeros(4), np.eye(2))

    def test_tensor(self):
        np.testing.assert_array_equal(tensor(vacuum_state(1), vacuum_state(1)).cov, vacuum_state(2).cov)
        s = 0.3
        cov = tensor(squeezed_vacuum(s), vacuum_state(1)).cov
        np.testing.assert_allclose(cov, np.diag([math.exp(-2 * s), math.exp(2 * s), 1.0, 1.0]))

    def test_reduce(self):
        np.testing.assert_array_equal(reduce(vacuum_state(3), [2]).cov, np.eye(2))
        product = tensor(squeezed_vacuum(0.4), vacuum_state(1))
        np.testing.assert_array_equal(reduce(product, [0]).cov, squeezed_vacuum(0.4).cov)

    def test_reduce_cz_output(self):
        out = apply_channel(vacuum_state(2), qnd_symplectic(1.0, 0, 1, 2))
        np.testing.assert_allclose(reduce(out, [0]).cov, np.diag([2.0, 1.0]))

    @pytest.mark.parametrize("modes", [[], [3], [0, 0], [-1]])
    def test_reduce_rejects_invalid_subsets(self, modes):
        with pytest.raises(ValueError):
            reduce(vacuum_state(3), modes)

    def test_symplectic_form(self):
        omega = symplectic_form(2)
        np.testing.assert_array_equal(omega @ omega, -np.eye(4))
        assert omega[0, 1] == 1.0 and omega[1, 0] == -1.0


class TestChannels:
    def test_identity_channel(self):
        state = squeezed_vacuum(0.7)
        np.testing.assert_array_equal(apply_channel(state, identity_channel(1)).cov, state.cov)

    def test_loss_fixes_the_vacuum(self):
        np.testing.assert_allclose(apply_channel(vacuum_state(2), loss_channel([0, 1], 0.3, 2)).cov, np.eye(4))

    def test_zero_loss_is_identity(self):
        ch = loss_channel([0], 0.0, 1)
        np.testing.assert_array_equal(ch.X, np.eye(2))
        np.testing.assert_array_equal(ch.Y, np.zeros((2, 2)))

    def test_full_loss_replaces_the_state(self):
        state = GaussianState([1.0, -2.0], squeezed_vacuum(1.2).cov)
        out = apply_channel(state, loss_channel([0], 1.0, 1))
        np.testing.assert_allclose(out.cov, np.eye(2))
        np.testing.assert_allclose(out.mean, [0.0, 0.0])

    def test_loss_on_squeezed_vacuum(self):
        s = 0.4
        out = apply_channel(squeezed_vacuum(s), loss_channel([0], 0.05, 1))
        assert out.cov[0, 0] == pytest.approx(0.95 * math.exp(-2 * s) + 0.05)

    @given(reflections, reflections)
    def test_losses_compose(self, r1, r2):
        combined = compose(loss_channel([0], r1, 1), loss_channel([0], r2, 1))
        expected = loss_channel([0], 1.0 - (1.0 - r1) * (1.0 - r2), 1)
        np.testing.assert_allclose(combined.X, expected.X, atol=1e-12)
        np.testing.assert_allclose(combined.Y, expected.Y, atol=1e-12)

    @given(reflections)
    def test_loss_is_completely_positive(self, r):
        assert is_completely_positive(loss_channel([0, 2], r, 3))

    def test_loss_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            loss_channel([0], 1.5, 1)
        with pytest.raises(ValueError):
            loss_channel([2], 0.1, 2)

    def test_qnd_at_zero_gain_is_identity(self):
        np.testing.assert_array_equal(qnd_symplectic(0.0, 0, 1, 2).X, np.eye(4))

    def test_cz_rows(self):
        X = qnd_symplectic(1.0, 0, 1, 2).X
        np.testing.assert_array_equal(X[0], [1, 0, 0, 1])
        np.testing.assert_array_equal(X[2], [0, 1, 1, 0])
        np.testing.assert_array_equal(X[1], [0, 1, 0, 0])
        np.testing.assert_array_equal(X[3], [0, 0, 0, 1])

    @given(gains)
    def test_qnd_is_symplectic(self, G):
        X = qnd_symplectic(G, 0, 1, 2).X
        assert is_symplectic(X)
        assert np.linalg.det(X) == pytest.approx(1.0)
        assert is_symplectic(qnd_symplectic(3.0, 0, 1, 2).X)

    def test_qnd_rejects_equal_modes(self):
        with pytest.raises(ValueError):
            qnd_symplectic(1.0, 1, 1, 2)

    def test_local_channel_matches_embedded_channel(self):
        state = tensor(squeezed_vacuum(0.3, 2), vacuum_state(1))
        local = apply_channel(state, qnd_symplectic(1.0, 0, 1, 2), modes=[2, 0])
        full = apply_channel(state, qnd_symplectic(1.0, 2, 0, 3))
        np.testing.assert_allclose(local.cov, full.cov, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_channel(vacuum_state(2), identity_channel(1))
        with pytest.raises(ValueError):
            apply_channel(vacuum_state(2), identity_channel(2), modes=[0])

    def test_noiseless_attenuation_is_rejected(self):
        ch = GaussianChannel(0.5 * np.eye(2))
        assert not is_completely_positive(ch)
        with pytest.raises(NonPhysicalStateError):
            apply_channel(vacuum_state(1), ch)


class TestFidelity:
    def test_identical_states(self):
        assert fidelity(vacuum_state(1), vacuum_state(1)) == pytest.approx(1.0)
        assert fidelity(vacuum_state(2), vacuum_state(2)) == pytest.approx(1.0)

    def test_displaced_vacuum(self):
        displaced = GaussianState([1.0, 0.0], np.eye(2))
        assert fidelity(vacuum_state(1), displaced) == pytest.approx(math.exp(-0.5))
        assert fidelity(vacuum_state(1), displaced) == pytest.approx(0.60653, abs=1e-5)

    def test_displaced_vacuum_on_grid(self):
        displaced = GaussianState([1.0, 0.0], np.eye(2))
        assert overlap_on_grid(vacuum_state(1), displaced, 10.0, 201) == pytest.approx(math.exp(-0.5), rel=1e-6)

    def test_impure_reference_is_rejected(self):
        with pytest.raises(ValueError):
            fidelity(GaussianState(np.zeros(2), 2 * np.eye(2)), vacuum_state(1))

    def test_mode_mismatch(self):
        with pytest.raises(ValueError):
            fidelity(vacuum_state(1), vacuum_state(2))

    @given(squeezings, st.floats(min_value=1.0, max_value=10.0))
    def test_fidelity_is_bounded(self, s, nu):
        b = GaussianState(np.zeros(2), nu * np.eye(2))
        assert 0.0 <= fidelity(squeezed_vacuum(s), b) <= 1.0

    @given(pure_two_mode_states(), pure_two_mode_states())
    def test_pure_states_symmetric_and_below_one_when_distinct(self, a, b):
        forward, backward = fidelity(a, b), fidelity(b, a)
        assert forward == pytest.approx(backward, rel=1e-9, abs=1e-15)
        assert fidelity(a, a) == pytest.approx(1.0, abs=1e-9)
        distinct = not (np.allclose(a.cov, b.cov, atol=1e-3) and np.allclose(a.mean, b.mean, atol=1e-3))
        if distinct:
            assert forward < 1.0

    def test_matches_wigner_overlap_one_mode(self):
        rng = np.random.default_rng(20)
        for _ in range(20):
            pure, mixed = random_one_mode_pair(rng)
            assert fidelity(pure, mixed) == pytest.approx(overlap_on_grid(pure, mixed, 10.0, 201), rel=1e-6)

    def test_matches_wigner_overlap_two_modes(self):
        """65 points per axis on the 4-D grid: the trapezoid sum of a smooth Gaussian integrand
        converges spectrally, so this already resolves the overlap well below 1e-6."""
        rng = np.random.default_rng(10)
        for _ in range(10):
            pure, mixed = random_two_mode_pair(rng)
            assert fidelity(pure, mixed) == pytest.approx(overlap_on_grid(pure, mixed, 8.0, 65), rel=1e-6)
