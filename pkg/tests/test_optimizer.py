import math

import pytest

from protocol import GateParams, noisy_gate_fidelity
from QNDGate.optimizer import golden_section_max, optimize_kappa0
from QNDGate.tools.utilities import db_to_s

S_5DB = db_to_s(5.0)


def test_golden_section_finds_parabola_peak():
    x, fx, evaluations = golden_section_max(lambda x: -(x - 2.0) ** 2, 0.0, 5.0, 1e-4)
    assert x == pytest.approx(2.0, abs=1e-4)
    assert fx == pytest.approx(0.0, abs=1e-8)
    assert evaluations > 2


def test_lossless_fidelity_is_monotone():
    result = optimize_kappa0(0.0, 0.0, S_5DB, K=16, scan_points=50)
    assert result.monotone_flag
    assert result.kappa0_opt == pytest.approx(100.0)
    assert result.bracket == (0.1, 100.0)
    assert result.evaluations == 50
    assert result.as_record()["monotone"] is True


def test_custom_objective_interior_maximum():
    def objective(k):
        return -(math.log(k) - math.log(7.0)) ** 2

    result = optimize_kappa0(0.0, 0.0, 0.0, objective=objective)
    assert not result.monotone_flag
    assert result.kappa0_opt == pytest.approx(7.0, abs=1e-2)
    assert result.bracket[0] < 7.0 < result.bracket[1]
    assert result.evaluations == len(result.trace)


def test_ties_break_toward_smaller_coupling():
    result = optimize_kappa0(0.0, 0.0, 0.0, bounds=(1.0, 10.0), scan_points=10, objective=lambda k: 1.0)
    assert result.kappa0_opt == pytest.approx(1.0)
    assert result.monotone_flag


def test_invalid_bounds():
    with pytest.raises(ValueError):
        optimize_kappa0(0.01, 0.01, S_5DB, bounds=(0.0, 10.0))
    with pytest.raises(ValueError):
        optimize_kappa0(0.01, 0.01, S_5DB, bounds=(10.0, 1.0))


@pytest.fixture(scope="module")
def lossy_optimum():
    return optimize_kappa0(0.05, 0.05, S_5DB, K=512)


def test_optimum_is_a_local_maximum(lossy_optimum):
    assert not lossy_optimum.monotone_flag
    k = lossy_optimum.kappa0_opt
    best = lossy_optimum.fidelity_opt
    for neighbour in (k - 1e-2, k + 1e-2):
        assert best >= noisy_gate_fidelity(GateParams(kappa0=neighbour, s_light=S_5DB, r=0.05, eta=0.05), 512)


def test_refinement_never_loses_to_the_grid(lossy_optimum):
    grid_best = max(value for _, value in lossy_optimum.trace[:200])
    assert lossy_optimum.fidelity_opt >= grid_best


def test_optimum_location(lossy_optimum):
    # the optimum sits near 1 + kappa0^2 = 4 / eta
    assert lossy_optimum.kappa0_opt == pytest.approx(8.78, rel=0.15)
    assert lossy_optimum.fidelity_opt == pytest.approx(0.66, abs=0.02)


def test_optimizer_is_deterministic(lossy_optimum):
    again = optimize_kappa0(0.05, 0.05, S_5DB, K=512)
    assert again.as_record() == lossy_optimum.as_record()
