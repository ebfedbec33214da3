import math
from fractions import Fraction

import pytest

import affsing


def test_bound_at_dirichlet_exponent():
    assert affsing.dim_bound_exact("1/2", 2, 1) == "1/2"
    assert affsing.dim_bound_exact("1", 2, 1) == "2/3"
    assert affsing.dim_bound(math.inf, 2, 1) == 1.0
    assert affsing.rho_bound(0.5, 0.49, 2, 1) == 0.0


def test_rho_bound_inverts():
    r = affsing.rho_bound(0.8, 0.4, 2, 1)
    assert 0 < r < 0.4
    assert affsing.omega_lower_from_rho(r, 0.4, 2, 1) == pytest.approx(0.8, abs=1e-9)


def test_rational_parameter_has_a_witness():
    res = affsing.omega_estimate(["1/2", "1/3"], 2, 1, 1000)
    assert math.isinf(res["omega"])
    q, p = res["witness"]
    a = [Fraction(1, 2), Fraction(1, 3)]
    assert [x * q[0] for x in a] == p


def test_irrational_parameter_is_finite():
    res = affsing.omega_estimate(["sqrt(2)-1", "sqrt(3)-1"], 2, 1, 10000)
    assert res["witness"] is None
    assert 0.4 < res["omega"] < 1.5


def test_systole_of_flowed_lattice():
    log_value, witness = affsing.systole(["0", "0"], 3.0)
    assert log_value == pytest.approx(-1.0, abs=1e-10)
    assert witness in ([0, 1, 0], [0, 0, 1])


def test_plucker():
    assert affsing.plucker_check([1, 0, 0, 0, 0, 1], 4, 2) is False
    assert affsing.plucker_check([1, 0, 0, 0, 0, 0], 4, 2) is True


def test_small_set_measure():
    # v = e1 in dimension 2: the set is |s| <= r.
    m = affsing.dplus_measure([0.0, 1.0], 1, 1, 0.1, 20000, seed=3)
    lo, hi = m["ci"]
    assert lo <= 0.2 <= hi


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        affsing.omega_estimate(["sqrt(2"], 2, 1, 10)
    with pytest.raises(affsing.ConfigError):
        affsing.run("bound", "unused", bogus=1)


def test_run_writes_artifacts(tmp_path):
    summary = affsing.run("bound", tmp_path, omega_points=5)
    assert len(summary["config_hash"]) == 16
    assert (tmp_path / "bound.csv").read_bytes().startswith(b"omega,dim_bound,rho_bound\r\n")
    again = affsing.run("bound", tmp_path / "again", omega_points=5)
    assert again["config_hash"] == summary["config_hash"]
