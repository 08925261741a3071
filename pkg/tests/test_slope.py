from fractions import Fraction

import pytest

from fanocalc import chow, slope
from fanocalc.slope import (InvariantError, InvariantTuple, adjunction_check,
                            base_degree_ratio, c1_prime, check_rho_tau,
                            kprime_degree_formulas, pushforward_R,
                            solve_nu_prime, tuple_to_row, tuples_to_csv,
                            y_dot_f)

F = Fraction


def test_check_rho_tau_examples():
    assert check_rho_tau(2, 2, 2, -12)
    assert check_rho_tau(2, 2, 0, -4)
    assert not check_rho_tau(3, 1, 1, -3)


def test_check_rho_tau_rejects_bad_delta():
    with pytest.raises(ValueError):
        check_rho_tau(2, 2, 2, 1)
    with pytest.raises(ValueError):
        check_rho_tau(2, 0, 0, -1)


def test_solve_nu_prime_table_values():
    assert solve_nu_prime(3, 1, F(-1, 3), 1) == 2
    assert solve_nu_prime(4, 3, F(-3), 1) == 1
    assert solve_nu_prime(4, 1, F(-1, 3), 1) == 3
    assert solve_nu_prime(2, 2, F(-4), 1) == 1
    assert solve_nu_prime(2, 1, F(-1), 1) == 2


def test_solve_nu_prime_absences():
    assert solve_nu_prime(3, 3, F(-3), 1) is None  # ratio 2/3
    assert solve_nu_prime(2, 1, F(-1, 3), 1) is None  # ratio 3/2
    assert solve_nu_prime(2, 3, F(-3), 1) is None  # ratio 1/2


def test_c1_prime_values():
    assert c1_prime(5, 3, 1) == -2
    assert c1_prime(3, 1, 2) == -4
    assert c1_prime(2, 2, 1) == -3
    assert c1_prime(5, 1, 4) == -10
    with pytest.raises(ValueError):
        c1_prime(4, 1, 1)
    with pytest.raises(ValueError):
        c1_prime(5, 0, 1)


def test_base_degree_ratio_values():
    assert base_degree_ratio(5, 1) == F(1, 18)
    assert base_degree_ratio(5, 3) == F(9, 2)
    assert base_degree_ratio(3, 2) == 1
    with pytest.raises(ValueError):
        base_degree_ratio(4, 1)


def test_y_dot_f_values():
    assert y_dot_f(-3, 1, 1) == 1
    assert y_dot_f(-4, 2, 1) == 0
    assert y_dot_f(-6, 3, 1) == 0


def test_pushforward_R_values():
    assert pushforward_R(1, 2, 8) == 0
    assert pushforward_R(1, 2, 17) == -9
    assert pushforward_R(1, 2, 0) == 8  # first term alone


def kprime_ctx_1_3():
    # (-K', H') context of the tau = 1, tau' = 3 case:
    # K'^2 = 3 K'H' - 3 H'^2 and -K'H'^5 = 4.
    return chow.RingCtx(5, ("-K'", "H'"), F(-3), F(-3), F(4))


def kprime_ctx_1_4():
    return chow.RingCtx(5, ("-K'", "H'"), F(-5), F(-7), F(2))


def test_adjunction_check():
    assert adjunction_check(kprime_ctx_1_4(), -10, 1)  # K'^2 H'^4 = -10
    assert adjunction_check(kprime_ctx_1_3(), -6, 2)  # K'^2 H'^4 = -12
    assert not adjunction_check(kprime_ctx_1_4(), -5, 1)


def test_kprime_degree_formulas():
    assert kprime_degree_formulas(5, 1, 3, 1, 72) == (4, -12)
    first, _ = kprime_degree_formulas(3, 2, 1, 1, 4)
    assert first == 2 * base_degree_ratio(3, 2) * 2  # 2 deg X' from deg X = 2


def test_kprime_consistency_with_c1_prime():
    rows = ((2, 2, 1, 1), (3, 1, 2, 4), (3, 2, 1, 2), (5, 1, 3, 36),
            (5, 3, 1, 4))
    for n, tau, taup, deg_x in rows:
        first, second = kprime_degree_formulas(n, tau, taup, 1, 2 * deg_x)
        assert 2 * second / first == c1_prime(n, tau, taup)


def sample_tuple(**overrides):
    base = dict(n=2, kind="C", lam=1, mu=1, mu_prime=1, nu=2, nu_prime=1,
                tau=2, tau_prime=1, rho=2, i=3, i_prime=3, c1=0,
                delta=F(-12), c2_over_d=F(3))
    base.update(overrides)
    return InvariantTuple(**base)


def test_tuple_accepts_valid_row():
    t = sample_tuple(d=1, deg_x=1, deg_x_prime=1, name_x="P2",
                     name_x_prime="P2", c1_prime=F(-3), y_dot_f=F(1),
                     status="admissible")
    assert t.c2 == 3


@pytest.mark.parametrize("reason,overrides", [
    ("kind", dict(kind="Z")),
    ("lambda_kind", dict(lam=2)),
    ("mu_mismatch", dict(mu_prime=2)),
    ("index_relation", dict(i=4)),
    ("delta_sign", dict(delta=F(4), c2_over_d=F(-1))),
    ("c2_discriminant", dict(c2_over_d=F(1))),
    ("parity", dict(c1=-1, c2_over_d=F(13, 4))),
    ("rho_value", dict(rho=F(3, 2))),
    ("rhotau", dict(delta=F(-8), c2_over_d=F(2))),
    ("c2_integrality", dict(d=3, delta=F(-13, 3), c2_over_d=F(13, 12))),
])
def test_tuple_rejections_have_reason_codes(reason, overrides):
    with pytest.raises(InvariantError) as err:
        sample_tuple(**overrides)
    assert err.value.reason == reason


def test_tuple_rho_for_blowdown_kind():
    t = InvariantTuple(n=2, kind="D", lam=1, mu=1, mu_prime=1, nu=2,
                       nu_prime=1, tau=2, tau_prime=1, rho=0, i=3,
                       i_prime=3, c1=0, delta=F(-4), c2_over_d=F(1))
    assert t.rho == 0
    with pytest.raises(InvariantError) as err:
        InvariantTuple(n=2, kind="D", lam=1, mu=1, mu_prime=1, nu=2,
                       nu_prime=1, tau=2, tau_prime=1, rho=2, i=3,
                       i_prime=3, c1=0, delta=F(-4), c2_over_d=F(1))
    assert err.value.reason == "rho_value"


def test_csv_row_serialization():
    t = sample_tuple(d=1, deg_x=1, deg_x_prime=1, name_x="P2",
                     name_x_prime="P2", c1_prime=F(-3), y_dot_f=F(1),
                     status="admissible")
    assert tuple_to_row(t) == (
        "2", "C", "2", "3", "1", "1", "1", "3", "1", "0", "-12", "3",
        "P2", "P2", "-3", "1", "admissible", "")
    text = tuples_to_csv([t])
    assert text.splitlines()[1] == \
        "2,C,2,3,1,1,1,3,1,0,-12,3,P2,P2,-3,1,admissible,"
    assert "\r" not in text


def test_fractional_cells_render_as_p_over_q():
    t = InvariantTuple(n=5, kind="C", lam=1, mu=1, mu_prime=1, nu=1,
                       nu_prime=3, tau=1, tau_prime=3, rho=1, i=2,
                       i_prime=5, c1=-1, delta=F(-1, 3), c2_over_d=F(1, 3))
    row = tuple_to_row(t)
    assert row[10] == "-1/3"
    assert row[11] == "1/3"
