import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from darboux_fib import numerics
from darboux_fib.darboux import ScalarField, constant_field
from darboux_fib.errors import DomainError, SingularPoint
from darboux_fib.ermakov import (
    SEP_WRONSKIAN,
    PinneyInputs,
    deformed_inputs,
    ep_residual,
    invariant_closed,
    invariant_profile,
    pinney_solution,
    sep_inputs,
    v_deformed,
    v_sep,
)
from darboux_fib.fibcore import PHI_TILDE, SQRT5, W_CANONICAL, Parity, fib_parity
from darboux_fib.sequences import deformed_F, deformed_potential_closed

SYM = numerics.Grid.uniform(-3.0, 3.0, 201).points
DEFORMED_GRID = numerics.Grid.stepped(0.2, 8.0, 0.1).points
SEP_OMEGA = constant_field(-PHI_TILDE**2)


def _field(fn):
    return ScalarField(fn)


def test_sep_wronskian_sign():
    inp = sep_inputs()
    assert SEP_WRONSKIAN == pytest.approx(-4 * PHI_TILDE / 5)
    for x in (-2.0, 0.0, 1.5):
        assert inp.measured_wronskian(x) == pytest.approx(SEP_WRONSKIAN, rel=1e-14)


def test_pinney_collapses_for_zero_coupling():
    inp = sep_inputs(0.0)
    for x in (-2.0, 0.3, 4.0):
        assert pinney_solution(inp, x) == pytest.approx(abs(fib_parity(Parity.EVEN, x)), rel=1e-15)


def test_pinney_at_origin():
    # sqrt(-k) |F_o(0)| / |W| = (2/sqrt5) / (4 phi_tilde/5), 40-digit value
    assert pinney_solution(sep_inputs(-1.0), 0.0) == pytest.approx(2.3233718095173863995, abs=1e-12)
    assert v_sep(-1.0, 0.0) == pytest.approx(2.3233718095173863995, abs=1e-12)


def _fd2(f, x, h=1e-3):
    # wider five-point stencil: truncation ~h^4, roundoff ~1e-9 for |f| ~ 1
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


@pytest.mark.parametrize("x", [-2.5, -0.7, 0.0, 1.0, 2.2])
def test_pinney_solves_sep_equation(x):
    inp = sep_inputs(-1.0)

    def v(s):
        return pinney_solution(inp, s)

    assert abs(_fd2(v, x) - PHI_TILDE**2 * v(x) - 1.0 / v(x) ** 3) <= 1e-7
    # library residual with the default stencil, at its roundoff floor
    assert abs(ep_residual(_field(v), SEP_OMEGA, -1.0, x)) <= 1e-6


def test_pinney_inputs_validate():
    with pytest.raises(ValueError):
        PinneyInputs(sep_inputs().u1, sep_inputs().u2, -1.0, 0.0)
    inp = sep_inputs()
    assert inp.max_ode_residual(SEP_OMEGA, SYM[::10]) <= 1e-7


def test_pinney_negative_radicand():
    with pytest.raises(DomainError):
        pinney_solution(sep_inputs(1.0), 0.0)
    with pytest.raises(DomainError):
        v_sep(1.0, 0.0)


@given(st.floats(-3, 3))
def test_v_sep_zero_coupling(x):
    assert v_sep(0.0, x) == pytest.approx(2 / SQRT5 * abs(math.sinh(PHI_TILDE * x)), rel=1e-14, abs=1e-12)


def test_v_sep_matches_pinney_formula():
    for k in (-1.0, -0.5, -2.0):
        inp = sep_inputs(k)
        assert max(abs(v_sep(k, x) - pinney_solution(inp, x)) for x in SYM) <= 1e-12


def test_v_sep_residual_over_grid():
    v = _field(lambda s: v_sep(-1.0, s))
    worst = max(abs(ep_residual(v, SEP_OMEGA, -1.0, x)) / (1 + v(x)) for x in SYM)
    assert worst <= 1e-6


@pytest.mark.parametrize("p", list(Parity))
@pytest.mark.parametrize("gamma", [2.0, 3.0, 4.0])
def test_v_deformed_zero_coupling_is_first_solution(p, gamma):
    for x in (0.3, 1.0, 4.0):
        assert v_deformed(p, gamma, 0.0, x) == pytest.approx(abs(deformed_F(p, gamma, x).value), abs=1e-12)


@pytest.mark.parametrize("p", list(Parity))
@pytest.mark.parametrize("k", [-1.0, -0.3])
def test_v_deformed_is_pinney_of_deformed_pair(p, k):
    inp = deformed_inputs(p, 2.0, k)
    for x in DEFORMED_GRID[::9]:
        assert v_deformed(p, 2.0, k, x) == pytest.approx(pinney_solution(inp, x), rel=1e-12)


def _deformed_residuals(p, gamma, k, x):
    v = _field(lambda s: v_deformed(p, gamma, k, s))
    pot = _field(lambda s: deformed_potential_closed(p, gamma, s))
    neg = _field(lambda s: -deformed_potential_closed(p, gamma, s))
    scale = 1 + v(x)
    return ep_residual(v, neg, k, x) / scale, ep_residual(v, pot, k, x) / scale


def test_v_deformed_ep_residual_example():
    minus, plus = _deformed_residuals(Parity.ODD, 2.0, -1.0, 1.0)
    assert abs(minus) <= 1e-6
    assert abs(plus) > 1e-2


@pytest.mark.parametrize("p", list(Parity))
@pytest.mark.parametrize("gamma", [2.0, 3.0, 4.0])
def test_v_deformed_only_minus_convention_holds(p, gamma):
    res = [_deformed_residuals(p, gamma, -1.0, x) for x in DEFORMED_GRID]
    assert max(abs(m) for m, _ in res) <= 1e-6
    assert max(abs(q) for _, q in res) > 1e-2


@pytest.mark.parametrize("gamma", [2.0, 3.0])
def test_v_deformed_even_limit_at_origin(gamma):
    limit = gamma / PHI_TILDE  # sqrt(-k) gamma / phi_tilde with k = -1
    assert v_deformed(Parity.EVEN, gamma, -1.0, 1e-9) == pytest.approx(limit, rel=1e-7)
    with pytest.raises(SingularPoint):
        v_deformed(Parity.EVEN, gamma, -1.0, 0.0)


def test_v_deformed_domain():
    with pytest.raises(DomainError):
        v_deformed(Parity.ODD, 2.0, 5000.0, 3.0)


@pytest.mark.parametrize(
    "m, n, expected",
    [(1, 0, 1.0), (0, 1, 0.14820148516940440), (1, 1, 1.14820148516940440)],
)
def test_sep_invariant_values(m, n, expected):
    rep = invariant_profile(sep_inputs(-1.0), m, n, SYM)
    assert rep.mean == pytest.approx(expected, abs=1e-8)
    assert rep.closed_form == pytest.approx(expected, abs=1e-12)
    assert rep.max_abs_deviation <= 1e-8
    assert len(rep.values) == len(rep.grid) == 201


def test_sep_invariant_zero_coupling_is_constant():
    rep = invariant_profile(sep_inputs(0.0), 0.7, 1.3, [x for x in SYM if abs(x) > 1e-9])
    assert rep.max_abs_deviation <= 1e-8 * max(1, abs(rep.mean))
    assert rep.mean == pytest.approx(1.3**2 * SEP_WRONSKIAN**2, rel=1e-10)


@pytest.mark.parametrize("m", [0, 1])
@pytest.mark.parametrize("n", [0, 1])
@pytest.mark.parametrize("k", [-1.0, -0.5])
def test_invariant_flatness(m, n, k):
    if m == n == 0:
        pytest.skip("trivial superposition")
    rep = invariant_profile(sep_inputs(k), m, n, SYM)
    assert rep.max_abs_deviation <= 1e-8 * max(1, abs(rep.mean))
    assert abs(rep.mean - invariant_closed(m, n, k, SEP_WRONSKIAN)) <= 1e-8


def test_half_factor_form_is_not_the_closed_form():
    rep = invariant_profile(sep_inputs(-1.0), 0, 1, SYM)
    assert abs(0.5 * rep.mean - 16 * PHI_TILDE**2 / 25) > 1e-2


@pytest.mark.parametrize("p", list(Parity))
def test_deformed_invariants_are_gamma_independent(p):
    means = []
    for gamma in (2.0, 3.0, 4.0):
        inp = deformed_inputs(p, gamma, -1.0)
        assert inp.wronskian == pytest.approx(W_CANONICAL, rel=1e-13)
        rep = invariant_profile(inp, 1.0, 1.0, DEFORMED_GRID)
        assert rep.max_abs_deviation <= 1e-8 * max(1, abs(rep.mean))
        assert abs(rep.mean - rep.closed_form) <= 1e-8
        means.append(rep.mean)
    assert max(means) - min(means) <= 1e-8


def test_invariant_profile_skips_invalid_points():
    rep = invariant_profile(sep_inputs(0.1), 1, 0, [-4.0, 0.0, 4.0])
    assert rep.skipped == [0.0]
    assert rep.grid == [-4.0, 4.0]
    assert rep.max_abs_deviation <= 1e-8


def test_invariant_report_json():
    rep = invariant_profile(sep_inputs(-1.0), 0, 1, SYM[:5])
    data = json.loads(json.dumps(rep.to_dict()))
    assert set(data) >= {"grid", "values", "mean", "max_abs_deviation", "closed_form"}


def test_invariant_closed_examples():
    assert invariant_closed(1, 0, -0.7, 3.0) == pytest.approx(0.7)
    assert invariant_closed(0, 1, -1.0, -4 * PHI_TILDE / 5) == pytest.approx(0.14820148516940440, abs=1e-15)
    assert invariant_closed(0, 0, 2.0, 5.0) == 0


def test_ep_residual_trivial():
    assert ep_residual(constant_field(1.0), constant_field(0.0), 0.0, 0.5) == 0
    with pytest.raises(DomainError):
        ep_residual(constant_field(0.0), constant_field(0.0), 1.0, 0.5)
