"""Ermakov-Pinney solutions and Ermakov-Lewis invariants.

For u'' + omega^2 u = 0 with independent solutions u1, u2 of Wronskian W,
Pinney's combination v = sqrt(u1^2 - k u2^2 / W^2) solves

    v'' + omega^2 v + k v^-3 = 0,

and for any solution u = M u1 + N u2 the bracket

    I = -k (u/v)^2 + (u' v - u v')^2

is constant and equal to N^2 W^2 - M^2 k. No factor 1/2 is applied.

For the Fibonacci oscillators omega^2 = -phi_tilde^2 (plain) and
omega^2 = -V_gamma (deformed, V_gamma from
:func:`darboux_fib.sequences.deformed_potential_closed`).
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from . import numerics
from .darboux import ScalarField
from .errors import DomainError, SingularPoint
from .fibcore import COTH_CUTOFF, PHI_TILDE, W_CANONICAL, Parity, fib_parity, fib_parity_derivative
from .sequences import bracket_times_hyperbolic, branch_denominator, deformed_F_field, deformed_G_field

SEP_WRONSKIAN = -W_CANONICAL


@dataclass(frozen=True)
class PinneyInputs:
    u1: ScalarField
    u2: ScalarField
    k: float
    wronskian: float

    def __post_init__(self) -> None:
        if abs(self.wronskian) <= 1e-12:
            raise ValueError("u1 and u2 must be linearly independent (|W| > 1e-12)")

    def measured_wronskian(self, x: float) -> float:
        return self.u1(x) * self.u2.eval_derivative(x) - self.u1.eval_derivative(x) * self.u2(x)

    def max_ode_residual(self, omega_sq: ScalarField, points: Iterable[float]) -> float:
        """Largest scaled residual of u'' + omega^2 u over both solutions."""
        worst = 0.0
        for x in points:
            for u in (self.u1, self.u2):
                r = numerics.derivative(u.fn, x, 2) + omega_sq(x) * u(x)
                worst = max(worst, abs(r) / (1.0 + abs(u(x))))
        return worst


@dataclass(frozen=True)
class InvariantReport:
    grid: list[float]
    values: list[float]
    mean: float
    max_abs_deviation: float
    closed_form: float
    skipped: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "grid": self.grid,
            "values": self.values,
            "mean": self.mean,
            "max_abs_deviation": self.max_abs_deviation,
            "closed_form": self.closed_form,
            "skipped": self.skipped,
        }


def sep_inputs(k: float = -1.0) -> PinneyInputs:
    """u1 = F_e, u2 = F_o for the plain Fibonacci oscillator, W = -4 phi_tilde/5."""
    fe = ScalarField(
        lambda x: fib_parity(Parity.EVEN, x),
        lambda x: fib_parity_derivative(Parity.EVEN, x),
        name="F_e",
    )
    fo = ScalarField(
        lambda x: fib_parity(Parity.ODD, x),
        lambda x: fib_parity_derivative(Parity.ODD, x),
        name="F_o",
    )
    return PinneyInputs(fe, fo, k, SEP_WRONSKIAN)


def deformed_inputs(
    p: Parity | str,
    gamma: float,
    k: float = -1.0,
    w_norm: float = W_CANONICAL,
    reference_x: float = 1.0,
) -> PinneyInputs:
    """Deformed pair (A F, B F); the Wronskian is measured at ``reference_x``."""
    u1 = deformed_F_field(p, gamma)
    u2 = deformed_G_field(p, gamma, w_norm)
    provisional = PinneyInputs(u1, u2, k, w_norm)
    return PinneyInputs(u1, u2, k, provisional.measured_wronskian(reference_x))


def _radicand(inp: PinneyInputs, x: float) -> tuple[float, float, float]:
    a, b = inp.u1(x), inp.u2(x)
    rad = a * a - inp.k * b * b / inp.wronskian**2
    if rad < 0:
        raise DomainError(f"Pinney radicand {rad!r} < 0 at x={x!r} (k={inp.k!r})")
    return rad, a, b


def pinney_solution(inp: PinneyInputs, x: float) -> float:
    return math.sqrt(_radicand(inp, x)[0])


def _pinney_with_slope(inp: PinneyInputs, x: float) -> tuple[float, float]:
    rad, a, b = _radicand(inp, x)
    v = math.sqrt(rad)
    if v == 0:
        raise DomainError(f"Pinney solution vanishes at x={x!r}")
    da, db = inp.u1.eval_derivative(x), inp.u2.eval_derivative(x)
    return v, (a * da - inp.k * b * db / inp.wronskian**2) / v


def v_sep(k: float, x: float) -> float:
    """Pinney solution of v'' - phi_tilde^2 v + k v^-3 = 0 built from F_e, F_o."""
    t = PHI_TILDE * x
    rad = 0.8 * math.sinh(t) ** 2 - 5.0 * k * math.cosh(t) ** 2 / (4.0 * PHI_TILDE**2)
    if rad < 0:
        raise DomainError(f"SEP radicand {rad!r} < 0 at x={x!r} (k={k!r})")
    return math.sqrt(rad)


def v_deformed(p: Parity | str, gamma: float, k: float, x: float) -> float:
    """Pinney solution for the deformed pair; independent of w_norm."""
    p = Parity.parse(p)
    if p is Parity.EVEN and abs(PHI_TILDE * x) <= COTH_CUTOFF:
        raise SingularPoint("even deformed Pinney closed form is singular at x = 0")
    d = branch_denominator(p, gamma, x)
    h = math.cosh(PHI_TILDE * x) if p is Parity.ODD else math.sinh(PHI_TILDE * x)
    q = bracket_times_hyperbolic(p, gamma, x)[0]
    rad = 256.0 * PHI_TILDE**6 * h * h - k * q * q
    if rad < 0:
        raise DomainError(f"deformed Pinney radicand {rad!r} < 0 at x={x!r} (k={k!r})")
    return math.sqrt(rad) / (4.0 * PHI_TILDE**2 * abs(d))


def invariant_closed(m: float, n: float, k: float, wronskian: float) -> float:
    """N^2 W^2 - M^2 k."""
    return n * n * wronskian * wronskian - m * m * k


def invariant_profile(
    inp: PinneyInputs, m: float, n: float, grid: Iterable[float]
) -> InvariantReport:
    """Evaluate the Ermakov-Lewis bracket for u = m u1 + n u2 along ``grid``.

    Points where the Pinney solution is undefined are skipped and listed in
    ``skipped`` rather than aborting the profile.
    """
    xs, values, skipped = [], [], []
    for x in grid:
        try:
            v, dv = _pinney_with_slope(inp, x)
        except DomainError:
            skipped.append(x)
            continue
        u = m * inp.u1(x) + n * inp.u2(x)
        du = m * inp.u1.eval_derivative(x) + n * inp.u2.eval_derivative(x)
        xs.append(x)
        values.append(-inp.k * (u / v) ** 2 + (du * v - u * dv) ** 2)
    mean = math.fsum(values) / len(values) if values else math.nan
    deviation = max((abs(val - mean) for val in values), default=math.nan)
    return InvariantReport(
        grid=xs,
        values=values,
        mean=mean,
        max_abs_deviation=deviation,
        closed_form=invariant_closed(m, n, inp.k, inp.wronskian),
        skipped=skipped,
    )


def ep_residual(v: ScalarField, omega_sq: ScalarField, k: float, x: float) -> float:
    """v'' + omega^2 v + k v^-3, with v'' from central differences."""
    value = v(x)
    if value == 0:
        raise DomainError(f"EP residual undefined where v vanishes (x={x!r})")
    return numerics.derivative(v.fn, x, 2) + omega_sq(x) * value + k / value**3
