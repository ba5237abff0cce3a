"""One-parameter Darboux deformation of operators D^2 - f(x).

The engine works with a particular Riccati solution ``phi`` of
``-phi' + phi**2 = f`` and builds the Bernoulli correction

    1/u(x) = K(x) / (gamma + integral_{x0}^{x} K),   K = exp(-2 * int phi),

the general Riccati solution ``phi + 1/u`` of the partner problem, and the
family potential ``f + 4 phi/u + 2/u**2`` whose solutions are
``F / (gamma + int F**2)``.

The inner integral ``int phi`` is indefinite, so K is only fixed up to a
constant factor. A :class:`ScalarField` may carry the matching solution
``exp(-int phi)`` explicitly; the bundled Fibonacci fields use
``cosh(phi_tilde x)`` and ``sinh(phi_tilde x)``, for which the engine's
``gamma`` coincides with the closed forms in :mod:`darboux_fib.sequences`.
Without it, K is normalised to 1 at ``x0`` by quadrature.

Seeding :func:`deformed_solution_quadrature` with ``F_o = (2/sqrt5) cosh``
instead reproduces the closed-form denominators only for
``gamma_int = 4 gamma / 5``, and the result is then ``sqrt5/2`` times the
closed-form solution.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

from . import numerics
from .errors import DomainError, PoleEncountered
from .fibcore import PHI_TILDE, W_CANONICAL, Parity, log_derivative

RealFunction = Callable[[float], float]


@dataclass(frozen=True)
class ScalarField:
    """A real function on the open interval ``(domain_min, domain_max)``.

    ``derivative`` is used when given, otherwise fourth-order central
    differences. ``solution`` is only meaningful for Riccati fields: the
    function ``exp(-int phi)`` with a definite choice of constant.
    """

    fn: RealFunction
    derivative: RealFunction | None = None
    solution: RealFunction | None = None
    domain_min: float = -math.inf
    domain_max: float = math.inf
    name: str = "field"

    def contains(self, x: float) -> bool:
        return self.domain_min < x < self.domain_max

    def _check(self, x: float) -> None:
        if not self.contains(x):
            raise DomainError(
                f"x={x!r} outside ({self.domain_min}, {self.domain_max}) of {self.name}"
            )

    def eval(self, x: float) -> float:
        self._check(x)
        return self.fn(x)

    __call__ = eval

    def eval_derivative(self, x: float) -> float:
        self._check(x)
        if self.derivative is not None:
            return self.derivative(x)
        return numerics.derivative(self.fn, x, 1)


@dataclass(frozen=True)
class DeformationParams:
    gamma: float
    w_norm: float = W_CANONICAL
    k: float = -1.0
    m_weight: float = 1.0
    n_weight: float = 0.0

    def __post_init__(self) -> None:
        if self.w_norm == 0:
            raise ValueError("w_norm must be nonzero")

    def require_positive_gamma(self) -> DeformationParams:
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive for the Fibonacci branches, got {self.gamma}")
        return self


def constant_field(c: float, name: str | None = None) -> ScalarField:
    return ScalarField(fn=lambda x: c, derivative=lambda x: 0.0, name=name or f"const({c:g})")


def fibonacci_potential() -> ScalarField:
    """f(x) = phi_tilde**2, the hyperbolic-oscillator potential."""
    return constant_field(PHI_TILDE**2, "phi_tilde^2")


def riccati_field(p: Parity | str) -> ScalarField:
    """Phi_o = -phi_tilde tanh or Phi_e = -phi_tilde coth, with their linearising solutions."""
    p = Parity.parse(p)
    a = PHI_TILDE
    if p is Parity.ODD:
        return ScalarField(
            fn=lambda x: log_derivative(Parity.ODD, x),
            derivative=lambda x: -a * a / math.cosh(a * x) ** 2,
            solution=lambda x: math.cosh(a * x),
            name="Phi_o",
        )
    return ScalarField(
        fn=lambda x: log_derivative(Parity.EVEN, x),
        derivative=lambda x: a * a / math.sinh(a * x) ** 2,
        solution=lambda x: math.sinh(a * x),
        domain_min=0.0,
        name="Phi_e",
    )


def seed_field(p: Parity | str) -> ScalarField:
    """cosh(phi_tilde x) (odd) or sinh(phi_tilde x) (even): F_parity scaled to sqrt5/2."""
    p = Parity.parse(p)
    a = PHI_TILDE
    if p is Parity.ODD:
        return ScalarField(lambda x: math.cosh(a * x), lambda x: a * math.sinh(a * x), name="cosh")
    return ScalarField(lambda x: math.sinh(a * x), lambda x: a * math.cosh(a * x), name="sinh")


def partner_potential_field(p: Parity | str) -> ScalarField:
    """Non-parametric partner potential phi' + phi**2 of the Fibonacci branch."""
    p = Parity.parse(p)
    a2 = PHI_TILDE**2
    if p is Parity.ODD:
        return ScalarField(
            lambda x: a2 * (1.0 - 2.0 / math.cosh(PHI_TILDE * x) ** 2), name="partner_o"
        )
    return ScalarField(
        lambda x: a2 * (1.0 + 2.0 / math.sinh(PHI_TILDE * x) ** 2),
        domain_min=0.0,
        name="partner_e",
    )


def riccati_residual(
    phi: ScalarField,
    f: ScalarField,
    x: float,
    sign: Literal["forward", "partner"] = "forward",
) -> float:
    """``-phi' + phi**2 - f`` (forward) or ``phi' + phi**2 - f`` (partner)."""
    value = phi.eval(x)
    slope = phi.eval_derivative(x)
    if sign == "forward":
        return -slope + value * value - f.eval(x)
    if sign == "partner":
        return slope + value * value - f.eval(x)
    raise ValueError(f"sign must be 'forward' or 'partner', got {sign!r}")


def _kernel(phi: ScalarField, x0: float, tol: float) -> RealFunction:
    if phi.solution is not None:
        sol = phi.solution
        return lambda s: sol(s) ** 2

    def kernel(s: float) -> float:
        return math.exp(-2.0 * numerics.integrate(phi.fn, x0, s, tol).value)

    return kernel


def _bernoulli_parts(
    phi: ScalarField, gamma: float, x: float, x0: float, tol: float
) -> tuple[float, float]:
    phi._check(x)
    kernel = _kernel(phi, x0, tol)
    denominator = gamma + numerics.integrate(kernel, x0, x, tol).value
    if not denominator > 0 or not math.isfinite(denominator):
        raise PoleEncountered(
            f"gamma + integral of the Bernoulli kernel is {denominator!r} at x={x!r}"
        )
    return kernel(x), denominator


def bernoulli_term(
    phi: ScalarField,
    gamma: float,
    x: float,
    x0: float = 0.0,
    tol: float = numerics.DEFAULT_TOL,
) -> float:
    """Bernoulli correction 1/u at ``x``; u solves -u' + 2 phi u + 1 = 0.

    Raises:
        PoleEncountered: the denominator ``gamma + integral`` is not positive.
        QuadratureFailure: the quadrature cannot reach ``tol``.
    """
    k, denominator = _bernoulli_parts(phi, gamma, x, x0, tol)
    return k / denominator


def phi_general(
    phi: ScalarField,
    gamma: float,
    x: float,
    x0: float = 0.0,
    tol: float = numerics.DEFAULT_TOL,
) -> float:
    """General Riccati solution phi + 1/u of the partner equation."""
    return phi.eval(x) + bernoulli_term(phi, gamma, x, x0, tol)


def family_potential(
    phi: ScalarField,
    f: ScalarField,
    gamma: float,
    x: float,
    x0: float = 0.0,
    tol: float = numerics.DEFAULT_TOL,
) -> float:
    """Potential f + 4 phi/u + 2/u**2 of the gamma-indexed family."""
    b = bernoulli_term(phi, gamma, x, x0, tol)
    return f.eval(x) + 4.0 * phi.eval(x) * b + 2.0 * b * b


def deformed_solution_quadrature(
    F: ScalarField,
    gamma_int: float,
    x: float,
    x0: float = 0.0,
    tol: float = numerics.DEFAULT_TOL,
) -> float:
    """F(x) / (gamma_int + integral_{x0}^{x} F(s)**2 ds)."""
    value = F.eval(x)
    denominator = gamma_int + numerics.integrate(lambda s: F.fn(s) ** 2, x0, x, tol).value
    if not denominator > 0 or not math.isfinite(denominator):
        raise PoleEncountered(f"gamma_int + integral of F^2 is {denominator!r} at x={x!r}")
    return value / denominator
