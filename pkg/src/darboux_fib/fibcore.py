"""Golden-ratio constants and the discrete/continuous Fibonacci functions."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import OutOfRange, SingularPoint

MAX_EXACT_INDEX = 90
MAX_BINET_INDEX = 70
# coth(phi_tilde * x) is only evaluated above this |phi_tilde * x|.
COTH_CUTOFF = 1e-12


@dataclass(frozen=True)
class GoldenConstants:
    phi: float
    phi_tilde: float
    w_canonical: float
    sqrt5: float

    @classmethod
    def compute(cls) -> GoldenConstants:
        sqrt5 = math.sqrt(5.0)
        phi = (1.0 + sqrt5) / 2.0
        phi_tilde = math.log(phi)
        return cls(phi=phi, phi_tilde=phi_tilde, w_canonical=4.0 * phi_tilde / 5.0, sqrt5=sqrt5)


GOLDEN = GoldenConstants.compute()
PHI = GOLDEN.phi
PHI_TILDE = GOLDEN.phi_tilde
SQRT5 = GOLDEN.sqrt5
W_CANONICAL = GOLDEN.w_canonical


class Parity(str, enum.Enum):
    """Branch selector: ``EVEN`` is the sinh family, ``ODD`` the cosh family."""

    EVEN = "even"
    ODD = "odd"

    @classmethod
    def parse(cls, value: str | Parity) -> Parity:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"parity must be 'even' or 'odd', got {value!r}") from None

    def __str__(self) -> str:
        return self.value


def fib_discrete(n: int) -> int:
    """F_n from the integer recurrence, F_0 = 0, F_1 = 1."""
    if n < 0 or n > MAX_EXACT_INDEX:
        raise OutOfRange(f"n must lie in [0, {MAX_EXACT_INDEX}], got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fib_binet(n: int) -> float:
    """Binet formula written with exponentials of ln(phi)."""
    if n < 0 or n > MAX_BINET_INDEX:
        raise OutOfRange(f"n must lie in [0, {MAX_BINET_INDEX}], got {n}")
    sign = -1.0 if n % 2 else 1.0
    return (math.exp(PHI_TILDE * n) - sign * math.exp(-PHI_TILDE * n)) / SQRT5


def fib_continuous(x: float) -> float:
    """Continuous Fibonacci function; cos(pi x) replaces (-1)^n."""
    return (math.exp(PHI_TILDE * x) - math.cos(math.pi * x) * math.exp(-PHI_TILDE * x)) / SQRT5


def fib_parity(p: Parity | str, x: float) -> float:
    """Even component (2/sqrt5) sinh(phi_tilde x) or odd component (2/sqrt5) cosh(phi_tilde x)."""
    p = Parity.parse(p)
    t = PHI_TILDE * x
    return 2.0 / SQRT5 * (math.sinh(t) if p is Parity.EVEN else math.cosh(t))


def fib_parity_derivative(p: Parity | str, x: float, order: int = 1) -> float:
    p = Parity.parse(p)
    if order == 2:
        return PHI_TILDE * PHI_TILDE * fib_parity(p, x)
    if order != 1:
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    t = PHI_TILDE * x
    return 2.0 * PHI_TILDE / SQRT5 * (math.cosh(t) if p is Parity.EVEN else math.sinh(t))


def fc_source_term(x: float) -> float:
    """r(x) with F_c'' - phi_tilde**2 F_c = r(x).

    Only the oscillating part of F_c contributes; the growing exponential
    solves the homogeneous equation.
    """
    px = math.pi * x
    return (
        math.exp(-PHI_TILDE * x)
        * (math.pi**2 * math.cos(px) - 2.0 * math.pi * PHI_TILDE * math.sin(px))
        / SQRT5
    )


def log_derivative(p: Parity | str, x: float) -> float:
    """Negative logarithmic derivative -F'/F of the parity component."""
    p = Parity.parse(p)
    t = PHI_TILDE * x
    if p is Parity.ODD:
        return -PHI_TILDE * math.tanh(t)
    if abs(t) <= COTH_CUTOFF:
        raise SingularPoint("even log-derivative is singular at x = 0")
    return -PHI_TILDE / math.tanh(t)
