"""Closed-form Darboux-deformed Fibonacci families and shift tables.

For each parity the deformed problem is y'' = V_gamma(x) y with two
independent solutions ``A * F_parity`` and ``B * F_parity``. Everything is
built on the branch denominator

    D_odd  = 2 phi_tilde (2 gamma + x) + sinh(2 phi_tilde x)
    D_even = 2 phi_tilde (2 gamma - x) + sinh(2 phi_tilde x)

The normalisation ``w_norm`` of the second solution defaults to
``4 phi_tilde / 5``, which is also the Wronskian of the pair.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

from .darboux import ScalarField
from .errors import DarbouxFibError, PoleEncountered, SingularPoint
from .fibcore import (
    COTH_CUTOFF,
    PHI_TILDE,
    SQRT5,
    W_CANONICAL,
    Parity,
    fib_discrete,
    fib_parity,
)

POLE_CUTOFF = 1e-12
MAX_TABLE_ROWS = 20

_A = PHI_TILDE


def branch_denominator(p: Parity, gamma: float, x: float) -> float:
    lin = 2.0 * gamma + x if p is Parity.ODD else 2.0 * gamma - x
    d = 2.0 * _A * lin + math.sinh(2.0 * _A * x)
    if abs(d) <= POLE_CUTOFF:
        raise PoleEncountered(f"{p} denominator vanishes at gamma={gamma!r}, x={x!r}")
    return d


def _denominator_slope(p: Parity, x: float) -> float:
    lin = 1.0 if p is Parity.ODD else -1.0
    return 2.0 * _A * (lin + math.cosh(2.0 * _A * x))


def _check_even_origin(p: Parity, x: float) -> None:
    if p is Parity.EVEN and abs(_A * x) <= COTH_CUTOFF:
        raise SingularPoint("even branch closed form contains coth(phi_tilde x); x = 0 is excluded")


def _hyperbolic(p: Parity, x: float) -> tuple[float, float]:
    """(h, h') with h = cosh (odd) or sinh (even) of phi_tilde x."""
    c, s = math.cosh(_A * x), math.sinh(_A * x)
    return (c, _A * s) if p is Parity.ODD else (s, _A * c)


def _bracket(p: Parity, gamma: float, x: float) -> float:
    t = _A * x
    if p is Parity.ODD:
        return 4 * _A**2 * (2 * gamma + x) ** 2 * math.tanh(t) - 2 * t + math.sinh(2 * t)
    return -4 * _A**2 * (x - 2 * gamma) ** 2 / math.tanh(t) + 2 * t + math.sinh(2 * t)


def bracket_times_hyperbolic(p: Parity, gamma: float, x: float) -> tuple[float, float]:
    """Bracket of B multiplied by h, and its derivative; regular at x = 0."""
    a = _A
    t = a * x
    c, s = math.cosh(t), math.sinh(t)
    s2, c2 = math.sinh(2 * t), math.cosh(2 * t)
    if p is Parity.ODD:
        lin = 2 * gamma + x
        value = 4 * a**2 * lin**2 * s + (s2 - 2 * t) * c
        slope = (
            8 * a**2 * lin * s
            + 4 * a**3 * lin**2 * c
            + 2 * a * (c2 - 1) * c
            + a * (s2 - 2 * t) * s
        )
    else:
        lin = x - 2 * gamma
        value = -4 * a**2 * lin**2 * c + (2 * t + s2) * s
        slope = (
            -8 * a**2 * lin * c
            - 4 * a**3 * lin**2 * s
            + 2 * a * (1 + c2) * s
            + a * (2 * t + s2) * c
        )
    return value, slope


@dataclass(frozen=True)
class DeformedValue:
    x: float
    base: float
    factor: float
    value: float
    gamma: float
    w_norm: float | None = None


def factor_A(p: Parity | str, gamma: float, x: float) -> float:
    p = Parity.parse(p)
    return 2.0 * SQRT5 * _A / branch_denominator(p, gamma, x)


def factor_B(p: Parity | str, gamma: float, w_norm: float, x: float) -> float:
    p = Parity.parse(p)
    _check_even_origin(p, x)
    d = branch_denominator(p, gamma, x)
    return SQRT5 * w_norm * _bracket(p, gamma, x) / (8.0 * _A**2 * d)


def deformed_F(p: Parity | str, gamma: float, x: float) -> DeformedValue:
    p = Parity.parse(p)
    base = fib_parity(p, x)
    a = factor_A(p, gamma, x)
    return DeformedValue(x=x, base=base, factor=a, value=a * base, gamma=gamma)


def deformed_G(p: Parity | str, gamma: float, w_norm: float, x: float) -> DeformedValue:
    p = Parity.parse(p)
    base = fib_parity(p, x)
    b = factor_B(p, gamma, w_norm, x)
    return DeformedValue(x=x, base=base, factor=b, value=b * base, gamma=gamma, w_norm=w_norm)


def deformed_F_derivative(p: Parity | str, gamma: float, x: float) -> float:
    p = Parity.parse(p)
    d = branch_denominator(p, gamma, x)
    h, dh = _hyperbolic(p, x)
    return 4.0 * _A * (dh * d - h * _denominator_slope(p, x)) / (d * d)


def deformed_G_derivative(p: Parity | str, gamma: float, w_norm: float, x: float) -> float:
    p = Parity.parse(p)
    d = branch_denominator(p, gamma, x)
    q, dq = bracket_times_hyperbolic(p, gamma, x)
    return w_norm * (dq * d - q * _denominator_slope(p, x)) / (4.0 * _A**2 * d * d)


def deformed_F_field(p: Parity | str, gamma: float) -> ScalarField:
    """First solution as a field; unlike :func:`deformed_F` it is defined at x = 0."""
    p = Parity.parse(p)

    def value(x: float) -> float:
        return 4.0 * _A * _hyperbolic(p, x)[0] / branch_denominator(p, gamma, x)

    return ScalarField(
        value, lambda x: deformed_F_derivative(p, gamma, x), name=f"F_{p.value[0]}(gamma={gamma:g})"
    )


def deformed_G_field(p: Parity | str, gamma: float, w_norm: float = W_CANONICAL) -> ScalarField:
    """Second solution as a field, using the coth-free form of the even branch."""
    p = Parity.parse(p)

    def value(x: float) -> float:
        return w_norm * bracket_times_hyperbolic(p, gamma, x)[0] / (4.0 * _A**2 * branch_denominator(p, gamma, x))

    return ScalarField(
        value,
        lambda x: deformed_G_derivative(p, gamma, w_norm, x),
        name=f"G_{p.value[0]}(gamma={gamma:g})",
    )


def deformed_potential_closed(p: Parity | str, gamma: float, x: float) -> float:
    """Deformed squared frequency phi_tilde^2_{gamma,parity}(x)."""
    p = Parity.parse(p)
    d = branch_denominator(p, gamma, x)
    h = _hyperbolic(p, x)[0]
    return _A**2 * (1.0 - 8.0 * math.sinh(2.0 * _A * x) / d + 32.0 * h**4 / (d * d))


def darboux_shift(p: Parity | str, gamma: float, w_norm: float, x: float) -> float:
    """Offset (B - 1) F_parity of the deformed value from the Fibonacci curve."""
    p = Parity.parse(p)
    return (factor_B(p, gamma, w_norm, x) - 1.0) * fib_parity(p, x)


def shift_even_at_zero(gamma: float, w_norm: float = W_CANONICAL) -> float:
    """x -> 0 limit of the even shift: -w_norm gamma / phi_tilde (= -4 gamma/5 by default)."""
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma!r}")
    return -w_norm * gamma / _A


@dataclass(frozen=True)
class ShiftTable:
    """Darboux shifts at consecutive same-parity Fibonacci positions.

    ``shifts[i][j]`` belongs to ``positions[i]`` and ``gammas[j]``; a cell is
    ``None`` when the closed form has a pole there, with the reason in
    ``statuses[i][j]``.
    """

    parity: Parity
    positions: tuple[int, ...]
    gammas: tuple[float, ...]
    fibonacci_values: tuple[int, ...]
    shifts: tuple[tuple[float | None, ...], ...]
    statuses: tuple[tuple[str, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.shifts) != len(self.positions) or any(
            len(row) != len(self.gammas) for row in self.shifts
        ):
            raise ValueError("shift matrix must be positions x gammas")
        if not self.statuses:
            st = tuple(tuple("ok" if c is not None else "pole" for c in row) for row in self.shifts)
            object.__setattr__(self, "statuses", st)

    @property
    def relative_shifts(self) -> tuple[tuple[float | None, ...], ...]:
        return tuple(
            tuple(None if c is None or fib == 0 else c / fib for c in row)
            for fib, row in zip(self.fibonacci_values, self.shifts)
        )

    def row_status(self, i: int) -> str:
        return next((s for s in self.statuses[i] if s != "ok"), "ok")

    def to_dict(self) -> dict:
        return {
            "parity": self.parity.value,
            "positions": list(self.positions),
            "gammas": list(self.gammas),
            "fibonacci_values": list(self.fibonacci_values),
            "shifts": [list(row) for row in self.shifts],
            "statuses": [list(row) for row in self.statuses],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["position", "fibonacci", *(f"gamma={g:.12g}" for g in self.gammas), "status"]
        )
        for i, (pos, fib, row) in enumerate(zip(self.positions, self.fibonacci_values, self.shifts)):
            cells = ["" if c is None else f"{c:.6f}" for c in row]
            writer.writerow([pos, fib, *cells, self.row_status(i)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> ShiftTable:
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        if header[:2] != ["position", "fibonacci"] or header[-1] != "status":
            raise ValueError("not a shift-table CSV")
        gammas = tuple(float(h.split("=", 1)[1]) for h in header[2:-1])
        positions = tuple(int(r[0]) for r in body)
        statuses = tuple(
            tuple("ok" if c else r[-1] for c in r[2:-1]) for r in body
        )
        return cls(
            parity=Parity.ODD if positions and positions[0] % 2 else Parity.EVEN,
            positions=positions,
            gammas=gammas,
            fibonacci_values=tuple(int(r[1]) for r in body),
            shifts=tuple(tuple(float(c) if c else None for c in r[2:-1]) for r in body),
            statuses=statuses,
        )


def shift_table(
    p: Parity | str,
    gammas: Sequence[float],
    count: int,
    w_norm: float = W_CANONICAL,
) -> ShiftTable:
    """Shifts at x = 1, 3, 5, ... (odd) or x = 0, 2, 4, ... (even).

    The even x = 0 row uses :func:`shift_even_at_zero`. Cells whose closed
    form fails are left as ``None`` and flagged instead of aborting the table.
    """
    p = Parity.parse(p)
    if not gammas:
        raise ValueError("at least one gamma is required")
    if not 1 <= count <= MAX_TABLE_ROWS:
        raise ValueError(f"count must lie in [1, {MAX_TABLE_ROWS}], got {count}")
    offset = 1 if p is Parity.ODD else 0
    positions = tuple(2 * m + offset for m in range(count))
    shifts, statuses = [], []
    for pos in positions:
        row, row_status = [], []
        for g in gammas:
            try:
                if pos == 0:
                    value = shift_even_at_zero(g, w_norm)
                else:
                    value = darboux_shift(p, g, w_norm, float(pos))
            except SingularPoint:
                row.append(None)
                row_status.append("singular")
            except (PoleEncountered, DarbouxFibError, ValueError):
                row.append(None)
                row_status.append("pole")
            else:
                row.append(value)
                row_status.append("ok")
        shifts.append(tuple(row))
        statuses.append(tuple(row_status))
    return ShiftTable(
        parity=p,
        positions=positions,
        gammas=tuple(float(g) for g in gammas),
        fibonacci_values=tuple(fib_discrete(pos) for pos in positions),
        shifts=tuple(shifts),
        statuses=tuple(statuses),
    )
