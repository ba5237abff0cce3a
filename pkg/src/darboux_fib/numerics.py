"""Finite differences, adaptive Simpson quadrature, grids and residual norms."""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .errors import EvaluationFailure, LengthMismatch, QuadratureFailure

DEFAULT_TOL = 1e-10
MAX_EVALUATIONS = 1_000_000
_MIN_DEPTH = 3
_MAX_DEPTH = 100
_REL_FLOOR = 1e-14


@dataclass(frozen=True)
class Grid:
    """Uniform grid with both endpoints represented exactly."""

    start: float
    stop: float
    count: int
    points: tuple[float, ...]

    @classmethod
    def uniform(cls, start: float, stop: float, count: int) -> Grid:
        if count < 1:
            raise ValueError("grid needs at least one point")
        if count == 1:
            if start != stop:
                raise ValueError("a one-point grid needs start == stop")
            return cls(start, stop, 1, (float(start),))
        if not stop > start:
            raise ValueError("grid stop must exceed start")
        width = (stop - start) / (count - 1)
        pts = [start + i * width for i in range(count - 1)]
        pts.append(float(stop))
        return cls(float(start), float(stop), count, tuple(pts))

    @classmethod
    def stepped(cls, start: float, stop: float, step: float) -> Grid:
        """Grid start, start+step, ... up to stop (kept if it lands on the lattice)."""
        if step <= 0:
            raise ValueError("step must be positive")
        if stop < start:
            raise ValueError("grid stop must not precede start")
        n = int(math.floor((stop - start) / step + 1e-9))
        if n == 0:
            return cls(float(start), float(start), 1, (float(start),))
        end = start + n * step
        if math.isclose(end, stop, rel_tol=1e-12, abs_tol=1e-12):
            end = stop
        return cls.uniform(start, end, n + 1)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return self.count


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


def derivative(f: Callable[[float], float], x: float, order: int = 1) -> float:
    """Fourth-order central difference of ``f`` at ``x``.

    The step is ``1e-5 * max(1, |x|)`` for the first derivative and
    ``1e-4 * max(1, |x|)`` for the second.
    """
    scale = max(1.0, abs(x))
    try:
        if order == 1:
            h = 1e-5 * scale
            return (
                -f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)
            ) / (12 * h)
        if order == 2:
            h = 1e-4 * scale
            return (
                -f(x + 2 * h) + 16 * f(x + h) - 30 * f(x)
                + 16 * f(x - h) - f(x - 2 * h)
            ) / (12 * h * h)
    except (ArithmeticError, ValueError) as exc:
        raise EvaluationFailure(f"stencil evaluation failed near x={x!r}: {exc}") from exc
    raise ValueError(f"unsupported derivative order {order!r}")


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    max_evaluations: int = MAX_EVALUATIONS,
) -> QuadratureResult:
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    Intervals are refined until the Simpson halves agree to
    ``15 * max(tol_local, 1e-14 * |S|)``; accepted panels carry the
    Richardson correction. Panels are visited left to right and summed with
    ``math.fsum`` so the result does not depend on anything but the inputs.
    A reversed interval returns the negated integral.

    Raises:
        QuadratureFailure: the evaluation cap is reached or refinement
            bottoms out without meeting the tolerance.
    """
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    if tol <= 0:
        raise ValueError("tol must be positive")

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    evals = 3
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    pieces: list[float] = []
    errors: list[float] = []
    while stack:
        lo, hi, flo, fmid, fhi, s_whole, local_tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        evals += 2
        if evals > max_evaluations:
            raise QuadratureFailure(
                f"evaluation cap {max_evaluations} reached on [{a}, {b}]"
            )
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        both = left + right
        delta = both - s_whole
        converged = abs(delta) <= 15.0 * max(local_tol, _REL_FLOOR * abs(both))
        if depth >= _MIN_DEPTH and converged:
            pieces.append(both + delta / 15.0)
            errors.append(abs(delta) / 15.0)
            continue
        if depth >= _MAX_DEPTH or lm in (lo, mid) or rm in (mid, hi):
            raise QuadratureFailure(
                f"refinement exhausted near x={mid!r} without meeting tol={tol!r}"
            )
        half = 0.5 * local_tol
        stack.append((mid, hi, fmid, frm, fhi, right, half, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, half, depth + 1))

    return QuadratureResult(sign * math.fsum(pieces), math.fsum(errors), evals)


def residual_norm(values: Sequence[float], scale: Sequence[float]) -> float:
    """Max of ``|values[i]| / (1 + scale[i])``."""
    if len(values) != len(scale):
        raise LengthMismatch(f"{len(values)} values vs {len(scale)} scales")
    if any(s < 0 for s in scale):
        raise ValueError("scale entries must be nonnegative")
    return max((abs(v) / (1.0 + s) for v, s in zip(values, scale)), default=0.0)
