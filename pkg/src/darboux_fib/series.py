"""Sampled (x, value) series for the figure data."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Callable
from dataclasses import dataclass

from .errors import DomainError, PoleEncountered, SingularPoint
from .ermakov import v_deformed, v_sep
from .fibcore import W_CANONICAL, Parity, fib_continuous, fib_parity
from .numerics import Grid
from .sequences import deformed_F, deformed_G, deformed_potential_closed, factor_A, factor_B

FUNCTIONS = ("fc", "fe", "fo", "A", "B", "F", "G", "potential", "pinney", "v_deformed")


@dataclass(frozen=True)
class SamplePoint:
    x: float
    value: float | None
    status: str  # ok | pole | singular


@dataclass(frozen=True)
class SampleSeries:
    function: str
    parity: Parity
    gamma: float
    k: float
    w_norm: float
    points: tuple[SamplePoint, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "value", "status"])
        for pt in self.points:
            writer.writerow([f"{pt.x:.6f}", "" if pt.value is None else f"{pt.value:.6f}", pt.status])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "parity": self.parity.value,
            "gamma": self.gamma,
            "k": self.k,
            "w_norm": self.w_norm,
            "points": [{"x": p.x, "value": p.value, "status": p.status} for p in self.points],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _evaluator(
    function: str, p: Parity, gamma: float, k: float, w_norm: float
) -> Callable[[float], float]:
    table: dict[str, Callable[[float], float]] = {
        "fc": fib_continuous,
        "fe": lambda x: fib_parity(Parity.EVEN, x),
        "fo": lambda x: fib_parity(Parity.ODD, x),
        "A": lambda x: factor_A(p, gamma, x),
        "B": lambda x: factor_B(p, gamma, w_norm, x),
        "F": lambda x: deformed_F(p, gamma, x).value,
        "G": lambda x: deformed_G(p, gamma, w_norm, x).value,
        "potential": lambda x: deformed_potential_closed(p, gamma, x),
        "pinney": lambda x: v_sep(k, x),
        "v_deformed": lambda x: v_deformed(p, gamma, k, x),
    }
    try:
        return table[function]
    except KeyError:
        raise ValueError(f"unknown function {function!r}; choose from {', '.join(FUNCTIONS)}") from None


def sample(
    function: str,
    parity: Parity | str = Parity.ODD,
    gamma: float = 2.0,
    k: float = -1.0,
    start: float = 0.0,
    stop: float = 8.0,
    step: float = 0.05,
    w_norm: float = W_CANONICAL,
) -> SampleSeries:
    """Evaluate ``function`` on start, start+step, ..., stop.

    Poles and singular points produce flagged rows with no value.
    """
    p = Parity.parse(parity)
    fn = _evaluator(function, p, gamma, k, w_norm)
    points = []
    for x in Grid.stepped(start, stop, step):
        try:
            points.append(SamplePoint(x, fn(x), "ok"))
        except PoleEncountered:
            points.append(SamplePoint(x, None, "pole"))
        except (SingularPoint, DomainError):
            points.append(SamplePoint(x, None, "singular"))
    return SampleSeries(function, p, gamma, k, w_norm, tuple(points))
