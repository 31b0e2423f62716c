"""Growth series of pointed graphs and intermediate-growth diagnostics.

Ball sizes are exact integers; logarithms are only taken when a report is
produced.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .errors import InsufficientRadius
from .integer_model import auto_ball
from .schreier import OMEGA, OmegaSpec, SchreierAction, ball_sizes

SAMPLE_POINTS = (8, 16, 32, 64)
CSV_HEADER = ("r", "gamma", "log2gamma", "exponent")
DEFAULT_RADIUS = 64
MAX_ACTION_RADIUS = 96


@dataclass(frozen=True)
class GrowthSeries:
    model: str
    basepoint: str
    values: tuple  # values[r] = size of the closed ball of radius r

    @property
    def radius(self) -> int:
        return len(self.values) - 1

    def invariant_violations(self) -> list:
        v = self.values
        problems = []
        if not v or v[0] != 1:
            problems.append("gamma(0) != 1")
        for r in range(len(v) - 1):
            if v[r + 1] < v[r]:
                problems.append(f"gamma decreases at {r}")
            if v[r + 1] > 5 * v[r]:
                problems.append(f"gamma({r + 1}) > 5 gamma({r})")
        return problems


class ActionModel:
    name = "action"

    def __init__(self, omega: OmegaSpec = OMEGA, max_radius: int = MAX_ACTION_RADIUS):
        self.action = SchreierAction(omega=omega)
        self.max_radius = max_radius

    def ball(self, center, radius):
        if radius > self.max_radius:
            raise InsufficientRadius(f"radius {radius} exceeds the guard {self.max_radius}")
        return self.action.ball(center, radius)


class IntegerModel:
    """Integer-line model; ``basepoint`` is an integer label."""

    name = "integer"

    def __init__(self, omega: OmegaSpec = OMEGA, max_radius: int = MAX_ACTION_RADIUS):
        self.omega = omega
        self.max_radius = max_radius

    def ball(self, center, radius):
        if radius > self.max_radius:
            raise InsufficientRadius(f"radius {radius} exceeds the guard {self.max_radius}")
        _, dist = auto_ball(self.omega, int(center), radius)
        return dist


def growth_series(model, basepoint, radius: int) -> GrowthSeries:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    sizes_fn = getattr(model, "ball_sizes", None)
    if sizes_fn is not None:
        values = sizes_fn(basepoint, radius)
    else:
        values = ball_sizes(model.ball(basepoint, radius), radius)
    return GrowthSeries(model.name, str(basepoint), tuple(values))


def _strictly(seq, cmp) -> bool:
    return all(cmp(x, y) for x, y in zip(seq, seq[1:]))


def diagnostics(series: GrowthSeries) -> dict:
    """Intermediate-growth signatures at radii 8, 16, 32, 64 (those within range).

    * superpolynomial: ``log2 gamma(n) / log2 n`` strictly increasing;
    * root test: ``gamma(n)^(1/n)`` strictly decreasing;
    * quasi-polynomial bound: ``log2 gamma(n) / (log2 n)^2`` strictly decreasing.

    The root test alone cannot reject exponential growth (a tree has
    ``gamma(n)^(1/n)`` decreasing towards its branching number), so
    ``subexponential`` requires both of the last two.
    """
    if series.radius < 16:
        raise InsufficientRadius("diagnostics need a series of radius at least 16")
    points = [n for n in SAMPLE_POINTS if n <= series.radius]
    exponent, root, log_square = {}, {}, {}
    for n in points:
        lg = math.log2(series.values[n])
        exponent[n] = lg / math.log2(n)
        root[n] = 2 ** (lg / n)
        log_square[n] = lg / math.log2(n) ** 2
    superpolynomial = _strictly([exponent[n] for n in points], lambda x, y: x < y)
    root_decreasing = _strictly([root[n] for n in points], lambda x, y: x > y)
    log_square_decreasing = _strictly([log_square[n] for n in points], lambda x, y: x > y)
    return {
        "model": series.model,
        "basepoint": series.basepoint,
        "radius": series.radius,
        "points": points,
        "gamma": {n: series.values[n] for n in points},
        "exponent": exponent,
        "root": root,
        "log_square": log_square,
        "superpolynomial": superpolynomial,
        "root_decreasing": root_decreasing,
        "log_square_decreasing": log_square_decreasing,
        "subexponential": root_decreasing and log_square_decreasing,
        "intermediate": superpolynomial and root_decreasing and log_square_decreasing,
    }


def _fmt(x: float) -> str:
    return format(x, ".10g")


def to_csv(series: GrowthSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r, g in enumerate(series.values):
        lg = math.log2(g)
        exponent = _fmt(lg / math.log2(r)) if r >= 2 else ""
        writer.writerow([r, g, _fmt(lg), exponent])
    return buf.getvalue()


def export_csv(series: GrowthSeries, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(to_csv(series))


def from_csv(text: str, model: str = "csv", basepoint: str = "") -> GrowthSeries:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"expected header {','.join(CSV_HEADER)}")
    values = []
    for i, row in enumerate(rows[1:]):
        if int(row[0]) != i:
            raise ValueError(f"row {i} has radius {row[0]}")
        values.append(int(row[1]))
    return GrowthSeries(model, basepoint, tuple(values))


def read_csv(path, model: str = "csv", basepoint: str = "") -> GrowthSeries:
    with open(path, newline="") as fh:
        return from_csv(fh.read(), model, basepoint)
