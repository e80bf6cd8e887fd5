"""
One-variable restrictions t -> f(t theta) as exact breakpoint/slope lists.

``ray_slice`` works symbolically from the monomials; ``blackbox_slice`` recovers the same data
from point evaluations of any piecewise linear function and is used for lazily evaluated
functions such as pointwise Casorati determinants.
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import BudgetExceeded, ValidationError
from ..utils.logger import get_logger
from .polynomial import TropicalPolynomial, as_point, upper_envelope_indices
from .rational import as_rational

logger = get_logger(__name__)

Breakpoint = Tuple[float, float]
# (kind, left, right, slope) of a scanned interval
Piece = Tuple[str, float, float, float]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RaySlice:
    """
    Breakpoints ``(t, J)`` of a piecewise linear function of one variable on an interval.

    ``slopes`` has one entry more than ``breakpoints``: ``slopes[0]`` holds left of the first
    breakpoint and ``slopes[k + 1] - slopes[k]`` is the jump of breakpoint ``k``.
    """

    direction: Tuple[float, ...]
    radius: float
    breakpoints: Tuple[Breakpoint, ...]
    slopes: Tuple[float, ...]
    value_at_0: float
    interval: Optional[Tuple[float, float]] = None

    def __post_init__(self) -> None:
        if len(self.slopes) != len(self.breakpoints) + 1:
            raise ValidationError("A ray slice needs exactly one more slope than breakpoints")

    @property
    def bounds(self) -> Tuple[float, float]:
        return self.interval if self.interval is not None else (-self.radius, self.radius)

    @property
    def positions(self) -> np.ndarray:
        return np.array([t for t, _ in self.breakpoints], dtype=float)

    @property
    def jumps(self) -> np.ndarray:
        return np.array([j for _, j in self.breakpoints], dtype=float)

    def poles(self) -> List[Breakpoint]:
        """Breakpoints with negative jump, as ``(t, multiplicity)``."""
        return [(t, -j) for t, j in self.breakpoints if j < 0]

    def roots(self) -> List[Breakpoint]:
        """Breakpoints with positive jump, as ``(t, multiplicity)``."""
        return [(t, j) for t, j in self.breakpoints if j > 0]

    def value(self, t: float) -> float:
        """Value at t rebuilt from value_at_0, the first slope and the jumps."""
        total = self.value_at_0 + self.slopes[0] * t
        for p, j in self.breakpoints:
            total += j * (max(t - p, 0.0) - max(-p, 0.0))
        return total

    def pole_count(self, t: float) -> float:
        """Sum of |J| over poles with |position| < t."""
        return math.fsum(-j for p, j in self.breakpoints if j < 0 and abs(p) < t)

    def counting(self, r: float) -> float:
        """(1/2) sum over poles with |p| < r of |J| (r - |p|)."""
        return 0.5 * math.fsum(
            -j * (r - abs(p)) for p, j in self.breakpoints if j < 0 and abs(p) < r
        )

    def root_counting(self, r: float) -> float:
        """Counting function of the roots, that is of the reciprocal's poles."""
        return 0.5 * math.fsum(
            j * (r - abs(p)) for p, j in self.breakpoints if j > 0 and abs(p) < r
        )

    def negated(self) -> "RaySlice":
        """The slice of -f."""
        return RaySlice(
            direction=self.direction,
            radius=self.radius,
            breakpoints=tuple((t, -j) for t, j in self.breakpoints),
            slopes=tuple(-s for s in self.slopes),
            value_at_0=-self.value_at_0,
            interval=self.interval,
        )


def _envelope_breaks(
    intercepts: np.ndarray, slopes: np.ndarray, lo: float, hi: float
) -> Tuple[List[Breakpoint], float]:
    """Convex breakpoints of max_i (a_i + s_i t) inside (lo, hi), and the slope right of lo."""
    hull = upper_envelope_indices(intercepts, slopes)
    corners = []
    for i, j in zip(hull, hull[1:]):
        t = (intercepts[i] - intercepts[j]) / (slopes[j] - slopes[i])
        corners.append((float(t), float(slopes[j] - slopes[i])))

    # hull lines are ordered by slope, so the active line right of lo follows the corners
    start = 0
    for t, _ in corners:
        if t <= lo:
            start += 1
    inside = [(t, j) for t, j in corners if lo < t < hi]
    return inside, float(slopes[hull[start]])


def _merge_breaks(items: Sequence[Breakpoint], tol: float) -> List[Breakpoint]:
    merged: List[List[float]] = []
    for t, j in sorted(items):
        if merged and abs(t - merged[-1][0]) <= tol * max(1.0, abs(t)):
            merged[-1][1] += j
        else:
            merged.append([t, j])
    return [(t, j) for t, j in merged]


def _slope_scale(left_slope: float, items: Sequence[Breakpoint]) -> float:
    return max(1.0, abs(left_slope), *(abs(j) for _, j in items)) if items else 1.0


def _finish(
    direction: Tuple[float, ...],
    interval: Tuple[float, float],
    items: Sequence[Breakpoint],
    left_slope: float,
    value_at_0: float,
    tol: float,
    symmetric: bool,
    jump_tol: Optional[float] = None,
) -> RaySlice:
    """Merge breakpoints within tol of each other and drop jumps of size at most jump_tol."""
    jump_tol = tol if jump_tol is None else jump_tol
    kept = [(t, j) for t, j in _merge_breaks(items, tol) if abs(j) > jump_tol]
    slopes = [left_slope]
    for _, j in kept:
        slopes.append(slopes[-1] + j)
    radius = max(abs(interval[0]), abs(interval[1]))
    return RaySlice(
        direction=direction,
        radius=radius,
        breakpoints=tuple(kept),
        slopes=tuple(slopes),
        value_at_0=value_at_0,
        interval=None if symmetric else interval,
    )


def ray_slice(f: Any, theta: Any, R: float, tol: float = 1e-9) -> RaySlice:
    """
    Exact slice of f along theta on (-R, R).

    Each monomial restricts to the line t -> a + t <m, theta>; the breakpoints of the numerator
    envelope enter with positive jumps and those of the denominator with negative jumps. Jumps at
    the same position are merged and jumps below tol are discarded.
    """
    if not R > 0:
        raise ValidationError(f"Slice radius must be positive, got {R}")
    f = as_rational(f)
    theta = as_point(theta, f.dim)

    num_breaks, num_slope = _envelope_breaks(*f.num.ray_lines(theta), -R, R)
    den_breaks, den_slope = _envelope_breaks(*f.den.ray_lines(theta), -R, R)
    items = num_breaks + [(t, -j) for t, j in den_breaks]

    value_at_0 = float(f.num.coeffs.max() - f.den.coeffs.max())
    return _finish(
        tuple(float(v) for v in theta), (-R, R), items, num_slope - den_slope, value_at_0, tol, True
    )


def poly_slice(P: TropicalPolynomial, theta: Any, R: float, tol: float = 1e-9) -> RaySlice:
    return ray_slice(as_rational(P), theta, R, tol)


def poles_and_roots_1d(
    f: Any, R: float, tol: float = 1e-9
) -> Tuple[List[Breakpoint], List[Breakpoint]]:
    """
    Exact poles and roots of a one-variable function on (-R, R).

    Returns:
        ``(poles, roots)`` as lists of ``(position, multiplicity)``.
    """
    f = as_rational(f)
    if f.dim != 1:
        raise ValidationError(f"poles_and_roots_1d needs a one-variable function, got dim {f.dim}")
    s = ray_slice(f, [1.0], R, tol)
    return s.poles(), s.roots()


class _Evaluator:
    """Cached, budgeted wrapper around a scalar function."""

    def __init__(self, g: Callable[[float], float], max_evals: int):
        self.g = g
        self.max_evals = max_evals
        self.cache: Dict[float, float] = {}

    def __call__(self, t: float) -> float:
        t = float(t)
        if t not in self.cache:
            if len(self.cache) >= self.max_evals:
                raise BudgetExceeded(f"Slicer exceeded its budget of {self.max_evals} evaluations")
            self.cache[t] = float(self.g(t))
        return self.cache[t]


def _noise(*values: float) -> float:
    return 8.0 * _EPS * max(1.0, *(abs(v) for v in values))


def _scan(
    g: _Evaluator,
    u: float,
    v: float,
    tol: float,
    min_width: float,
    pieces: List[Piece],
) -> None:
    w = v - u
    gu, gv = g(u), g(v)
    probes = (u + 0.25 * w, u + 0.5 * w, u + 0.75 * w)
    values = [g(p) for p in probes]
    chord = [gu + (gv - gu) * (p - u) / w for p in probes]
    slack = tol * w + _noise(gu, gv, *values)
    if all(abs(val - c) <= slack for val, c in zip(values, chord)):
        pieces.append(("lin", u, v, (gv - gu) / w))
    elif w <= min_width:
        pieces.append(("bkt", u, v, 0.0))
    else:
        mid = probes[1]
        _scan(g, u, mid, tol, min_width, pieces)
        _scan(g, mid, v, tol, min_width, pieces)


def _coalesce(pieces: List[Piece]) -> List[Piece]:
    out: List[Piece] = []
    for piece in pieces:
        if out and piece[0] == "bkt" and out[-1][0] == "bkt":
            out[-1] = ("bkt", out[-1][1], piece[2], 0.0)
        else:
            out.append(piece)
    return out


def blackbox_slice(
    g: Callable[[float], float],
    interval: Tuple[float, float],
    tol: float = 1e-7,
    min_width: float = 1e-6,
    cells: int = 64,
    max_evals: int = 200_000,
    direction: Optional[Sequence[float]] = None,
) -> RaySlice:
    """
    Recover the breakpoints of a piecewise linear g on an open interval from evaluations.

    The interval is cut into ``cells`` uniform cells; a cell is accepted as linear when three
    interior probes sit on the chord, otherwise it is bisected down to ``min_width``. A kink at a
    shared endpoint shows up as two linear pieces with different slopes. A terminal bracket is
    resolved by intersecting the lines on either side. Breakpoints closer than ``min_width`` are
    reported as one breakpoint carrying their total jump.

    Raises:
        BudgetExceeded: When more than ``max_evals`` evaluations are needed.
    """
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise ValidationError(f"Slice interval must be increasing, got {interval}")
    if cells < 1:
        raise ValidationError("The slicer needs at least one cell")
    ev = _Evaluator(g, max_evals)

    edges = np.linspace(a, b, cells + 1)
    pieces: List[Piece] = []
    for u, v in zip(edges[:-1], edges[1:]):
        _scan(ev, float(u), float(v), tol, min_width, pieces)
    pieces = _coalesce(pieces)

    def outer_slope(left: bool, u: float, v: float) -> float:
        w = max(v - u, min_width)
        if left:
            return (ev(u) - ev(u - w)) / w
        return (ev(v + w) - ev(v)) / w

    items: List[Breakpoint] = []
    for k, (kind, u, v, slope) in enumerate(pieces):
        if kind == "lin":
            nxt = pieces[k + 1] if k + 1 < len(pieces) else None
            if nxt is not None and nxt[0] == "lin":
                width = min(v - u, nxt[2] - nxt[1])
                jump = nxt[3] - slope
                if abs(jump) > 4.0 * tol + _noise(ev(u), ev(v), ev(nxt[2])) / width:
                    items.append((v, jump))
            continue

        prev = pieces[k - 1] if k > 0 else None
        nxt = pieces[k + 1] if k + 1 < len(pieces) else None
        s_left = prev[3] if prev is not None else outer_slope(True, u, v)
        s_right = nxt[3] if nxt is not None else outer_slope(False, u, v)
        jump = s_right - s_left
        if abs(jump) <= 4.0 * tol:
            continue
        # both side lines pass through the bracket ends
        t = (ev(v) - ev(u) + s_left * u - s_right * v) / (s_left - s_right)
        items.append((min(max(t, u), v), jump))

    first = pieces[0]
    left_slope = first[3] if first[0] == "lin" else outer_slope(True, first[1], first[2])
    items = [(t, j) for t, j in items if a < t < b]
    logger.debug(
        f"Black-box slice on ({a}, {b}): {len(items)} breakpoint(s), {len(ev.cache)} evaluations"
    )

    theta = tuple(float(x) for x in direction) if direction is not None else (1.0,)
    # estimated slopes carry error proportional to their size
    jump_tol = 4.0 * tol * _slope_scale(left_slope, items)
    return _finish(theta, (a, b), items, left_slope, ev(0.0), 4.0 * tol, -a == b, jump_tol)
