"""Certified cover decisions for structural level sets.

The question answered here: does a single curve of degree d (a line for
d = 1, a possibly reducible conic for d = 2) contain a given level set with
at most one exception?

Component curves of the level set force the answer's shape. A curve that
is not a component of a conic meets it in at most 2*deg points (Bezout),
so a full component curve minus at most one point can only be covered by a
witness having that curve as a component. Hence:

* if the component degrees sum past the budget, the verdict is
  NotCoverable with one of those curves as the obstruction;
* otherwise the remaining degree budget is spent on the isolated points by
  exact rank tests on the coordinate (degree 1) or Veronese (degree 2)
  incidence matrix, trying "omit nothing" first and then each omission
  candidate in canonical point order.

Verdicts carry re-checkable certificates: a witness plus optional omitted
point, or an obstruction (an unfittable component curve, or a point set
such that every single-point omission still fails the rank test).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from . import linalg
from .currents import DivisorCurrent, LevelSet
from .errors import AlphaOutOfRange, InvalidInstance
from .projective import (
    Conic,
    Curve,
    Line,
    Point,
    conic_from_lines,
    conic_value,
    incident,
    intersect_line_conic,
    line_in_conic,
    line_through,
    max_on_curve,
    on_common_curve,
    sample_line_points,
    veronese_row,
)

TWO_FIFTHS = Fraction(2, 5)


class Covered:
    """Positive verdict: a witness curve containing the level set with at
    most the one listed omission."""

    __slots__ = ("witness", "omitted")

    def __init__(self, witness: Union[Line, Conic], omitted: Optional[Point] = None):
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "omitted", omitted)

    def __setattr__(self, name, value):
        raise AttributeError("Covered is immutable")

    def __eq__(self, other):
        if not isinstance(other, Covered):
            return NotImplemented
        return self.witness == other.witness and self.omitted == other.omitted

    def __repr__(self):
        return f"Covered(witness={self.witness!r}, omitted={self.omitted!r})"


class UncoverableCurve:
    """Obstruction: a component curve that cannot fit inside any witness."""

    __slots__ = ("curve",)

    def __init__(self, curve: Curve):
        object.__setattr__(self, "curve", curve)

    def __setattr__(self, name, value):
        raise AttributeError("UncoverableCurve is immutable")

    def __eq__(self, other):
        if not isinstance(other, UncoverableCurve):
            return NotImplemented
        return self.curve == other.curve

    def __repr__(self):
        return f"UncoverableCurve({self.curve!r})"


class UncoveredPoints:
    """Obstruction: points such that every single omission among them still
    fails the fit, so at least two of them escape every witness."""

    __slots__ = ("points",)

    def __init__(self, points):
        object.__setattr__(self, "points", tuple(sorted(points)))

    def __setattr__(self, name, value):
        raise AttributeError("UncoveredPoints is immutable")

    def __eq__(self, other):
        if not isinstance(other, UncoveredPoints):
            return NotImplemented
        return self.points == other.points

    def __repr__(self):
        return f"UncoveredPoints({list(self.points)!r})"


class NotCoverable:
    """Negative verdict with a re-checkable obstruction certificate."""

    __slots__ = ("obstruction",)

    def __init__(self, obstruction: Union[UncoverableCurve, UncoveredPoints]):
        object.__setattr__(self, "obstruction", obstruction)

    def __setattr__(self, name, value):
        raise AttributeError("NotCoverable is immutable")

    def __eq__(self, other):
        if not isinstance(other, NotCoverable):
            return NotImplemented
        return self.obstruction == other.obstruction

    def __repr__(self):
        return f"NotCoverable({self.obstruction!r})"


Verdict = Union[Covered, NotCoverable]


def beta_of(alpha: Fraction | int) -> Fraction:
    """Level threshold (2/3)*(1 - alpha) attached to a heavy-point
    threshold alpha > 2/5."""
    a = Fraction(alpha)
    if a <= TWO_FIFTHS:
        raise AlphaOutOfRange(f"alpha must exceed 2/5, got {a}")
    return Fraction(2, 3) * (1 - a)


def _overflow_curve(curves, budget: int) -> Optional[Curve]:
    """First curve (canonical order) whose degree does not fit the budget."""
    total = sum(c.degree for c in curves)
    if total <= budget:
        return None
    used = 0
    for c in curves:
        used += c.degree
        if used > budget:
            return c
    raise AssertionError("unreachable")


def _fits(points, degree_left: int) -> bool:
    if degree_left == 0:
        return not points
    return on_common_curve(points, degree_left)


def _spanning_line(points) -> Line:
    """Canonical line through a (known collinear) point list."""
    if len(points) >= 2:
        return line_through(points[0], points[1])
    if len(points) == 1:
        for cand in (Point(1, 0, 0), Point(0, 1, 0)):
            if cand != points[0]:
                return line_through(points[0], cand)
    return Line(0, 0, 1)


def _conic_through(points) -> Conic:
    """First basis vector of the space of conics through the points (the
    caller guarantees the space is nonzero)."""
    basis = linalg.nullspace([veronese_row(p) for p in points], 6)
    return Conic(*basis[0])


def _witness(forced, points, budget: int) -> Union[Line, Conic]:
    if budget == 1:
        return forced[0] if forced else _spanning_line(points)
    if len(forced) == 1 and isinstance(forced[0], Conic):
        return forced[0]
    if len(forced) == 2:
        return conic_from_lines(forced[0], forced[1])
    if len(forced) == 1:
        return conic_from_lines(forced[0], _spanning_line(points))
    return _conic_through(points)


def _search(forced, points, budget: int) -> Optional[Covered]:
    degree_left = budget - sum(c.degree for c in forced)
    for omitted in (None, *points):
        rest = tuple(p for p in points if p != omitted)
        if _fits(rest, degree_left):
            return Covered(_witness(forced, rest, budget), omitted)
    return None


def _is_obstruction(forced, points, budget: int) -> bool:
    degree_left = budget - sum(c.degree for c in forced)
    return all(
        not _fits(tuple(p for p in points if p != omitted), degree_left)
        for omitted in (None, *points)
    )


def _minimal_obstruction(forced, points, budget: int) -> tuple[Point, ...]:
    """Inclusion-minimal obstruction subset, pruned in canonical order."""
    keep = list(points)
    for p in list(points):
        if len(keep) <= 2:
            break
        trial = [q for q in keep if q != p]
        if len(trial) >= 2 and _is_obstruction(forced, tuple(trial), budget):
            keep = trial
    return tuple(keep)


def _cover_check(level: LevelSet, budget: int) -> Verdict:
    curves = level.component_curves
    overflow = _overflow_curve(curves, budget)
    if overflow is not None:
        return NotCoverable(UncoverableCurve(overflow))
    points = level.isolated_points
    found = _search(curves, points, budget)
    if found is not None:
        return found
    return NotCoverable(UncoveredPoints(_minimal_obstruction(curves, points, budget)))


def line_cover_check(level: LevelSet) -> Verdict:
    """Decide whether a single line contains the level set minus at most
    one point; witness is a Line."""
    return _cover_check(level, 1)


def conic_cover_check(level: LevelSet) -> Verdict:
    """Decide whether a conic (possibly reducible) contains the level set
    minus at most one point; witness is a Conic."""
    return _cover_check(level, 2)


def verify_verdict(level: LevelSet, verdict: Verdict, budget: int = 2) -> bool:
    """Independently re-check a verdict certificate against the level set
    by direct incidence and rank tests."""
    if isinstance(verdict, Covered):
        w = verdict.witness
        if not isinstance(w, Line if budget == 1 else Conic):
            return False
        for c in level.component_curves:
            if isinstance(c, Line):
                contained = c == w if isinstance(w, Line) else line_in_conic(c, w)
            else:
                contained = isinstance(w, Conic) and c == w
            if not contained:
                return False
        uncovered = [p for p in level.isolated_points if not incident(p, w)]
        if verdict.omitted is None:
            return not uncovered
        return uncovered == [verdict.omitted]
    obs = verdict.obstruction
    if isinstance(obs, UncoverableCurve):
        return obs.curve in level.component_curves and level.total_component_degree > budget
    if level.total_component_degree > budget:
        return False
    return (
        len(obs.points) >= 2
        and all(p in level.isolated_points for p in obs.points)
        and _is_obstruction(level.component_curves, obs.points, budget)
    )


class CoverInstance:
    """A unit-mass divisor current together with a density threshold
    alpha > 2/5 and at least four certified points of density >= alpha."""

    __slots__ = ("current", "alpha", "heavy_points")

    def __init__(self, current: DivisorCurrent, alpha, heavy_points):
        a = Fraction(alpha)
        if current.mass != 1:
            raise InvalidInstance(f"current mass is {current.mass}, expected exactly 1")
        if a <= TWO_FIFTHS:
            raise InvalidInstance(f"alpha must exceed 2/5, got {a}")
        pts = tuple(sorted(set(heavy_points)))
        if len(pts) < 4:
            raise InvalidInstance(
                f"needs at least four points of density >= {a}, got {len(pts)}"
            )
        for p in pts:
            nu = current.lelong_number(p)
            if nu < a:
                raise InvalidInstance(f"point {p} has density {nu} < {a}")
        object.__setattr__(self, "current", current)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "heavy_points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("CoverInstance is immutable")

    @property
    def beta(self) -> Fraction:
        return beta_of(self.alpha)

    def level(self) -> LevelSet:
        return self.current.level_set(self.beta, strict=True)


def check_cover_instance(instance: CoverInstance) -> Verdict:
    """Run the conic-cover decision on the strict level set at beta.

    For valid instances the expected verdict is Covered; a NotCoverable
    verdict is a counterexample report to be triaged as an implementation
    bug by the harness.
    """
    return conic_cover_check(instance.level())


def _conic_point_search(conic: Conic, count: int, height: int = 10) -> tuple[Point, ...]:
    """Up to `count` rational points on an irreducible conic: bounded
    search for one point, then chords through it give the rest."""
    base = None
    candidates = [Point(1, 0, 0), Point(0, 1, 0)]
    candidates += [Point(1, a, 0) for a in range(-height, height + 1)]
    candidates += [
        Point(x, y, 1)
        for x in range(-height, height + 1)
        for y in range(-height, height + 1)
    ]
    for p in candidates:
        if conic_value(conic, p) == 0:
            base = p
            break
    if base is None:
        return ()
    found = [base]
    for d in candidates:
        if len(found) >= count:
            break
        if d == base:
            continue
        # a chord through a rational point of the conic meets it again
        # in a rational point, so this never raises
        for q in intersect_line_conic(line_through(base, d), conic):
            if q not in found:
                found.append(q)
    return tuple(found[:count])


def find_heavy_points(
    current: DivisorCurrent, alpha, minimum: int = 4
) -> tuple[Point, ...]:
    """Points with Lelong number >= alpha: all isolated members of the
    level set at alpha, plus sampled points on full component curves."""
    a = Fraction(alpha)
    level = current.level_set(a, strict=False)
    points = set(level.isolated_points)
    for curve in level.component_curves:
        if isinstance(curve, Line):
            points.update(sample_line_points(curve, minimum + 2))
        else:
            points.update(_conic_point_search(curve, minimum + 2))
    return tuple(sorted(points))


def evaluate_cover(current: DivisorCurrent, alpha) -> tuple[CoverInstance, LevelSet, Verdict]:
    """Full pipeline: locate heavy points, validate the instance, build the
    strict level set at beta and decide the conic cover."""
    heavy = find_heavy_points(current, alpha)
    instance = CoverInstance(current, alpha, heavy)
    level = instance.level()
    return instance, level, conic_cover_check(level)


def no_conic_all_but_one(level: LevelSet) -> bool:
    """True iff no conic contains all but at most one point of a finite
    level set, certified by the maximum-points-on-a-conic count."""
    if level.component_curves:
        raise ValueError("level set has component curves; it is not finite")
    points = level.isolated_points
    return max_on_curve(points, 2) < len(points) - 1


def witness_contains_points(verdict: Verdict, points) -> Optional[bool]:
    """Whether a Covered witness passes through all the given points
    (recorded for reporting; nothing is asserted about it)."""
    if not isinstance(verdict, Covered):
        return None
    return all(incident(p, verdict.witness) for p in points)
