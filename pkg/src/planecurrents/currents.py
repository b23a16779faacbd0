"""Divisor currents: finite nonnegative weighted sums of plane curves.

A divisor current is a formal sum sum_i w_i * [C_i] with rational weights
w_i >= 0 and distinct component curves C_i (lines or irreducible conics).
Its mass is sum_i w_i * deg(C_i) and its Lelong number at a point p is
sum_i w_i * mult_p(C_i): the local density seen by the weighted arrangement.

Upper level sets {p : lelong(p) >= t} are structural: full component
curves whose weight passes the threshold plus finitely many isolated
points. Off the support the density is zero and on a single smooth
component it equals that component's weight, so every isolated member is a
pairwise intersection point of the support; that argument makes the
structural representation complete.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import (
    NegativeScale,
    NegativeWeight,
    NonpositiveThreshold,
    ReducibleConic,
    WeightExceeded,
)
from .projective import (
    Conic,
    Curve,
    Point,
    ProjectiveMap,
    curve_sort_key,
    incident,
    intersect_curves,
    is_irreducible,
    multiplicity,
)


class DivisorCurrent:
    """Immutable weighted sum of lines and irreducible conics.

    Duplicate curves are merged by summing weights and zero-weight
    components are dropped, so the weight of a component curve (its generic
    Lelong number) is well defined.
    """

    __slots__ = ("components",)

    def __init__(self, components: Iterable[tuple[Fraction | int, Curve]] = ()):
        merged: dict[Curve, Fraction] = {}
        for weight, curve in components:
            w = Fraction(weight)
            if w < 0:
                raise NegativeWeight(f"component weight {w} is negative")
            if isinstance(curve, Conic) and not is_irreducible(curve):
                raise ReducibleConic(
                    "reducible conic component; list a line pair as two lines"
                )
            merged[curve] = merged.get(curve, Fraction(0)) + w
        items = [(w, c) for c, w in merged.items() if w != 0]
        items.sort(key=lambda wc: curve_sort_key(wc[1]))
        object.__setattr__(self, "components", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("DivisorCurrent is immutable")

    def __eq__(self, other):
        if not isinstance(other, DivisorCurrent):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        parts = ", ".join(f"({w!s}, {c!r})" for w, c in self.components)
        return f"DivisorCurrent([{parts}])"

    @property
    def mass(self) -> Fraction:
        return sum((w * c.degree for w, c in self.components), Fraction(0))

    @property
    def curves(self) -> tuple[Curve, ...]:
        return tuple(c for _, c in self.components)

    def lelong_number(self, p: Point) -> Fraction:
        return sum(
            (w * multiplicity(p, c) for w, c in self.components), Fraction(0)
        )

    def generic_lelong(self, curve: Curve) -> Fraction:
        """Weight of the curve in this current (its generic density along
        the curve); zero when absent."""
        for w, c in self.components:
            if c == curve:
                return w
        return Fraction(0)

    def subtract(self, curve: Curve, amount: Fraction | int) -> "DivisorCurrent":
        """Remove `amount * [curve]`; positivity must be preserved."""
        a = Fraction(amount)
        if a < 0:
            raise NegativeWeight(f"cannot subtract negative weight {a}")
        if a == 0:
            return self
        have = self.generic_lelong(curve)
        if a > have:
            raise WeightExceeded(f"subtracting {a} exceeds component weight {have}")
        return DivisorCurrent(
            [(w - a if c == curve else w, c) for w, c in self.components]
        )

    def scaled(self, factor: Fraction | int) -> "DivisorCurrent":
        f = Fraction(factor)
        if f < 0:
            raise NegativeScale(f"scale factor {f} is negative")
        return DivisorCurrent([(w * f, c) for w, c in self.components])

    def __add__(self, other: "DivisorCurrent") -> "DivisorCurrent":
        if not isinstance(other, DivisorCurrent):
            return NotImplemented
        return DivisorCurrent(list(self.components) + list(other.components))

    def support_intersections(self) -> tuple[Point, ...]:
        """All pairwise intersection points of the component curves.

        Raises IrrationalIntersection when a pair meets only in points
        without rational coordinates (any pair of conic components, or a
        line/conic pair with non-square discriminant).
        """
        points: set[Point] = set()
        for (_, c1), (_, c2) in combinations(self.components, 2):
            points.update(intersect_curves(c1, c2))
        return tuple(sorted(points))

    def level_set(self, threshold: Fraction | int, strict: bool = False) -> "LevelSet":
        """Structural upper level set at the threshold (>= by default,
        > when strict)."""
        t = Fraction(threshold)
        if t <= 0:
            raise NonpositiveThreshold(f"threshold {t} must be positive")
        passes = (lambda v: v > t) if strict else (lambda v: v >= t)
        curves = tuple(c for w, c in self.components if passes(w))
        isolated = sorted(
            p
            for p in self.support_intersections()
            if passes(self.lelong_number(p)) and not any(incident(p, c) for c in curves)
        )
        return LevelSet(t, strict, curves, tuple(isolated))

    def transformed(self, pmap: ProjectiveMap) -> "DivisorCurrent":
        return DivisorCurrent([(w, pmap.curve(c)) for w, c in self.components])


class LevelSet:
    """Upper level set of Lelong numbers: component curves passing the
    threshold plus finitely many isolated points off those curves."""

    __slots__ = ("threshold", "strict", "component_curves", "isolated_points")

    def __init__(
        self,
        threshold: Fraction | int,
        strict: bool,
        component_curves: Iterable[Curve] = (),
        isolated_points: Iterable[Point] = (),
    ):
        curves = tuple(sorted(component_curves, key=curve_sort_key))
        points = tuple(sorted(isolated_points))
        if len(set(points)) != len(points):
            raise ValueError("isolated points must be pairwise distinct")
        for p in points:
            if any(incident(p, c) for c in curves):
                raise ValueError(f"isolated point {p} lies on a component curve")
        object.__setattr__(self, "threshold", Fraction(threshold))
        object.__setattr__(self, "strict", bool(strict))
        object.__setattr__(self, "component_curves", curves)
        object.__setattr__(self, "isolated_points", points)

    def __setattr__(self, name, value):
        raise AttributeError("LevelSet is immutable")

    def __eq__(self, other):
        if not isinstance(other, LevelSet):
            return NotImplemented
        return (
            self.threshold == other.threshold
            and self.strict == other.strict
            and self.component_curves == other.component_curves
            and self.isolated_points == other.isolated_points
        )

    def __repr__(self):
        return (
            f"LevelSet(threshold={self.threshold!s}, strict={self.strict}, "
            f"curves={len(self.component_curves)}, points={len(self.isolated_points)})"
        )

    @property
    def total_component_degree(self) -> int:
        return sum(c.degree for c in self.component_curves)

    def contains(self, p: Point) -> bool:
        """Membership as a set of plane points."""
        return p in self.isolated_points or any(
            incident(p, c) for c in self.component_curves
        )

    def is_finite(self) -> bool:
        return not self.component_curves

    def transformed(self, pmap: ProjectiveMap) -> "LevelSet":
        return LevelSet(
            self.threshold,
            self.strict,
            tuple(pmap.curve(c) for c in self.component_curves),
            tuple(pmap.point(p) for p in self.isolated_points),
        )
