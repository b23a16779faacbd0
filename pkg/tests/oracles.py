"""Independent brute-force oracles and random-object generators for tests.

The oracles never share code paths with the rank-test implementations they
check: curve counts come from explicit candidate enumeration (spanned
lines, line pairs, conics through five-point subsets) plus direct
incidence counting, and the reference rank is plain Gaussian elimination
over Fraction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from planecurrents.projective import (
    Line,
    Point,
    ProjectiveMap,
    conic_space,
    incident,
    line_through,
)
from planecurrents.currents import DivisorCurrent


def reference_rank(rows) -> int:
    """Plain fraction Gaussian elimination, no fraction-free tricks."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def spanned_lines(points) -> list[Line]:
    out = []
    for p, q in combinations(points, 2):
        line = line_through(p, q)
        if line not in out:
            out.append(line)
    return out


def m1_oracle(points) -> int:
    """Maximum points on one line by enumerating spanned lines."""
    pts = sorted(set(points))
    best = min(len(pts), 2)
    for line in spanned_lines(pts):
        best = max(best, sum(1 for p in pts if incident(p, line)))
    return best


def _candidate_conics(pts) -> list:
    candidates = []
    lines = spanned_lines(pts)
    for i, a in enumerate(lines):
        for b in lines[i:]:
            candidates.append(("pair", a, b))
    for sub in combinations(pts, 5):
        space = conic_space(sub)
        if len(space) == 1:
            candidates.append(("conic", space[0], None))
    return candidates


def m2_oracle(points) -> int:
    """Maximum points on one conic.

    Any conic through >= 5 of the points is either irreducible (then it is
    the unique conic through any five of them, all in general position) or
    a line pair whose lines are spanned by the covered points; both kinds
    appear among the candidates.
    """
    pts = sorted(set(points))
    best = min(len(pts), 5)
    for kind, a, b in _candidate_conics(pts):
        if kind == "pair":
            count = sum(1 for p in pts if incident(p, a) or incident(p, b))
        else:
            count = sum(1 for p in pts if incident(p, a))
        best = max(best, count)
    return best


def coverable_oracle(points) -> bool:
    """True iff some conic contains all but at most one of the points."""
    pts = sorted(set(points))
    return m2_oracle(pts) >= len(pts) - 1


def random_point(rng: random.Random, bound: int = 6) -> Point:
    while True:
        coords = [rng.randint(-bound, bound) for _ in range(3)]
        if any(coords):
            return Point(*coords)


def random_points(rng, count, bound=6) -> list[Point]:
    pts: list[Point] = []
    while len(pts) < count:
        p = random_point(rng, bound)
        if p not in pts:
            pts.append(p)
    return pts


def random_structured_points(rng, count) -> list[Point]:
    """Point sets biased toward collinear/co-conic structure so that rank
    tests see interesting configurations, not just generic ones."""
    style = rng.randrange(4)
    pts: list[Point] = []
    if style == 0:
        pts = random_points(rng, count)
    elif style == 1:
        # most points on a line plus noise
        base, direction = random_points(rng, 2)
        while len(pts) < max(2, count - 2):
            t = rng.randint(-5, 5)
            cand = Point(*(a + t * b for a, b in zip(base.coords, direction.coords)))
            if cand not in pts:
                pts.append(cand)
        pts += [p for p in random_points(rng, 2) if p not in pts]
    elif style == 2:
        # points on the conic x*z = y^2, parametrized by (t^2 : t : 1)
        ts = rng.sample(range(-9, 10), min(count, 12))
        pts = [Point(t * t, t, 1) for t in ts]
        if rng.random() < 0.5:
            pts.append(Point(1, 0, 0))  # the point at t = infinity
    else:
        # union of two spanned lines
        a, b, c, d = random_points(rng, 4)
        for base, tip in ((a, b), (c, d)):
            for t in range(-2, 3):
                cand = Point(*(x + t * y for x, y in zip(base.coords, tip.coords)))
                if cand not in pts:
                    pts.append(cand)
    while len(pts) < count:
        p = random_point(rng)
        if p not in pts:
            pts.append(p)
    return pts[:count]


def random_line(rng, bound: int = 6) -> Line:
    while True:
        p, q = random_point(rng, bound), random_point(rng, bound)
        if p != q:
            return line_through(p, q)


def random_lines(rng, count, bound: int = 6) -> list[Line]:
    lines: list[Line] = []
    while len(lines) < count:
        cand = random_line(rng, bound)
        if cand not in lines:
            lines.append(cand)
    return lines


def random_unit_current(rng, n_lines=None) -> DivisorCurrent:
    n = n_lines or rng.randint(3, 7)
    lines = random_lines(rng, n)
    raws = [Fraction(rng.randint(1, 12)) for _ in lines]
    total = sum(raws)
    return DivisorCurrent([(r / total, line) for r, line in zip(raws, lines)])


def random_projective_map(rng, bound: int = 4) -> ProjectiveMap:
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        try:
            return ProjectiveMap(rows)
        except Exception:
            continue
