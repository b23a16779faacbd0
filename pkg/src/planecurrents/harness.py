"""Seeded instance generation and batch verification.

The generator emits a deterministic stream of weighted line (and optional
conic) arrangements of exact unit mass. Valid cover instances need at
least four points of density >= alpha with alpha > 2/5, and random
arrangements almost never have them, so each draw picks a construction
strategy that concentrates density on purpose:

* "pencils":    lines routed through four anchor points (cycle plus
                diagonals), so anchors accumulate density; validity then
                depends on the drawn weights.
* "heavy-line": one line drawn with weight >= alpha; any four of its
                points are heavy, so validity is certain.
* "scatter":    unstructured lines through random point pairs; almost
                always tagged skipped-precondition, kept as a negative
                control.
* "conic-pencil" (only when conics are requested): an irreducible conic
                through five base points plus chords through base-point
                pairs, so all pairwise intersections stay rational.

Instances that fail the four-heavy-points precondition, exceed the bit-size
cap, need irrational intersection points, or degenerate during
construction are emitted with a skip tag and counted; checking only runs
on valid instances. Reports aggregate order-independently, so evaluating
instances concurrently cannot change the result, and serialized reports
exclude wall-clock timing to stay byte-identical across reruns.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from math import comb
from typing import Iterator, Optional

from .cover import (
    Covered,
    CoverInstance,
    UncoverableCurve,
    beta_of,
    conic_cover_check,
    find_heavy_points,
    verify_verdict,
)
from .currents import DivisorCurrent
from .errors import GridTooLarge, InvalidSpec, IrrationalIntersection
from .projective import (
    Line,
    Point,
    conic_space,
    is_irreducible,
    line_through,
    max_on_curve,
)
from .serialize import (
    current_to_payload,
    format_rational,
    level_set_to_json,
    verdict_to_json,
)

TWO_FIFTHS = Fraction(2, 5)

TAG_OK = "ok"
TAG_PRECONDITION = "skipped-precondition"
TAG_INVALID = "skipped-invalid"
TAG_OVERFLOW = "skipped-overflow"
TAG_DEGENERATE = "skipped-degenerate"


@dataclass(frozen=True)
class GenSpec:
    """Parameters of the deterministic instance stream."""

    n_lines: int = 4
    n_conics: int = 0
    coefficient_bound: int = 5
    weight_scheme: str = "uniform"  # "uniform" | "random"
    denominator_bound: int = 16
    alphas: tuple[Fraction, ...] = (Fraction(1, 2),)
    seed: int = 0
    bit_cap: int = 4096

    def validate(self) -> None:
        if self.n_lines < 3:
            raise InvalidSpec("n_lines must be at least 3")
        if self.n_conics < 0:
            raise InvalidSpec("n_conics must be nonnegative")
        if self.coefficient_bound < 1:
            raise InvalidSpec("coefficient_bound must be at least 1 (no nondegenerate lines otherwise)")
        if self.weight_scheme not in ("uniform", "random"):
            raise InvalidSpec(f"unknown weight scheme {self.weight_scheme!r}")
        if self.denominator_bound < 1:
            raise InvalidSpec("denominator_bound must be at least 1")
        if not self.alphas:
            raise InvalidSpec("at least one alpha is required")
        for a in self.alphas:
            if Fraction(a) <= TWO_FIFTHS:
                raise InvalidSpec(f"alpha must exceed 2/5, got {a}")

    def summary(self) -> dict:
        return {
            "n_lines": self.n_lines,
            "n_conics": self.n_conics,
            "coefficient_bound": self.coefficient_bound,
            "weight_scheme": self.weight_scheme,
            "denominator_bound": self.denominator_bound,
            "alphas": [format_rational(a) for a in self.alphas],
            "seed": self.seed,
            "bit_cap": self.bit_cap,
        }


@dataclass(frozen=True)
class GeneratedInstance:
    index: int
    tag: str
    alpha: Fraction
    strategy: str
    current: Optional[DivisorCurrent] = None
    instance: Optional[CoverInstance] = None
    note: str = ""


@dataclass(frozen=True)
class RunReport:
    """Aggregated result of a batch run; deterministic given (spec, trials)."""

    spec_summary: dict
    trials: int
    tried: int
    valid: int
    skipped: dict
    covered: int
    not_coverable: int
    omitted_histogram: dict
    counterexamples: tuple
    max_bit_size: int
    wall_seconds: float
    profile_counts: dict = field(default_factory=dict)
    m2_min: Optional[int] = None
    m2_max: Optional[int] = None

    def to_json_dict(self) -> dict:
        # wall_seconds deliberately excluded: serialized reports must be
        # byte-identical for identical (spec, trials)
        return {
            "spec": self.spec_summary,
            "trials": self.trials,
            "tried": self.tried,
            "valid": self.valid,
            "skipped": dict(sorted(self.skipped.items())),
            "covered": self.covered,
            "not_coverable": self.not_coverable,
            "omitted_histogram": {
                str(k): v for k, v in sorted(self.omitted_histogram.items())
            },
            "counterexamples": list(self.counterexamples),
            "max_bit_size": self.max_bit_size,
            "profile_counts": dict(sorted(self.profile_counts.items())),
            "m2_min": self.m2_min,
            "m2_max": self.m2_max,
        }


def _bit_size(value: Fraction) -> int:
    return max(abs(value.numerator).bit_length(), value.denominator.bit_length())


def _current_bit_size(current: DivisorCurrent) -> int:
    worst = 0
    for w, c in current.components:
        worst = max(worst, _bit_size(w), *(_bit_size(x) for x in c.coeffs))
    return worst


def _random_point(rng: random.Random, bound: int) -> Point:
    while True:
        coords = [rng.randint(-bound, bound) for _ in range(3)]
        if any(coords):
            return Point(*coords)


def _random_line(rng: random.Random, bound: int) -> Line:
    while True:
        p, q = _random_point(rng, bound), _random_point(rng, bound)
        if p != q:
            return line_through(p, q)


def _distinct_lines(rng, bound, count, start=(), attempts=60) -> Optional[list[Line]]:
    lines = list(start)
    for _ in range(attempts):
        if len(lines) >= count:
            return lines[:count]
        cand = _random_line(rng, bound)
        if cand not in lines:
            lines.append(cand)
    return lines[:count] if len(lines) >= count else None


def _weights(rng, spec: GenSpec, curves) -> list[Fraction]:
    """Exact unit-mass weights for the given curves."""
    if spec.weight_scheme == "uniform":
        total = sum(c.degree for c in curves)
        return [Fraction(1, total)] * len(curves)
    raws = [Fraction(rng.randint(1, spec.denominator_bound)) for _ in curves]
    denom = sum(r * c.degree for r, c in zip(raws, curves))
    return [r / denom for r in raws]


def _lines_pencils(rng, spec: GenSpec) -> Optional[list[Line]]:
    for _ in range(20):
        anchors = []
        while len(anchors) < 4:
            p = _random_point(rng, spec.coefficient_bound)
            if p not in anchors:
                anchors.append(p)
        a, b, c, d = anchors
        pair_order = [(a, b), (b, c), (c, d), (d, a), (a, c), (b, d)]
        lines: list[Line] = []
        for p, q in pair_order[: spec.n_lines]:
            try:
                cand = line_through(p, q)
            except Exception:
                break
            if cand in lines:
                break
            lines.append(cand)
        else:
            if len(lines) < spec.n_lines:
                extra = _distinct_lines(
                    rng, spec.coefficient_bound, spec.n_lines, start=lines
                )
                if extra is None:
                    continue
                lines = extra
            return lines
    return None


def _heavy_line_weights(rng, spec: GenSpec, alpha: Fraction, curves) -> list[Fraction]:
    """First curve is a line whose weight is drawn at or above alpha."""
    margin = Fraction(rng.randint(0, 4), 20)
    first = min(alpha + margin * (1 - alpha), Fraction(9, 10))
    rest = curves[1:]
    raws = [Fraction(rng.randint(1, spec.denominator_bound)) for _ in rest]
    denom = sum(r * c.degree for r, c in zip(raws, rest))
    remaining = 1 - first
    return [first] + [r * remaining / denom for r in raws]


def _conic_pencil(rng, spec: GenSpec) -> Optional[tuple[list, list]]:
    """A rank-3 conic through five base points plus chords through base
    pairs; all pairwise intersections stay rational by construction.

    Chords follow the 5-cycle of base points first so that base points sit
    on two chords each and accumulate density."""
    for _ in range(30):
        base = []
        while len(base) < 5:
            p = _random_point(rng, spec.coefficient_bound)
            if p not in base:
                base.append(p)
        space = conic_space(base)
        if len(space) != 1 or not is_irreducible(space[0]):
            continue
        conic = space[0]
        cycle = [(base[i], base[(i + 1) % 5]) for i in range(5)]
        rest = [pq for pq in combinations(base, 2) if pq not in cycle]
        rng.shuffle(rest)
        lines: list[Line] = []
        for p, q in cycle + rest:
            if len(lines) >= spec.n_lines:
                break
            cand = line_through(p, q)
            if cand not in lines:
                lines.append(cand)
        if len(lines) < spec.n_lines:
            continue
        conics = [conic]
        # extra conics beyond the first almost surely make intersections
        # irrational; they are drawn anyway and validated downstream
        for _ in range(spec.n_conics - 1):
            extra_base = [_random_point(rng, spec.coefficient_bound) for _ in range(5)]
            extra = conic_space(extra_base)
            if len(extra) == 1 and is_irreducible(extra[0]) and extra[0] not in conics:
                conics.append(extra[0])
        if len(conics) != spec.n_conics:
            continue
        return lines, conics
    return None


def _build_one(rng: random.Random, spec: GenSpec, index: int) -> GeneratedInstance:
    alpha = Fraction(rng.choice(spec.alphas))
    strategies = ["pencils", "scatter"]
    if spec.weight_scheme == "random":
        strategies.append("heavy-line")
    if spec.n_conics > 0:
        strategies = ["conic-pencil"]
    strategy = rng.choice(strategies)

    curves: list = []
    weights: list[Fraction] = []
    if strategy == "conic-pencil":
        built = _conic_pencil(rng, spec)
        if built is None:
            return GeneratedInstance(index, TAG_DEGENERATE, alpha, strategy,
                                     note="no rational conic pencil found")
        lines, conics = built
        curves = lines + conics
        if spec.weight_scheme == "uniform":
            weights = _weights(rng, spec, curves)
        else:
            # boost the conic weight so base points reach heavy density
            raws = [Fraction(rng.randint(1, spec.denominator_bound)) for _ in lines]
            raws += [
                Fraction(rng.randint(spec.denominator_bound, 2 * spec.denominator_bound))
                for _ in conics
            ]
            denom = sum(r * c.degree for r, c in zip(raws, curves))
            weights = [r / denom for r in raws]
    elif strategy == "heavy-line":
        lines = _distinct_lines(rng, spec.coefficient_bound, spec.n_lines)
        if lines is None:
            return GeneratedInstance(index, TAG_DEGENERATE, alpha, strategy,
                                     note="could not draw distinct lines")
        curves = lines
        weights = _heavy_line_weights(rng, spec, alpha, curves)
    else:
        lines = (
            _lines_pencils(rng, spec)
            if strategy == "pencils"
            else _distinct_lines(rng, spec.coefficient_bound, spec.n_lines)
        )
        if lines is None:
            return GeneratedInstance(index, TAG_DEGENERATE, alpha, strategy,
                                     note="could not draw distinct lines")
        curves = lines
        weights = _weights(rng, spec, curves)

    current = DivisorCurrent(list(zip(weights, curves)))
    if len(current.components) != len(curves):
        return GeneratedInstance(index, TAG_DEGENERATE, alpha, strategy,
                                 note="duplicate curves collapsed")
    if _current_bit_size(current) > spec.bit_cap:
        return GeneratedInstance(index, TAG_OVERFLOW, alpha, strategy, current=current)
    try:
        current.support_intersections()
        heavy = find_heavy_points(current, alpha)
    except IrrationalIntersection as exc:
        return GeneratedInstance(index, TAG_INVALID, alpha, strategy,
                                 current=current, note=str(exc))
    if len(heavy) < 4:
        return GeneratedInstance(
            index, TAG_PRECONDITION, alpha, strategy, current=current,
            note=f"{len(heavy)} heavy points",
        )
    instance = CoverInstance(current, alpha, heavy)
    return GeneratedInstance(index, TAG_OK, alpha, strategy,
                             current=current, instance=instance)


def generate(spec: GenSpec) -> Iterator[GeneratedInstance]:
    """Deterministic infinite stream of tagged instances."""
    spec.validate()
    rng = random.Random(spec.seed)
    index = 0
    while True:
        yield _build_one(rng, spec, index)
        index += 1


def _evaluate(item: GeneratedInstance) -> dict:
    instance = item.instance
    level = instance.level()
    verdict = conic_cover_check(level)
    bits = _current_bit_size(instance.current)
    result = {
        "index": item.index,
        "covered": isinstance(verdict, Covered),
        "omitted": None,
        "bits": bits,
        "counterexample": None,
    }
    if isinstance(verdict, Covered):
        result["omitted"] = 0 if verdict.omitted is None else 1
    else:
        result["counterexample"] = {
            "index": item.index,
            "instance": current_to_payload(instance.current, instance.alpha),
            "level_set": level_set_to_json(level),
            "verdict": verdict_to_json(verdict),
            "verified": verify_verdict(level, verdict),
        }
    return result


def run_suite(spec: GenSpec, trials: int, workers: int = 1) -> RunReport:
    """Generate `trials` instances and check every valid one.

    The expected outcome is zero counterexamples; any counterexample
    payload re-verifies standalone and signals an implementation bug.
    """
    spec.validate()
    if trials < 1:
        raise InvalidSpec("trials must be at least 1")
    start = time.perf_counter()
    items = list(islice(generate(spec), trials))
    valid = [item for item in items if item.tag == TAG_OK]
    if workers > 1 and valid:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, valid))
    else:
        results = [_evaluate(item) for item in valid]
    results.sort(key=lambda r: r["index"])

    skipped: dict[str, int] = {}
    for item in items:
        if item.tag != TAG_OK:
            skipped[item.tag] = skipped.get(item.tag, 0) + 1
    covered = sum(1 for r in results if r["covered"])
    omitted_hist: dict[int, int] = {}
    for r in results:
        if r["covered"]:
            omitted_hist[r["omitted"]] = omitted_hist.get(r["omitted"], 0) + 1
    counterexamples = tuple(
        r["counterexample"] for r in results if r["counterexample"] is not None
    )
    max_bits = max((r["bits"] for r in results), default=0)
    return RunReport(
        spec_summary=spec.summary(),
        trials=trials,
        tried=len(items),
        valid=len(valid),
        skipped=skipped,
        covered=covered,
        not_coverable=len(results) - covered,
        omitted_histogram=omitted_hist,
        counterexamples=counterexamples,
        max_bit_size=max_bits,
        wall_seconds=time.perf_counter() - start,
    )


FRAME_LINES = (Line(1, 0, 0), Line(0, 1, 0), Line(0, 0, 1), Line(1, 1, 1))


@dataclass(frozen=True)
class SweepGrid:
    """Exhaustive sweep over line configurations.

    The first four lines are pinned to the canonical frame (x = 0, y = 0,
    z = 0, x + y + z = 0), which every quadruple of lines in general
    position can be mapped to projectively; the remaining lines range over
    the pool of canonical lines with integer coefficients within the bound
    (or an explicit pool).
    """

    n_lines: int = 4
    coefficient_bound: int = 2
    weight_vectors: Optional[tuple[tuple[Fraction, ...], ...]] = None
    alphas: tuple[Fraction, ...] = (Fraction(1, 2),)
    extra_pool: Optional[tuple[Line, ...]] = None
    max_instances: int = 200_000

    def validate(self) -> None:
        if self.n_lines < 4:
            raise InvalidSpec("sweep requires at least the four frame lines")
        if self.coefficient_bound < 0:
            raise InvalidSpec("coefficient_bound must be nonnegative")
        if not self.alphas:
            raise InvalidSpec("at least one alpha is required")
        for a in self.alphas:
            if Fraction(a) <= TWO_FIFTHS:
                raise InvalidSpec(f"alpha must exceed 2/5, got {a}")
        if self.weight_vectors is not None:
            for vec in self.weight_vectors:
                if len(vec) != self.n_lines:
                    raise InvalidSpec("weight vector length must equal n_lines")


def _line_pool(bound: int) -> list[Line]:
    seen = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                if a == 0 and b == 0 and c == 0:
                    continue
                line = Line(a, b, c)
                if line not in seen and line not in FRAME_LINES:
                    seen.append(line)
    return sorted(seen)


def exhaustive_sweep(grid: SweepGrid) -> RunReport:
    """Evaluate every configuration in the grid; records verdict profiles
    and the extreme max-points-on-a-conic statistics."""
    grid.validate()
    start = time.perf_counter()
    pool = list(grid.extra_pool) if grid.extra_pool is not None else _line_pool(grid.coefficient_bound)
    k = grid.n_lines - 4
    n_combos = comb(len(pool), k) if len(pool) >= k else 0
    weight_vectors = grid.weight_vectors or (
        tuple([Fraction(1, grid.n_lines)] * grid.n_lines),
    )
    total = n_combos * len(weight_vectors) * len(grid.alphas)
    if total > grid.max_instances:
        raise GridTooLarge(f"{total} instances exceed the cap {grid.max_instances}")

    tried = valid = covered = not_coverable = 0
    skipped: dict[str, int] = {}
    omitted_hist: dict[int, int] = {}
    profile_counts: dict[str, int] = {}
    counterexamples = []
    max_bits = 0
    m2_min = m2_max = None

    for combo in combinations(pool, k):
        lines = list(FRAME_LINES) + list(combo)
        for weights in weight_vectors:
            for alpha in grid.alphas:
                tried += 1
                current = DivisorCurrent(list(zip(weights, lines)))
                if len(current.components) != len(lines):
                    skipped[TAG_DEGENERATE] = skipped.get(TAG_DEGENERATE, 0) + 1
                    continue
                max_bits = max(max_bits, _current_bit_size(current))
                heavy = find_heavy_points(current, alpha)
                precondition_ok = len(heavy) >= 4
                level = current.level_set(beta_of(alpha), strict=True)
                verdict = conic_cover_check(level)
                if level.is_finite() and level.isolated_points:
                    m2 = max_on_curve(level.isolated_points, 2)
                    m2_min = m2 if m2_min is None else min(m2_min, m2)
                    m2_max = m2 if m2_max is None else max(m2_max, m2)
                if precondition_ok:
                    valid += 1
                else:
                    skipped[TAG_PRECONDITION] = skipped.get(TAG_PRECONDITION, 0) + 1
                if isinstance(verdict, Covered):
                    covered += 1
                    omitted = 0 if verdict.omitted is None else 1
                    omitted_hist[omitted] = omitted_hist.get(omitted, 0) + 1
                    profile = f"{'valid' if precondition_ok else 'precondition-failed'}/covered/omit-{omitted}"
                else:
                    not_coverable += 1
                    kind = "curve" if isinstance(verdict.obstruction, UncoverableCurve) else "points"
                    profile = f"{'valid' if precondition_ok else 'precondition-failed'}/not-coverable/{kind}"
                    if precondition_ok:
                        counterexamples.append(
                            {
                                "instance": current_to_payload(current, alpha),
                                "level_set": level_set_to_json(level),
                                "verdict": verdict_to_json(verdict),
                                "verified": verify_verdict(level, verdict),
                            }
                        )
                profile_counts[profile] = profile_counts.get(profile, 0) + 1

    return RunReport(
        spec_summary={
            "kind": "sweep",
            "n_lines": grid.n_lines,
            "coefficient_bound": grid.coefficient_bound,
            "pool_size": len(pool),
            "alphas": [format_rational(a) for a in grid.alphas],
            "weight_vectors": [
                [format_rational(w) for w in vec] for vec in weight_vectors
            ],
        },
        trials=total,
        tried=tried,
        valid=valid,
        skipped=skipped,
        covered=covered,
        not_coverable=not_coverable,
        omitted_histogram=omitted_hist,
        counterexamples=tuple(counterexamples),
        max_bit_size=max_bits,
        wall_seconds=time.perf_counter() - start,
        profile_counts=profile_counts,
        m2_min=m2_min,
        m2_max=m2_max,
    )
