import json
from fractions import Fraction

import pytest

from planecurrents import serialize
from planecurrents.cover import Covered, NotCoverable, UncoverableCurve, UncoveredPoints
from planecurrents.currents import LevelSet
from planecurrents.errors import ParseError
from planecurrents.gallery import build
from planecurrents.projective import Conic, Line, Point


def test_rational_round_trip():
    for text, value in (("1/2", Fraction(1, 2)), ("-3/9", Fraction(-1, 3)), ("7", 7)):
        parsed = serialize.parse_rational(text)
        assert parsed == Fraction(value)
        assert serialize.parse_rational(serialize.format_rational(parsed)) == parsed
    assert serialize.parse_rational(5) == 5
    assert serialize.format_rational(Fraction(84, 180)) == "7/15"


def test_rational_errors_carry_position():
    with pytest.raises(ParseError) as err:
        serialize.parse_rational("1/0", "weights[2]")
    assert "weights[2]" in str(err.value)
    with pytest.raises(ParseError):
        serialize.parse_rational("abc")
    with pytest.raises(ParseError):
        serialize.parse_rational(1.5)
    with pytest.raises(ParseError):
        serialize.parse_rational(True)


def test_point_line_conic_round_trip():
    p = Point(2, -4, 6)
    assert serialize.parse_point(serialize.point_to_json(p)) == p
    line = Line(0, 3, -3)
    assert serialize.parse_line(serialize.line_to_json(line)) == line
    conic = Conic(0, 0, 1, -1, 0, 0)
    assert serialize.parse_conic(serialize.conic_to_json(conic)) == conic
    with pytest.raises(ParseError):
        serialize.parse_point(["0", "0", "0"])
    with pytest.raises(ParseError):
        serialize.parse_line(["1", "2"])


def test_instance_round_trip_through_payload():
    for name in ("four-lines", "seven-lines"):
        arr = build(name)
        payload = serialize.current_to_payload(arr.current, arr.alpha)
        text = serialize.dumps(payload)
        current, alpha = serialize.parse_instance(json.loads(text))
        assert current == arr.current
        assert alpha == arr.alpha


def test_instance_validation_errors():
    good = serialize.current_to_payload(build("four-lines").current, Fraction(1, 2))

    bad = dict(good, weights=good["weights"][:-1])
    with pytest.raises(ParseError) as err:
        serialize.parse_instance(bad)
    assert "weights" in str(err.value)

    bad = dict(good, weights=["-1/4"] + good["weights"][1:])
    with pytest.raises(ParseError) as err:
        serialize.parse_instance(bad)
    assert "weights[0]" in str(err.value)

    bad = dict(good, lines=[["0", "0", "0"]] + good["lines"][1:])
    with pytest.raises(ParseError) as err:
        serialize.parse_instance(bad)
    assert "lines[0]" in str(err.value)

    # tampered weight breaks the exact unit-mass requirement
    bad = dict(good, weights=["1/3"] + good["weights"][1:])
    with pytest.raises(ParseError) as err:
        serialize.parse_instance(bad)
    assert "mass" in str(err.value)

    # a reducible conic is rejected as a component
    bad = dict(good, weights=good["weights"] + ["0/1"], conics=[["1", "0", "0", "-1", "0", "0"]])
    with pytest.raises(ParseError):
        serialize.parse_instance(bad)

    # without alpha, any mass is allowed
    free = dict(good, weights=["1/3"] + good["weights"][1:])
    free.pop("alpha")
    current, alpha = serialize.parse_instance(free)
    assert alpha is None and current.mass != 1


def test_level_set_and_verdict_json():
    level = LevelSet(Fraction(1, 3), True, (Line(1, 0, 0),), (Point(1, 1, 1),))
    doc = serialize.level_set_to_json(level)
    assert doc["threshold"] == "1/3" and doc["strict"] is True
    assert doc["component_curves"][0]["kind"] == "line"

    covered = Covered(Conic(1, 0, 0, 0, 0, -1), Point(1, 1, 1))
    doc = serialize.verdict_to_json(covered)
    assert doc["kind"] == "covered" and doc["omitted"] == ["1", "1", "1"]

    blocked = NotCoverable(UncoverableCurve(Line(1, 0, 0)))
    doc = serialize.verdict_to_json(blocked)
    assert doc["obstruction"]["kind"] == "curve"

    pair = NotCoverable(UncoveredPoints((Point(1, 0, 0), Point(0, 1, 0))))
    doc = serialize.verdict_to_json(pair)
    assert len(doc["obstruction"]["points"]) == 2


def test_points_file():
    pts = serialize.parse_points_file({"points": [["1", "0", "0"], ["0", "1", "0"]]})
    assert pts == (Point(1, 0, 0), Point(0, 1, 0))
    with pytest.raises(ParseError):
        serialize.parse_points_file({"points": "nope"})


def test_atomic_write(tmp_path):
    target = tmp_path / "report.json"
    serialize.atomic_write(str(target), serialize.dumps({"a": 1}))
    assert json.loads(target.read_text()) == {"a": 1}
    leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".tmp-")]
    assert not leftovers
