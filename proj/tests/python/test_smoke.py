import json
import os
import subprocess

import pytest

import yoccoz

TABLE = {"H": 1, "E": [0], "R": [1, 2, 1, 2, 1, 1]}


def test_validate_and_values():
    assert yoccoz.validate(TABLE) == {"valid": True, "issues": []}
    assert yoccoz.tau_values(TABLE) == [0, 0, 1, 1, 2, 3]
    bad = yoccoz.validate({"H": 1, "E": [0], "R": [1, 1, 2]})
    assert not bad["valid"]
    assert bad["issues"][0]["condition"] == "3"


def test_extensions():
    got = {e["R"]: e["tau"] for e in yoccoz.extensions(TABLE)}
    assert got == {1: 4, 2: 2, 3: 1, 4: 0}
    assert yoccoz.extend({"H": 1, "E": [0], "R": [1]}, 2)["R"] == [1, 2]
    with pytest.raises(ValueError):
        yoccoz.extend({"H": 1, "E": [0], "R": [1, 1]}, 2)


def test_counting():
    assert [yoccoz.count(1, {0}, L) for L in range(1, 7)] == [1, 2, 4, 9, 20, 47]
    assert yoccoz.count(1, {0}, 9, jobs=3) == 645
    assert len(yoccoz.enumerate(1, {0}, 4)) == 9


def test_escape_and_degrees():
    assert yoccoz.esc({"H": 1, "E": [0], "R": [1, 2, 1, 3]}, 0) == 2
    assert yoccoz.default_admissible(TABLE)[0] == 3


def test_fibonacci():
    fib = yoccoz.rbonacci(2, 19)
    values = yoccoz.tau_values(fib)
    for prev, b, a in [(0, 1, 1), (1, 3, 2), (3, 6, 3), (6, 11, 5), (11, 19, 8)]:
        assert values[b - 1] == prev
        assert yoccoz.first_return_time(fib, b) == a


def test_round_trip_and_reports():
    for tau in yoccoz.enumerate(1, {0}, 4):
        tree = yoccoz.realize(tau)
        assert yoccoz.extract(tree) == tau
        assert yoccoz.check(tree)["ok"]
    tree = yoccoz.realize(TABLE)
    ports = yoccoz.portals(tree)
    assert ports[0]["id"] == 0 and ports[0]["type"] == "III"
    assert yoccoz.to_dot(tree, dynamics=True).startswith("digraph")


def test_realization_failure():
    tau = {"H": 1, "E": [0, 2], "R": [1, 1, 1, 2]}
    with pytest.raises(yoccoz.RealizationError) as info:
        yoccoz.realize(tau)
    assert (info.value.level, info.value.R, info.value.case) == (4, 2, "R=2")
    assert yoccoz.extract(yoccoz.realize(tau, mode="usage")) == tau


def test_malformed_input():
    with pytest.raises(ValueError):
        yoccoz.validate({"H": 1})


@pytest.mark.skipif("YOCCOZ_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_agrees_with_module():
    out = subprocess.run([os.environ["YOCCOZ_CLI"], "realize", "-"], input=json.dumps(TABLE),
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out) == yoccoz.realize(TABLE)
