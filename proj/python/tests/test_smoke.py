from fractions import Fraction
from pathlib import Path

import pytest

import toricgcp

DATA = Path(__file__).resolve().parents[2] / "data"


def square(a, b):
    return [[0, 0], [a, 0], [0, b], [a, b]]


def test_mixed_volume_rectangles():
    E = [square(2, 3), square(5, 7)]
    assert toricgcp.mixed_volume(E) == 29
    assert toricgcp.mixed_volume_by_volumes(E) == 29


def test_fill_and_irreducible_fill():
    E = [square(2, 3), square(5, 7)]
    assert toricgcp.fills([[[0, 0], [2, 3]], [[0, 7], [5, 0]]], E)
    assert not toricgcp.fills([[[0, 0]], [[0, 7], [5, 0]]], E)
    D = toricgcp.irreducible_fill(E)
    assert toricgcp.fills(D, E)


def test_compatibility():
    tri = [[0, 0], [1, 0], [0, 1]]
    assert toricgcp.is_compatible(tri, tri)
    assert not toricgcp.is_compatible(square(1, 1), tri)


def test_solve_degenerate_pair():
    rep = toricgcp.solve(toricgcp.load(DATA / "degenerate_pair.json"))
    assert rep["mixed_volume"] == 4 and rep["k"] == 1 and rep["chow_vanishes"]
    roots = {tuple(Fraction(c) for c in r["torus"]) for r in rep["roots"] if r["status"] == "torus-root"}
    assert (Fraction(1), Fraction(1)) in roots
    assert (Fraction(1, 7), Fraction(7, 4)) in roots
    assert sum(1 for r in roots if r[0] == -1) == 2


def test_errors_map_to_exceptions():
    bad = {"n": 2, "polynomials": []}
    with pytest.raises(toricgcp.SchemaError):
        toricgcp.solve(bad)
    flat = {"n": 2, "polynomials": [{"vars": ["x", "y"], "expr": "x+y"}, {"vars": ["x", "y"], "expr": "x-y"}]}
    with pytest.raises(toricgcp.PreconditionError):
        toricgcp.run("mixedvol", flat)


def test_deterministic_output():
    pb = toricgcp.load(DATA / "degenerate_pair.json")
    assert toricgcp.gcp(pb, seed=5) == toricgcp.gcp(pb, seed=5)
