from __future__ import annotations

import numpy as np
import pytest

from weakiso.errors import InvalidInput, ShapeMismatch, TriangleViolation
from weakiso.generate import random_space
from weakiso.io import detect_format, dumps, file_digest, format_number, loads, parse, read_space, write_space
from weakiso.space import validate


@pytest.mark.parametrize("fmt", ["json", "csv"])
@pytest.mark.parametrize("kind", ["uniform", "integer", "perturbed"])
def test_round_trip_bitwise(fmt, kind, rng):
    for _ in range(10):
        X = random_space(int(rng.integers(1, 7)), kind, rng, repair=True).space
        Y = loads(dumps(X, fmt), fmt)
        assert Y.labels == X.labels
        assert Y.dist.tobytes() == X.dist.tobytes()


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_awkward_floats(fmt):
    d = 0.1 + 0.2
    X = validate([[0, d, 1 / 3], [d, 0, 1e-300 + 0.5], [1 / 3, 0.5, 0]])
    assert loads(dumps(X, fmt), fmt).dist.tobytes() == X.dist.tobytes()


def test_format_number():
    assert format_number(3.0) == "3"
    assert format_number(0.5) == "0.5"
    assert float(format_number(0.1 + 0.2)) == 0.1 + 0.2


def test_csv_layout(triangles):
    text = dumps(triangles["X"], "csv")
    assert text.splitlines() == ["a,b,c", "0,3,4", "3,0,5", "4,5,0"]


def test_json_default_labels():
    X = loads('{"distances": [[0, 1], [1, 0]]}')
    assert X.labels == ("x1", "x2")


def test_thousands_separator():
    with pytest.raises(InvalidInput):
        loads('a,b\n0,"1,000"\n"1,000",0\n', "csv")


@pytest.mark.parametrize("text, fmt", [
    ("a,b\n0,1\n1,0,2\n", "csv"),
    ('{"labels": ["a", "b"], "distances": [[0, 1]]}', "json"),
    ('{"labels": ["a"], "distances": [0]}', "json"),
])
def test_shape_errors(text, fmt):
    with pytest.raises(ShapeMismatch):
        loads(text, fmt)


def test_malformed():
    for text in ("{", "[]", '{"distances": [["x"]]}', '{"distances": [[true]]}'):
        with pytest.raises(InvalidInput):
            loads(text)
    with pytest.raises(InvalidInput):
        parse("", "csv")
    with pytest.raises(InvalidInput):
        dumps(validate([[0]]), "xml")


def test_metric_checks_apply():
    with pytest.raises(TriangleViolation):
        loads('{"distances": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]}')


def test_files(tmp_path, triangles):
    for name in ("x.json", "x.csv", "x.txt"):
        path = tmp_path / name
        write_space(triangles["X"], path)
        assert np.array_equal(read_space(path).dist, triangles["X"].dist)
        assert len(file_digest(path)) == 64
    assert detect_format("a.CSV") == "csv" and detect_format("a", "csv") == "csv"
    with pytest.raises(InvalidInput):
        detect_format("a.json", "yaml")
