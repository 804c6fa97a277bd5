import json
import pathlib

import pytest

import chainweight as cw

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "tests" / "corpus"


def load(name):
    return cw.Complex.from_json((CORPUS / name).read_text())


def point(deg):
    return cw.Complex.from_json(json.dumps({"ring": "Z", "min_degree": deg, "ranks": [1], "differentials": []}))


def test_round_trip():
    text = (CORPUS / "z_mod_2.json").read_text()
    x = cw.Complex.from_json(text)
    assert x.to_json() + "\n" == text
    assert (x.ring, x.min_degree, x.max_degree) == ("Z", 0, 1)
    assert x.rank(0) == 1 and x.rank(5) == 0


def test_homology_and_weights():
    x = load("z_mod_2.json")
    assert cw.homology(x) == {0: "Z/2"}
    assert cw.weights(x) == (0, 1)
    assert not cw.in_heart(x)
    assert cw.in_w_geq(x, 0) and not cw.in_w_leq(x, 0)
    assert cw.homology(load("sphere.json")) == {0: "Z", 2: "Z"}


def test_reduction_mod_p():
    x = load("z_mod_2.json").reduce("F2")
    assert x.ring == "F2"
    assert cw.homology(x) == {0: "F2", 1: "F2"}
    assert cw.homology(load("z_mod_2.json").reduce("F3")) == {}


def test_k0():
    for name in ["z_mod_2.json", "sphere.json", "gen_z_mixed.json", "gen_z_torsion.json"]:
        x = load(name)
        assert cw.k0(x) == cw.euler_char(x) == cw.euler_char_homology(x)
    assert cw.euler_char(load("sphere.json")) == 2


def test_decompose():
    a, b = cw.decompose(load("sphere.json"), 0)
    assert cw.in_w_leq(a, 0) and cw.in_w_geq(b, 1)
    assert cw.homology(a) == {0: "Z"} and cw.homology(b) == {2: "Z"}


def test_orthogonality():
    assert cw.orthogonal(point(0), point(1), 0)
    with pytest.raises(cw.UsageError):
        cw.orthogonal(point(1), point(0), 0)


def test_acyclic_splitting():
    x = load("elementary.json")
    assert cw.is_acyclic(x)
    assert cw.weights(x) is None
    assert cw.split_acyclic(x) == [(1, 1)]
    assert cw.minimize(x).is_zero()
    with pytest.raises(cw.MathNegative):
        cw.split_acyclic(load("z_mod_2.json"))


def test_direct_sum_and_shift():
    x = point(0) + point(1).shift(1)
    assert cw.homology(x) == {0: "Z", 2: "Z"}


def test_parse_errors():
    for name in ["bad_d_squared.json", "bad_shape.json", "bad_float.json", "bad_truncated.json"]:
        with pytest.raises(cw.ParseError):
            load(name)
    with pytest.raises(ValueError):
        load("z_mod_2.json").reduce("F4")


def test_verify():
    names = [name for name, _ in cw.suites()]
    assert "weight-structures.orthogonality" in names
    report = cw.verify("orthogonality", seed=5, trials=10, max_blocks=6)
    assert report["status"] == "pass"
    assert report == cw.verify("orthogonality", seed=5, trials=10, max_blocks=6)
    bad = cw.verify("negative-control", trials=2)
    assert bad["status"] == "fail" and len(bad["failures"]) == 4
    with pytest.raises(cw.ParseError):
        cw.verify("no-such-suite")
