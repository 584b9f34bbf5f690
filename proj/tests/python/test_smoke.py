import json

import pytest

import lpair

EXAMPLE_A = [[0, 3, 0, 0], [1, 0, 2, 0], [0, 2, 0, 1], [0, 0, 3, 0]]
EXAMPLE_ASTAR = [[3, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -3]]


def test_example_pair():
    report = lpair.verify(EXAMPLE_A, EXAMPLE_ASTAR)
    assert report["is_leonard_pair"] is True
    assert report["diameter"] == 3
    pa = report["parameter_array"]
    assert pa["theta"] == ["-3", "-1", "1", "3"]
    assert pa["varphi"] == ["-6", "-8", "-6"]
    assert pa["phi"] == ["6", "8", "6"]
    assert report["fingerprint"]["family"] == "classical"


def test_example_over_gf3_rejected():
    a, astar = lpair.example_section2("GF(3)")
    assert not lpair.is_leonard_pair(a, astar)
    report = lpair.verify(a, astar)
    assert "irreducible" in report["failure_reason"]


def test_array_round_trip():
    pa = lpair.extract_parameter_array(EXAMPLE_A, EXAMPLE_ASTAR)
    assert lpair.validate(pa)["valid"] is True
    a, astar = lpair.construct_bidiagonal(pa)
    assert lpair.extract_parameter_array(a, astar) == pa
    ta, tastar = lpair.construct_tridiagonal(pa)
    assert lpair.is_leonard_pair(ta, tastar)
    assert lpair.find_g(pa)["found"] is True
    assert lpair.poly_characterization(pa)


def test_invalid_array():
    pa = lpair.extract_parameter_array(EXAMPLE_A, EXAMPLE_ASTAR)
    pa["varphi"][1] = "-7"
    assert lpair.validate(pa)["valid"] is False
    assert lpair.find_g(pa)["found"] is False
    with pytest.raises(ValueError):
        lpair.construct_bidiagonal(pa)


def test_askey_wilson_and_char_poly():
    coeffs = lpair.fit_askey_wilson(EXAMPLE_A, EXAMPLE_ASTAR)
    assert coeffs["beta"] == "2"
    assert coeffs["unique"] is True
    assert lpair.char_poly(EXAMPLE_A) == ["9", "0", "-10", "0", "1"]


def test_generators():
    a, astar = lpair.sl2_pair(4)
    assert lpair.fingerprint(lpair.extract_parameter_array(a, astar))["beta"] == "2"
    u = lpair.uq_pair(2, 1, 3, 1, 3)
    assert u["avoids_forbidden"] is True
    assert lpair.fit_askey_wilson(u["a"], u["astar"])["beta"] == "17/4"
    lat = lpair.lattice_pair(3, 2)
    assert lat["size"] == 16
    assert sum(c["d"] + 1 for c in lat["components"]) == 16
    assert all(c["is_leonard_pair"] for c in lat["components"])


def test_fields_and_errors():
    assert lpair.is_leonard_pair(EXAMPLE_A, EXAMPLE_ASTAR, field="GF(101)")
    assert lpair.is_leonard_pair(EXAMPLE_A, EXAMPLE_ASTAR, field="Q(sqrt(2))")
    with pytest.raises(ValueError):
        lpair.verify([[1, 2]], [[1]])
    with pytest.raises(ValueError):
        lpair.verify([["1/0"]], [[1]])
    with pytest.raises(lpair.FieldError):
        lpair.example_section2("GF(4)")


def test_cli_in_process():
    code, out, _ = lpair.run_cli(["gen", "--source", "sl2", "--d", "3"])
    assert code == 0
    assert json.loads(out)["source"] == "sl2"
    code, _, err = lpair.run_cli(["verify", "--pair", "/nonexistent.json"])
    assert code == 2
    assert err
