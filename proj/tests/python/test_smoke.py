import json
from math import comb

import pytest

import supalg


def test_binomial_matches_python():
    for n in range(30):
        for k in range(n + 1):
            assert supalg.binomial(n, k, 3) == comb(n, k) % 3


def test_normalize_p_polynomial():
    assert supalg.normalize_p_polynomial("2T^9 + T^3", 3) == "T^9+2T^3"
    with pytest.raises(ValueError):
        supalg.normalize_p_polynomial("T^3+T", 3)


def test_verify_hopf():
    assert all(supalg.verify_hopf(3, 1, 2).values())
    assert all(supalg.verify_hopf(3, 1, 2, algebra="group").values())
    with pytest.raises(ValueError):
        supalg.verify_hopf(3, 1, 1, algebra="other")


def test_betti():
    assert [supalg.betti(3, 1, 1, n)["total"] for n in range(5)] == [1, 2, 3, 4, 5]
    b = supalg.betti(3, 1, 1, 2)
    assert (b["even"], b["odd"]) == (2, 1)
    assert supalg.betti(3, 1, 1, 3, f="T^3", eta=1)["total"] == 1


def test_points():
    pts = supalg.enumerate_points(1, 1, 1, 3)
    assert len(pts) == 9
    assert all(supalg.check_point(1, 1, 1, 3, e)[0] for e in pts)
    assert len(supalg.enumerate_points(1, 1, 1, 3, f="T^3")) == 5
    ok, why = supalg.check_point(1, 1, 1, 3, [1, 1, 0, 0])
    assert not ok and why == "alpha_0^p + beta^2 = 0"


def test_endomorphisms():
    tuples, matches = supalg.endomorphisms(3, 1, 2)
    assert matches and len(tuples) == 9


def test_cli_json():
    code, out, err = supalg.run_cli(["enumerate-points", "--format", "json"])
    assert code == 0
    assert len(json.loads(out)["records"]) == 9
    code, _, err = supalg.run_cli(["cohomology", "--p", "4"])
    assert code == 2 and err
