"""Smoke tests for the _hallq extension module."""

import json
import os

import pytest

import _hallq as hq

JORDAN = json.dumps({"vertices": ["1"], "arrows": [["1", "1"]]})
A1 = json.dumps({"vertices": ["1"], "arrows": []})
A2 = json.dumps({"vertices": ["1", "2"], "arrows": [["1", "2"]]})


def test_quiver_loading_and_cartan():
    q = hq.Quiver.from_json(A2)
    assert q.n == 2
    assert q.cartan() == [[2, -1], [-1, 2]]
    jordan = hq.Quiver.from_json(JORDAN)
    assert jordan.cartan() == [[0]]
    assert jordan.has_oriented_cycle()


def test_quiver_from_data_dir():
    data = os.environ.get("HALLQ_DATA")
    if not data:
        pytest.skip("HALLQ_DATA not set")
    q = hq.Quiver.from_file(os.path.join(data, "quivers", "kronecker.json"))
    assert q.cartan() == [[2, -2], [-2, 2]]
    assert q.phi_twist_exponent(0) == 0


def test_euler_forms():
    q = hq.Quiver.from_json(A2)
    assert q.euler([1, 0], [0, 1]) == -1
    assert q.euler([0, 1], [1, 0]) == 0
    assert q.sym_euler([1, 0], [0, 1]) == -1


def test_hall_star_and_b_elements():
    q = hq.Quiver.from_json(JORDAN)
    ctx = hq.HallContext(q, 4)
    # b_alpha * b_{-alpha} = 1 in the reduced quotient.
    assert ctx.star(ctx.b([1]), ctx.b([-1])) == ctx.unit()
    # The l = 1 generator image is the plain delta basis vector.
    assert ctx.bb_image("e", 0, 1) == ctx.delta_c_power(0, 1)
    # Two-sided relation at q = 4: e*f - f*e = (b_S - b_{-S}) / (1 - t^2).
    e, f = ctx.bb_image("e", 0), ctx.bb_image("f", 0)
    lhs = ctx.star(e, f) - ctx.star(f, e)
    rhs = ctx.scale(ctx.b([1]) - ctx.b([-1]), -1, 3)
    assert lhs == rhs
    assert (lhs - rhs).is_zero()


def test_realize_word():
    q = hq.Quiver.from_json(A2)
    ctx = hq.HallContext(q, 4)
    # Cross commutator vanishes under both realizations.
    word_ef = [("e", 0, 1), ("f", 1, 1)]
    word_fe = [("f", 1, 1), ("e", 0, 1)]
    for acyclic in (False, True):
        d = ctx.realize(word_ef, acyclic) - ctx.realize(word_fe, acyclic)
        assert d.is_zero()


def test_straighten():
    q = hq.Quiver.from_json(A1)
    nf = hq.straighten(q, [("e", 0, 1), ("f", 0, 1)])
    assert "f(1,1)*e(1,1)" in nf
    assert "K" in nf
    assert hq.straighten(q, [("K", 0, 1), ("K", 0, -1)]) == "1"


def test_classical_limit():
    q = hq.Quiver.from_json(A1)
    assert hq.classical_limit(q, [("K", 0, 1)]) == "1"
    limit = hq.classical_limit(q, [("e", 0, 1), ("f", 0, 1)])
    assert "e(1,1)" in limit and "f(1,1)" in limit


def test_verify_suites():
    jordan = hq.Quiver.from_json(JORDAN)
    r = hq.verify(jordan, "eikfil", q=4, k=1, l=1)
    assert r["all_pass"] and r["n_fail"] == 0
    a2 = hq.Quiver.from_json(A2)
    assert hq.verify(a2, "serre", q=4, serre_sign="signed")["all_pass"]
    assert hq.verify(a2, "serre", q=4, serre_sign="unsigned")["n_fail"] > 0
    a1 = hq.Quiver.from_json(A1)
    r = hq.verify(a1, "classical_bracket", samples=[4, 9, 25])
    assert r["all_pass"]


def test_verify_unknown_suite_raises():
    q = hq.Quiver.from_json(A1)
    with pytest.raises(ValueError):
        hq.verify(q, "nonsense")
