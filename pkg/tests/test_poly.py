import json
from importlib import resources

import pytest

from veronese.poly import HomPoly, monomials, parse_poly, render_poly
from veronese.prng import SplitMix64


def Z(i, nv=3):
    return HomPoly.variable(nv, i)


def test_multiply_basic():
    assert Z(0) * Z(1) == HomPoly.monomial(3, (1, 1, 0))


def test_multiply_difference_of_squares():
    p = (Z(0, 2) + Z(1, 2)) * (Z(0, 2) - Z(1, 2))
    assert p == HomPoly.monomial(2, (2, 0)) - HomPoly.monomial(2, (0, 2))


def test_multiply_by_zero():
    z = HomPoly.zero(2, 1)
    p = Z(0, 2) + Z(1, 2)
    assert (z * p).is_zero()


def test_differentiate_square():
    assert HomPoly.monomial(2, (2, 0)).differentiate(0) == HomPoly.variable(2, 0, 2)


def test_differentiate_mixed():
    assert HomPoly.monomial(2, (1, 1)).differentiate(1) == Z(0, 2)


def test_differentiate_missing_variable():
    assert HomPoly.monomial(2, (0, 3)).differentiate(0).is_zero()


def test_substitute_conic():
    # Z0*Z2 along (s^2, st, t^2) -> s^2 t^2
    forms = [
        HomPoly.monomial(2, (2, 0)),
        HomPoly.monomial(2, (1, 1)),
        HomPoly.monomial(2, (0, 2)),
    ]
    assert HomPoly.monomial(3, (1, 0, 1)).substitute(forms) == HomPoly.monomial(2, (2, 2))


def test_substitute_line():
    forms = [Z(0, 2), Z(1, 2), HomPoly.zero(2, 1)]
    assert Z(1).substitute(forms) == Z(1, 2)


def test_substitute_cubic_curve():
    forms = [HomPoly.monomial(2, (3 - k, k)) for k in range(4)]
    assert HomPoly.monomial(4, (2, 0, 0, 0)).substitute(forms) == HomPoly.monomial(
        2, (6, 0)
    )


def test_substitute_rejects_mixed_degrees():
    with pytest.raises(ValueError, match="inhomogeneous"):
        Z(0, 2).substitute([Z(0, 2), HomPoly.monomial(2, (1, 1))])


def test_monomials_two_vars_degree_one():
    assert monomials(2, 1) == ((1, 0), (0, 1))


def test_monomials_count():
    assert len(monomials(3, 2)) == 6


def test_monomials_degree_zero():
    assert monomials(2, 0) == ((0, 0),)


def test_monomial_order_golden():
    path = resources.files("veronese").joinpath("golden", "monomial_order_v1.json")
    with path.open() as f:
        golden = json.load(f)
    for key, monos in golden.items():
        nv, m = (int(x) for x in key.split(","))
        assert [list(t) for t in monomials(nv, m)] == monos


def _random_poly(rng, nv, deg):
    terms = {}
    for mono in monomials(nv, deg):
        c = rng.next_int(-6, 6)
        if c and rng.next_below(2):
            terms[mono] = c
    return HomPoly(nv, deg, terms)


def test_euler_identity_random():
    rng = SplitMix64(77)
    for _ in range(60):
        nv = rng.next_int(2, 4)
        deg = rng.next_int(1, 5)
        p = _random_poly(rng, nv, deg)
        acc = HomPoly.zero(nv, deg)
        for i in range(nv):
            acc = acc + HomPoly.variable(nv, i) * p.differentiate(i)
        assert acc == p * deg


def test_substitute_is_ring_homomorphism():
    rng = SplitMix64(78)
    for _ in range(60):
        nv = rng.next_int(2, 3)
        e = rng.next_int(1, 2)
        forms = [_random_poly(rng, 2, e) for _ in range(nv)]
        p = _random_poly(rng, nv, rng.next_int(1, 3))
        q = _random_poly(rng, nv, rng.next_int(1, 3))
        assert (p * q).substitute(forms) == p.substitute(forms) * q.substitute(forms)


def test_render_parse_round_trip():
    rng = SplitMix64(79)
    for _ in range(60):
        nv = rng.next_int(2, 4)
        deg = rng.next_int(0, 4)
        p = _random_poly(rng, nv, deg)
        assert parse_poly(render_poly(p), nv, deg) == p


def test_render_examples():
    p = HomPoly(3, 2, {(2, 0, 0): 2, (1, 1, 0): -1, (0, 0, 2): 1})
    assert render_poly(p) == "2*Z0^2 - Z0*Z1 + Z2^2"
    assert render_poly(HomPoly.zero(2, 3)) == "0"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("Z0 + bogus", 2, 1)
    with pytest.raises(ValueError):
        parse_poly("Z5", 2, 1)
    with pytest.raises(ValueError):
        parse_poly("Z0^2", 2, 1)
