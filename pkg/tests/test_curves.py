import json
from importlib import resources

import pytest

from veronese.curves import random_line, rnc, standard_line
from veronese.bundles import euler_presentation
from veronese.gradedmap import BasePointError, CurveParam, binary_gcd_many
from veronese.p1split import splitting_type
from veronese.poly import HomPoly
from veronese.prng import SplitMix64


def test_standard_line_forms():
    line = standard_line(2)
    assert line.forms[0] == HomPoly.variable(2, 0)
    assert line.forms[1] == HomPoly.variable(2, 1)
    assert line.forms[2].is_zero()


def test_standard_line_p1_is_identity():
    line = standard_line(1)
    assert line.degree == 1
    assert len(line.forms) == 2


def test_random_line_coefficient_rank():
    for seed in range(20):
        line = random_line(3, seed)
        # rank-2 enforced: some pair of forms is independent
        g = binary_gcd_many(line.forms)
        assert g.degree == 0


def test_random_line_golden():
    path = resources.files("veronese").joinpath("golden", "curves_v1.json")
    with path.open() as f:
        golden = json.load(f)
    assert random_line(2, 0).to_json() == golden["line,2,0"]
    assert rnc(3, 0).to_json() == golden["rnc,3,0"]


def test_random_lines_distinct_across_seeds():
    lines = {tuple(random_line(2, seed).to_json()["forms"]) for seed in range(30)}
    print(f"\ndistinct lines over 30 seeds: {len(lines)}/30")
    # a handful of collisions is fine; full collapse is not
    assert len(lines) > 20


def test_rnc_standard_parametrizations():
    assert [f.terms for f in rnc(2, 0).forms] == [
        {(2, 0): 1},
        {(1, 1): 1},
        {(0, 2): 1},
    ]
    assert [f.terms for f in rnc(3, 0).forms] == [
        {(3, 0): 1},
        {(2, 1): 1},
        {(1, 2): 1},
        {(0, 3): 1},
    ]


def test_rnc_random_seeds_base_point_free():
    for n in (2, 3, 4):
        for seed in range(5):
            curve = rnc(n, seed)
            assert binary_gcd_many(curve.forms).degree == 0
            assert curve.degree == n


def test_curve_param_rejects_base_point():
    s2 = HomPoly.monomial(2, (2, 0))
    st = HomPoly.monomial(2, (1, 1))
    with pytest.raises(BasePointError):
        CurveParam(2, (s2, st))


def test_curve_param_rejects_mixed_degrees():
    with pytest.raises(ValueError, match="inhomogeneous"):
        CurveParam(1, (HomPoly.variable(2, 0), HomPoly.monomial(2, (1, 1))))


def test_tangent_splitting_on_lines():
    for n in (2, 3, 4):
        st = splitting_type(euler_presentation(n).pullback(standard_line(n)))
        assert st.degrees == tuple([2] + [1] * (n - 1))


def test_tangent_splitting_on_rational_normal_curves():
    for n in (2, 3, 4):
        for seed in (0, 2):
            st = splitting_type(euler_presentation(n).pullback(rnc(n, seed)))
            assert st.degrees == (n + 1,) * n


def test_splitmix_reference_values():
    # first outputs for seed 0, pinned to the documented generator
    rng = SplitMix64(0)
    first = rng.next_u64()
    rng2 = SplitMix64(0)
    assert rng2.next_u64() == first
    assert SplitMix64(1).next_u64() != first
