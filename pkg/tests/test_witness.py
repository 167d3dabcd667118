import random
from fractions import Fraction

import pytest

from apolar.parsing import parse_poly
from apolar.poly import PRIMAL, Poly, VarTable
from apolar.witness import (
    ParamPoly,
    TangentDatum,
    auto_scale_exponent,
    direct_sum_extend,
    direct_summands,
    double_point_span,
    tangent_limit_family,
    verify_limit,
)
from apolar.wildcert import wild_cubic, wild_cubic_tangent_witness, wild_table

from _oracle import random_poly

T5 = wild_table()
F = wild_cubic(T5)


def test_reference_family_certifies_the_limit():
    data = wild_cubic_tangent_witness(T5)
    fam = tangent_limit_family(data, 3)
    assert fam.r == 5
    assert fam.limit == F
    assert verify_limit(fam.family, 1, F)
    # without the scale shift the constant part is zero, not the target
    assert not verify_limit(fam.family, 0, F)


def test_trivial_shifted_family():
    g = parse_poly("x0^3")
    fam = ParamPoly.from_poly(g, t_power=1)
    assert verify_limit(fam, 1, g)


def test_auto_scale_exponent():
    data = wild_cubic_tangent_witness(T5)
    fam = tangent_limit_family(data, 3)
    k = auto_scale_exponent(fam.family)
    assert k == 1
    assert verify_limit(fam.family, k, F)
    assert auto_scale_exponent(ParamPoly.zero(T5)) == 0


def test_quadratic_tangent_example():
    t = VarTable.make(("x", "y"))
    x, y = Poly.variable(t, 0), Poly.variable(t, 1)
    zero = Poly.zero(t)
    data = (
        TangentDatum(Fraction(-2), x, y),
        TangentDatum(Fraction(-2), y, zero),
        TangentDatum(Fraction(1), x + y, zero),
        TangentDatum(Fraction(1), x - y, zero),
    )
    fam = tangent_limit_family(data, 2)
    assert fam.limit == parse_poly("-4*x*y", table=t)
    assert verify_limit(fam.family, 1, fam.limit)


def test_all_zero_directions_give_zero_family():
    t = VarTable.make(("x", "y"))
    x, y = Poly.variable(t, 0), Poly.variable(t, 1)
    zero = Poly.zero(t)
    data = (
        TangentDatum(Fraction(1), x, zero),
        TangentDatum(Fraction(-1), x, zero),
    )
    fam = tangent_limit_family(data, 3)
    assert fam.family.is_zero()
    assert fam.limit.is_zero()


def test_dependency_precondition_enforced():
    t = VarTable.make(("x", "y"))
    x, y = Poly.variable(t, 0), Poly.variable(t, 1)
    with pytest.raises(ValueError):
        tangent_limit_family((TangentDatum(Fraction(1), x, y),), 3)


def test_family_specializations_are_power_sums():
    data = wild_cubic_tangent_witness(T5)
    fam = tangent_limit_family(data, 3)
    for t_val in (1, -1, Fraction(1, 2), 3):
        expected = Poly.zero(T5)
        for td in data:
            expected = expected + ((td.base + td.direction * Fraction(t_val)) ** 3) * td.coefficient
        assert fam.family.evaluate(t_val) == expected


def test_double_point_span_wild_pairs():
    x0, x1, y0, y1, y2 = (Poly.variable(T5, i) for i in range(5))
    pairs = [(x0, y0), (x0 + x1, -y1), (x1, y2)]
    cert = double_point_span(F, pairs)
    assert cert is not None
    assert cert.cactus_upper == 6
    assert cert.point_coeffs == (Fraction(0),) * 3
    assert cert.jet_coeffs == (Fraction(1),) * 3
    assert cert.curvilinear


def test_double_point_span_pure_cube():
    t = VarTable.make(("x",))
    x = Poly.variable(t, 0)
    cert = double_point_span(x ** 3, [(x, Poly.zero(t))])
    assert cert is not None
    assert cert.point_coeffs == (Fraction(1),)


def test_double_point_span_fails_for_generic_cubic():
    rng = random.Random(1009)
    t = VarTable.make(("a", "b", "c"))
    f = random_poly(rng, t, PRIMAL, 3, max_terms=10)
    from apolar.apolarity import concise_dim

    assert concise_dim(f).dim == 3
    a, b = Poly.variable(t, 0), Poly.variable(t, 1)
    assert double_point_span(f, [(a, b)]) is None


def test_direct_summands():
    assert len(direct_summands(F)) == 1
    assert len(direct_summands(parse_poly("x0^3 + x1^3 + x2^3"))) == 3


def test_direct_sum_extension_wild_plus_cube():
    t6 = VarTable.make(("x0", "x1", "y0", "y1", "y2", "y3"))
    f = parse_poly("x0^2*y0 - (x0+x1)^2*y1 + x1^2*y2", table=t6)
    g = parse_poly("y3^3", table=t6)
    rep = direct_sum_extend(f, g)
    assert rep.slice_intersection_equal
    assert (rep.concise_left, rep.concise_right, rep.concise_total) == (5, 1, 6)


def test_direct_sum_disjoint_cubes():
    t = VarTable.make(("x0", "x1"))
    f = parse_poly("x0^3", table=t)
    g = parse_poly("x1^3", table=t)
    rep = direct_sum_extend(f, g)
    assert rep.slice_intersection_equal
    assert rep.concise_total == 2


def test_direct_sum_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        direct_sum_extend(F, Poly.zero(T5))
    with pytest.raises(ValueError):
        direct_sum_extend(F, F)


def test_direct_sum_across_tables():
    ta = VarTable.make(("u",))
    tb = VarTable.make(("v",))
    rep = direct_sum_extend(parse_poly("u^3", table=ta), parse_poly("v^3", table=tb))
    assert rep.combined.table.primal == ("u", "v")
    assert rep.slice_intersection_equal
