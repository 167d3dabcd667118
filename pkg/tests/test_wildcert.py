import random
from fractions import Fraction

import pytest

from apolar.apolarity import contract
from apolar.parsing import parse_poly
from apolar.poly import DUAL, PRIMAL, Poly, VarTable, linear_form
from apolar import linalg
from apolar.wildcert import (
    LocusShapeError,
    cactus_lower_via_slice,
    extract_square_pairs,
    forced_square_check,
    gamma_space,
    product_locus,
    rank9_lower_cert,
    rank9_upper,
    square_pair_split,
    squares_confined,
    theorem2_report,
    transform_presentation,
    wild_cubic,
    wild_presentation,
    wild_table,
)

T5 = wild_table()
F = wild_cubic(T5)
PRES = wild_presentation(T5)


def dual(text, table=T5):
    return parse_poly(text, table=table, ring=DUAL)


def test_extract_square_pairs_of_wild_cubic():
    pairs = extract_square_pairs(F)
    assert pairs is not None and len(pairs) == 3
    acc = Poly.zero(T5)
    for z, w in pairs:
        acc = acc + (z ** 2) * w
    assert acc == F


def test_extract_square_pairs_pure_powers():
    pairs = extract_square_pairs(parse_poly("x0^3 + x1^3 + x2^3"))
    assert pairs is not None and len(pairs) == 3


def test_extract_square_pairs_rejects_generic():
    rng = random.Random(4)
    t = VarTable.make(("a", "b", "c"))
    from _oracle import random_poly

    f = random_poly(rng, t, PRIMAL, 3, max_terms=10)
    assert extract_square_pairs(f) is None


def test_square_pair_split():
    perp, comp = square_pair_split(PRES.square_pairs, T5)
    assert [str(b) for b in perp] == ["d_y0", "d_y1", "d_y2"]
    assert [str(a) for a in comp] == ["d_x0", "d_x1"]


def test_cactus_lower_via_slice_wild():
    cert = cactus_lower_via_slice(F)
    assert cert is not None
    assert cert.bound == 6
    assert cert.scheme_quotient_dim == 5
    assert cert.quotient_h1 == 2
    assert [str(g) for g in cert.gamma_basis] == ["d_y0", "d_y1", "d_y2"]


def test_cactus_lower_via_slice_no_drop_for_diagonal():
    diag = parse_poly("x0^3 + x1^3 + x2^3")
    assert cactus_lower_via_slice(diag) is None


def test_cactus_lower_requires_concise_cubic():
    with pytest.raises(ValueError):
        cactus_lower_via_slice(parse_poly("x0^3", table=T5))
    with pytest.raises(ValueError):
        cactus_lower_via_slice(parse_poly("x0^2 + x1^2"))


def test_product_locus_conic():
    perp, comp = square_pair_split(PRES.square_pairs, T5)
    locus = product_locus(F, perp, comp)
    # frozen by the pre-build elimination oracle: u0*u1 - u0*u2 + u1*u2
    assert locus.quadric == (Fraction(0), Fraction(1), Fraction(-1),
                             Fraction(0), Fraction(1), Fraction(0))
    assert locus.smooth
    pts = {u for u, _ in locus.samples}
    for expected in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, -2), (2, 1, 2), (2, -2, -1)):
        assert tuple(Fraction(c) for c in expected) in pts
    assert len(locus.extra_samples) >= 5
    for u, c in locus.all_samples():
        assert locus.quadric_value(u) == 0
        point = sum((b * ui for ui, b in zip(u, perp)), Poly.zero(T5, DUAL))
        factor = sum((a * ci for ci, a in zip(c, comp)), Poly.zero(T5, DUAL))
        assert contract(point * factor, F).is_zero()


def test_product_locus_contains_known_solution():
    perp, comp = square_pair_split(PRES.square_pairs, T5)
    locus = product_locus(F, perp, comp)
    by_point = dict(locus.samples)
    u = (Fraction(1), Fraction(0), Fraction(0))
    assert by_point[u] == (Fraction(0), Fraction(1))


def test_product_locus_two_point_case():
    t4 = VarTable.make(("x0", "x1", "y0", "y1"))
    h = parse_poly("x0^2*y0 + x1^2*y1", table=t4)
    perp = (Poly.variable(t4, 2, DUAL), Poly.variable(t4, 3, DUAL))
    comp = (Poly.variable(t4, 0, DUAL), Poly.variable(t4, 1, DUAL))
    locus = product_locus(h, perp, comp)
    pts = dict(locus.samples)
    u = (Fraction(1), Fraction(0))
    assert u in pts and pts[u] == (Fraction(0), Fraction(1))


def test_product_locus_shape_mismatch_for_diagonal():
    diag = parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3")
    t = diag.table
    perp = tuple(Poly.variable(t, i, DUAL) for i in (2, 3, 4))
    comp = tuple(Poly.variable(t, i, DUAL) for i in (0, 1))
    with pytest.raises(LocusShapeError):
        product_locus(diag, perp, comp)


def test_gamma_space_at_sample_points():
    dim, basis = gamma_space(F, dual("d_y0"))
    assert dim == 4
    assert [str(b) for b in basis] == ["d_x1", "d_y0", "d_y1", "d_y2"]
    dim2, basis2 = gamma_space(F, dual("d_y2"))
    assert dim2 == 4
    assert any(str(b) == "d_x0" for b in basis2)
    with pytest.raises(ValueError):
        gamma_space(F, Poly.zero(T5, DUAL))


def test_forced_square_check_wild():
    perp, _ = square_pair_split(PRES.square_pairs, T5)
    assert forced_square_check(F, perp)


def test_forced_square_check_counterexample():
    t = VarTable.make(("x0", "x1", "x2"))
    f = parse_poly("x0^3", table=t)
    perp = (Poly.variable(t, 1, DUAL),)
    assert not forced_square_check(f, perp)


def test_squares_confined_wild():
    perp, comp = square_pair_split(PRES.square_pairs, T5)
    assert squares_confined(F, perp, comp)


def test_squares_confined_counterexample():
    t = VarTable.make(("x0", "x1", "y0"))
    f = parse_poly("x0^2*y0", table=t)
    perp = (Poly.variable(t, 2, DUAL),)
    comp = (Poly.variable(t, 0, DUAL), Poly.variable(t, 1, DUAL))
    # d_x1 squares to zero against f but lies outside the perp span
    assert not squares_confined(f, perp, comp)


def test_rank9_lower_cert_wild():
    cert = rank9_lower_cert(F, 8)
    assert cert.verified
    assert cert.bound == 9
    assert cert.failed_stage is None
    assert len(cert.locus.all_samples()) >= 5
    assert any(s.kind == "cited" for s in cert.stages)


def test_rank9_lower_cert_weak_rmax():
    cert = rank9_lower_cert(F, 4)
    assert cert.verified
    assert cert.bound == 5


def test_rank9_lower_cert_rejects_diagonal():
    diag = parse_poly("x0^3 + x1^3 + x2^3 + x3^3 + x4^3")
    cert = rank9_lower_cert(diag, 8)
    assert not cert.verified
    assert cert.failed_stage == "shape"


def test_rank9_lower_cert_rejects_large_rmax():
    cert = rank9_lower_cert(F, 9)
    assert not cert.verified
    assert cert.failed_stage == "quadric-count"


def test_rank9_upper_single_monomial():
    t = VarTable.make(("x0", "y0"))
    f = parse_poly("x0^2*y0", table=t)
    dec = rank9_upper(f)
    assert len(dec) == 3
    terms = {(str(l)): lam for lam, l in dec.terms}
    assert terms["x0 + y0"] == Fraction(1, 6)
    assert terms["x0 - y0"] == Fraction(-1, 6)
    assert terms["y0"] == Fraction(-1, 3)
    assert dec.verify()


def test_rank9_upper_wild_nine_cubes():
    dec = rank9_upper(F)
    assert len(dec) == 9
    assert dec.verify()


def test_rank9_upper_pure_cube_collapses():
    t = VarTable.make(("x",))
    dec = rank9_upper(parse_poly("x^3", table=t))
    assert len(dec) == 1
    assert dec.terms[0][0] == Fraction(1)


def test_rank9_upper_shape_mismatch():
    rng = random.Random(6)
    t = VarTable.make(("a", "b", "c"))
    from _oracle import random_poly

    f = random_poly(rng, t, PRIMAL, 3, max_terms=10)
    with pytest.raises(ValueError):
        rank9_upper(f)


def test_theorem2_wild_cubic():
    rep = theorem2_report(F)
    assert rep.final() == {"border": 5, "smoothable": 6, "cactus": 6, "rank": 9}
    assert rep.hilbert == (1, 5, 5, 1)
    assert rep.conciseness == 5
    assert rep.slice2_dim == 10
    assert all(c.verified for c in rep.certificates)


def test_theorem2_binary_route():
    rep = theorem2_report(parse_poly("x^2*y", vars=["x", "y", "u", "v", "w"]))
    assert rep.final() == {"border": 2, "smoothable": 2, "cactus": 2, "rank": 3}


def test_theorem2_direct_sum_route():
    t6 = VarTable.make(("x0", "x1", "y0", "y1", "y2", "y3"))
    f6 = parse_poly("x0^2*y0 - (x0+x1)^2*y1 + x1^2*y2 + y3^3", table=t6)
    rep = theorem2_report(f6)
    final = rep.final()
    assert rep.conciseness == 6
    assert final["border"] == 6
    assert rep.report.lower("cactus") >= 7
    assert final["cactus"] == 7
    assert final["smoothable"] == 7


def test_theorem2_quadric_route():
    rep = theorem2_report(parse_poly("x0*x1 + x2^2"))
    assert rep.final() == {"border": 3, "smoothable": 3, "cactus": 3, "rank": 3}


def test_theorem2_diagonal_cubic():
    rep = theorem2_report(parse_poly("x0^3 + x1^3 + x2^3"))
    assert rep.final() == {"border": 3, "smoothable": 3, "cactus": 3, "rank": 3}


def test_theorem2_rejects_bad_input():
    with pytest.raises(ValueError):
        theorem2_report(Poly.zero(T5))
    with pytest.raises(ValueError):
        theorem2_report(parse_poly("x^2 + x^3", vars=["x"]))


def test_presentation_transform_preserves_values():
    rng = random.Random(91)
    while True:
        m = [[rng.randint(-2, 2) for _ in range(5)] for _ in range(5)]
        if linalg.rank(m) == 5:
            break
    images = [linear_form(T5, row) for row in m]
    moved = transform_presentation(PRES, images)
    assert moved.poly == F.substitute(images)
    rep = theorem2_report(moved)
    assert rep.final() == {"border": 5, "smoothable": 6, "cactus": 6, "rank": 9}
