import random

import pytest

from kmarcs.arcs import FamilyParams, km_family, lift_club_to_arc, line_spectrum, new_family, vandendriessche, vdd_field
from kmarcs.errors import DegenerateElation, FieldMismatch, WrongType
from kmarcs.gf2field import field_for
from kmarcs.linsets import club_hminus2, club_trace
from kmarcs.projgeom import all_points, normalize, on_line
from kmarcs.symmetry import (
    Collineation,
    apply,
    d_sets,
    elation,
    has_property_I,
    has_property_II,
    line_set_equivalent,
    pgl_equivalent,
    property_report,
    stabilizer_order,
    transliff_set,
    translation_lines,
    witness_from_json,
    witness_to_json,
)

VDD_MAP = ((1, 0, 1), (0, 1, 0), (0, 0, 1))


def random_collineation(F, rng, semilinear=True):
    while True:
        M = tuple(tuple(rng.randrange(F.q) for _ in range(3)) for _ in range(3))
        try:
            return Collineation(F, M, rng.randrange(F.m) if semilinear else 0)
        except ValueError:
            continue


def test_elation_basics():
    F = field_for(4)
    axis = (0, 0, 1)
    assert elation(F, axis, (3, 5, 1), (3, 5, 1)).is_identity()
    g = elation(F, axis, (3, 5, 1), (7, 2, 1))
    assert g((3, 5, 1)) == normalize(F, (7, 2, 1))
    for p in all_points(F, 3):
        if on_line(F, p, axis):
            assert g(p) == p
    with pytest.raises(DegenerateElation):
        elation(F, axis, (1, 0, 0), (3, 5, 1))


def test_vdd_matrix_maps_a0_to_a1():
    F = vdd_field(4)
    A0, A1 = vandendriessche(F, 0), vandendriessche(F, 1)
    assert apply(Collineation(F, VDD_MAP), A0.points) == A1.points


def test_apply_preserves_spectrum():
    rng = random.Random(3)
    F = field_for(4)
    A = new_family(FamilyParams(F, 2, 4, 0, 0))
    for _ in range(5):
        g = random_collineation(F, rng)
        assert line_spectrum(F, apply(g, A.points)) == A.spectrum


def test_translation_lines_of_lift():
    A = lift_club_to_arc(club_hminus2(5))
    assert (0, 0, 1) in translation_lines(A)


def test_translation_lines_new_family():
    F = field_for(4)
    lam = 2
    beta = F.pow(lam, 2)
    alpha = F.inv(F.mul(beta, beta))
    A = new_family(FamilyParams(F, alpha, beta, 0, 0))
    assert translation_lines(A) == [(0, 0, 1)]
    b3 = F.pow(lam, 5)  # beta^3 = 1
    A = new_family(FamilyParams(F, b3, b3, 0, 0))
    assert sorted(translation_lines(A)) == sorted(A.t_secants)
    outside = next(a for a in range(2, 16) if a not in transliff_set(F, beta) and F.mul(a, beta) != 1)
    assert translation_lines(new_family(FamilyParams(F, outside, beta, 0, 0))) == []


def test_translation_lines_are_t_secants():
    F = field_for(4)
    for A in (vandendriessche(vdd_field(4), 0), km_family(F, 2, 1), lift_club_to_arc(club_trace(4))):
        assert set(translation_lines(A)) <= set(A.t_secants)


def test_d_sets_new_family():
    F = field_for(4)
    p = FamilyParams(F, 2, 4, 0, 0)
    assert p.beta != p.gamma
    A = new_family(p)
    D = d_sets(A, (0, 0, 1), p.secants()[1:])
    expect = {normalize(F, (z, 1, 0)) for z in F.elements() if F.trace(z) == 1}
    assert D[1, 2] == expect and len(expect) == 8
    for S in D.sets.values():
        assert A.nucleus not in S


def test_d_sets_vdd_pairing():
    A = vandendriessche(vdd_field(4), 0)
    D = d_sets(A, (0, 0, 1))
    assert D[1, 2] == D[3, 4] and D[1, 3] == D[2, 4] and D[1, 4] == D[2, 3]


def test_d_sets_wrong_type():
    with pytest.raises(WrongType):
        d_sets(lift_club_to_arc(club_trace(4)), (0, 0, 1))
    A = vandendriessche(vdd_field(4), 0)
    with pytest.raises(WrongType):
        d_sets(A, (1, 1, 1))


def test_properties_new_family():
    F = field_for(4)
    beta = 4
    alpha = F.inv(F.mul(beta, beta))
    assert has_property_I(new_family(FamilyParams(F, alpha, beta, 0, 0)), (0, 0, 1))
    A = new_family(FamilyParams(F, 2, beta, 0, 0))
    assert has_property_II(A, (0, 0, 1)) and not has_property_I(A, (0, 0, 1))


def test_property_I_on_translation_line():
    for A in (vandendriessche(vdd_field(4), 0), lift_club_to_arc(club_hminus2(5))):
        for l in translation_lines(A):
            assert has_property_I(A, l)


def test_property_report_json():
    A = vandendriessche(vdd_field(4), 0)
    r = property_report(A, (0, 0, 1)).to_json()
    assert r["property_II"] is True and r["d_club_kind"] == "II"


def test_transliff_set():
    F = field_for(4)
    assert len(transliff_set(F, 2)) == 5
    l5 = F.pow(2, 5)
    assert transliff_set(F, l5) == {l5}
    F8 = field_for(3)
    assert all(len(transliff_set(F8, b)) == 5 for b in range(2, 8))
    with pytest.raises(ValueError):
        transliff_set(F, 1)


def test_pgl_equivalent_ab_variants():
    F = field_for(4)
    A = new_family(FamilyParams(F, 2, 4, 0, 0))
    for a, b in ((0, 1), (1, 0), (1, 1)):
        B = new_family(FamilyParams(F, 2, 4, a, b))
        g = pgl_equivalent(A, B)
        assert g is not None and apply(g, A.points) == B.points


def test_pgl_equivalent_remark_pair():
    F = field_for(4)
    beta = 2
    A = new_family(FamilyParams(F, F.inv(F.mul(beta, beta)), beta, 0, 0))
    b1 = beta ^ 1
    B = new_family(FamilyParams(F, F.inv(F.mul(beta, beta) ^ 1), b1, 0, 0))
    assert pgl_equivalent(A, B) is not None


def test_pgl_equivalent_planted_and_symmetric():
    rng = random.Random(11)
    F = field_for(4)
    A = km_family(F, 2, 1)
    assert pgl_equivalent(A, A) is not None
    g = random_collineation(F, rng, semilinear=False)
    B = new_family(FamilyParams(F, 2, 4, 0, 0))
    from kmarcs.arcs import verify_km

    C = verify_km(F, apply(g, B.points))
    w = pgl_equivalent(B, C)
    assert w is not None and apply(w, B.points) == C.points
    back = pgl_equivalent(C, B)
    assert back is not None and apply(back, C.points) == B.points
    assert apply(w.inverse(), C.points) == B.points


def test_pgl_equivalent_semilinear_only():
    rng = random.Random(5)
    F = field_for(4)
    A = new_family(FamilyParams(F, 2, 4, 0, 0))
    g = Collineation(F, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), 1)
    from kmarcs.arcs import verify_km

    C = verify_km(F, apply(g, A.points))
    w = pgl_equivalent(A, C, semilinear=True)
    assert w is not None and apply(w, A.points) == C.points


def test_pgl_inequivalent_and_mismatch():
    F = field_for(4)
    A = new_family(FamilyParams(F, 2, 4, 0, 0))
    assert pgl_equivalent(A, lift_club_to_arc(club_trace(4))) is None
    with pytest.raises(FieldMismatch):
        pgl_equivalent(A, vandendriessche(vdd_field(5), 0))


def test_line_set_equivalent_planted():
    rng = random.Random(2)
    F = field_for(5)
    S = club_hminus2(F).points
    for _ in range(3):
        while True:
            M = tuple(tuple(rng.randrange(F.q) for _ in range(2)) for _ in range(2))
            try:
                g = Collineation(F, M, rng.randrange(5))
                break
            except ValueError:
                continue
        T = apply(g, S)
        w = line_set_equivalent(F, S, T)
        assert w is not None and apply(w, S) == T
    assert line_set_equivalent(F, S, club_trace(F).points) is None


def test_stabilizer_club_trace_q8():
    F = field_for(3)
    S = club_trace(F).points
    assert stabilizer_order(F, S) == 12 == 3 * 1 * 2**2 * 1
    assert 126 * 12 == 1512


def test_stabilizer_formula_q16():
    F = field_for(4)
    assert stabilizer_order(F, club_trace(F).points) == 4 * 1 * 2**3 * 1


def test_collineation_group_axioms():
    rng = random.Random(9)
    F = field_for(3)
    pts = all_points(F, 3)
    for _ in range(10):
        g, h, k = (random_collineation(F, rng) for _ in range(3))
        assert g.compose(g.inverse()).is_identity()
        assert g.compose(h).compose(k) == g.compose(h.compose(k))
        for p in pts[::7]:
            assert g.compose(h)(p) == g(h(p))


def test_witness_json():
    F = field_for(4)
    g = Collineation(F, ((1, 2, 0), (0, 3, 1), (5, 0, 1)), 2)
    assert witness_from_json(F, witness_to_json(g)) == g


def test_elation_group_closure():
    A = vandendriessche(vdd_field(4), 0)
    F = A.field
    l = (0, 1, 2)
    off = sorted(p for p in A.points if not on_line(F, p, l))
    gens = [elation(F, l, off[0], r) for r in off[1:4]]
    for g in gens:
        for h in gens:
            gh = g.compose(h)
            assert apply(gh, A.points) == A.points
            assert all(gh(p) == p for p in all_points(F, 3) if on_line(F, p, l))
