import pytest

from kmarcs.errors import AmbientMismatch, DegenerateInput
from kmarcs.gf2field import find_normal_basis, field_for
from kmarcs.projgeom import (
    FieldReduction,
    Spread,
    Subspace,
    all_points,
    b_operator,
    field_reduce,
    intersect,
    line_through,
    meet,
    normalize,
    on_line,
    points_on_line,
    proj_dim,
    span,
)

F2 = field_for(1)


def binary(n, vecs):
    return Subspace.spanned_by(F2, 1, n, vecs)


def test_normalize():
    F = field_for(4)
    assert normalize(F, (0, 3, 5))[1] == 1
    with pytest.raises(DegenerateInput):
        normalize(F, (0, 0, 0))


def test_line_incidence():
    F = field_for(3)
    pts = all_points(F, 3)
    assert len(pts) == 73
    P, Q = pts[3], pts[40]
    l = line_through(F, P, Q)
    assert on_line(F, P, l) and on_line(F, Q, l)
    on = points_on_line(F, l)
    assert len(on) == 9 and P in on and Q in on
    assert points_on_line(F, l) == on
    m = line_through(F, pts[5], pts[60])
    if m != l:
        R = meet(F, l, m)
        assert on_line(F, R, l) and on_line(F, R, m)
    with pytest.raises(DegenerateInput):
        line_through(F, P, P)
    with pytest.raises(DegenerateInput):
        meet(F, l, l)


def test_pg1_4_spread_partitions_pg3_2():
    F = field_for(2)
    sp = Spread(FieldReduction(F, 1), 2)
    images = [field_reduce(P, sp) for P in all_points(F, 2)]
    assert len(images) == 5
    pts = [p for E in images for p in E.points()]
    assert all(E.point_count() == 3 for E in images)
    assert len(pts) == len(set(pts)) == 15
    assert sp.check_partition()


def test_pg2_16_spread_in_pg11_2():
    F = field_for(4)
    sp = Spread(FieldReduction(F, 1), 3)
    assert len(sp.index_points()) == 273
    assert sp.check_partition()
    assert 273 * 15 == 2**12 - 1


def test_b_operator_basics():
    F = field_for(3)
    sp = Spread(FieldReduction(F, 1), 2)
    P = (1, 5)
    assert b_operator(field_reduce(P, sp), sp) == {P}
    whole = sp.subspace([tuple(int(i == j) for j in range(6)) for i in range(6)])
    assert b_operator(whole, sp) == frozenset(all_points(F, 2))


def test_b_operator_ambient_check():
    F = field_for(3)
    sp = Spread(FieldReduction(F, 1), 2)
    with pytest.raises(AmbientMismatch):
        b_operator(binary(4, [(1, 0, 0, 0)]), sp)


def test_spread_with_normal_basis():
    F = field_for(3)
    sp = Spread(FieldReduction(F, 1, find_normal_basis(F)), 2)
    assert sp.check_partition()


def test_spread_over_subfield():
    F = field_for(4)
    sp = Spread(FieldReduction(F, 2), 2)
    assert sp.check_partition()
    assert field_reduce((1, 3), sp).point_count() == 5


def test_grassmann_examples():
    H1 = binary(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    H2 = binary(4, [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    assert proj_dim(intersect(H1, H2)) == 1
    assert intersect(H1, H1) == H1
    L1 = binary(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    L2 = binary(4, [(0, 0, 1, 0), (0, 0, 0, 1)])
    assert proj_dim(span(L1, L2)) == 3
    assert intersect(L1, L2).dim == 0


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        span(binary(4, [(1, 0, 0, 0)]), binary(5, [(1, 0, 0, 0, 0)]))
    with pytest.raises(AmbientMismatch):
        binary(4, [(1, 0, 0)])


def test_subspace_points_and_vectors():
    U = binary(5, [(1, 0, 1, 0, 0), (0, 1, 1, 0, 1), (0, 0, 0, 1, 1)])
    assert len(U.points()) == len(set(U.points())) == 7
    assert len(U.vectors()) == 8
    assert all(U.contains(v) for v in U.vectors())
    assert not U.contains((1, 0, 0, 0, 0))
