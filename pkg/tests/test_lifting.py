import numpy as np
import pytest

from edrlab import lifting as L
from edrlab.matrices import Mat
from edrlab.rings import make_ring
from edrlab.scan import grid

Z6 = make_ring("Zmod:6")
A6 = Mat.parse(Z6, "[[2,1],[0,3]]")


def test_extendable_oracles():
    ok, Ap = L.is_extendable(Mat.identity(Z6, 2))
    assert ok and Ap.det() == Z6.one_idx
    ok, Ap = L.is_extendable(A6)
    assert ok and Ap.det() == Z6.one_idx
    assert [Ap[i, j] for i in range(2) for j in range(2)] == [2, 1, 0, 3]
    with pytest.raises(L.PreconditionError):
        L.is_extendable(Mat.parse(Z6, "[[2,0],[0,2]]"))


def test_simple_extension_has_zero_corner():
    ok, Ap = L.is_simply_extendable(A6)
    assert ok and Ap.det() == Z6.one_idx and Ap[2, 2] == Z6.zero_idx
    # (e, f) = (-y, x) read off the third column
    e, f = Z6.neg_(Ap[1, 2]), Ap[0, 2]
    assert Z6.um2[e, f]
    assert Z6.um2[Z6.mul_(2, e), Z6.add_(Z6.mul_(1, e), Z6.mul_(3, f))]
    # hand-checked pair (e, f) = (1, 2): (2 * 1, 1 * 1 + 3 * 2) = (2, 1)
    assert Z6.um2[1, 2] and Z6.um2[Z6.mul_(2, 1), Z6.add_(1, Z6.mul_(3, 2))]


def test_diagonal_with_unit_is_simply_extendable():
    R = make_ring("Zmod:12")
    for u in (1, 5, 7, 11):
        for d in range(12):
            assert L.is_simply_extendable(Mat(R, [[u, 0], [0, d]], raw=True))[0]


def test_det_liftable_oracles():
    ok, B = L.is_det_liftable(A6)
    assert ok and B.det() == Z6.zero_idx
    x, y, z, w = L.dl_formula_witness(Z6, 2, 1, 3)
    assert Z6.add_(Z6.add_(Z6.mul_(2, x), Z6.mul_(1, y)), Z6.mul_(3, w)) == Z6.one_idx
    assert Z6.mul_(x, w) == Z6.mul_(y, z)
    # unit determinant: the congruence class is everything
    R = make_ring("Zmod:9")
    assert L.is_det_liftable(Mat.parse(R, "[[2,1],[1,5]]"))[0]


def test_weak_liftability_follows_from_liftability():
    R = make_ring("Zmod:12")
    a, b, c, d = grid(R.order, 4)
    um = L.unimodular4(R, a, b, c, d)
    cols = [x[um] for x in (a, b, c, d)]
    dl = L.det_liftable_batch(R, *cols)
    wdl = L.weakly_det_liftable_batch(R, *cols)
    assert not (dl & ~wdl).any()


def test_non_full():
    ok, (l, m, o, q) = L.is_non_full(A6)
    assert ok
    assert [Z6.mul_(l, o), Z6.mul_(l, q), Z6.mul_(m, o), Z6.mul_(m, q)] == [2, 1, 0, 3]
    assert L.is_non_full(Mat.parse(Z6, "[[4,0],[0,0]]"))[0]
    assert not L.is_non_full(Mat.identity(Z6, 2))[0]


def test_diagonal_reduction():
    R = make_ring("Zmod:6")
    a, b, c, d = grid(R.order, 4)
    assert L.diagonal_reduction_batch(R, a, b, c, d).all()
    ok, (M, N, D) = L.admits_diagonal_reduction(Mat.parse(R, "[[2,3],[4,1]]"))
    assert ok and M @ Mat.parse(R, "[[2,3],[4,1]]") @ N == D and D.is_diagonal()
    ok, (M, N, D) = L.admits_diagonal_reduction(Mat.parse(R, "[[2,0],[0,4]]"))
    assert ok and R.divides[D[0, 0], D[1, 1]]


def test_table_ring_row_without_reduction():
    R = make_ring("Table:f2xy_square_zero.json")
    x, y = R.parse("x"), R.parse("y")
    assert not L.admits_diagonal_reduction(Mat(R, [[x, y]], raw=True))[0]


@pytest.mark.parametrize("spec", ["Zmod:6", "Zmod:8", "Zmod:9", "GF:4", "Quot:GF:2[x]/(x^2)"])
def test_diagram_implications(spec):
    R = make_ring(spec)
    a, b, c, d = grid(R.order, 4)
    um = L.unimodular4(R, a, b, c, d)
    cols = [x[um] for x in (a, b, c, d)]
    se = L.simply_extendable_batch(R, *cols)
    e = L.extendable_batch(R, *cols)
    dl = L.det_liftable_batch(R, *cols)
    wdl = L.weakly_det_liftable_batch(R, *cols)
    assert not (se & ~e).any()
    assert not (se & ~dl).any()
    assert not ((e | dl) & ~wdl).any()


@pytest.mark.parametrize("n", range(2, 9))
def test_formula_agrees_with_definition(n):
    R = make_ring(f"Zmod:{n}")
    a, b, c = grid(n, 3)
    keep = L.unimodular4(R, a, b, np.full_like(a, R.zero_idx), c)
    a, b, c = a[keep], b[keep], c[keep]
    z = np.full_like(a, R.zero_idx)
    assert (L.dl_formula_batch(R, a, b, c) == L.det_liftable_batch(R, a, b, z, c)).all()
    if L.is_reduced(R):
        assert (L.wdl_formula_batch(R, a, b, c) == L.weakly_det_liftable_batch(R, a, b, z, c)).all()


def test_test_matrices():
    assert L.specialize_test_matrix("G", Z6, 1, 0, 0) == Mat.parse(Z6, "[[1,0],[0,0]]")
    A, (Lm, Rm, E) = L.specialize_test_matrix("D", Z6, 0, 0, 0)
    assert A == Mat.parse(Z6, "[[0,0],[0,1]]")
    assert Lm @ A @ Rm == E
    R = make_ring("Zmod:12")
    for x in range(12):
        for y in range(0, 12, 5):
            L.specialize_test_matrix("D", R, x, y, 7)  # asserts the conjugation identity


@pytest.mark.parametrize("spec", ["Zmod:6", "Zmod:8", "Zmod:5", "GF:4"])
@pytest.mark.parametrize("prop", ["se", "e", "dl"])
def test_universal_matrix_scan(spec, prop):
    r = L.prop2_scan(make_ring(spec), prop)
    assert r["agree"] and r["via_G"]


def test_prop4_record():
    rec = L.prop4(A6)
    assert all(rec.flags.values())
    rec = L.prop4(Mat.identity(Z6, 2))
    assert rec.flags["non_full_mod_det"] is True
    js = rec.to_json()
    assert set(js) == {"flags", "witnesses"}


def test_integer_profile_extension():
    R = make_ring("Int:H=30")
    A = Mat(R, [[2, 1], [0, 3]], raw=True)
    ok, Ap = L.is_simply_extendable(A)
    assert ok and Ap.det() == 1 and Ap[2, 2] == 0
