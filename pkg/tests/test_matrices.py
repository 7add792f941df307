import itertools

import numpy as np
import pytest

from edrlab.matrices import (Mat, are_equivalent, combination_witness, enumerate_GL, is_unimodular_matrix,
                             is_unimodular_vector)
from edrlab.rings import make_ring
from edrlab.scan import rng_for


def _leibniz(R, rows):
    n = len(rows)
    acc = R.zero_idx
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = R.one_idx
        for i in range(n):
            term = R.mul_(term, rows[i][perm[i]])
        acc = R.add_(acc, term) if sign > 0 else R.sub_(acc, term)
    return acc


def test_det_oracles():
    R = make_ring("Zmod:6")
    assert Mat.identity(R, 2).det() == R.one_idx
    assert Mat.parse(R, "[[2,1],[0,3]]").det() == R.zero_idx
    Z7 = make_ring("Zmod:7")
    rng = rng_for("det3")
    for _ in range(50):
        rows = rng.integers(0, 7, size=(3, 3)).tolist()
        assert Mat(Z7, rows, raw=True).det() == _leibniz(Z7, rows)


def test_products_and_transpose():
    R = make_ring("GF:4")
    A = Mat.parse(R, "[[a,1],[0,a+1]]")
    B = Mat.parse(R, "[[1,a],[a,0]]")
    assert (A @ B).T == B.T @ A.T
    assert (A @ B).det() == R.mul_(A.det(), B.det())


def test_unimodular_vectors():
    R = make_ring("Zmod:6")
    ok, c = is_unimodular_vector([2, 3], R)
    assert ok
    assert R.add_(R.mul_(c[0].idx, 2), R.mul_(c[1].idx, 3)) == R.one_idx
    assert not is_unimodular_vector([2, 4], R)[0]
    assert is_unimodular_vector([0, 0, 0, 1], R)[0]


def test_combination_witness_hits_target():
    R = make_ring("Prod:Zmod:4*Zmod:9")
    rng = rng_for("comb")
    for _ in range(50):
        gens = rng.integers(0, R.order, size=3).tolist()
        w = combination_witness(R, gens)
        ideal = R.join[R.join[R.pid[gens[0]], R.pid[gens[1]]], R.pid[gens[2]]]
        assert (w is not None) == (ideal == R.full_id)
        if w is not None:
            total = R.zero_idx
            for c, g in zip(w, gens):
                total = R.add_(total, R.mul_(c, g))
            assert total == R.one_idx


def test_unimodular_matrices():
    R = make_ring("Zmod:6")
    assert is_unimodular_matrix(Mat.parse(R, "[[2,1],[0,3]]"))
    assert not is_unimodular_matrix(Mat.parse(R, "[[2,0],[0,2]]"))
    assert not is_unimodular_matrix(Mat.parse(R, "[[0,0],[0,0]]"))


@pytest.mark.parametrize("spec,n,gl,sl", [
    ("GF:2", 2, 6, 6),
    ("GF:3", 2, 48, 24),
    ("Zmod:4", 2, 96, 48),
])
def test_gl_orders(spec, n, gl, sl):
    G = enumerate_GL(make_ring(spec), n)
    assert len(G) == gl
    assert int(G.sl_mask.sum()) == sl


def test_gl3_order():
    # |GL_3(F_2)| = 7 * 6 * 4
    assert len(enumerate_GL(make_ring("GF:2"), 3)) == 168


def test_equivalence():
    R = make_ring("Zmod:6")
    A = Mat.parse(R, "[[2,1],[0,3]]")
    ok, (M, N) = are_equivalent(A, Mat.parse(R, "[[1,0],[0,0]]"))
    assert ok and M @ A @ N == Mat.parse(R, "[[1,0],[0,0]]")
    assert not are_equivalent(A, Mat.identity(R, 2))[0]
    assert np.asarray(M.tolist()).shape == (2, 2)
