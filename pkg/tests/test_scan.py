import numpy as np

from edrlab import polys
from edrlab.rings import make_ring
from edrlab.scan import Coverage, chunks, grid, rng_for, tuples


def test_grid_is_lexicographic():
    a, b = grid(3, 2)
    assert list(zip(a, b))[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]


def test_tuples_exhaustive_and_sampled():
    R = make_ring("Zmod:6")
    cols, cov = tuples(R, 2, lambda a, b: R.um2[a, b])
    assert cov.exhaustive and cov.count == int(R.um2.sum())
    R = make_ring("Zmod:32")
    cols, cov = tuples(R, 4, None, budget=10, sample=500, label="t")
    assert not cov.exhaustive and cov.count == 500
    codes = {tuple(int(c[i]) for c in cols) for i in range(500)}
    assert len(codes) == 500
    again, _ = tuples(R, 4, None, budget=10, sample=500, label="t")
    assert all((x == y).all() for x, y in zip(cols, again))
    other, _ = tuples(R, 4, None, budget=10, sample=500, label="t", seed=1)
    assert not all((x == y).all() for x, y in zip(cols, other))


def test_coverage_strings():
    assert str(Coverage(True, 5)) == "exhaustive"
    assert str(Coverage(True, 5).merge(Coverage(False, 7))) == "sampled:12"


def test_rng_and_chunks():
    assert rng_for("a").integers(0, 10**9) == rng_for("a").integers(0, 10**9)
    parts = list(chunks(10, 1, limit=3))
    assert parts[0] == slice(0, 3) and parts[-1] == slice(9, 10)


def test_polynomial_arithmetic():
    p = 5
    f, g = (1, 2, 3), (4, 0, 1)
    q, r = polys.divmod_(polys.mul(f, g, p), g, p)
    assert q == polys.trim(f, p) and r == ()
    d, s, t = polys.ext_gcd(f, g, p)
    assert polys.add(polys.mul(s, f, p), polys.mul(t, g, p), p) == d
    assert polys.is_irreducible((1, 1, 1), 2) and not polys.is_irreducible((1, 0, 1), 2)
    assert polys.parse_int_poly("x^2+2x+1") == [1, 2, 1]
    assert np.array(polys.first_irreducible(3, 2)).size == 3
