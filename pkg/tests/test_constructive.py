import math

import numpy as np
import pytest

from edrlab import constructive as K
from edrlab.matrices import Mat
from edrlab.rings import UNKNOWN, Elem, RingError, make_ring
from edrlab.scan import rng_for


def test_ext_gcd_integers():
    assert K.ext_gcd(12, 8) == (4, 1, -1)
    assert K.ext_gcd(0, 0) == (0, 0, 1)
    rng = rng_for("egcd")
    for p, q in rng.integers(-500, 500, size=(200, 2)).tolist():
        g, s, t = K.ext_gcd(p, q)
        assert g == math.gcd(p, q) and s * p + t * q == g


def test_ext_gcd_polynomials():
    # x^2 - 1 and x - 1 over F_3: coefficients low degree first
    g, s, t = K.ext_gcd((2, 0, 1), (2, 1), 3)
    assert g == (2, 1) and s == () and t == (1,)


def test_snf_oracles():
    cert = K.snf([[2, 4], [6, 8]])
    assert cert.diagonal() == [2, 4] and cert.verify()
    assert K.snf([[1, 0], [0, 1]]).D == [[1, 0], [0, 1]]
    assert K.snf([[0]]).D == [[0]]
    g = K.minor_gcds([[2, 4], [6, 8]])
    assert g == [2, 8]
    assert K.invariant_factors_from_minors(g) == [2, 4]


def test_snf_random_rectangular():
    rng = rng_for("snf-unit")
    for _ in range(200):
        m, n = rng.integers(1, 6, size=2)
        B = rng.integers(-100, 101, size=(m, n)).tolist()
        cert = K.snf(B)
        assert cert.verify()
        assert cert.diagonal() == K.invariant_factors_from_minors(K.minor_gcds(B))


def test_snf_over_polynomials():
    B = [[(1, 0, 1), (0, 1)], [(0, 1), (1,)]]
    cert = K.snf(B, 3)
    assert cert.verify()
    assert cert.diagonal() == K.invariant_factors_from_minors(K.minor_gcds(B, 3), 3)
    js = cert.to_json()
    assert js["base"].startswith("F3")


def test_simple_extension_over_Z():
    A = [[1, 0], [0, 1]]
    Ap = K.simple_extension_Z(A)
    assert K._det_generic(K._Z, Ap) == 1 and Ap[2][2] == 0
    Ap = K.simple_extension_Z([[2, 1], [0, 3]])
    assert K._det_generic(K._Z, Ap) == 1 and Ap[2][2] == 0
    assert [r[:2] for r in Ap[:2]] == [[2, 1], [0, 3]]
    with pytest.raises(K.EuclidError):
        K.simple_extension_Z([[2, 0], [0, 2]])


def test_lemma_matrix():
    R = make_ring("Zmod:12")
    for d in range(12):
        for e in range(12):
            if R.pid[d] != R.pid[e]:
                continue
            N, _ = K.lemma1_matrix(R, Elem(R, d), Elem(R, e))
            assert N.det() == R.one_idx
            D = Mat(R, [[d, 0], [0, 0]], raw=True)
            assert N @ D == Mat(R, [[e, 0], [0, 0]], raw=True)
    with pytest.raises(RingError):
        K.lemma1_matrix(R, 2, 3)


def test_cr3_shortcuts():
    assert K.cr3_witness(3, 5, 2) == {"e": 2, "f": 1, "route": "shortcut:(s,1)"}
    w = K.cr3_witness(-5, -8, -5)
    assert K.cr3_predicate(-5, -8, -5, w["e"], w["f"])
    # with q = -7 the literal pair (1 - a, q + b) = (6, -15) is not unimodular;
    # dividing by the gcd repairs it
    assert math.gcd(-8 - 5 * -7, 1 - 40 + 5) == 1
    assert not K.cr3_predicate(-5, -8, -5, 6, -15)
    assert K.cr3_normalize(6, -15) == (2, -5)
    assert K.cr3_predicate(-5, -8, -5, 2, -5)


def test_cr3_random():
    rng = rng_for("cr3-unit")
    for a, b, s in rng.integers(-25, 26, size=(300, 3)).tolist():
        w = K.cr3_witness(a, b, s)
        assert w is not UNKNOWN
        assert K.cr3_predicate(a, b, s, w["e"], w["f"])


def test_eq4():
    assert K.eq4_value(0, 1, 0, 1, 0, 0) == 0
    assert K.eq4_value(1, 1, 1, 0, 0, 1) == 0
    rng = rng_for("eq4-unit")
    for a, u, t in rng.integers(-25, 26, size=(300, 3)).tolist():
        if u == 0:
            continue
        w = K.eq4_witness(a, u, t)
        assert w is not UNKNOWN
        assert K.eq4_value(a, u, t, w["s"], w["l"], w["z"]) == 0
    with pytest.raises(ValueError):
        K.eq4_witness(1, 0, 1)


def test_shell_order():
    sh = K.shell(2)
    assert sh[0] == (0, 0)
    assert len(sh) == 25
    norms = [max(abs(x), abs(y)) for x, y in sh]
    assert norms == sorted(norms)
    assert np.asarray(sh).shape == (25, 2)
