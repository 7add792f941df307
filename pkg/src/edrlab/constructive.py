"""Deterministic algorithms over the Euclidean domains Z and F_p[x]:
extended gcd, Smith normal form with certificates, explicit SL_3
completions, and bounded witness searches."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import polys
from .rings import UNKNOWN, FiniteRing, IntegerProfile, PolyProfile, RingError


class EuclidError(RingError):
    pass


# ---------------------------------------------------------------------------
# Euclidean adapters
# ---------------------------------------------------------------------------


class _Z:
    zero, one = 0, 1
    name = "Z"

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def norm(a):
        return abs(a)

    @staticmethod
    def divmod(a, b):
        q, r = divmod(a, b)
        return q, r

    @staticmethod
    def normalizer(a):
        """Unit ``u`` (and its inverse) making ``u*a`` canonical."""
        return (-1, -1) if a < 0 else (1, 1)

    @staticmethod
    def fmt(a):
        return str(a)

    @staticmethod
    def is_unit(a):
        return a in (1, -1)


class _Fpx:
    def __init__(self, p):
        self.p = p
        self.zero, self.one = (), (1,)
        self.name = f"F{p}[x]"

    def add(self, a, b):
        return polys.add(a, b, self.p)

    def sub(self, a, b):
        return polys.sub(a, b, self.p)

    def mul(self, a, b):
        return polys.mul(a, b, self.p)

    def neg(self, a):
        return polys.neg(a, self.p)

    def norm(self, a):
        return len(a)  # degree + 1, zero has norm 0

    def divmod(self, a, b):
        return polys.divmod_(a, b, self.p)

    def normalizer(self, a):
        if not a:
            return self.one, self.one
        c = pow(a[-1], -1, self.p)
        return (c,), (a[-1],)

    def fmt(self, a):
        return polys.format_poly(a)

    def is_unit(self, a):
        return len(a) == 1


def _domain(base):
    if base is None or base == "Z" or isinstance(base, IntegerProfile):
        return _Z
    if isinstance(base, PolyProfile):
        return _Fpx(base.p)
    if isinstance(base, _Fpx) or base is _Z:
        return base
    if isinstance(base, int):
        return _Fpx(base)
    raise EuclidError(f"no Euclidean algorithm for {base!r}")


# ---------------------------------------------------------------------------
# extended gcd
# ---------------------------------------------------------------------------


def ext_gcd(p, q, base=None):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` canonical
    (nonnegative over Z, monic over F_p[x]); gcd(0, 0) = 0."""
    D = _domain(base)
    if D is _Z:
        p, q = int(p), int(q)
        if p == 0:
            if q == 0:
                return 0, 0, 1
            return abs(q), 0, (1 if q > 0 else -1)
        r0, r1, s0, s1, t0, t1 = p, q, 1, 0, 0, 1
        while r1:
            k = r0 // r1
            r0, r1 = r1, r0 - k * r1
            s0, s1 = s1, s0 - k * s1
            t0, t1 = t1, t0 - k * t1
        if r0 < 0:
            r0, s0, t0 = -r0, -s0, -t0
        return r0, s0, t0
    p_, q_ = polys.trim(p, D.p), polys.trim(q, D.p)
    return polys.ext_gcd(p_, q_, D.p)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass
class SNFCertificate:
    base: str
    B: list
    M: list
    N: list
    D: list

    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0])))]

    def verify(self, base=None) -> bool:
        """Re-check MBN = D, det(M), det(N) units, the divisibility chain and
        (over Z) nonnegative diagonal; raises AssertionError on failure."""
        Dm = _domain(base if base is not None else (None if self.base == "Z" else int(self.base[1:].split("[")[0])))
        prod = _matmul(Dm, _matmul(Dm, self.M, self.B), self.N)
        assert prod == self.D, "M B N != D"
        assert Dm.is_unit(_det_generic(Dm, self.M)), "det(M) is not a unit"
        assert Dm.is_unit(_det_generic(Dm, self.N)), "det(N) is not a unit"
        m, n = len(self.D), len(self.D[0])
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert self.D[i][j] == Dm.zero, "D is not diagonal"
        diag = self.diagonal()
        for i in range(len(diag) - 1):
            if diag[i] == Dm.zero:
                assert diag[i + 1] == Dm.zero, "divisibility chain broken"
            else:
                assert Dm.divmod(diag[i + 1], diag[i])[1] == Dm.zero, "divisibility chain broken"
        for d in diag:
            assert Dm.normalizer(d)[0] == Dm.one, "diagonal entry not canonical"
        return True

    def to_json(self):
        D = _domain(None if self.base == "Z" else int(self.base[1:].split("[")[0]))
        f = (lambda M: [[D.fmt(x) for x in r] for r in M])
        return {"base": self.base, "B": f(self.B), "M": f(self.M), "N": f(self.N), "D": f(self.D),
                "diagonal": [D.fmt(x) for x in self.diagonal()]}


def _matmul(D, A, B):
    return [[_sum(D, [D.mul(A[i][t], B[t][j]) for t in range(len(B))]) for j in range(len(B[0]))]
            for i in range(len(A))]


def _sum(D, xs):
    acc = D.zero
    for x in xs:
        acc = D.add(acc, x)
    return acc


def _det_generic(D, A):
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = D.zero
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in A[1:]]
        term = D.mul(A[0][j], _det_generic(D, minor))
        acc = D.add(acc, term) if j % 2 == 0 else D.sub(acc, term)
    return acc


def _identity(D, n):
    return [[D.one if i == j else D.zero for j in range(n)] for i in range(n)]


def snf(B, base=None) -> SNFCertificate:
    """Smith normal form ``M B N = D`` by Euclidean row/column reduction."""
    D = _domain(base)
    A = [[(int(x) if D is _Z else polys.trim(x, D.p)) for x in row] for row in B]
    m, n = len(A), len(A[0])
    if m > 8 or n > 8:
        raise EuclidError("snf supports matrices up to 8 x 8")
    B0 = [row[:] for row in A]
    M, N = _identity(D, m), _identity(D, n)

    def row_op(i, k, q):  # row_i -= q * row_k
        A[i] = [D.sub(x, D.mul(q, y)) for x, y in zip(A[i], A[k])]
        M[i] = [D.sub(x, D.mul(q, y)) for x, y in zip(M[i], M[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for r in A:
            r[j] = D.sub(r[j], D.mul(q, r[k]))
        for r in N:
            r[j] = D.sub(r[j], D.mul(q, r[k]))

    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] != D.zero and (best is None or D.norm(A[i][j]) < best[0]):
                        best = (D.norm(A[i][j]), i, j)
            if best is None:
                break
            _, i, j = best
            A[k], A[i] = A[i], A[k]
            M[k], M[i] = M[i], M[k]
            for r in A:
                r[k], r[j] = r[j], r[k]
            for r in N:
                r[k], r[j] = r[j], r[k]
            piv = A[k][k]
            dirty = False
            for i in range(k + 1, m):
                q, r = D.divmod(A[i][k], piv)
                if q != D.zero:
                    row_op(i, k, q)
                dirty |= r != D.zero
            for j in range(k + 1, n):
                q, r = D.divmod(A[k][j], piv)
                if q != D.zero:
                    col_op(j, k, q)
                dirty |= r != D.zero
            if dirty:
                continue
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if D.divmod(A[i][j], piv)[1] != D.zero), None)
            if bad is None:
                break
            # pull the offending row in and reduce again
            A[k] = [D.add(x, y) for x, y in zip(A[k], A[bad[0]])]
            M[k] = [D.add(x, y) for x, y in zip(M[k], M[bad[0]])]
        if k < m and k < n:
            u, _ = D.normalizer(A[k][k])
            if u != D.one:
                A[k] = [D.mul(u, x) for x in A[k]]
                M[k] = [D.mul(u, x) for x in M[k]]
    name = "Z" if D is _Z else D.name
    return SNFCertificate(name, B0, M, N, A)


def minor_gcds(B, base=None) -> list:
    """Oracle: for each k, the gcd of all k x k minors (canonical form).

    Over Z uses an int64 Leibniz expansion vectorized over minors (exact for
    |entries| <= 100 and k <= 5); otherwise exact Python arithmetic.
    """
    D = _domain(base)
    m, n = len(B), len(B[0])
    out = []
    if D is _Z:
        arr = np.array(B, dtype=np.int64)
        big = np.abs(arr).max(initial=0) > 10**3 or min(m, n) > 6
        for k in range(1, min(m, n) + 1):
            if big:
                g = 0
                for rows in itertools.combinations(range(m), k):
                    for cols in itertools.combinations(range(n), k):
                        g = math.gcd(g, _det_generic(_Z, [[int(B[r][c]) for c in cols] for r in rows]))
                out.append(g)
                continue
            rs = np.array(list(itertools.combinations(range(m), k)))
            cs = np.array(list(itertools.combinations(range(n), k)))
            sub = arr[rs[:, None, :, None], cs[None, :, None, :]].reshape(-1, k, k)
            total = np.zeros(len(sub), dtype=np.int64)
            for perm in itertools.permutations(range(k)):
                sign = _perm_sign(perm)
                term = np.ones(len(sub), dtype=np.int64)
                for i, p in enumerate(perm):
                    term = term * sub[:, i, p]
                total += sign * term
            out.append(int(np.gcd.reduce(np.abs(total))))
        return out
    for k in range(1, min(m, n) + 1):
        g = D.zero
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = polys.ext_gcd(g, _det_generic(D, [[polys.trim(B[r][c], D.p) for c in cols] for r in rows]), D.p)[0]
        out.append(g)
    return out


def _perm_sign(perm):
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def invariant_factors_from_minors(g, base=None):
    """d_k = g_k / g_{k-1} from the minor gcds (zero once a gcd vanishes)."""
    D = _domain(base)
    out, prev = [], D.one
    for gk in g:
        if gk == D.zero:
            out.append(D.zero)
        else:
            out.append(D.divmod(gk, prev)[0])
            prev = gk
    return out


# ---------------------------------------------------------------------------
# explicit SL_3 completion over Z
# ---------------------------------------------------------------------------


def _inv2(D, M):
    (a, b), (c, d) = M
    det = D.sub(D.mul(a, d), D.mul(b, c))
    if not D.is_unit(det):
        raise EuclidError("matrix is not invertible")
    u = D.normalizer(det)[0]  # det^{-1}
    return [[D.mul(d, u), D.neg(D.mul(b, u))], [D.neg(D.mul(c, u)), D.mul(a, u)]]


def simple_extension(A, base=None):
    """Return ``A+`` in SL_3 with top-left block ``A`` and (3,3) entry 0,
    over Z (default) or F_p[x]."""
    D = _domain(base)
    A = [[(int(x) if D is _Z else polys.trim(x, D.p)) for x in r] for r in A]
    g = ext_gcd(ext_gcd(A[0][0], A[0][1], D)[0], ext_gcd(A[1][0], A[1][1], D)[0], D)[0]
    if g != D.one:
        raise EuclidError(f"{A} is not unimodular")
    cert = snf(A, D)
    delta = cert.D[1][1]
    Mi, Ni = _inv2(D, cert.M), _inv2(D, cert.N)
    z, one = D.zero, D.one
    C = [[one, z, z], [z, delta, one], [z, D.neg(one), z]]
    L = [Mi[0] + [z], Mi[1] + [z], [z, z, one]]
    Rm = [Ni[0] + [z], Ni[1] + [z], [z, z, one]]
    Ap = _matmul(D, _matmul(D, L, C), Rm)
    det = _det_generic(D, Ap)
    if det != one:
        u = D.normalizer(det)[0]
        Ap[2] = [D.mul(u, x) for x in Ap[2]]
    assert _det_generic(D, Ap) == one and Ap[2][2] == z
    assert [r[:2] for r in Ap[:2]] == A
    return Ap


def simple_extension_Z(A):
    return simple_extension(A)


def third_column_criterion(A, Ap):
    """For upper-triangular ``A = [[a,b],[0,c]]`` and a completion ``A+`` with
    corner 0, return ``(e, f) = (-y, x)`` from the third column; then
    ``(e, f)`` and ``(a e, b e + c f)`` are unimodular."""
    x, y = Ap[0][2], Ap[1][2]
    return -y, x


# ---------------------------------------------------------------------------
# Lemma: equal principal ideals give equivalent rank-one diagonals
# ---------------------------------------------------------------------------


def lemma1_matrix(R, d, e):
    """``N`` in SL_2 with ``N diag(d,0) = diag(e,0)`` when ``Rd == Re``."""
    from .matrices import Mat

    di, ei = R.coerce(d), R.coerce(e)
    if isinstance(R, FiniteRing):
        us = [int(u) for u in np.flatnonzero(R.mul[ei] == di)]  # d = e u
        vs = [int(v) for v in np.flatnonzero(R.mul[di] == ei)]  # e = d v
        if not us or not vs:
            raise RingError(f"R{R.format(di)} != R{R.format(ei)}")
        u = R.one_idx if R.one_idx in us else us[0]
        v = R.one_idx if R.one_idx in vs else vs[0]
    else:
        if R.is_zero(di) != R.is_zero(ei):
            raise RingError("Rd != Re")
        if R.is_zero(di):
            u = v = R.one_idx
        else:
            if not (R.divides(ei, di) and R.divides(di, ei)):
                raise RingError("Rd != Re")
            u, v = R.exact_div(di, ei), R.exact_div(ei, di)
    one_minus = R.sub_(R.one_idx, R.mul_(u, v))
    N = Mat(R, [[v, R.neg_(R.one_idx)], [one_minus, u]], raw=True)
    assert N.det() == R.one_idx
    lhs = N @ Mat(R, [[di, R.zero_idx], [R.zero_idx, R.zero_idx]], raw=True)
    assert lhs == Mat(R, [[ei, R.zero_idx], [R.zero_idx, R.zero_idx]], raw=True)
    return N, (u, v)


# ---------------------------------------------------------------------------
# bounded witness searches over Z
# ---------------------------------------------------------------------------


def shell(bound: int):
    """Integer pairs ordered by max-norm, then by the 0, 1, -1, 2, ... order."""
    vals = [0] + [s * k for k in range(1, bound + 1) for s in (1, -1)]
    key = {v: i for i, v in enumerate(vals)}
    pairs = itertools.product(vals, vals)
    return sorted(pairs, key=lambda p: (max(abs(p[0]), abs(p[1])), key[p[0]], key[p[1]]))


_SHELL_CACHE: dict = {}


def _shell(bound):
    if bound not in _SHELL_CACHE:
        _SHELL_CACHE[bound] = np.array(shell(bound), dtype=object)
    return _SHELL_CACHE[bound]


def cr3_predicate(a, b, s, e, f) -> bool:
    g = math.gcd
    return g(e, f) == 1 and g(a, e) == 1 and g(b * e + a * f, 1 - b * s - a) == 1


def cr3_normalize(e, f):
    """Divide (e, f) by its gcd; the remaining conditions survive because
    (a, e) and (be + af, k) stay unimodular after removing a common factor."""
    d = math.gcd(e, f)
    return (e // d, f // d) if d > 1 else (e, f)


def cr3_witness(a, b, s, bound=30):
    """Pair ``(e, f)`` with (e,f), (a,e) and (be+af, 1-bs-a) unimodular over Z.

    Tries the three shortcut choices first and always re-checks the full
    predicate; falls back to a max-norm shell scan.  Returns a dict with the
    witness and the route taken, or UNKNOWN when the bound is exhausted.
    """
    a, b, s = int(a), int(b), int(s)
    g = math.gcd
    if g(a, s) == 1 and cr3_predicate(a, b, s, s, 1):
        return {"e": s, "f": 1, "route": "shortcut:(s,1)"}
    if g(1 - a, b) == 1 and cr3_predicate(a, b, s, 1, 0):
        return {"e": 1, "f": 0, "route": "shortcut:(1,0)"}
    k = 1 - b * s - a
    fallback_q = None
    for q in [0] + [sg * j for j in range(1, bound + 1) for sg in (1, -1)]:
        if g(b + a * q, k) == 1:
            e, f = cr3_normalize(1 - a, q + b)
            if cr3_predicate(a, b, s, e, f):
                out = {"e": e, "f": f, "route": "shortcut:(1-a,q+b)", "q": q}
                if (e, f) != (1 - a, q + b):
                    out["divided_by"] = g(1 - a, q + b)
                return out
            if fallback_q is None:
                fallback_q = q
    for e, f in shell(bound):
        if cr3_predicate(a, b, s, e, f):
            out = {"e": e, "f": f, "route": "scan"}
            if fallback_q is not None:
                out["shortcut_q_not_unimodular"] = fallback_q
            return out
    return UNKNOWN


def eq4_value(a, u, t, s, l, z):
    return (1 - u * s - a * l) ** 2 + l - u * s * l - a * l * l - (s + t - u * s * t) * z


def eq4_witness(a, u, t, bound=30):
    """Triple ``(s, l, z)`` solving the EDD test equation, or UNKNOWN."""
    a, u, t = int(a), int(u), int(t)
    if u == 0:
        raise ValueError("eq4_witness needs u != 0")
    for s, l in shell(bound):
        K = s + t - u * s * t
        V = (1 - u * s - a * l) ** 2 + l - u * s * l - a * l * l
        if K == 0:
            if V == 0:
                return {"s": s, "l": l, "z": 0}
            continue
        if V % K == 0:
            z = V // K
            assert eq4_value(a, u, t, s, l, z) == 0
            return {"s": s, "l": l, "z": z}
    return UNKNOWN
