"""Matrix properties of unimodular 2x2 matrices: (simple) extendability,
(weak) determinant liftability, non-fullness, diagonal reduction, and the
companion / universal test matrices.

Every property has a vectorized batch kernel (arrays ``a, b, c, d`` of
element indices, one matrix per position) used by the ring-level scans, and
a single-matrix entry point returning ``(flag, witness)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrices import Mat, combination_witness
from .rings import UNKNOWN, Elem, FiniteRing, IntegerProfile, PolyProfile, is_reduced, tristate
from .scan import DEFAULT_SEED, MATRIX_BUDGET, SAMPLE_SIZE, Coverage, chunks, grid, tuples


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# cached ring tables
# ---------------------------------------------------------------------------


def _pairs(n):
    z = np.repeat(np.arange(n), n)
    w = np.tile(np.arange(n), n)
    return z, w


def unimodular_pairs(R: FiniteRing):
    cache = R.__dict__.setdefault("_um_pairs", None)
    if cache is None:
        s, t = _pairs(R.order)
        keep = R.um2[s, t]
        cache = R.__dict__["_um_pairs"] = (s[keep], t[keep])
    return cache


def multiple_mask(R: FiniteRing) -> np.ndarray:
    """``mm[p*n+q, o*n+r]``: the pair (p, q) lies in R(o, r)."""
    if "_multiple_mask" not in R.__dict__:
        n = R.order
        o, q = _pairs(n)
        codes = R.mul[:, o].astype(np.int64) * n + R.mul[:, q]
        mm = np.zeros((n * n, n * n), dtype=bool)
        mm[codes, np.arange(n * n)[None, :]] = True
        R.__dict__["_multiple_mask"] = mm
    return R.__dict__["_multiple_mask"]


def reach_table(R: FiniteRing) -> np.ndarray:
    """``reach[r1*n+r2, I]``: some unimodular (s, t) has R(r1 s + r2 t) = I."""
    if "_reach" not in R.__dict__:
        n = R.order
        s, t = unimodular_pairs(R)
        r1, r2 = _pairs(n)
        reach = np.zeros((n * n, R.num_ideals), dtype=bool)
        for sl in chunks(len(s), n * n):
            vals = R.add[R.mul[r1[:, None], s[None, sl]], R.mul[r2[:, None], t[None, sl]]]
            reach[np.arange(n * n)[:, None], R.pid[vals]] = True
        R.__dict__["_reach"] = reach
    return R.__dict__["_reach"]


def _det(R, a, b, c, d):
    return R.sub[R.mul[a, d], R.mul[b, c]]


def unimodular4(R, a, b, c, d):
    p = R.pid
    return R.join[R.join[p[a], p[b]], R.join[p[c], p[d]]] == R.full_id


def entry_ideal(R, a, b, c, d):
    p = R.pid
    return R.join[R.join[p[a], p[b]], R.join[p[c], p[d]]]


# ---------------------------------------------------------------------------
# batch kernels
# ---------------------------------------------------------------------------


def extendable_batch(R: FiniteRing, a, b, c, d, simple=False, want_index=False):
    """Exists (z, w) with (det, cw - dz, bz - aw) unimodular (det dropped when
    ``simple``); the third row of a completion is then (z, w, t)."""
    n = R.order
    z, w = _pairs(n)
    a, b, c, d = (np.asarray(x) for x in (a, b, c, d))
    out = np.zeros(len(a), dtype=bool)
    idx = np.full(len(a), -1, dtype=np.int64)
    pid, join = R.pid, R.join
    D = _det(R, a, b, c, d)
    for sl in chunks(len(a), n * n):
        p = R.sub[R.mul[c[sl, None], w[None, :]], R.mul[d[sl, None], z[None, :]]]
        q = R.sub[R.mul[b[sl, None], z[None, :]], R.mul[a[sl, None], w[None, :]]]
        J = join[pid[p], pid[q]]
        if not simple:
            J = join[J, pid[D[sl]][:, None]]
        hit = J == R.full_id
        out[sl] = hit.any(axis=1)
        if want_index:
            idx[sl] = np.where(out[sl], hit.argmax(axis=1), -1)
    return (out, idx) if want_index else out


def simply_extendable_batch(R, a, b, c, d):
    return extendable_batch(R, a, b, c, d, simple=True)


def _lift_tables(R, a, b, c, d, sl, E):
    b11 = R.add[a[sl, None], E[None, :]]
    b12 = R.add[b[sl, None], E[None, :]]
    b21 = R.add[c[sl, None], E[None, :]]
    b22 = R.add[d[sl, None], E[None, :]]
    P1 = R.mul[b11[:, :, None], b22[:, None, :]]
    P2 = R.mul[b12[:, :, None], b21[:, None, :]]
    return b11, b12, b21, b22, P1, P2


def det_liftable_batch(R: FiniteRing, a, b, c, d, weak=False):
    """Definitional test: some B = A + det(A)*E has det 0 (and is unimodular
    unless ``weak``).  Entries range over the cosets a + R det(A)."""
    n, m = R.order, R.num_ideals
    a, b, c, d = (np.asarray(x) for x in (a, b, c, d))
    D = _det(R, a, b, c, d)
    out = np.zeros(len(a), dtype=bool)
    full = np.zeros((m, m), dtype=np.int32)
    full[R.join == R.full_id] = 1
    for iid in np.unique(R.pid[D]):
        rows = np.flatnonzero(R.pid[D] == iid)
        E = np.flatnonzero(R.ideal_masks[iid])
        k = len(E)
        for sl in chunks(len(rows), k * k * (1 if weak else m)):
            r = rows[sl]
            b11, b12, b21, b22, P1, P2 = _lift_tables(R, a, b, c, d, r, E)
            K = len(r)
            ar = np.arange(K)[:, None, None]
            if weak:
                V1 = np.zeros((K, n), dtype=bool)
                V2 = np.zeros((K, n), dtype=bool)
                V1[ar, P1] = True
                V2[ar, P2] = True
                out[r] = (V1 & V2).any(axis=1)
            else:
                J1 = R.join[R.pid[b11][:, :, None], R.pid[b22][:, None, :]]
                J2 = R.join[R.pid[b12][:, :, None], R.pid[b21][:, None, :]]
                S1 = np.zeros((K, n, m), dtype=np.int32)
                S2 = np.zeros((K, n, m), dtype=bool)
                S1[ar, P1, J1] = 1
                S2[ar, P2, J2] = True
                T = S1 @ full
                out[r] = ((T > 0) & S2).any(axis=(1, 2))
    return out


def weakly_det_liftable_batch(R, a, b, c, d):
    return det_liftable_batch(R, a, b, c, d, weak=True)


def non_full_batch(R: FiniteRing, a, b, c, d):
    n = R.order
    mm = multiple_mask(R)
    a, b, c, d = (np.asarray(x, dtype=np.int64) for x in (a, b, c, d))
    out = np.zeros(len(a), dtype=bool)
    for sl in chunks(len(a), n * n):
        out[sl] = (mm[a[sl] * n + b[sl]] & mm[c[sl] * n + d[sl]]).any(axis=1)
    return out


def diagonal_reduction_batch(R: FiniteRing, a, b, c, d):
    """2x2 B reduces iff I1(B) = Rg is principal and mu B nu generates it for
    some unimodular row mu and column nu."""
    n = R.order
    reach = reach_table(R)
    s, t = unimodular_pairs(R)
    a, b, c, d = (np.asarray(x, dtype=np.int64) for x in (a, b, c, d))
    I1 = entry_ideal(R, a, b, c, d)
    principal = np.isin(I1, np.array(sorted(R.principal_ideal_ids)))
    out = np.zeros(len(a), dtype=bool)
    for sl in chunks(len(a), len(s)):
        r1 = R.add[R.mul[a[sl, None], s[None, :]], R.mul[b[sl, None], t[None, :]]]
        r2 = R.add[R.mul[c[sl, None], s[None, :]], R.mul[d[sl, None], t[None, :]]]
        codes = r1.astype(np.int64) * n + r2
        out[sl] = reach[codes, I1[sl, None]].any(axis=1)
    return out & principal


def row_diagonal_reduction_batch(R: FiniteRing, p, q):
    """1x2 (or, transposed, 2x1) matrices (p, q)."""
    n = R.order
    reach = reach_table(R)
    p, q = np.asarray(p, dtype=np.int64), np.asarray(q, dtype=np.int64)
    I1 = R.join[R.pid[p], R.pid[q]]
    principal = np.isin(I1, np.array(sorted(R.principal_ideal_ids)))
    return reach[p * n + q, I1] & principal


# upper-triangular criteria, over all (x, y, w) / (x, z, w)


def dl_formula_batch(R: FiniteRing, a, b, c):
    """Exists x, y, w with ax + by + cw = 1 and y | xw (so xw = yz)."""
    n = R.order
    x, y, w = grid(n, 3)
    div = R.divides
    lhs_ok = div[y, R.mul[x, w]]
    out = np.zeros(len(a), dtype=bool)
    a, b, c = (np.asarray(v) for v in (a, b, c))
    for sl in chunks(len(a), n**3):
        s = R.add[R.add[R.mul[a[sl, None], x[None]], R.mul[b[sl, None], y[None]]], R.mul[c[sl, None], w[None]]]
        out[sl] = ((s == R.one_idx) & lhs_ok[None]).any(axis=1)
    return out


def wdl_formula_batch(R: FiniteRing, a, b, c):
    """Exists x, z, w with b + acz dividing (1 - ax)(1 - cw).

    For fixed (a, c) the products (1 - ax)(1 - cw) form a set H; an element g
    qualifies when it divides some member of H.  Both are memoized per (a, c).
    """
    n = R.order
    one = R.one_idx
    om = R.sub[one]
    a, b, c = (np.asarray(v, dtype=np.int64) for v in (a, b, c))
    out = np.zeros(len(a), dtype=bool)
    keys = a * n + c
    for key in np.unique(keys):
        ai, ci = divmod(int(key), n)
        rows = np.flatnonzero(keys == key)
        H = np.zeros(n, dtype=bool)
        H[R.mul[om[R.mul[ai]][:, None], om[R.mul[ci]][None, :]]] = True
        good = R.divides[:, H].any(axis=1)
        g = R.add[b[rows, None], R.mul[R.mul[ai, ci], np.arange(n)][None, :]]
        out[rows] = good[g].any(axis=1)
    return out


def se_ef_batch(R: FiniteRing, a, b, c):
    """Upper-triangular route: exists (e, f) unimodular with (ae, be + cf)
    unimodular."""
    s, t = unimodular_pairs(R)
    out = np.zeros(len(a), dtype=bool)
    a, b, c = (np.asarray(v) for v in (a, b, c))
    for sl in chunks(len(a), len(s)):
        u = R.mul[a[sl, None], s[None]]
        v = R.add[R.mul[b[sl, None], s[None]], R.mul[c[sl, None], t[None]]]
        out[sl] = R.um2[u, v].any(axis=1)
    return out


KERNELS = {
    "se": simply_extendable_batch,
    "e": extendable_batch,
    "dl": det_liftable_batch,
    "wdl": weakly_det_liftable_batch,
}

PROP_NAMES = {"se": "simply_extendable", "e": "extendable", "dl": "det_liftable",
              "wdl": "weakly_det_liftable", "nf": "non_full_mod_det"}


# ---------------------------------------------------------------------------
# single-matrix entry points
# ---------------------------------------------------------------------------


def _abcd(A: Mat):
    if A.shape != (2, 2):
        raise PreconditionError("expected a 2x2 matrix")
    (a, b), (c, d) = A.rows
    return a, b, c, d


def _require_unimodular(A: Mat):
    R = A.ring
    if isinstance(R, FiniteRing):
        ok = bool(unimodular4(R, *_abcd(A)))
    else:
        from .matrices import is_unimodular_matrix

        ok = is_unimodular_matrix(A)
    if not ok:
        raise PreconditionError(f"{A} is not unimodular")


def _completion(R, A, z, w, simple):
    a, b, c, d = _abcd(A)
    D = A.det()
    p = R.sub_(R.mul_(c, w), R.mul_(d, z))
    q = R.sub_(R.mul_(b, z), R.mul_(a, w))
    if simple:
        x, y = combination_witness(R, [p, q])
        t = R.zero_idx
    else:
        t, x, y = combination_witness(R, [D, p, q])
    Ap = Mat(R, [[a, b, x], [c, d, y], [z, w, t]], raw=True)
    assert Ap.det() == R.one_idx
    return Ap


def _profile_extension(A: Mat):
    from .constructive import simple_extension

    R = A.ring
    return Mat(R, simple_extension(A.rows, R), raw=True)


def is_extendable(A: Mat, simple=False):
    """``(flag, A+)`` with A+ in SL_3 extending A (corner 0 when ``simple``)."""
    _require_unimodular(A)
    R = A.ring
    if not isinstance(R, FiniteRing):
        return True, _profile_extension(A)
    ok, idx = extendable_batch(R, *[np.array([v]) for v in _abcd(A)], simple=simple, want_index=True)
    if not ok[0]:
        return False, None
    z, w = divmod(int(idx[0]), R.order)
    return True, _completion(R, A, z, w, simple)


def is_simply_extendable(A: Mat):
    flag, wit = is_extendable(A, simple=True)
    a, b, c, d = _abcd(A)
    R = A.ring
    if isinstance(R, FiniteRing) and c == R.zero_idx:
        alt = bool(se_ef_batch(R, [a], [b], [d])[0])
        assert alt == flag, f"simple-extension routes disagree on {A}"
    return flag, wit


def _find_lift(R, A, weak):
    a, b, c, d = _abcd(A)
    D = A.det()
    E = np.flatnonzero(R.ideal_masks[R.pid[D]])
    arr = [np.array([v]) for v in (a, b, c, d)]
    b11, b12, b21, b22, P1, P2 = (x[0] for x in _lift_tables(R, *arr, slice(0, 1), E))
    for v in np.unique(P1):
        i1 = np.argwhere(P1 == v)
        i2 = np.argwhere(P2 == v)
        if not len(i2):
            continue
        for i, j in i1:
            for k, l in i2:
                B = Mat(R, [[b11[i], b12[k]], [b21[l], b22[j]]], raw=True)
                if weak or unimodular4(R, *_abcd(B)):
                    return B
    return None


def _profile_lift(A: Mat, weak, bound=3):
    """Bounded search B = A + det(A)*E with |E_ij| small (profiles only)."""
    import itertools

    R = A.ring
    D = A.det()
    vals = list(R.search_elements(bound)) if isinstance(R, PolyProfile) else list(range(-bound, bound + 1))
    from .matrices import is_unimodular_matrix

    for e in itertools.product(vals, repeat=4):
        B = Mat(R, [[R.add_(A[0, 0], R.mul_(D, e[0])), R.add_(A[0, 1], R.mul_(D, e[1]))],
                    [R.add_(A[1, 0], R.mul_(D, e[2])), R.add_(A[1, 1], R.mul_(D, e[3]))]], raw=True)
        if R.is_zero(B.det()) and (weak or is_unimodular_matrix(B)):
            return True, B
    return UNKNOWN, None


def is_det_liftable(A: Mat, weak=False):
    """``(flag, B)``: B congruent to A modulo R det(A), det(B) = 0 and (unless
    ``weak``) B unimodular.  Upper-triangular inputs are cross-checked
    against the coordinate criteria."""
    _require_unimodular(A)
    R = A.ring
    if not isinstance(R, FiniteRing):
        return _profile_lift(A, weak)
    B = _find_lift(R, A, weak)
    flag = B is not None
    a, b, c, d = _abcd(A)
    if c == R.zero_idx:
        if weak:
            alt = bool(wdl_formula_batch(R, [a], [b], [d])[0])
            if is_reduced(R):
                assert alt == flag, f"weak-lift routes disagree on {A}"
            elif alt:
                assert flag, f"weak-lift criterion holds but no lift for {A}"
        else:
            alt = bool(dl_formula_batch(R, [a], [b], [d])[0])
            assert alt == flag, f"det-lift routes disagree on {A}"
    return flag, B


def is_weakly_det_liftable(A: Mat):
    return is_det_liftable(A, weak=True)


def dl_formula_witness(R: FiniteRing, a, b, c):
    """(x, y, z, w) with ax + by + cw = 1 and xw = yz, or None."""
    n = R.order
    x, y, w = grid(n, 3)
    s = R.add[R.add[R.mul[a, x], R.mul[b, y]], R.mul[c, w]]
    xw = R.mul[x, w]
    ok = np.flatnonzero((s == R.one_idx) & R.divides[y, xw])
    if not len(ok):
        return None
    i = ok[0]
    z = int(R.quotient_solver[y[i], xw[i]])
    return int(x[i]), int(y[i]), z, int(w[i])


def wdl_formula_witness(R: FiniteRing, a, b, c):
    """(x, y, z, w) with 1 - ax - by - cw + ac(xw - yz) = 0, or None."""
    n = R.order
    x, z, w = grid(n, 3)
    one = R.one_idx
    g = R.add[b, R.mul[R.mul[a, c], z]]
    h = R.mul[R.sub[one, R.mul[a, x]], R.sub[one, R.mul[c, w]]]
    ok = np.flatnonzero(R.divides[g, h])
    if not len(ok):
        return None
    i = ok[0]
    y = int(R.quotient_solver[g[i], h[i]])
    return int(x[i]), y, int(z[i]), int(w[i])


def wdl_equation(R, a, b, c, x, y, z, w):
    """Value of 1 - ax - by - cw + ac(xw - yz)."""
    m, s, ad = R.mul_, R.sub_, R.add_
    lin = s(s(s(R.one_idx, m(a, x)), m(b, y)), m(c, w))
    return ad(lin, m(m(a, c), s(m(x, w), m(y, z))))


def is_non_full(B: Mat):
    """``(flag, (l, m, o, q))`` with B = [l; m] [o, q]."""
    R = B.ring
    a, b, c, d = _abcd(B)
    n = R.order
    mm = multiple_mask(R)
    hit = np.flatnonzero(mm[a * n + b] & mm[c * n + d])
    if not len(hit):
        return False, None
    o, q = divmod(int(hit[0]), n)
    l = int(np.flatnonzero((R.mul[:, o] == a) & (R.mul[:, q] == b))[0])
    m = int(np.flatnonzero((R.mul[:, o] == c) & (R.mul[:, q] == d))[0])
    return True, (l, m, o, q)


def _complete_row(R, u, v):
    """M in SL_2 with first row (u, v) for unimodular (u, v)."""
    c1, c2 = combination_witness(R, [u, v])
    return Mat(R, [[u, v], [R.neg_(c2), c1]], raw=True)


def admits_diagonal_reduction(B: Mat):
    """``(flag, (M, N, D))`` with M B N = D diagonal and d11 | d22."""
    R = B.ring
    if not isinstance(R, FiniteRing):
        from .constructive import snf

        cert = snf(B.rows, R)
        return True, tuple(Mat(R, X, raw=True) for X in (cert.M, cert.N, cert.D))
    m, n_ = B.shape
    if (m, n_) == (2, 1):
        flag, wit = admits_diagonal_reduction(B.T)
        if not flag:
            return False, None
        M, N, D = wit
        return True, (N.T, M.T, D.T)
    if m == 1 and n_ == 1:
        I = Mat.identity(R, 1)
        return True, (I, I, B)
    if (m, n_) == (1, 2):
        p, q = B.rows[0]
        if not row_diagonal_reduction_batch(R, [p], [q])[0]:
            return False, None
        I1 = R.join[R.pid[p], R.pid[q]]
        s, t = unimodular_pairs(R)
        vals = R.add[R.mul[p, s], R.mul[q, t]]
        k = int(np.flatnonzero(R.pid[vals] == I1)[0])
        N = _complete_row(R, int(s[k]), int(t[k])).T
        D = B @ N
        g, h = D[0, 0], D[0, 1]
        tq = int(R.quotient_solver[g, h])
        E = Mat(R, [[R.one_idx, R.neg_(tq)], [R.zero_idx, R.one_idx]], raw=True)
        N = N @ E
        D = B @ N
        return True, (Mat.identity(R, 1), N, D)
    if (m, n_) != (2, 2):
        raise PreconditionError("diagonal reduction is implemented for sizes up to 2x2")
    a, b, c, d = _abcd(B)
    if not diagonal_reduction_batch(R, [a], [b], [c], [d])[0]:
        return False, None
    I1 = int(entry_ideal(R, a, b, c, d))
    s, t = unimodular_pairs(R)
    n = R.order
    reach = reach_table(R)
    r1 = R.add[R.mul[a, s], R.mul[b, t]]
    r2 = R.add[R.mul[c, s], R.mul[d, t]]
    k = int(np.flatnonzero(reach[r1.astype(np.int64) * n + r2, I1])[0])
    Nm = _complete_row(R, int(s[k]), int(t[k])).T
    vals = R.add[R.mul[r1[k], s], R.mul[r2[k], t]]
    j = int(np.flatnonzero(R.pid[vals] == I1)[0])
    M = _complete_row(R, int(s[j]), int(t[j]))
    C = M @ B @ Nm
    g = C[0, 0]
    lo = int(R.quotient_solver[g, C[1, 0]])
    rt = int(R.quotient_solver[g, C[0, 1]])
    L = Mat(R, [[R.one_idx, R.zero_idx], [R.neg_(lo), R.one_idx]], raw=True)
    Rr = Mat(R, [[R.one_idx, R.neg_(rt)], [R.zero_idx, R.one_idx]], raw=True)
    M, Nm = L @ M, Nm @ Rr
    D = M @ B @ Nm
    assert D.is_diagonal() and R.divides[D[0, 0], D[1, 1]]
    return True, (M, Nm, D)


# ---------------------------------------------------------------------------
# Prop4 record
# ---------------------------------------------------------------------------


@dataclass
class Prop4:
    flags: dict
    witnesses: dict = field(default_factory=dict)

    def check_diagram(self):
        f = self.flags
        if f.get("simply_extendable") is True:
            assert f.get("extendable") in (True, None) and f.get("det_liftable") in (True, None)
        if f.get("extendable") is True or f.get("det_liftable") is True:
            assert f.get("weakly_det_liftable") in (True, None)

    def to_json(self):
        def enc(w):
            if w is None:
                return None
            if isinstance(w, Mat):
                return w.tolist()
            return w

        return {"flags": {k: (v if isinstance(v, bool) else tristate(v)) for k, v in self.flags.items()},
                "witnesses": {k: enc(v) for k, v in self.witnesses.items()}}


def prop4(A: Mat, props=("se", "e", "dl", "wdl", "nf")) -> Prop4:
    R = A.ring
    flags, wits = {}, {}
    if "se" in props:
        flags["simply_extendable"], wits["simply_extendable"] = is_simply_extendable(A)
    if "e" in props:
        flags["extendable"], wits["extendable"] = is_extendable(A)
    if "dl" in props:
        flags["det_liftable"], wits["det_liftable"] = is_det_liftable(A)
    if "wdl" in props:
        flags["weakly_det_liftable"], wits["weakly_det_liftable"] = is_weakly_det_liftable(A)
    if "nf" in props and isinstance(R, FiniteRing):
        # non-fullness of the reduction of A modulo R det(A)
        from .rings import quotient

        if R.unit_mask[A.det()]:
            # the zero ring: every matrix is trivially non-full
            flags["non_full_mod_det"], wits["non_full_mod_det"] = True, ["0"] * 4
        else:
            Q, proj = quotient(R, Elem(R, A.det()))
            Ab = Mat(Q, [[proj[x] for x in r] for r in A.rows], raw=True)
            flag, w = is_non_full(Ab)
            flags["non_full_mod_det"] = flag
            wits["non_full_mod_det"] = None if w is None else [Q.format(x) for x in w]
    rec = Prop4(flags, wits)
    rec.check_diagram()
    return rec


# ---------------------------------------------------------------------------
# companion and universal test matrices
# ---------------------------------------------------------------------------


def upper_triangular_equivalent(A: Mat):
    """``(M, MA)`` with M in SL_2 and MA upper triangular, or None."""
    R = A.ring
    a, b, c, d = _abcd(A)
    if c == R.zero_idx:
        return Mat.identity(R, 2), A
    s, t = unimodular_pairs(R)
    ok = np.flatnonzero(R.add[R.mul[s, a], R.mul[t, c]] == R.zero_idx)
    if not len(ok):
        return None
    m21, m22 = int(s[ok[0]]), int(t[ok[0]])
    c1, c2 = combination_witness(R, [m22, R.neg_(m21)])
    M = Mat(R, [[c1, c2], [m21, m22]], raw=True)
    assert M.det() == R.one_idx
    return M, M @ A


def companion_test_matrices(A: Mat):
    """Yield the unimodular [[a a', b], [0, c c']] over all (a', c') for the
    first upper-triangular equivalent [[a, b], [0, c]] of A."""
    R = A.ring
    found = upper_triangular_equivalent(A)
    if found is None:
        return
    _, T = found
    a, b, _, c = _abcd(T)
    n = R.order
    for ap in range(n):
        for cp in range(n):
            x, y = R.mul_(a, ap), R.mul_(c, cp)
            if unimodular4(R, x, b, R.zero_idx, y):
                yield Mat(R, [[x, b], [R.zero_idx, y]], raw=True)


TAGS = ("D", "E", "F", "G")


def _test_entries(R, tag, x, y, z):
    m, s = R.mul_, R.sub_
    one = R.one_idx
    if tag == "D":
        oyz = s(one, m(y, z))
        return [[m(x, oyz), y], [R.zero_idx, m(s(one, x), oyz)]]
    if tag == "E":
        oyz = s(one, m(y, z))
        return [[x, y], [R.zero_idx, m(s(one, x), m(oyz, oyz))]]
    if tag == "F":
        return [[x, y], [R.zero_idx, m(s(one, x), s(one, m(y, z)))]]
    if tag == "G":
        return [[x, y], [R.zero_idx, s(s(one, x), m(y, z))]]
    raise ValueError(f"unknown test matrix tag {tag!r}")


def specialize_test_matrix(tag: str, R, x, y, z):
    """Image of a universal test matrix under x, y, z -> given elements.

    For tag ``D`` also returns the elementary matrices (L, Rm) with
    L D Rm equal to the E image, and asserts that identity."""
    x, y, z = R.coerce(x), R.coerce(y), R.coerce(z)
    A = Mat(R, _test_entries(R, tag, x, y, z), raw=True)
    if tag != "D":
        return A
    m, s = R.mul_, R.sub_
    one = R.one_idx
    L = Mat(R, [[one, R.zero_idx], [m(m(z, s(x, one)), s(one, m(y, z))), one]], raw=True)
    Rm = Mat(R, [[one, R.zero_idx], [m(x, z), one]], raw=True)
    E = Mat(R, _test_entries(R, "E", x, y, z), raw=True)
    assert L @ A @ Rm == E, "D/E conjugation identity failed"
    return A, (L, Rm, E)


UT_BUDGET = 20**3


def upper_triangular_unimodular(R, budget=UT_BUDGET, sample=SAMPLE_SIZE, label="ut", seed=DEFAULT_SEED):
    """Triples (a, b, c) with [[a, b], [0, c]] unimodular."""
    return tuples(R, 3, filt=lambda a, b, c: unimodular4(R, a, b, np.full_like(a, R.zero_idx), c),
                  budget=budget, sample=sample, label=label, seed=seed)


def g_images(R, zero_det=False, budget=UT_BUDGET, sample=SAMPLE_SIZE, seed=DEFAULT_SEED):
    """Entries (a, b, c, d) of the G test matrix over (x, y, z) in R^3,
    optionally restricted to a zero determinant."""
    one = R.one_idx
    filt = None
    if zero_det:
        def filt(x, y, z):
            return R.mul[x, R.sub[R.sub[one][x], R.mul[y, z]]] == R.zero_idx
    (x, y, z), cov = tuples(R, 3, filt, budget, sample, "G0" if zero_det else "G", seed)
    g22 = R.sub[R.sub[one][x], R.mul[y, z]]
    return (x, y, np.full_like(x, R.zero_idx), g22), cov


def prop2_scan(R: FiniteRing, prop: str, zero_det=False, budget=UT_BUDGET, sample=SAMPLE_SIZE, seed=DEFAULT_SEED):
    """All G images are P, compared with all upper-triangular unimodular
    matrices (of zero determinant when ``zero_det``) being P."""
    if prop == "wdl" and not is_reduced(R):
        raise PreconditionError("weak liftability needs a reduced ring here")
    kern = KERNELS[prop]
    G, cg = g_images(R, zero_det, budget, sample, seed)
    via_g = bool(kern(R, *G).all())
    (a, b, c), cov = upper_triangular_unimodular(R, budget, sample, seed=seed)
    if zero_det:
        keep = R.mul[a, c] == R.zero_idx
        a, b, c = a[keep], b[keep], c[keep]
    brute = bool(kern(R, a, b, np.full_like(a, R.zero_idx), c).all())
    return {"prop": prop, "zero_det": zero_det, "via_G": via_g, "brute_force": brute, "agree": via_g == brute,
            "coverage": str(cg.merge(cov)), "exhaustive": cg.exhaustive and cov.exhaustive}
