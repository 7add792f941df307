"""Ring-class predicates over finite rings, each with a witness or a
counterexample, and the ClassReport that collects them.

Predicates quantified over 2x2 matrices are exhaustive when |R|^4 fits the
matrix budget and otherwise run on a seeded sample; the coverage is kept in
the report next to each flag.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import lifting as L
from .matrices import GL_BUDGET, Mat, combination_witness, enumerate_GL
from .rings import UNKNOWN, FiniteRing, is_reduced, tristate
from .scan import EMPTY, MATRIX_BUDGET, SAMPLE_SIZE, DEFAULT_SEED, Coverage, chunks, grid, tuples
from .unitmaps import is_U2_ring

ALL_FLAGS = ("bezout", "hermite", "pre_schreier", "pi2", "e2", "se2", "edr", "u2", "wsu2",
             "wsu2_prime", "sr1", "ssr1", "asr1", "wh21", "wh31", "wh32")


@dataclass
class ScanConfig:
    budget: int = MATRIX_BUDGET
    sample: int = SAMPLE_SIZE
    seed: int = DEFAULT_SEED
    wh3_budget: int = 1 << 26


DEFAULT = ScanConfig()


def _mat(R, a, b, c, d):
    return Mat(R, [[a, b], [c, d]], raw=True)


def unimodular_matrices(R: FiniteRing, zero_det=False, cfg=DEFAULT, label="um"):
    def filt(a, b, c, d):
        ok = L.unimodular4(R, a, b, c, d)
        if zero_det:
            ok &= L._det(R, a, b, c, d) == R.zero_idx
        return ok

    return tuples(R, 4, filt, cfg.budget, cfg.sample, label + ("0" if zero_det else ""), cfg.seed)


def all_matrices(R: FiniteRing, cfg=DEFAULT, label="all"):
    return tuples(R, 4, None, cfg.budget, cfg.sample, label, cfg.seed)


def _first_failure(R, cols, ok):
    bad = np.flatnonzero(~ok)
    if not len(bad):
        return None
    i = bad[0]
    return _mat(R, *(int(c[i]) for c in cols))


def _matrix_scan(R, kernel, zero_det=False, cfg=DEFAULT):
    cols, cov = unimodular_matrices(R, zero_det, cfg)
    ok = kernel(R, *cols) if len(cols[0]) else np.zeros(0, dtype=bool)
    cex = _first_failure(R, cols, ok)
    return cex is None, cex, cov


# ---------------------------------------------------------------------------
# ideal-theoretic classes
# ---------------------------------------------------------------------------


def is_bezout(R: FiniteRing):
    """``(flag, (p, q))``: every two-generated ideal is principal."""
    p, q = grid(R.order, 2)
    J = R.join[R.pid[p], R.pid[q]]
    principal = np.zeros(R.num_ideals, dtype=bool)
    principal[list(R.principal_ideal_ids)] = True
    bad = np.flatnonzero(~principal[J])
    if len(bad):
        return False, (int(p[bad[0]]), int(q[bad[0]]))
    return True, None


def hermite_witness(R: FiniteRing, p, q):
    """(r, s, t) with p = rs, q = rt and (s, t) unimodular, or None."""
    s, t = L.unimodular_pairs(R)
    for r in range(R.order):
        hit = np.flatnonzero((R.mul[r, s] == p) & (R.mul[r, t] == q))
        if len(hit):
            return r, int(s[hit[0]]), int(t[hit[0]])
    return None


def is_hermite(R: FiniteRing):
    """``(flag, counterexample pair)``: R^2 = R Um(R^2)."""
    n = R.order
    s, t = L.unimodular_pairs(R)
    reach = np.zeros(n * n, dtype=bool)
    r = np.arange(n)
    reach[(R.mul[r[:, None], s[None]].astype(np.int64) * n + R.mul[r[:, None], t[None]]).ravel()] = True
    bad = np.flatnonzero(~reach)
    if len(bad):
        return False, divmod(int(bad[0]), n)
    return True, None


def is_pre_schreier(R: FiniteRing):
    """``(flag, (x, y, z))``: whenever x | yz, x = uv with u | y and v | z."""
    n = R.order
    div = R.divides.astype(np.int32)
    y, z = grid(n, 2)
    yz = R.mul[y, z].reshape(n, n)
    for x in range(n):
        u, v = np.nonzero(R.mul == x)
        split = (div[u].T @ div[v]) > 0  # split[y, z]
        need = R.divides[x][yz]
        bad = np.argwhere(need & ~split)
        if len(bad):
            return False, (x, int(bad[0][0]), int(bad[0][1]))
    return True, None


# ---------------------------------------------------------------------------
# matrix classes
# ---------------------------------------------------------------------------


def is_pi2(R: FiniteRing, cfg=DEFAULT):
    return _matrix_scan(R, L.extendable_batch, zero_det=True, cfg=cfg)


def is_e2(R: FiniteRing, cfg=DEFAULT):
    return _matrix_scan(R, L.extendable_batch, cfg=cfg)


def is_se2(R: FiniteRing, cfg=DEFAULT):
    return _matrix_scan(R, L.simply_extendable_batch, cfg=cfg)


def all_wdl(R: FiniteRing, cfg=DEFAULT):
    return _matrix_scan(R, L.weakly_det_liftable_batch, cfg=cfg)


def all_dl(R: FiniteRing, cfg=DEFAULT):
    return _matrix_scan(R, L.det_liftable_batch, cfg=cfg)


def is_edr(R: FiniteRing, cfg=DEFAULT):
    """Diagonal reduction of every 1x2, 2x1 and 2x2 matrix (the 2x2-centric
    scope); returns ``(flag, counterexample, coverage)``."""
    p, q = grid(R.order, 2)
    ok = L.row_diagonal_reduction_batch(R, p, q)
    bad = np.flatnonzero(~ok)
    if len(bad):
        return False, Mat(R, [[int(p[bad[0]]), int(q[bad[0]])]], raw=True), EMPTY
    cols, cov = all_matrices(R, cfg)
    ok = L.diagonal_reduction_batch(R, *cols)
    cex = _first_failure(R, cols, ok)
    return cex is None, cex, cov


# ---------------------------------------------------------------------------
# stable range
# ---------------------------------------------------------------------------


def _sr_ok(R, square, mod_ideal=None):
    """For all (a, b) unimodular modulo I: some a^k + br is a unit modulo I."""
    n = R.order
    a, b = grid(n, 2)
    I = R.zero_ideal_id if mod_ideal is None else mod_ideal
    um = R.join[R.join[R.pid[a], R.pid[b]], I] == R.full_id
    a, b = a[um], b[um]
    lead = R.mul[a, a] if square else a
    vals = R.add[lead[:, None], R.mul[b[:, None], np.arange(n)[None]]]
    good = (R.join[R.pid[vals], I] == R.full_id).any(axis=1)
    bad = np.flatnonzero(~good)
    return (True, None) if not len(bad) else (False, (int(a[bad[0]]), int(b[bad[0]])))


def stable_range_flags(R: FiniteRing):
    """``{"sr1": (flag, cex), "ssr1": ..., "asr1": ...}``; asr1 reads as sr1
    for every proper quotient R/Ra with a != 0."""
    out = {"sr1": _sr_ok(R, False), "ssr1": _sr_ok(R, True)}
    asr = (True, None)
    for iid in sorted({int(R.pid[a]) for a in range(R.order)} - {R.zero_ideal_id, R.full_id}):
        ok, cex = _sr_ok(R, False, iid)
        if not ok:
            a = int(np.flatnonzero(R.pid == iid)[0])
            asr = (False, {"a": a, "pair": cex})
            break
    out["asr1"] = asr
    return out


# ---------------------------------------------------------------------------
# symmetrization and trace conditions
# ---------------------------------------------------------------------------


def column_completions(R: FiniteRing):
    """Unimodular columns (x, z) with (y0, w0) such that x w0 - z y0 = 1."""
    if "_col_completions" not in R.__dict__:
        x, z = L.unimodular_pairs(R)
        y0, w0 = [], []
        for xi, zi in zip(x, z):
            c1, c2 = combination_witness(R, [int(xi), int(zi)])
            y0.append(R.neg_(c2))
            w0.append(c1)
        R.__dict__["_col_completions"] = (x, z, np.array(y0, dtype=np.int64), np.array(w0, dtype=np.int64))
    return R.__dict__["_col_completions"]


def _unit_choices(R, strict):
    return np.array([R.one_idx]) if strict else R.unit_indices


def wsu2_batch(R: FiniteRing, a, b, c, d, strict=False, want=False):
    """Exists N (det 1 when ``strict``) with AN symmetric.  With first column
    (x, z) of N fixed, the second is u (y0, w0) + k (x, z), and symmetry reads
    u alpha + k beta = gamma."""
    x, z, y0, w0 = column_completions(R)
    units = _unit_choices(R, strict)
    a, b, c, d = (np.asarray(v) for v in (a, b, c, d))
    out = np.zeros(len(a), dtype=bool)
    wit = [None] * len(a) if want else None
    for sl in chunks(len(a), len(x) * len(units)):
        al = R.add[R.mul[a[sl, None], y0[None]], R.mul[b[sl, None], w0[None]]]
        be = R.add[R.mul[a[sl, None], x[None]], R.mul[b[sl, None], z[None]]]
        ga = R.add[R.mul[c[sl, None], x[None]], R.mul[d[sl, None], z[None]]]
        hit = np.zeros(al.shape, dtype=bool)
        for u in units:
            h = R.divides[be, R.sub[ga, R.mul[u, al]]]
            if want:
                for i in np.flatnonzero(h.any(axis=1) & ~hit.any(axis=1)):
                    j = int(np.flatnonzero(h[i])[0])
                    k = int(R.quotient_solver[be[i, j], R.sub_(ga[i, j], R.mul_(u, al[i, j]))])
                    wit[sl.start + i] = (int(u), j, k)
            hit |= h
        out[sl] = hit.any(axis=1)
    return (out, wit) if want else out


def symmetrizer(A: Mat, strict=False):
    """``(flag, N)`` with AN symmetric, N in GL_2 (SL_2 when ``strict``)."""
    R = A.ring
    a, b, c, d = L._abcd(A)
    ok, wit = wsu2_batch(R, [a], [b], [c], [d], strict=strict, want=True)
    if not ok[0]:
        return False, None
    u, j, k = wit[0]
    x, z, y0, w0 = column_completions(R)
    N = Mat(R, [[x[j], R.add_(R.mul_(u, y0[j]), R.mul_(k, x[j]))],
                [z[j], R.add_(R.mul_(u, w0[j]), R.mul_(k, z[j]))]], raw=True)
    assert (A @ N).is_symmetric() and R.unit_mask[N.det()]
    return True, N


def is_wsu2(R: FiniteRing, strict=False, cfg=DEFAULT):
    return _matrix_scan(R, lambda R_, *m: wsu2_batch(R_, *m, strict=strict), cfg=cfg)


def wh21_batch(R: FiniteRing, a, b, c, d, strict=False):
    """Exists N with trace(AN) = 0, by the same column parametrization:
    (ax + bz) + u (c y0 + d w0) + k (cx + dz) = 0."""
    x, z, y0, w0 = column_completions(R)
    units = _unit_choices(R, strict)
    a, b, c, d = (np.asarray(v) for v in (a, b, c, d))
    out = np.zeros(len(a), dtype=bool)
    for sl in chunks(len(a), len(x) * len(units)):
        p = R.add[R.mul[a[sl, None], x[None]], R.mul[b[sl, None], z[None]]]
        q = R.add[R.mul[c[sl, None], y0[None]], R.mul[d[sl, None], w0[None]]]
        r = R.add[R.mul[c[sl, None], x[None]], R.mul[d[sl, None], z[None]]]
        hit = np.zeros(p.shape, dtype=bool)
        for u in units:
            hit |= R.divides[r, R.neg[R.add[p, R.mul[u, q]]]]
        out[sl] = hit.any(axis=1)
    return out


def _wh3(R: FiniteRing, m, strict, cfg):
    """WH_{3,m} by exhaustion over all unimodular 3x3 matrices and GL_3;
    UNKNOWN beyond the budget."""
    n = R.order
    if n**9 > cfg.wh3_budget:
        return UNKNOWN, None
    try:
        gl = enumerate_GL(R, 3, GL_BUDGET)
    except Exception:
        return UNKNOWN, None
    Ns = gl.mats[gl.sl_mask] if strict else gl.mats
    if n**9 * len(Ns) > cfg.wh3_budget:
        return UNKNOWN, None
    cols = grid(n, 9)
    ideal = np.full(n**9, R.zero_ideal_id)
    for c in cols:
        ideal = R.join[ideal, R.pid[c]]
    As = np.stack(cols, axis=1)[ideal == R.full_id].reshape(-1, 3, 3)
    # zero-trace sets as packed bit rows
    Nt = Ns.transpose(0, 2, 1).reshape(len(Ns), 9)  # tr(AN) = sum A_ij N_ji
    Af = As.reshape(len(As), 9)
    Z = np.zeros((len(As), len(Ns)), dtype=bool)
    for sl in chunks(len(As), len(Ns) * 9):
        acc = np.full((sl.stop - sl.start, len(Ns)), R.zero_idx, dtype=np.int64)
        for k in range(9):
            acc = R.add[acc, R.mul[Af[sl, k][:, None], Nt[None, :, k]]]
        Z[sl] = acc == R.zero_idx
    if m == 1:
        bad = np.flatnonzero(~Z.any(axis=1))
        return (True, None) if not len(bad) else (False, [Mat(R, As[bad[0]].tolist(), raw=True)])
    packed = np.packbits(Z, axis=1)
    for i in range(len(As)):
        meet = (packed[i][None] & packed).any(axis=1)
        bad = np.flatnonzero(~meet)
        if len(bad):
            return False, [Mat(R, As[i].tolist(), raw=True), Mat(R, As[bad[0]].tolist(), raw=True)]
    return True, None


def is_wh(R: FiniteRing, n, m, strict=False, cfg=DEFAULT):
    """``(flag, counterexample, coverage)`` for the trace condition WH_{n,m}."""
    if (n, m) == (2, 1):
        return _matrix_scan(R, lambda R_, *x: wh21_batch(R_, *x, strict=strict), cfg=cfg)
    if (n, m) in ((3, 1), (3, 2)):
        flag, cex = _wh3(R, m, strict, cfg)
        return flag, cex, Coverage(True, 0) if flag is not UNKNOWN else Coverage(False, 0)
    raise ValueError("supported (n, m): (2, 1), (3, 1), (3, 2)")


# ---------------------------------------------------------------------------
# L-sets
# ---------------------------------------------------------------------------


@dataclass
class EllSet:
    ring: FiniteRing
    abcd: tuple
    mask: np.ndarray  # mask[psi, delta]

    def __contains__(self, pair):
        psi, delta = (self.ring.coerce(v) for v in pair)
        return bool(self.mask[psi, delta])

    @property
    def pairs(self):
        return [tuple(map(int, p)) for p in np.argwhere(self.mask)]

    @property
    def det_liftable(self):
        return bool(self.mask[self.ring.one_idx, self.ring.zero_idx])

    @property
    def wh_prime_instance(self):
        return bool(self.mask[self.ring.zero_idx, self.ring.one_idx])

    @property
    def wh_instance(self):
        return bool(self.mask[self.ring.zero_idx][self.ring.unit_mask].any())

    def to_json(self):
        f = self.ring.format
        return {"pairs": [[f(p), f(q)] for p, q in self.pairs], "contains_1_0": self.det_liftable,
                "contains_0_1": self.wh_prime_instance, "meets_0_x_units": self.wh_instance}


def ell_set(R: FiniteRing, a, b, c, d) -> EllSet:
    """All (ax + by + cz + dw, xw - yz) over (x, y, z, w) in R^4."""
    a, b, c, d = (R.coerce(v) for v in (a, b, c, d))
    if not L.unimodular4(R, a, b, c, d):
        raise L.PreconditionError("(a, b, c, d) must be unimodular")
    n = R.order
    x, y = grid(n, 2)
    lin_xy = R.add[R.mul[a, x], R.mul[b, y]]
    mask = np.zeros((n, n), dtype=bool)
    for zi in range(n):
        for wi in range(n):
            psi = R.add[lin_xy, R.add_(R.mul_(c, zi), R.mul_(d, wi))]
            delta = R.sub[R.mul[x, wi], R.mul[y, zi]]
            mask[psi, delta] = True
    return EllSet(R, (a, b, c, d), mask)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _enc(R, w):
    if w is None:
        return None
    if isinstance(w, Mat):
        return w.tolist()
    if isinstance(w, (list, tuple)):
        return [_enc(R, x) for x in w]
    if isinstance(w, dict):
        return {k: _enc(R, v) for k, v in w.items()}
    if isinstance(w, (int, np.integer)):
        return R.format(int(w))
    return w


@dataclass
class ClassReport:
    ring: str
    flags: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)
    coverage: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    def to_json(self, timing=False):
        out = {"ring": self.ring,
               "flags": {k: tristate(v) if not isinstance(v, bool) else v for k, v in self.flags.items()},
               "evidence": self.evidence, "coverage": self.coverage}
        if timing:
            out["timing"] = {k: round(v, 4) for k, v in self.timing.items()}
        return out


def classify(R: FiniteRing, flags=ALL_FLAGS, cfg=DEFAULT) -> ClassReport:
    rep = ClassReport(R.spec)
    want = set(flags)
    unknown = want - set(ALL_FLAGS)
    if unknown:
        raise ValueError(f"unknown flags {sorted(unknown)}")

    def put(name, flag, wit=None, cov=None, t0=None):
        rep.flags[name] = flag
        rep.evidence[name] = _enc(R, wit)
        if flag is UNKNOWN:
            rep.coverage[name] = "budget exceeded"
        elif cov is not None:
            rep.coverage[name] = str(cov)
        if t0 is not None:
            rep.timing[name] = time.perf_counter() - t0

    simple = {"bezout": is_bezout, "hermite": is_hermite, "pre_schreier": is_pre_schreier, "u2": is_U2_ring}
    for name in ALL_FLAGS:
        if name not in want:
            continue
        t0 = time.perf_counter()
        if name in simple:
            put(name, *simple[name](R), t0=t0)
        elif name in ("pi2", "e2", "se2"):
            fn = {"pi2": is_pi2, "e2": is_e2, "se2": is_se2}[name]
            put(name, *fn(R, cfg), t0=t0)
        elif name == "edr":
            put(name, *is_edr(R, cfg), t0=t0)
        elif name in ("wsu2", "wsu2_prime"):
            put(name, *is_wsu2(R, strict=name == "wsu2_prime", cfg=cfg), t0=t0)
        elif name in ("sr1", "ssr1", "asr1"):
            if "_sr" not in rep.timing:
                srf = stable_range_flags(R)
                rep.timing["_sr"] = 0.0
            put(name, *srf[name], t0=t0)
        else:
            n, m = int(name[2]), int(name[3])
            put(name, *is_wh(R, n, m, cfg=cfg), t0=t0)
    rep.timing.pop("_sr", None)
    return rep
