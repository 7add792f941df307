"""Small dense matrices over a ring, with determinant, unimodularity,
GL enumeration and equivalence search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .rings import UNKNOWN, Elem, FiniteRing, IntegerProfile, PolyProfile, RingError, _split_top

GL_BUDGET = 1 << 22


class BudgetExceeded(RuntimeError):
    pass


class Mat:
    """An m x n matrix; entries are stored as raw ring values (indices for
    finite rings)."""

    def __init__(self, ring, rows, raw=False):
        """``rows`` holds ring literals (Elem, int, str); with ``raw=True`` they
        are already canonical values (indices for finite rings)."""
        rows = [list(r) for r in rows]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix must be a nonempty rectangular array")
        self.ring = ring
        if raw:
            conv = (lambda x: int(x)) if isinstance(ring, FiniteRing) else (lambda x: x)
        else:
            conv = ring.coerce
        self.rows = tuple(tuple(conv(x) for x in r) for r in rows)

    @classmethod
    def parse(cls, ring, text: str) -> "Mat":
        s = text.strip().replace(" ", "")
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"matrix literal {text!r} must look like [[a,b],[c,d]]")
        rows = []
        for part in _split_top(s[1:-1], ","):
            if not (part.startswith("[") and part.endswith("]")):
                raise ValueError(f"bad matrix row {part!r}")
            rows.append([ring.parse(x) for x in _split_top(part[1:-1], ",")])
        return cls(ring, rows, raw=True)

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def elem(self, i, j) -> Elem:
        return Elem(self.ring, self.rows[i][j])

    def entries(self):
        return [x for r in self.rows for x in r]

    def __eq__(self, other):
        return isinstance(other, Mat) and other.ring.spec == self.ring.spec and other.rows == self.rows

    def __hash__(self):
        return hash((self.ring.spec, self.rows))

    def __matmul__(self, other: "Mat") -> "Mat":
        R = self.ring
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(m):
            row = []
            for j in range(n):
                acc = R.zero_idx
                for t in range(k):
                    acc = R.add_(acc, R.mul_(self.rows[i][t], other.rows[t][j]))
                row.append(acc)
            out.append(row)
        return Mat(R, out, raw=True)

    def __add__(self, other):
        R = self.ring
        return Mat(R, raw=True, rows=[[R.add_(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        R = self.ring
        return Mat(R, raw=True, rows=[[R.sub_(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c):
        R = self.ring
        c = R.coerce(c)
        return Mat(R, [[R.mul_(c, x) for x in r] for r in self.rows], raw=True)

    @property
    def T(self) -> "Mat":
        return Mat(self.ring, list(zip(*self.rows)), raw=True)

    def det(self):
        m, n = self.shape
        if m != n:
            raise ValueError("determinant of a non-square matrix")
        return _det(self.ring, self.rows)

    def trace(self):
        R = self.ring
        return reduce(R.add_, (self.rows[i][i] for i in range(len(self.rows))), R.zero_idx)

    def is_symmetric(self) -> bool:
        return self.rows == self.T.rows

    def is_diagonal(self) -> bool:
        R = self.ring
        return all(x == R.zero_idx for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def tolist(self):
        return [[self.ring.format(x) for x in r] for r in self.rows]

    def __str__(self):
        return "[" + ",".join("[" + ",".join(r) + "]" for r in self.tolist()) + "]"

    __repr__ = __str__

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one_idx if i == j else ring.zero_idx for j in range(n)] for i in range(n)], raw=True)


def _det(R, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return R.sub_(R.mul_(a, d), R.mul_(b, c))
    acc = R.zero_idx
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = R.mul_(rows[0][j], _det(R, minor))
        acc = R.add_(acc, term) if j % 2 == 0 else R.sub_(acc, term)
    return acc


def det2(A: Mat) -> Elem:
    if A.shape != (2, 2):
        raise ValueError(f"det2 needs a 2x2 matrix, got {A.shape}")
    return Elem(A.ring, A.det())


def det3(A: Mat) -> Elem:
    if A.shape != (3, 3):
        raise ValueError(f"det3 needs a 3x3 matrix, got {A.shape}")
    return Elem(A.ring, A.det())


# ---------------------------------------------------------------------------
# unimodularity
# ---------------------------------------------------------------------------


def combination_witness(R: FiniteRing, gens, target=None):
    """Coefficients ``c`` with ``sum(c_i * g_i) == target`` (default 1), or None.

    Walks back through the chain of partial ideals, always taking the least
    coefficient that keeps the remainder inside the previous partial ideal.
    """
    target = R.one_idx if target is None else target
    partial = [R.zero_ideal_id]
    for g in gens:
        partial.append(int(R.join[partial[-1], R.pid[g]]))
    if not R.ideal_masks[partial[-1]][target]:
        return None
    coeffs = []
    t = target
    for k in range(len(gens) - 1, -1, -1):
        rest = R.sub[t][R.mul[gens[k]]]  # t - c*g_k for every c
        ok = np.flatnonzero(R.ideal_masks[partial[k]][rest])
        c = int(ok[0])
        coeffs.append(c)
        t = int(rest[c])
    return coeffs[::-1]


def is_unimodular_vector(v, ring=None):
    """Return ``(flag, coefficients)`` with ``sum(c_i v_i) == 1`` when true.

    For bounded profiles of Z and F_p[x] the answer is exact (gcd based).
    """
    if not v:
        raise ValueError("empty vector")
    R = ring if ring is not None else v[0].ring
    idx = [R.coerce(x) for x in v]
    if isinstance(R, (IntegerProfile, PolyProfile)):
        from .constructive import ext_gcd

        g, coeffs = R.zero_idx, []
        for x in idx:
            g2, s, t = ext_gcd(g, x, base=R)
            coeffs = [R.mul_(s, c) for c in coeffs] + [t]
            g = g2
        if g != R.one_idx:
            return False, None
        return True, [Elem(R, c) for c in coeffs]
    w = combination_witness(R, idx)
    if w is None:
        return False, None
    return True, [Elem(R, c) for c in w]


def is_unimodular_matrix(A: Mat) -> bool:
    return is_unimodular_vector(A.entries(), A.ring)[0]


# ---------------------------------------------------------------------------
# GL enumeration
# ---------------------------------------------------------------------------


@dataclass
class GLCache:
    ring: FiniteRing
    n: int
    mats: np.ndarray  # (k, n, n) entry indices, lexicographic by entries
    dets: np.ndarray

    @property
    def sl_mask(self) -> np.ndarray:
        return self.dets == self.ring.one_idx

    @property
    def sl(self) -> np.ndarray:
        return self.mats[self.sl_mask]

    def __len__(self):
        return len(self.mats)

    def as_mats(self, sl=False):
        src = self.sl if sl else self.mats
        return [Mat(self.ring, m.tolist(), raw=True) for m in src]


_GL_CACHE: dict = {}


def enumerate_GL(R: FiniteRing, n: int, budget: int = GL_BUDGET) -> GLCache:
    """All invertible n x n matrices (n in {2, 3}), cached per ring."""
    if n not in (2, 3):
        raise ValueError("GL enumeration supports n in {2, 3}")
    if not isinstance(R, FiniteRing):
        raise RingError("GL enumeration needs a finite ring")
    key = (R.spec, n)
    if key in _GL_CACHE:
        return _GL_CACHE[key]
    N = R.order
    if N ** (n * n) > budget:
        raise BudgetExceeded(f"|{R.spec}|^{n * n} exceeds the GL budget {budget}")
    if n == 2:
        a, b, c, d = (x.ravel() for x in np.meshgrid(*[np.arange(N)] * 4, indexing="ij"))
        det = R.sub[R.mul[a, d], R.mul[b, c]]
        keep = R.unit_mask[det]
        mats = np.stack([a, b, c, d], axis=1)[keep].reshape(-1, 2, 2)
        dets = det[keep]
    else:
        # rows must be unimodular; prune the first two rows first
        rows = np.array(list(itertools.product(range(N), repeat=3)))
        pid = R.pid
        um = R.join[R.join[pid[rows[:, 0]], pid[rows[:, 1]]], pid[rows[:, 2]]] == R.full_id
        rows = rows[um]
        out, dets = [], []
        M, A, S = R.mul, R.add, R.sub
        for r1 in rows:
            for r2 in rows:
                # cofactors of the third row
                c0 = S[M[r1[1], r2[2]], M[r1[2], r2[1]]]
                c1 = S[M[r1[2], r2[0]], M[r1[0], r2[2]]]
                c2 = S[M[r1[0], r2[1]], M[r1[1], r2[0]]]
                det = A[A[M[rows[:, 0], c0], M[rows[:, 1], c1]], M[rows[:, 2], c2]]
                ok = R.unit_mask[det]
                for r3, dt in zip(rows[ok], det[ok]):
                    out.append((r1, r2, r3))
                    dets.append(dt)
        mats = np.array(out, dtype=np.int64).reshape(-1, 3, 3)
        dets = np.array(dets, dtype=np.int64)
    cache = GLCache(R, n, mats.astype(np.int64), dets.astype(np.int64))
    _GL_CACHE[key] = cache
    return cache


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------


def _solve_columns(R, C, target):
    """All (x, y) with C @ (x, y)^T == target, as two index arrays."""
    N = R.order
    x, y = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    r0 = R.add[R.mul[C[0][0], x], R.mul[C[0][1], y]]
    r1 = R.add[R.mul[C[1][0], x], R.mul[C[1][1], y]]
    ok = (r0 == target[0]) & (r1 == target[1])
    return x[ok], y[ok]


def are_equivalent(A: Mat, B: Mat, budget: int = GL_BUDGET):
    """Decide whether ``M A N == B`` for some M, N in GL_2; returns (flag, (M, N))."""
    R = A.ring
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise ValueError("are_equivalent handles 2x2 matrices")
    gl = enumerate_GL(R, 2, budget)
    Bc = [[B[0, 0], B[1, 0]], [B[0, 1], B[1, 1]]]  # columns of B
    M_, A_ = R.mul, R.add
    a = np.array(A.rows)
    for Mm in gl.mats:
        C = [[A_[M_[Mm[i, 0], a[0, j]], M_[Mm[i, 1], a[1, j]]] for j in range(2)] for i in range(2)]
        x1, y1 = _solve_columns(R, C, Bc[0])
        if not len(x1):
            continue
        x2, y2 = _solve_columns(R, C, Bc[1])
        if not len(x2):
            continue
        det = R.sub[M_[x1[:, None], y2[None, :]], M_[x2[None, :], y1[:, None]]]
        hit = np.argwhere(R.unit_mask[det])
        if len(hit):
            i, j = hit[0]
            N = Mat(R, [[x1[i], x2[j]], [y1[i], y2[j]]], raw=True)
            return True, (Mat(R, Mm.tolist(), raw=True), N)
    return False, None
