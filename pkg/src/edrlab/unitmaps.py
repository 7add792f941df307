"""The product map of unit groups U(R/Rac) x U(R/Rbc) -> U(R/Rc), its image,
and the checks built on it.

Units of R/I are represented by their least-index coset representatives;
``x`` lifts a unit of R/I iff Rx + I = R.  The image of the map depends only
on the ideals (Rac, Rbc, Rc), so results are memoized per ideal triple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lifting import PreconditionError, is_non_full
from .matrices import Mat
from .rings import Elem, FiniteRing


def lifted_units(R: FiniteRing, ideal_id: int) -> np.ndarray:
    """Mask of elements whose class is a unit modulo the ideal."""
    return R.join[R.pid, ideal_id] == R.full_id


def _cosets(R: FiniteRing) -> np.ndarray:
    """``cos[I, x]`` = least representative of x + I, for every ideal I."""
    if "_all_cosets" not in R.__dict__:
        R.__dict__["_all_cosets"] = np.stack([R.coset_reps(i) for i in range(R.num_ideals)])
    return R.__dict__["_all_cosets"]


def _target_mask(R, ic):
    cos = _cosets(R)[ic]
    m = np.zeros(R.order, dtype=bool)
    m[cos[lifted_units(R, ic)]] = True
    return m


def _image_mask(R, i1, i2, ic):
    memo = R.__dict__.setdefault("_upsilon_memo", {})
    key = (int(i1), int(i2), int(ic))
    if key not in memo:
        u1 = np.flatnonzero(lifted_units(R, i1))
        u2 = np.flatnonzero(lifted_units(R, i2))
        # distinct classes suffice on each side
        u1 = np.unique(R.coset_reps(int(i1))[u1])
        u2 = np.unique(R.coset_reps(int(i2))[u2])
        m = np.zeros(R.order, dtype=bool)
        m[_cosets(R)[ic][R.mul[u1[:, None], u2[None, :]]]] = True
        memo[key] = m
    return memo[key]


@dataclass
class UnitMapImage:
    ring: FiniteRing
    a: int
    b: int
    c: int
    domain_sizes: tuple
    target: list
    image: list

    @property
    def surjective(self) -> bool:
        return len(self.image) == len(self.target)

    def contains(self, x) -> bool:
        R = self.ring
        return int(R.coset_reps(R.pid[self.c])[R.coerce(x)]) in set(self.image)

    def to_json(self):
        f = self.ring.format
        return {
            "ring": self.ring.spec,
            "parameters": {"a": f(self.a), "b": f(self.b), "c": f(self.c)},
            "domain_orders": list(self.domain_sizes),
            "target": [f(x) for x in self.target],
            "image": [f(x) for x in self.image],
            "surjective": self.surjective,
        }


def upsilon_image(R: FiniteRing, a, b, c) -> UnitMapImage:
    a, b, c = R.coerce(a), R.coerce(b), R.coerce(c)
    i1, i2, ic = R.pid[R.mul_(a, c)], R.pid[R.mul_(b, c)], R.pid[c]
    sizes = tuple(int(len(np.unique(R.coset_reps(int(i))[lifted_units(R, i)]))) for i in (i1, i2))
    target = np.flatnonzero(_target_mask(R, ic)).tolist()
    image = np.flatnonzero(_image_mask(R, i1, i2, ic)).tolist()
    return UnitMapImage(R, a, b, c, sizes, target, image)


def _one_minus(R):
    return R.sub[R.one_idx]


def is_U2_ring(R: FiniteRing):
    """``(flag, counterexample)``: the map for (a, 1-a, c) is onto for every
    (a, c); a counterexample is (a, c, unit of R/Rc not hit)."""
    n = R.order
    om = _one_minus(R)
    for a in range(n):
        for c in range(n):
            ic = R.pid[c]
            t = _target_mask(R, ic)
            im = _image_mask(R, R.pid[R.mul[a, c]], R.pid[R.mul[om[a], c]], ic)
            miss = np.flatnonzero(t & ~im)
            if len(miss):
                return False, (a, c, int(miss[0]))
    return True, None


def coker_is_boolean(R: FiniteRing, a, b, c) -> bool:
    """Every square of a unit of R/Rc lies in the image."""
    a, b, c = R.coerce(a), R.coerce(b), R.coerce(c)
    if not R.um2[a, b]:
        raise PreconditionError("(a, b) must be unimodular")
    ic = R.pid[c]
    t = np.flatnonzero(_target_mask(R, ic))
    sq = _cosets(R)[ic][R.mul[t, t]]
    im = _image_mask(R, R.pid[R.mul_(a, c)], R.pid[R.mul_(b, c)], ic)
    return bool(im[sq].all())


def coker_boolean_everywhere(R: FiniteRing):
    """``(flag, counterexample)`` over all unimodular (a, b) and all c."""
    n = R.order
    cos = _cosets(R)
    seen = set()
    for a in range(n):
        for b in np.flatnonzero(R.um2[a]):
            for c in range(n):
                key = (R.pid[R.mul[a, c]], R.pid[R.mul[b, c]], R.pid[c])
                if key in seen:
                    continue
                seen.add(key)
                t = np.flatnonzero(_target_mask(R, key[2]))
                sq = cos[key[2]][R.mul[t, t]]
                if not _image_mask(R, *key)[sq].all():
                    return False, (a, int(b), c)
    return True, None


def ex10_matrix(R: FiniteRing, a, c, u) -> Mat:
    om = R.sub_(R.one_idx, a)
    return Mat(R, [[R.mul_(a, c), u], [R.zero_idx, R.mul_(om, c)]], raw=True)


def ex10_admissible(R: FiniteRing, a, c, u) -> bool:
    m1 = R.ideal_masks[R.pid[R.mul_(a, c)]]
    m2 = R.ideal_masks[R.pid[R.mul_(R.sub_(R.one_idx, a), c)]]
    return bool(np.flatnonzero(m1 & m2).tolist() == [R.zero_idx]) and bool(R.um2[c, u])


def ex10_correspondence(R: FiniteRing, a, c, u):
    """``(non_full, in_image)`` for A = [[ac, u], [0, (1-a)c]]; the two agree
    whenever Rac and R(1-a)c meet in 0 and (c, u) is unimodular."""
    a, c, u = R.coerce(a), R.coerce(c), R.coerce(u)
    if not ex10_admissible(R, a, c, u):
        raise PreconditionError("need Rac, R(1-a)c meeting in 0 and (c, u) unimodular")
    non_full, _ = is_non_full(ex10_matrix(R, a, c, u))
    img = upsilon_image(R, Elem(R, a), Elem(R, R.sub_(R.one_idx, a)), Elem(R, c))
    return bool(non_full), img.contains(Elem(R, u))


def _product_mask(R, ia, ib):
    """Mask of {d1 d2 : Rd1 + Ra = R, Rd2 + Rb = R} (depends on Ra, Rb)."""
    memo = R.__dict__.setdefault("_factor_memo", {})
    key = (int(ia), int(ib))
    if key not in memo:
        d1 = np.flatnonzero(lifted_units(R, ia))
        d2 = np.flatnonzero(lifted_units(R, ib))
        m = np.zeros(R.order, dtype=bool)
        m[R.mul[d1[:, None], d2[None, :]]] = True
        memo[key] = m
    return memo[key]


def _factor_image(R, ia, ib, ic):
    """Mask over representatives mod Rc hit by the product set."""
    cos = _cosets(R)[ic]
    m = np.zeros(R.order, dtype=bool)
    m[cos[_product_mask(R, ia, ib)]] = True
    return m


def factor_witness(R: FiniteRing, a, b, c, d):
    """(t, d1, d2) with d + ct = d1 d2, (a, d1) and (b, d2) unimodular."""
    for t in range(R.order):
        v = R.add_(d, R.mul_(c, t))
        for d1 in np.flatnonzero(R.um2[a]):
            q = np.flatnonzero((R.mul[d1] == v) & R.um2[b])
            if len(q):
                return t, int(d1), int(q[0])
    return None


def th3_factor_check(R: FiniteRing):
    """Factorization statements over all unimodular pairs.

    Returns ``{"general": (flag, cex), "variant": (flag, cex)}`` where the
    general form quantifies over ((a, b), (c, d)) both unimodular, and the
    variant over (a, d) with b = 1 - a and c in 1 + Rd."""
    n = R.order
    cos = _cosets(R)
    general, cex = True, None
    seen = set()
    for a in range(n):
        for b in np.flatnonzero(R.um2[a]):
            for ic in range(R.num_ideals):
                key = (R.pid[a], R.pid[b], ic)
                if key in seen:
                    continue
                seen.add(key)
                cs = np.flatnonzero(R.pid == ic)
                if not len(cs):
                    continue
                hit = _factor_image(R, *key)
                ds = np.flatnonzero(lifted_units(R, ic))
                bad = ds[~hit[cos[ic][ds]]]
                if len(bad):
                    general, cex = False, (a, int(b), int(cs[0]), int(bad[0]))
                    break
            if not general:
                break
        if not general:
            break

    variant, vcex = True, None
    om = _one_minus(R)
    for a in range(n):
        ia, ib = R.pid[a], R.pid[om[a]]
        hits = np.stack([_factor_image(R, ia, ib, ic) for ic in range(R.num_ideals)])
        for d in range(n):
            cs = R.add[R.one_idx, R.mul[d]]  # 1 + Rd, with repeats
            ok = hits[R.pid[cs], cos[R.pid[cs], d]]
            if not ok.all():
                variant, vcex = False, (a, d, int(cs[np.flatnonzero(~ok)[0]]))
                break
        if not variant:
            break
    return {"general": (general, cex), "variant": (variant, vcex)}


def ex10_scan(R: FiniteRing):
    """Compare both sides over every admissible (a, c, u).

    Returns ``(count, mismatch)`` with the first disagreeing triple or None."""
    from .lifting import non_full_batch
    from .scan import grid

    n = R.order
    a, c, u = grid(n, 3)
    om = _one_minus(R)
    ac, bc = R.mul[a, c], R.mul[om[a], c]
    meet = (R.ideal_masks[R.pid[ac]] & R.ideal_masks[R.pid[bc]]).sum(axis=1) == 1
    keep = meet & R.um2[c, u]
    a, c, u, ac, bc = (x[keep] for x in (a, c, u, ac, bc))
    zero = np.full_like(a, R.zero_idx)
    nf = non_full_batch(R, ac, u, zero, bc)
    cos = _cosets(R)
    inim = np.zeros(len(a), dtype=bool)
    keys = np.stack([R.pid[ac], R.pid[bc], R.pid[c]], axis=1)
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    inv = inv.ravel()
    for k, key in enumerate(uniq):
        rows = np.flatnonzero(inv == k)
        inim[rows] = _image_mask(R, *key)[cos[key[2]][u[rows]]]
    bad = np.flatnonzero(nf != inim)
    cex = None if not len(bad) else (int(a[bad[0]]), int(c[bad[0]]), int(u[bad[0]]))
    return len(a), cex
