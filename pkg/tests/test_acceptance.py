"""Acceptance suite: one check per criterion, each printing a single
PASS/FAIL line.  Run directly (``python tests/test_acceptance.py``) or
through pytest.
"""

from __future__ import annotations

import functools
import sys
import time

import numpy as np
import pytest

from edrlab import classify as C
from edrlab import constructive as K
from edrlab import lab
from edrlab import lifting as L
from edrlab import unitmaps as U
from edrlab.rings import UNKNOWN, is_reduced, make_ring
from edrlab.scan import rng_for, tuples


@functools.lru_cache(maxsize=None)
def corpus():
    return tuple(lab.default_corpus())


@functools.lru_cache(maxsize=None)
def ring(spec):
    return make_ring(spec)


@functools.lru_cache(maxsize=None)
def default_sweep(threads=1):
    return lab.dumps(lab.sweep("default", "all", threads=threads))


def cases(theorem):
    import json

    return [c for c in json.loads(default_sweep())["cases"] if c["theorem"] == theorem]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def criterion_1():
    """Diagram implications on every unimodular 2x2 (exhaustive up to order 8,
    1000 samples up to order 64)."""
    t0 = time.time()
    checked = violations = 0
    for spec in corpus():
        R = ring(spec)
        cols, cov = tuples(R, 4, lambda a, b, c, d: L.unimodular4(R, a, b, c, d), 8**4, 1000, "diagram")
        assert R.order > 8 or cov.exhaustive
        assert cov.exhaustive or cov.count >= 1000
        se = L.simply_extendable_batch(R, *cols)
        e = L.extendable_batch(R, *cols)
        dl = L.det_liftable_batch(R, *cols)
        wdl = L.weakly_det_liftable_batch(R, *cols)
        violations += int((se & ~(e & dl)).sum() + (e & ~wdl).sum() + (dl & ~wdl).sum())
        checked += len(se)
    dt = time.time() - t0
    return violations == 0 and dt <= 300, f"{checked} matrices, {violations} violations, {dt:.1f}s"


def criterion_2():
    """Liftability formula and weak-liftability equation against the definitions."""
    mismatches, total = 0, 0
    for n in range(2, 9):
        R = ring(f"Zmod:{n}")
        (a, b, c), cov = L.upper_triangular_unimodular(R)
        assert cov.exhaustive
        z = np.full_like(a, R.zero_idx)
        mismatches += int((L.dl_formula_batch(R, a, b, c) != L.det_liftable_batch(R, a, b, z, c)).sum())
        total += len(a)
    reduced = [s for s in corpus() if is_reduced(ring(s))]
    for spec in reduced:
        R = ring(spec)
        (a, b, c), cov = L.upper_triangular_unimodular(R, budget=R.order**3)
        z = np.full_like(a, R.zero_idx)
        mismatches += int((L.wdl_formula_batch(R, a, b, c) != L.weakly_det_liftable_batch(R, a, b, z, c)).sum())
        total += len(a)
    return mismatches == 0, f"{total} triples over Zmod:2..8 and {len(reduced)} reduced rings, {mismatches} mismatches"


def criterion_3():
    """Six statements agree (and hold) on every Hermite corpus ring."""
    hermite = [s for s in corpus() if C.is_hermite(ring(s))[0]]
    bad = []
    for c in cases("TH1"):
        if c["ring"] not in hermite:
            continue
        vals = dict(c["evidence"]["statements"], **{"6_all_wdl": c["evidence"]["6_all_wdl"]})
        if c["verdict"] != lab.VERIFIED or len(vals) != 6 or set(vals.values()) != {True}:
            bad.append(c["ring"])
    return not bad, f"{len(hermite)} Hermite rings, disagreements: {bad or 'none'}"


def criterion_4():
    """U2 machinery: U2 everywhere and equal to the factorization statement;
    the stable-range and sufficient-condition implications never fail."""
    bad = []
    for spec in corpus():
        R = ring(spec)
        u2 = U.is_U2_ring(R)[0]
        fc = U.th3_factor_check(R)
        if not (u2 is True and fc["general"][0] == u2 and fc["variant"][0] == u2):
            bad.append(spec)
    for th in ("EX3", "TH2-cond1", "TH2-cond2", "TH2-cond3"):
        bad += [f"{th}@{c['ring']}" for c in cases(th) if c["verdict"] in (lab.COUNTEREXAMPLE, lab.UNKNOWN_V)]
    applied = sum(c["verdict"] == lab.VERIFIED for th in ("TH2-cond1", "TH2-cond2", "TH2-cond3") for c in cases(th))
    return not bad, f"{len(corpus())} rings, {applied} sufficient-condition instances applied, failures: {bad or 'none'}"


def criterion_5():
    """Boolean cokernel on every ring certified WSU2."""
    certified, bad = [], []
    for spec in corpus():
        R = ring(spec)
        flag, _, cov = C.is_wsu2(R)
        if flag is not True:
            continue
        if R.order <= 12:
            assert cov.exhaustive
        certified.append(spec)
        if not U.coker_boolean_everywhere(R)[0]:
            bad.append(spec)
    return not bad and certified, f"{len(certified)} WSU2 rings, failures: {bad or 'none'}"


def criterion_6():
    """Non-fullness against membership in the image, Zmod:n for n <= 12."""
    total, bad = 0, []
    for n in range(2, 13):
        count, cex = U.ex10_scan(ring(f"Zmod:{n}"))
        total += count
        if cex is not None:
            bad.append((n, cex))
    return not bad, f"{total} admissible triples, mismatches: {bad or 'none'}"


def criterion_7():
    """Symmetric zero-determinant criterion: forward everywhere, iff in char 2."""
    cs = cases("CR1")
    bad = [c["ring"] for c in cs if c["verdict"] != lab.VERIFIED]
    char2 = [c["ring"] for c in cs if ring(c["ring"]).char == 2]
    conv = all(c["evidence"]["converse_checked"] for c in cs if c["ring"] in char2)
    small = all(c["coverage"] == "exhaustive" for c in cs if ring(c["ring"]).order <= 9)
    return not bad and conv and small, f"{len(cs)} rings ({len(char2)} of char 2), violations: {bad or 'none'}"


def criterion_8():
    """SNF certificates on 10^4 random integer matrices."""
    t0 = time.time()
    rng = rng_for("acceptance-snf")
    bad = 0
    for _ in range(10**4):
        m, n = rng.integers(1, 6, size=2)
        B = rng.integers(-100, 101, size=(m, n)).tolist()
        cert = K.snf(B)
        try:
            cert.verify()
            ok = cert.diagonal() == K.invariant_factors_from_minors(K.minor_gcds(B))
        except AssertionError:
            ok = False
        bad += not ok
    dt = time.time() - t0
    return bad == 0 and dt <= 120, f"10000 matrices, {bad} failures, {dt:.1f}s"


def criterion_9():
    """Rank-one diagonal lemma on every corpus ring of order <= 16."""
    small = [s for s in corpus() if ring(s).order <= 16]
    cs = {c["ring"]: c for c in cases("L1")}
    bad = [s for s in small if cs[s]["verdict"] != lab.VERIFIED or cs[s]["coverage"] != "exhaustive"]
    pairs = sum(cs[s]["evidence"].get("pairs", 0) for s in small)
    return not bad, f"{len(small)} rings, {pairs} pairs, failures: {bad or 'none'}"


def criterion_10():
    """Bounded witnesses over Z on 10^3 random triples each."""
    rng = rng_for("acceptance-edd")
    cr3_unknown, eq4_unknown = [], []
    for a, b, s in rng.integers(-25, 26, size=(1000, 3)).tolist():
        w = K.cr3_witness(a, b, s, bound=30)
        if w is UNKNOWN:
            cr3_unknown.append((a, b, s))
        else:
            assert K.cr3_predicate(a, b, s, w["e"], w["f"])
    done = 0
    while done < 1000:
        a, u, t = rng.integers(-25, 26, size=3).tolist()
        if u == 0:  # the equation needs u != 0
            continue
        done += 1
        w = K.eq4_witness(a, u, t, bound=30)
        if w is UNKNOWN:
            eq4_unknown.append((a, u, t))
        else:
            assert K.eq4_value(a, u, t, w["s"], w["l"], w["z"]) == 0
    rate = 1 - (len(cr3_unknown) + len(eq4_unknown)) / 2000
    detail = f"success {rate:.2%}, cr3 UNKNOWN {cr3_unknown or 'none'}, eq4 UNKNOWN {eq4_unknown or 'none'}"
    return rate >= 0.99, detail


def criterion_11():
    """Full default sweep is byte-identical across thread counts."""
    a = default_sweep(1)
    b = default_sweep(2)
    import json

    summary = json.loads(a)["summary"]
    return a == b and summary[lab.COUNTEREXAMPLE] == 0, f"{len(a)} bytes, summary {summary}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10, criterion_11]


def _line(k, ok, detail):
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", range(1, 12))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(_line(k, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
