"""Brute-force verification of the ring-theoretic statements over a corpus
of finite rings, plus a counterexample hunter.

Every check computes each side of an equivalence or implication with its own
code path and compares.  Verdicts: VERIFIED, COUNTEREXAMPLE (with a
re-checkable witness), UNKNOWN (budget) and INAPPLICABLE (a hypothesis fails).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import classify as C
from . import lifting as L
from . import unitmaps as U
from .constructive import cr3_witness, eq4_witness, lemma1_matrix
from .matrices import Mat, combination_witness
from .rings import (UNKNOWN, Elem, FiniteRing, IntegerProfile, annihilator, is_reduced, make_ring, nilradical,
                    quotient_by_ideal, zero_divisor_mask)
from .scan import DEFAULT_SEED, EMPTY, Coverage, grid, rng_for, tuples

VERIFIED, COUNTEREXAMPLE, UNKNOWN_V, INAPPLICABLE = "VERIFIED", "COUNTEREXAMPLE", "UNKNOWN", "INAPPLICABLE"

THEOREMS = ("TH1", "TH2-cond1", "TH2-cond2", "TH2-cond3", "TH3", "TH4", "TH5", "CR1", "CR2",
            "CR3-shortcuts", "P1", "P2", "L1", "L2", "EX3", "EX4", "EX5", "EX10", "C6-sym-equation",
            "EX11", "WH21-WSU2")

ALIASES = {"TH2": ("TH2-cond1", "TH2-cond2", "TH2-cond3"), "CR3": ("CR3-shortcuts",)}


@dataclass
class TheoremCase:
    theorem: str
    ring: str
    verdict: str
    evidence: dict = field(default_factory=dict)
    coverage: str = "exhaustive"

    def to_json(self):
        return {"theorem": self.theorem, "ring": self.ring, "verdict": self.verdict,
                "coverage": self.coverage, "evidence": self.evidence}


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


BASE_CORPUS = ([f"Zmod:{n}" for n in range(2, 17)] + ["Zmod:24", "Zmod:27", "Zmod:32"]
               + [f"GF:{q}" for q in (2, 3, 4, 5, 7, 8, 9)]
               + [f"Quot:GF:{p}[x]/({m})" for p in (2, 3) for m in ("x^2", "x^3", "x^2+1")])

# product factors: one representative per small isomorphism type
PRODUCT_FACTORS = ["Zmod:2", "Zmod:3", "Zmod:4", "GF:4", "Quot:GF:2[x]/(x^2)", "Zmod:5", "Zmod:8",
                   "Zmod:9", "Quot:GF:2[x]/(x^3)", "GF:8", "Quot:GF:3[x]/(x^2)", "Zmod:16"]

TABLE_RING = "Table:f2xy_square_zero.json"
PRODUCT_CAP = 64


def default_corpus() -> list[str]:
    specs = list(BASE_CORPUS)
    order = {s: make_ring(s).order for s in PRODUCT_FACTORS}
    for i, s in enumerate(PRODUCT_FACTORS):
        for t in PRODUCT_FACTORS[i:]:
            if order[s] * order[t] <= PRODUCT_CAP:
                specs.append(f"Prod:{s}*{t}")
    specs.append(TABLE_RING)
    return specs


def corpus_tags(R: FiniteRing) -> list[str]:
    """Tags recomputed from the ring itself."""
    tags = []
    if R.char == 2:
        tags.append("char-2")
    if is_reduced(R):
        tags.append("reduced")
    if C.is_bezout(R)[0]:
        tags.append("bezout")
    from .rings import is_local

    if is_local(R):
        tags.append("local")
    if getattr(R, "factors", None):
        tags.append("product")
    return tags


def resolve_corpus(name_or_list) -> list[str]:
    if isinstance(name_or_list, (list, tuple)):
        return list(name_or_list)
    if name_or_list == "default":
        return default_corpus()
    if name_or_list == "small":
        return [s for s in default_corpus() if make_ring(s).order <= 12]
    if name_or_list == "char2":
        return [s for s in default_corpus() if make_ring(s).char == 2]
    return [s.strip() for s in str(name_or_list).split(",") if s.strip()]


def resolve_theorems(spec) -> list[str]:
    if spec in (None, "all"):
        return list(THEOREMS)
    names = spec if isinstance(spec, (list, tuple)) else [s.strip() for s in spec.split(",")]
    out = []
    for nm in names:
        for t in ALIASES.get(nm, (nm,)):
            if t not in THEOREMS:
                raise ValueError(f"unknown theorem id {t!r}")
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# shared, memoized ring facts
# ---------------------------------------------------------------------------


def _memo(R, key, fn):
    cache = R.__dict__.setdefault("_lab_memo", {})
    if key not in cache:
        cache[key] = fn()
    return cache[key]


def _flag(R, name, cfg):
    """(value, counterexample, coverage) for a classifier flag."""
    def run():
        if name in ("bezout", "hermite", "pre_schreier"):
            v, w = {"bezout": C.is_bezout, "hermite": C.is_hermite, "pre_schreier": C.is_pre_schreier}[name](R)
            return v, w, EMPTY
        if name == "u2":
            v, w = U.is_U2_ring(R)
            return v, w, EMPTY
        if name in ("pi2", "e2", "se2", "all_wdl", "all_dl"):
            fn = {"pi2": C.is_pi2, "e2": C.is_e2, "se2": C.is_se2, "all_wdl": C.all_wdl, "all_dl": C.all_dl}[name]
            return fn(R, cfg)
        if name == "edr":
            return C.is_edr(R, cfg)
        if name in ("wsu2", "wsu2_prime"):
            return C.is_wsu2(R, strict=name == "wsu2_prime", cfg=cfg)
        if name == "wh21":
            return C.is_wh(R, 2, 1, cfg=cfg)
        if name in ("sr1", "ssr1", "asr1"):
            v, w = C.stable_range_flags(R)[name]
            return v, w, EMPTY
        raise KeyError(name)

    return _memo(R, ("flag", name, cfg.seed, cfg.budget, cfg.sample), run)


def _val(R, name, cfg):
    return _flag(R, name, cfg)[0]


def _cov(*covs):
    out = EMPTY
    for c in covs:
        out = out.merge(c)
    return out


def _enc(R, w):
    return C._enc(R, w)


def _is_domain(R):
    zd = zero_divisor_mask(R)
    return bool(zd[R.zero_idx] and zd.sum() == 1 and R.order > 1)


def _pi2_of_quotient(R, ideal_id, cfg):
    if ideal_id == R.full_id:
        return True, None, EMPTY  # zero ring: nothing to check
    if ideal_id == R.zero_ideal_id:
        return _flag(R, "pi2", cfg)
    Q = R.quotient_ring(ideal_id)
    return _flag(Q, "pi2", cfg)


def _ut_triples(R, cfg, label="ut3"):
    """Unimodular triples (a, b, c), i.e. unimodular upper-triangular matrices."""
    return tuples(R, 3, lambda a, b, c: R.join[R.join[R.pid[a], R.pid[b]], R.pid[c]] == R.full_id,
                  cfg.budget, cfg.sample, label, cfg.seed)


def _equivalence(R, name, values: dict, covs, extra=None):
    """VERIFIED when all statements agree, COUNTEREXAMPLE otherwise."""
    vals = {k: (v if isinstance(v, bool) else str(v)) for k, v in values.items()}
    cov = _cov(*covs)
    ev = {"statements": vals}
    if extra:
        ev.update(extra)
    if any(v is UNKNOWN for v in values.values()):
        return TheoremCase(name, R.spec, UNKNOWN_V, ev, str(cov))
    agree = len(set(values.values())) == 1
    return TheoremCase(name, R.spec, VERIFIED if agree else COUNTEREXAMPLE, ev, str(cov))


def _implication(R, name, hyp: bool, hyp_cov: Coverage, concl: bool, ev: dict, concl_cov=EMPTY,
                 failed="hypothesis"):
    cov = _cov(hyp_cov, concl_cov)
    if hyp is UNKNOWN or concl is UNKNOWN:
        return TheoremCase(name, R.spec, UNKNOWN_V, ev, str(cov))
    if not hyp:
        ev = dict(ev, failed_hypothesis=failed)
        return TheoremCase(name, R.spec, INAPPLICABLE, ev, str(cov))
    if concl:
        return TheoremCase(name, R.spec, VERIFIED, ev, str(cov))
    # a sampled hypothesis cannot certify a counterexample
    verdict = COUNTEREXAMPLE if hyp_cov.exhaustive else UNKNOWN_V
    return TheoremCase(name, R.spec, verdict, ev, str(cov))


def _inapplicable(name, R, why):
    return TheoremCase(name, R.spec, INAPPLICABLE, {"failed_hypothesis": why}, "exhaustive")


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------


def check_TH1(R, cfg):
    if not _val(R, "hermite", cfg):
        return _inapplicable("TH1", R, "not Hermite")
    edr, _, c1 = _flag(R, "edr", cfg)
    se2, _, c2 = _flag(R, "se2", cfg)
    e2, _, c3 = _flag(R, "e2", cfg)
    quot = True
    covs = [c1, c2, c3]
    for iid in sorted({int(i) for i in R.pid}):
        v, _, c = _pi2_of_quotient(R, iid, cfg)
        covs.append(c)
        if not v:
            quot = False
            break
    dl, _, c5 = _flag(R, "all_dl", cfg)
    pi2, _, c6 = _flag(R, "pi2", cfg)
    covs += [c5, c6]
    values = {"1_edr": edr, "2_se2": se2, "3_e2": e2, "4_quotients_pi2": quot, "5_dl_and_pi2": bool(dl and pi2)}
    # statement (6) is always evaluated; it joins the equivalence only when
    # every zero-determinant matrix is non-full
    cols, cnf = tuples(R, 4, lambda a, b, c, d: L._det(R, a, b, c, d) == R.zero_idx,
                       cfg.budget, cfg.sample, "zd", cfg.seed)
    all_nf = bool(L.non_full_batch(R, *cols).all())
    wdl, _, c7 = _flag(R, "all_wdl", cfg)
    covs += [cnf, c7]
    extra = {"zero_det_all_non_full": all_nf, "6_all_wdl": wdl if isinstance(wdl, bool) else str(wdl)}
    if all_nf:
        values["6_all_wdl"] = wdl
    return _equivalence(R, "TH1", values, covs, extra)


def _wdl_triples(R, cfg):
    def run():
        (a, b, c), cov = _ut_triples(R, cfg)
        ok = L.wdl_formula_batch(R, a, b, c)
        bad = np.flatnonzero(~ok)
        cex = None if not len(bad) else (int(a[bad[0]]), int(b[bad[0]]), int(c[bad[0]]))
        return bool(ok.all()), cex, cov
    return _memo(R, ("wdl_triples", cfg.seed), run)


def _ut_property(R, prop, cfg):
    def run():
        (a, b, c), cov = _ut_triples(R, cfg)
        z = np.full_like(a, R.zero_idx)
        ok = L.KERNELS[prop](R, a, b, z, c)
        bad = np.flatnonzero(~ok)
        cex = None if not len(bad) else C._mat(R, int(a[bad[0]]), int(b[bad[0]]), R.zero_idx, int(c[bad[0]]))
        return bool(ok.all()), cex, cov
    return _memo(R, ("ut", prop, cfg.seed), run)


def check_TH2_cond1(R, cfg):
    ps = _val(R, "pre_schreier", cfg)
    eq, cex, cov = _wdl_triples(R, cfg)
    u2, ucex, _ = _flag(R, "u2", cfg)
    ev = {"pre_schreier": ps, "equation_on_Um3": eq, "u2": u2, "u2_counterexample": _enc(R, ucex)}
    why = "not pre-Schreier" if not ps else f"equation fails at {_enc(R, cex)}"
    return _implication(R, "TH2-cond1", bool(ps and eq), cov, u2, ev, failed=why)


def check_TH2_cond2(R, cfg):
    pi2, _, c1 = _flag(R, "pi2", cfg)
    se, cex, c2 = _ut_property(R, "se", cfg)
    u2 = _val(R, "u2", cfg)
    ev = {"pi2": pi2, "upper_triangular_simply_extendable": se, "u2": u2}
    why = "not Pi2" if not pi2 else f"{_enc(R, cex)} not simply extendable"
    return _implication(R, "TH2-cond2", bool(pi2 and se), _cov(c1, c2), u2, ev, failed=why)


def check_TH2_cond3(R, cfg):
    if not _is_domain(R):
        return _inapplicable("TH2-cond3", R, "not an integral domain")
    e, cex, cov = _ut_property(R, "e", cfg)
    u2 = _val(R, "u2", cfg)
    ev = {"domain": True, "upper_triangular_extendable": e, "u2": u2}
    return _implication(R, "TH2-cond3", e, cov, u2, ev, failed=f"{_enc(R, cex)} not extendable")


def check_TH3(R, cfg):
    if not _val(R, "hermite", cfg):
        return _inapplicable("TH3", R, "not Hermite")
    edr, _, c1 = _flag(R, "edr", cfg)
    S = R if is_reduced(R) else quotient_by_ideal(R, nilradical(R))[0]
    ps = _val(S, "pre_schreier", cfg)
    wdl, _, c2 = _flag(R, "all_wdl", cfg)
    u2 = _val(R, "u2", cfg)
    fc = U.th3_factor_check(R)
    values = {"1_edr": edr, "2_reduced_pre_schreier_and_wdl": bool(ps and wdl), "3_u2": u2,
              "4_factorization": fc["general"][0], "5_factorization_variant": fc["variant"][0]}
    extra = {"factor_counterexamples": {k: _enc(R, v[1]) for k, v in fc.items()}}
    return _equivalence(R, "TH3", values, [c1, c2], extra)


def check_TH4(R, cfg):
    if not _val(R, "hermite", cfg):
        return _inapplicable("TH4", R, "not Hermite")
    if not is_reduced(R):
        return _inapplicable("TH4", R, "nilradical is nonzero")
    edr, _, c1 = _flag(R, "edr", cfg)
    ann_ok, covs = True, [c1]
    seen = set()
    for a in range(R.order):
        iid = annihilator(R, a).id
        if iid in seen:
            continue
        seen.add(iid)
        v, _, c = _pi2_of_quotient(R, iid, cfg)
        covs.append(c)
        ann_ok &= bool(v)
    wdl, _, c2 = _flag(R, "all_wdl", cfg)
    eq, _, c3 = _wdl_triples(R, cfg)
    covs += [c2, c3]
    values = {"edr": edr, "annihilator_quotients_pi2_and_wdl": bool(ann_ok and wdl),
              "annihilator_quotients_pi2_and_equation": bool(ann_ok and eq)}
    return _equivalence(R, "TH4", values, covs)


def _all_squares(R):
    sq = np.zeros(R.order, dtype=bool)
    sq[R.mul[np.arange(R.order), np.arange(R.order)]] = True
    return bool(sq.all())


def check_TH5(R, cfg):
    wsu2, _, cov = _flag(R, "wsu2", cfg)
    coker, cex = U.coker_boolean_everywhere(R)
    ev = {"wsu2": wsu2, "coker_boolean": coker, "coker_counterexample": _enc(R, cex)}
    concl = coker
    squares = _all_squares(R)
    ev["all_squares"] = squares
    if squares:
        u2 = _val(R, "u2", cfg)
        ev["u2"] = u2
        concl = concl and u2
        if _val(R, "hermite", cfg):
            edr, _, c = _flag(R, "edr", cfg)
            ev["edr"] = edr
            cov = cov.merge(c)
            concl = concl and edr
    return _implication(R, "TH5", wsu2, cov, concl, ev, failed="not WSU2")


def _sym_zero_det(R):
    a, b, c = grid(R.order, 3)
    keep = (R.mul[a, c] == R.mul[b, b]) & (R.join[R.join[R.pid[a], R.pid[b]], R.pid[c]] == R.full_id)
    return a[keep], b[keep], c[keep]


def _pell_unit(R, a, c):
    """Exists (e, f) with a e^2 - c f^2 a unit, per (a, c) pair."""
    sq = np.unique(R.mul[np.arange(R.order), np.arange(R.order)])
    out = np.zeros(len(a), dtype=bool)
    for i, (ai, ci) in enumerate(zip(a, c)):
        v = R.sub[R.mul[ai, sq][:, None], R.mul[ci, sq][None, :]]
        out[i] = R.unit_mask[v].any()
    return out


def check_CR1(R, cfg):
    a, b, c = _sym_zero_det(R)
    se = L.simply_extendable_batch(R, a, b, b, c)
    pell = _pell_unit(R, a, c)
    ev = {"matrices": int(len(a)), "char": int(R.char)}
    bad = np.flatnonzero(pell & ~se)
    if len(bad):
        i = bad[0]
        ev["forward_counterexample"] = C._mat(R, int(a[i]), int(b[i]), int(b[i]), int(c[i])).tolist()
        return TheoremCase("CR1", R.spec, COUNTEREXAMPLE, ev)
    if R.char == 2:
        bad = np.flatnonzero(se & ~pell)
        ev["converse_checked"] = True
        if len(bad):
            i = bad[0]
            ev["converse_counterexample"] = C._mat(R, int(a[i]), int(b[i]), int(b[i]), int(c[i])).tolist()
            return TheoremCase("CR1", R.spec, COUNTEREXAMPLE, ev)
        if is_reduced(R) and _val(R, "hermite", cfg):
            nzd = ~zero_divisor_mask(R)
            bad = np.flatnonzero(nzd[b] & ~se)
            ev["part2_checked"] = True
            if len(bad):
                i = bad[0]
                ev["part2_counterexample"] = C._mat(R, int(a[i]), int(b[i]), int(b[i]), int(c[i])).tolist()
                return TheoremCase("CR1", R.spec, COUNTEREXAMPLE, ev)
    else:
        ev["converse_checked"] = False
    return TheoremCase("CR1", R.spec, VERIFIED, ev)


def _cr2_condition(R):
    """For all unimodular (a, b, c) some (e, f) makes (ae^2 - cf^2, ac - b^2)
    unimodular.  The attainable ideals R(ae^2 - cf^2) depend on (a, c) only."""
    n = R.order
    sq = np.unique(R.mul[np.arange(n), np.arange(n)])
    full_row = R.join == R.full_id
    a, b, c = grid(n, 3)
    um = R.join[R.join[R.pid[a], R.pid[b]], R.pid[c]] == R.full_id
    a, b, c = a[um], b[um], c[um]
    reach = np.zeros((n * n, R.num_ideals), dtype=bool)
    for ai in range(n):
        for ci in range(n):
            v = R.sub[R.mul[ai, sq][:, None], R.mul[ci, sq][None, :]]
            reach[ai * n + ci, np.unique(R.pid[v])] = True
    D = R.sub[R.mul[a, c], R.mul[b, b]]
    ok = (reach[a * n + c] & full_row[R.pid[D]]).any(axis=1)
    bad = np.flatnonzero(~ok)
    return bool(ok.all()), (None if not len(bad) else (int(a[bad[0]]), int(b[bad[0]]), int(c[bad[0]])))


def check_CR2(R, cfg):
    herm = _val(R, "hermite", cfg)
    wsu2, _, cov = _flag(R, "wsu2", cfg)
    if not herm:
        return _inapplicable("CR2", R, "not Hermite")
    if wsu2 is UNKNOWN:
        return TheoremCase("CR2", R.spec, UNKNOWN_V, {}, str(cov))
    if not wsu2:
        return TheoremCase("CR2", R.spec, INAPPLICABLE, {"failed_hypothesis": "not WSU2"}, str(cov))
    cond, cex = _cr2_condition(R)
    edr, _, c2 = _flag(R, "edr", cfg)
    ev = {"pell_condition": cond, "edr": edr, "condition_counterexample": _enc(R, cex), "char": int(R.char)}
    cov = cov.merge(c2)
    ok = (not cond) or edr
    if R.char == 2:
        ok = ok and (cond == edr)
        ev["converse_checked"] = True
    return TheoremCase("CR2", R.spec, VERIFIED if ok else COUNTEREXAMPLE, ev, str(cov))


def _cr3_field_pred(R, a, b, s, e, f):
    um = R.um2
    k = R.sub_(R.sub_(R.one_idx, R.mul_(b, s)), a)
    return bool(um[e, f] and um[a, e] and um[R.add_(R.mul_(b, e), R.mul_(a, f)), k])


def _field_normalize(R, e, f):
    """Scale a nonzero pair by a unit; over a field this is dividing by the gcd."""
    if e != R.zero_idx:
        return R.one_idx, R.mul_(f, int(R.inverse[e]))
    if f != R.zero_idx:
        return R.zero_idx, R.one_idx
    return e, f


def check_CR3_shortcuts(R, cfg):
    if isinstance(R, IntegerProfile):
        return _cr3_integers(R, cfg)
    if not _is_domain(R):
        return _inapplicable("CR3-shortcuts", R, "not a domain")
    n = R.order
    um = R.um2
    om = R.sub[R.one_idx]
    used = {"(s,1)": 0, "(1,0)": 0, "(1-a,q+b)": 0}
    for a in range(n):
        for b in range(n):
            for s in range(n):
                k = R.sub_(om[R.mul_(b, s)], a)
                if um[a, s]:
                    used["(s,1)"] += 1
                    if not _cr3_field_pred(R, a, b, s, s, R.one_idx):
                        return TheoremCase("CR3-shortcuts", R.spec, COUNTEREXAMPLE, {"shortcut": "(s,1)", "abs": _enc(R, (a, b, s))})
                if um[om[a], b]:
                    used["(1,0)"] += 1
                    if not _cr3_field_pred(R, a, b, s, R.one_idx, R.zero_idx):
                        return TheoremCase("CR3-shortcuts", R.spec, COUNTEREXAMPLE, {"shortcut": "(1,0)", "abs": _enc(R, (a, b, s))})
                for q in range(n):
                    if um[R.add_(b, R.mul_(a, q)), k]:
                        used["(1-a,q+b)"] += 1
                        e, f = _field_normalize(R, int(om[a]), R.add_(q, b))
                        if e == f == R.zero_idx:
                            # a = 1 and q = -b: the pair degenerates, but then
                            # b is a unit and the (1, 0) choice applies
                            ok = bool(um[om[a], b])
                        else:
                            ok = _cr3_field_pred(R, a, b, s, e, f)
                        if not ok:
                            return TheoremCase("CR3-shortcuts", R.spec, COUNTEREXAMPLE,
                                               {"shortcut": "(1-a,q+b)", "absq": _enc(R, (a, b, s, q))})
                # statement (3) itself must hold in a field
                if not any(_cr3_field_pred(R, a, b, s, e, f) for e in range(n) for f in range(n)):
                    return TheoremCase("CR3-shortcuts", R.spec, COUNTEREXAMPLE, {"statement3_fails": _enc(R, (a, b, s))})
    return TheoremCase("CR3-shortcuts", R.spec, VERIFIED, {"shortcut_uses": used})


def _cr3_integers(R, cfg, count=200, coeff=25):
    rng = rng_for("cr3", R.spec, seed=cfg.seed)
    unknown = []
    routes: dict = {}
    largest = 0
    for a, b, s in rng.integers(-coeff, coeff + 1, size=(count, 3)).tolist():
        w = cr3_witness(a, b, s, bound=R.bound)
        if w is UNKNOWN:
            unknown.append([a, b, s])
            continue
        routes[w["route"]] = routes.get(w["route"], 0) + 1
        largest = max(largest, abs(w["e"]), abs(w["f"]))
    ev = {"triples": count, "routes": dict(sorted(routes.items())), "unknown": unknown, "max_abs_e_f": largest}
    return TheoremCase("CR3-shortcuts", R.spec, VERIFIED if not unknown else UNKNOWN_V, ev, f"sampled:{count}")


def _companion_sample(R, cfg):
    small = dict(budget=min(cfg.budget, 4**4), sample=40)
    return tuples(R, 4, lambda a, b, c, d: L.unimodular4(R, a, b, c, d), small["budget"], small["sample"],
                  "companion", cfg.seed)


COMPANION_CAP = 96


def check_P1(R, cfg):
    cols, cov = _companion_sample(R, cfg)
    props = ["se", "e", "dl"] + (["wdl"] if is_reduced(R) else [])
    checked = 0
    rng = rng_for("companions", R.spec, seed=cfg.seed)
    for i in range(len(cols[0])):
        A = C._mat(R, *(int(c[i]) for c in cols))
        comps = list({tuple(map(tuple, B.tolist())): B for B in L.companion_test_matrices(A)}.values())
        if not comps:
            continue
        if len(comps) > COMPANION_CAP:
            comps = [comps[j] for j in sorted(rng.choice(len(comps), COMPANION_CAP, replace=False))]
            cov = Coverage(False, cov.count)
        arr = [np.array([B[0, 0] for B in comps]), np.array([B[0, 1] for B in comps]),
               np.zeros(len(comps), dtype=np.int64) + R.zero_idx, np.array([B[1, 1] for B in comps])]
        for p in props:
            kern = L.KERNELS[p]
            comp_ok = kern(R, *arr)
            a_ok = bool(kern(R, *[np.array([x]) for x in L._abcd(A)])[0])
            checked += len(comps)
            if comp_ok.any() and not a_ok:
                j = int(np.flatnonzero(comp_ok)[0])
                return TheoremCase("P1", R.spec, COUNTEREXAMPLE,
                                   {"property": L.PROP_NAMES[p], "A": A.tolist(), "companion": comps[j].tolist()}, str(cov))
    return TheoremCase("P1", R.spec, VERIFIED, {"properties": [L.PROP_NAMES[p] for p in props],
                                                 "companion_checks": checked}, str(cov))


def check_P2(R, cfg):
    props = ["se", "e", "dl"] + (["wdl"] if is_reduced(R) else [])
    ev = {}
    cov = EMPTY
    for zero_det in (False, True):
        for p in props:
            r = L.prop2_scan(R, p, zero_det=zero_det, sample=cfg.sample, seed=cfg.seed)
            key = L.PROP_NAMES[p] + ("_zero_det" if zero_det else "")
            ev[key] = {"via_G": r["via_G"], "all_upper_triangular": r["brute_force"]}
            cov = cov.merge(Coverage(r["exhaustive"], 0))
            if not r["agree"]:
                # a failing upper-triangular matrix is definite only when G is exhaustive
                definite = r["exhaustive"] or not r["via_G"]
                return TheoremCase("P2", R.spec, COUNTEREXAMPLE if definite else UNKNOWN_V, ev,
                                   "exhaustive" if r["exhaustive"] else "sampled")
    return TheoremCase("P2", R.spec, VERIFIED, ev, "exhaustive" if cov.exhaustive else "sampled")


def check_L1(R, cfg):
    d, e = grid(R.order, 2)
    keep = R.pid[d] == R.pid[e]
    count = 0
    for di, ei in zip(d[keep], e[keep]):
        try:
            lemma1_matrix(R, Elem(R, int(di)), Elem(R, int(ei)))  # asserts SL_2 and the identity
        except AssertionError:
            return TheoremCase("L1", R.spec, COUNTEREXAMPLE, {"d": R.format(int(di)), "e": R.format(int(ei))})
        count += 1
    return TheoremCase("L1", R.spec, VERIFIED, {"pairs": count})


def _lifts_unimodular_pairs(R, iid):
    """Um(R^2) -> Um((R/I)^2) is onto."""
    cos = R.coset_reps(iid)
    p, q = grid(R.order, 2)
    target = R.join[R.join[R.pid[p], R.pid[q]], iid] == R.full_id
    need = np.unique(cos[p[target]] * R.order + cos[q[target]])
    s, t = L.unimodular_pairs(R)
    have = np.unique(cos[s] * R.order + cos[t])
    return bool(np.isin(need, have).all())


def check_L2(R, cfg):
    if not is_reduced(R):
        return _inapplicable("L2", R, "nilradical is nonzero")
    sr1 = _val(R, "sr1", cfg)
    cols, cov = C.unimodular_matrices(R, cfg=cfg, label="L2")
    results = {}
    seen = set()
    for e in range(R.order):
        iid = annihilator(R, e).id
        if iid == R.full_id or (iid, int(R.pid[e])) in seen:
            continue
        seen.add((iid, int(R.pid[e])))
        if not (_lifts_unimodular_pairs(R, iid) and sr1):
            results[R.format(e)] = "hypothesis fails"
            continue
        m = [R.mul[e, c] for c in cols]
        zd = L._det(R, *m) == R.zero_idx
        lhs = bool(L.diagonal_reduction_batch(R, *[x[zd] for x in m]).all())
        rhs, _, c = _pi2_of_quotient(R, iid, cfg)
        cov = cov.merge(c)
        results[R.format(e)] = {"diagonal_reduction": lhs, "quotient_pi2": rhs}
        if lhs != rhs:
            return TheoremCase("L2", R.spec, COUNTEREXAMPLE if cov.exhaustive else UNKNOWN_V,
                               {"per_e": results}, str(cov))
    return TheoremCase("L2", R.spec, VERIFIED, {"per_e": results}, str(cov))


def check_EX3(R, cfg):
    asr = _val(R, "asr1", cfg)
    u2 = _val(R, "u2", cfg)
    return _implication(R, "EX3", asr, EMPTY, u2, {"asr1": asr, "u2": u2}, failed="asr1 fails")


def check_EX4(R, cfg):
    cols, cov = tuples(R, 4, lambda a, b, c, d: L._det(R, a, b, c, d) == R.zero_idx,
                       cfg.budget, cfg.sample, "zd", cfg.seed)
    ok = L.non_full_batch(R, *cols)
    allnf = bool(ok.all())
    ps, cex = C.is_pre_schreier(R)
    ev = {"zero_det_all_non_full": allnf, "pre_schreier": ps, "pre_schreier_counterexample": _enc(R, cex)}
    if not allnf:
        ev["full_zero_det"] = C._first_failure(R, cols, ok).tolist()
    return _implication(R, "EX4", allnf, cov, ps, ev, failed="a zero-determinant matrix is full")


def check_EX5(R, cfg):
    if not is_reduced(R):
        return _inapplicable("EX5", R, "nilradical is nonzero")
    cols, cov = tuples(R, 4, lambda a, b, c, d: L._det(R, a, b, c, d) == R.zero_idx,
                       cfg.budget, cfg.sample, "zd", cfg.seed)
    dr = L.diagonal_reduction_batch(R, *cols)
    nf = L.non_full_batch(R, *cols)
    bad = np.flatnonzero(dr & ~nf)
    ev = {"matrices": int(len(cols[0])), "reducible": int(dr.sum())}
    if len(bad):
        ev["counterexample"] = C._mat(R, *(int(c[bad[0]]) for c in cols)).tolist()
        return TheoremCase("EX5", R.spec, COUNTEREXAMPLE, ev, str(cov))
    return TheoremCase("EX5", R.spec, VERIFIED, ev, str(cov))


def check_EX10(R, cfg):
    count, cex = U.ex10_scan(R)
    ev = {"admissible_triples": count}
    if cex is not None:
        ev["counterexample_acu"] = _enc(R, cex)
        return TheoremCase("EX10", R.spec, COUNTEREXAMPLE, ev)
    return TheoremCase("EX10", R.spec, VERIFIED, ev)


def _c6_identity(R, cfg):
    """M = [[cs, -b'us - al], [a'us - bl, w]] makes M [[ac, u], [0, bc]]
    symmetric with det = csw + (a'us - bl)(b'us + al)."""
    n = R.order
    m, ad, sb = R.mul_, R.add_, R.sub_
    (a, b, c, u), cov = tuples(R, 4, lambda a, b, c, u: R.um2[a, b] & R.um2[c, u], 6**4, 60, "c6", cfg.seed)
    rng = rng_for("c6-slw", R.spec, seed=cfg.seed)
    for i in range(len(a)):
        ai, bi, ci, ui = int(a[i]), int(b[i]), int(c[i]), int(u[i])
        ap, bp = combination_witness(R, [ai, bi])
        for s, l, w in rng.integers(0, n, size=(8, 3)).tolist():
            z = sb(m(m(ap, ui), s), m(bi, l))
            y = R.neg_(ad(m(m(bp, ui), s), m(ai, l)))
            M = Mat(R, [[m(ci, s), y], [z, w]], raw=True)
            A = Mat(R, [[m(ai, ci), ui], [R.zero_idx, m(bi, ci)]], raw=True)
            det = ad(m(m(ci, s), w), m(z, ad(m(m(bp, ui), s), m(ai, l))))
            if not (M @ A).is_symmetric() or M.det() != det:
                return False, {"abcu": _enc(R, (ai, bi, ci, ui)), "slw": _enc(R, (s, l, w))}, cov
    return True, None, cov


def _c6_equation_side(R, strict):
    """For all ((a,b),(c,u)) unimodular with abc != 0: some (s,l,w) gives a
    unit determinant (equal to 1 when ``strict``)."""
    n = R.order
    s, l, w = grid(n, 3)
    for a in range(n):
        for b in np.flatnonzero(R.um2[a]):
            b = int(b)
            ap, bp = combination_witness(R, [a, b])
            for c in range(n):
                if R.mul_(R.mul_(a, b), c) == R.zero_idx:
                    continue
                for u in np.flatnonzero(R.um2[c]):
                    us = R.mul[int(u), s]
                    z = R.sub[R.mul[ap, us], R.mul[b, l]]
                    y2 = R.add[R.mul[bp, us], R.mul[a, l]]
                    det = R.add[R.mul[R.mul[c, s], w], R.mul[z, y2]]
                    ok = (det == R.one_idx).any() if strict else R.unit_mask[det].any()
                    if not ok:
                        return False, (a, b, c, int(u))
    return True, None


def check_C6(R, cfg):
    ident, bad, cov = _c6_identity(R, cfg)
    ev = {"symmetrization_identity": ident}
    if not ident:
        ev["identity_counterexample"] = bad
        return TheoremCase("C6-sym-equation", R.spec, COUNTEREXAMPLE, ev, str(cov))
    if _is_domain(R):
        for strict in (False, True):
            name = "wsu2_prime" if strict else "wsu2"
            ws, _, c = _flag(R, name, cfg)
            eq, cex = _c6_equation_side(R, strict)
            ev[name] = {"classifier": ws, "equation": eq, "equation_counterexample": _enc(R, cex)}
            cov = cov.merge(c)
            if ws != eq:
                return TheoremCase("C6-sym-equation", R.spec, COUNTEREXAMPLE if c.exhaustive else UNKNOWN_V, ev, str(cov))
    else:
        ev["equivalence"] = "not a domain; identity only"
    return TheoremCase("C6-sym-equation", R.spec, VERIFIED, ev, str(cov))


def check_EX11(R, cfg):
    ssr = _val(R, "ssr1", cfg)
    if not ssr:
        return _inapplicable("EX11", R, "ssr1 fails")
    n = R.order
    a, c, u = grid(n, 3)
    keep = R.um2[c, u]
    a, c, u = a[keep], c[keep], u[keep]
    # w with u^2 + cw a unit
    vals = R.add[R.mul[u, u][:, None], R.mul[c[:, None], np.arange(n)[None]]]
    has = R.unit_mask[vals]
    if not has.all():
        i = np.flatnonzero(~has.all(axis=1) & ~has.any(axis=1))
        if len(i):
            return TheoremCase("EX11", R.spec, COUNTEREXAMPLE, {"no_w_for_acu": _enc(R, (int(a[i[0]]), int(c[i[0]]), int(u[i[0]])))})
    w = has.argmax(axis=1)
    om = R.sub[R.one_idx]
    ac, bc = R.mul[a, c], R.mul[om[a], c]
    # M A with M = [[c, -u], [u, w]] and A = [[ac, u], [0, bc]]
    m12 = R.sub[R.mul[c, u], R.mul[u, bc]]
    m21 = R.mul[u, ac]
    det = R.add[R.mul[c, w], R.mul[u, u]]
    ok = (m12 == m21) & R.unit_mask[det]
    if not ok.all():
        i = int(np.flatnonzero(~ok)[0])
        return TheoremCase("EX11", R.spec, COUNTEREXAMPLE, {"acu": _enc(R, (int(a[i]), int(c[i]), int(u[i])))})
    return TheoremCase("EX11", R.spec, VERIFIED, {"triples": int(len(a))})


def check_WH21(R, cfg):
    wh, _, c1 = _flag(R, "wh21", cfg)
    ws, _, c2 = _flag(R, "wsu2", cfg)
    return _equivalence(R, "WH21-WSU2", {"wh21": wh, "wsu2": ws}, [c1, c2])


CHECKS = {
    "TH1": check_TH1, "TH2-cond1": check_TH2_cond1, "TH2-cond2": check_TH2_cond2, "TH2-cond3": check_TH2_cond3,
    "TH3": check_TH3, "TH4": check_TH4, "TH5": check_TH5, "CR1": check_CR1, "CR2": check_CR2,
    "CR3-shortcuts": check_CR3_shortcuts, "P1": check_P1, "P2": check_P2, "L1": check_L1, "L2": check_L2,
    "EX3": check_EX3, "EX4": check_EX4, "EX5": check_EX5, "EX10": check_EX10, "C6-sym-equation": check_C6,
    "EX11": check_EX11, "WH21-WSU2": check_WH21,
}


def verify(theorem: str, R, cfg: C.ScanConfig = C.DEFAULT) -> TheoremCase:
    if isinstance(R, str):
        R = make_ring(R)
    if theorem not in CHECKS:
        raise ValueError(f"unknown theorem id {theorem!r}")
    if not isinstance(R, FiniteRing) and theorem != "CR3-shortcuts":
        return _inapplicable(theorem, R, "needs a finite ring")
    return CHECKS[theorem](R, cfg)


# ---------------------------------------------------------------------------
# sweep and hunt
# ---------------------------------------------------------------------------


def _ring_cell(args):
    spec, theorems, cfg = args
    R = make_ring(spec)
    return [verify(t, R, cfg).to_json() for t in theorems]


def sweep(corpus="default", theorems="all", cfg: C.ScanConfig = C.DEFAULT, threads: int = 1):
    """Run every (ring, theorem) cell; rings are independent work items and
    results are collected in corpus order, so output does not depend on
    ``threads``."""
    specs = resolve_corpus(corpus)
    ths = resolve_theorems(theorems)
    jobs = [(s, ths, cfg) for s in specs]
    if threads > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(threads) as pool:
            rows = pool.map(_ring_cell, jobs, chunksize=1)
    else:
        rows = [_ring_cell(j) for j in jobs]
    cases = [c for row in rows for c in row]
    summary = {v: 0 for v in (VERIFIED, COUNTEREXAMPLE, UNKNOWN_V, INAPPLICABLE)}
    for c in cases:
        summary[c["verdict"]] += 1
    return {"corpus": specs, "theorems": ths, "seed": cfg.seed, "summary": summary, "cases": cases}


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False)


HUNT_FLAGS = ("bezout", "hermite", "pre_schreier", "pi2", "e2", "se2", "edr", "u2", "wsu2", "wsu2_prime",
              "sr1", "ssr1", "asr1", "wh21", "reduced", "local", "char2", "domain")


def _ring_flag(R, name, cfg):
    if name == "reduced":
        return is_reduced(R)
    if name == "local":
        from .rings import is_local

        return is_local(R)
    if name == "char2":
        return R.char == 2
    if name == "domain":
        return _is_domain(R)
    return _val(R, name, cfg)


def parse_predicate(text: str):
    """Conjunction of (possibly negated) flag names: ``"bezout & !hermite"``.
    The matrix-level form ``"zero-det unimodular & !non_full"`` is also
    accepted."""
    t = text.replace("∧", "&").replace("¬", "!").replace(" and ", "&").replace(" not ", "!")
    parts = [p.strip() for p in t.split("&") if p.strip()]
    lits = []
    for p in parts:
        neg = p.startswith("!") or p.startswith("~")
        name = p.lstrip("!~").strip().replace("-", "_").replace(" ", "_")
        lits.append((name, not neg))
    return lits


MATRIX_LITERALS = {"zero_det_unimodular", "zero_det", "unimodular", "non_full", "extendable", "simply_extendable",
                   "det_liftable", "weakly_det_liftable", "diagonal_reduction"}


def _matrix_hunt(R, lits, cfg):
    cols, cov = tuples(R, 4, None, cfg.budget, cfg.sample, "hunt", cfg.seed)
    mask = np.ones(len(cols[0]), dtype=bool)
    um = L.unimodular4(R, *cols)
    zd = L._det(R, *cols) == R.zero_idx
    for name, want in lits:
        if name == "zero_det_unimodular":
            v = um & zd
        elif name == "zero_det":
            v = zd
        elif name == "unimodular":
            v = um
        elif name == "non_full":
            v = L.non_full_batch(R, *cols)
        elif name == "diagonal_reduction":
            v = L.diagonal_reduction_batch(R, *cols)
        else:
            kern = {"extendable": L.extendable_batch, "simply_extendable": L.simply_extendable_batch,
                    "det_liftable": L.det_liftable_batch, "weakly_det_liftable": L.weakly_det_liftable_batch}[name]
            v = np.zeros(len(mask), dtype=bool)
            v[um] = kern(R, *[c[um] for c in cols])
        mask &= v if want else ~v
    hit = np.flatnonzero(mask)
    if len(hit):
        return C._mat(R, *(int(c[hit[0]]) for c in cols)), cov
    return None, cov


def hunt(predicate: str, corpus="default", cfg: C.ScanConfig = C.DEFAULT):
    """First ring (in corpus order) satisfying the predicate, with witness."""
    lits = parse_predicate(predicate)
    matrix = any(n in MATRIX_LITERALS for n, _ in lits)
    for n, _ in lits:
        if n not in MATRIX_LITERALS and n not in HUNT_FLAGS:
            raise ValueError(f"unknown predicate literal {n!r}")
    for spec in resolve_corpus(corpus):
        R = make_ring(spec)
        if matrix:
            ring_lits = [(n, w) for n, w in lits if n not in MATRIX_LITERALS]
            if not all(_ring_flag(R, n, cfg) == w for n, w in ring_lits):
                continue
            M, cov = _matrix_hunt(R, [(n, w) for n, w in lits if n in MATRIX_LITERALS], cfg)
            if M is not None:
                return {"ring": spec, "matrix": M.tolist(), "coverage": str(cov)}
        else:
            vals = {}
            ok = True
            for n, w in lits:
                v = _ring_flag(R, n, cfg)
                vals[n] = v if isinstance(v, bool) else str(v)
                if v is UNKNOWN or v != w:
                    ok = False
                    break
            if ok:
                ev = {}
                for n, _ in lits:
                    if n in ("bezout", "hermite", "pre_schreier", "u2", "sr1", "ssr1", "asr1"):
                        ev[n] = _enc(R, _flag(R, n, cfg)[1])
                return {"ring": spec, "flags": vals, "witnesses": ev}
    return None
