import pytest

from edrlab import lab
from edrlab.classify import ScanConfig
from edrlab.rings import make_ring

TABLE = "Table:f2xy_square_zero.json"


def test_default_corpus_constructs():
    specs = lab.default_corpus()
    assert len(specs) == len(set(specs))
    for s in specs:
        R = make_ring(s)
        assert R.order <= lab.PRODUCT_CAP
    assert TABLE in specs
    assert {"Zmod:24", "Zmod:27", "Zmod:32", "GF:9", "Quot:GF:3[x]/(x^2+1)"} <= set(specs)


def test_tags_are_recomputed():
    assert "char-2" in lab.corpus_tags(make_ring("GF:8"))
    assert "reduced" not in lab.corpus_tags(make_ring("Zmod:4"))
    assert "bezout" not in lab.corpus_tags(make_ring(TABLE))
    assert "product" in lab.corpus_tags(make_ring("Prod:Zmod:2*Zmod:3"))


def test_theorem_resolution():
    assert lab.resolve_theorems("TH2") == ["TH2-cond1", "TH2-cond2", "TH2-cond3"]
    assert lab.resolve_theorems("all") == list(lab.THEOREMS)
    with pytest.raises(ValueError):
        lab.resolve_theorems("TH9")


def test_th1_on_zmod12():
    case = lab.verify("TH1", "Zmod:12")
    assert case.verdict == lab.VERIFIED
    stmts = dict(case.evidence["statements"], **{"6_all_wdl": case.evidence["6_all_wdl"]})
    assert len(stmts) == 6 and all(v is True for v in stmts.values())


def test_table_ring_inapplicable():
    case = lab.verify("TH1", TABLE)
    assert case.verdict == lab.INAPPLICABLE
    assert "Hermite" in case.evidence["failed_hypothesis"]


def test_cr1_converse_char2():
    case = lab.verify("CR1", "GF:2")
    assert case.verdict == lab.VERIFIED and case.evidence["converse_checked"]


def test_th5_on_char2_field():
    assert lab.verify("TH5", "GF:4").verdict == lab.VERIFIED


@pytest.mark.parametrize("theorem", lab.THEOREMS)
def test_every_theorem_on_small_rings(theorem):
    for spec in ("Zmod:6", "Zmod:8", "GF:4", TABLE):
        case = lab.verify(theorem, spec)
        assert case.verdict in (lab.VERIFIED, lab.INAPPLICABLE), case.to_json()


def test_cr3_on_integers():
    case = lab.verify("CR3-shortcuts", "Int:H=30")
    assert case.verdict == lab.VERIFIED and not case.evidence["unknown"]


def test_counterexample_is_reported():
    # the verdict rule on hand-made inputs
    R = make_ring("Zmod:6")
    case = lab._implication(R, "demo", True, lab.EMPTY, False, {})
    assert case.verdict == lab.COUNTEREXAMPLE
    case = lab._implication(R, "demo", False, lab.EMPTY, False, {}, failed="h")
    assert case.verdict == lab.INAPPLICABLE and case.evidence["failed_hypothesis"] == "h"


def test_sweep_small_is_clean_and_ordered():
    out = lab.sweep(["Zmod:6", "GF:4"], ["TH1", "EX10"])
    assert [(c["ring"], c["theorem"]) for c in out["cases"]] == [
        ("Zmod:6", "TH1"), ("Zmod:6", "EX10"), ("GF:4", "TH1"), ("GF:4", "EX10")]
    assert out["summary"][lab.COUNTEREXAMPLE] == 0


def test_sweep_thread_independent():
    corpus = ["Zmod:6", "Zmod:9", "GF:4", TABLE]
    a = lab.dumps(lab.sweep(corpus, "all", threads=1))
    b = lab.dumps(lab.sweep(corpus, "all", threads=2))
    assert a == b


def test_hunt():
    assert lab.hunt("bezout ∧ ¬hermite") is None
    hit = lab.hunt("¬bezout")
    assert hit["ring"] == TABLE
    assert lab.hunt("pre_schreier & zero-det unimodular & !non_full") is None
    with pytest.raises(ValueError):
        lab.hunt("frobnicate")


def test_seed_changes_only_sampled_cells():
    cfg = ScanConfig(seed=7)
    assert lab.verify("TH1", "Zmod:6", cfg).to_json() == lab.verify("TH1", "Zmod:6").to_json()
