import pytest

from edrlab import classify as C
from edrlab.matrices import Mat
from edrlab.rings import UNKNOWN, make_ring

TABLE = "Table:f2xy_square_zero.json"


@pytest.mark.parametrize("spec", ["Zmod:6", "Zmod:12", "Prod:Zmod:4*GF:2", "GF:4"])
def test_bezout_and_hermite(spec):
    R = make_ring(spec)
    assert C.is_bezout(R)[0]
    assert C.is_hermite(R)[0]


def test_table_ring_fails_bezout():
    R = make_ring(TABLE)
    ok, (p, q) = C.is_bezout(R)
    assert not ok and {R.format(p), R.format(q)} == {"x", "y"}
    assert not C.is_hermite(R)[0]
    assert not C.is_pre_schreier(R)[0]


def test_hermite_witness():
    R = make_ring("Zmod:6")
    r, s, t = C.hermite_witness(R, 2, 3)
    assert R.mul_(r, s) == 2 and R.mul_(r, t) == 3 and R.um2[s, t]
    r, s, t = C.hermite_witness(R, 0, 0)
    assert r == R.zero_idx and R.um2[s, t]


@pytest.mark.parametrize("spec", ["GF:4", "Zmod:12", "Zmod:9"])
def test_pre_schreier(spec):
    assert C.is_pre_schreier(make_ring(spec))[0]


@pytest.mark.parametrize("spec", ["GF:2", "GF:3", "GF:4", "GF:5", "Zmod:4", "Zmod:6", "Zmod:8"])
def test_lifting_classes(spec):
    R = make_ring(spec)
    for fn in (C.is_pi2, C.is_e2, C.is_se2, C.is_edr):
        flag, cex, cov = fn(R)
        assert flag is True and cex is None and cov.exhaustive


def test_stable_range():
    for spec in ("Zmod:12", "GF:2", "Quot:GF:2[x]/(x^3)", TABLE):
        flags = C.stable_range_flags(make_ring(spec))
        assert flags["sr1"][0]
    assert all(v[0] for v in C.stable_range_flags(make_ring("GF:2")).values())


def test_symmetrizer_instance():
    R = make_ring("GF:2")
    A = Mat.parse(R, "[[1,1],[0,1]]")
    N = Mat.parse(R, "[[1,0],[1,1]]")
    assert (A @ N).is_symmetric() and A @ N == Mat.parse(R, "[[0,1],[1,1]]")
    ok, N2 = C.symmetrizer(A)
    assert ok and (A @ N2).is_symmetric()
    S = Mat.parse(R, "[[1,1],[1,0]]")
    ok, N3 = C.symmetrizer(S, strict=True)
    assert ok and (S @ N3).is_symmetric() and N3.det() == R.one_idx


def test_wsu_and_wh21_agree():
    for spec in ("Zmod:6", "Zmod:8", "GF:4"):
        R = make_ring(spec)
        assert C.is_wsu2(R)[0] == C.is_wh(R, 2, 1)[0]


def test_wh3_budget_gives_unknown():
    assert C.is_wh(make_ring("Zmod:6"), 3, 1)[0] is UNKNOWN
    assert C.is_wh(make_ring("GF:2"), 3, 1)[0] is True


def test_ell_set():
    R = make_ring("Zmod:6")
    S = C.ell_set(R, 2, 1, 0, 3)
    assert S.det_liftable
    assert (1, 0) in S
    assert S.to_json()["contains_1_0"]


def test_classify_report():
    rep = C.classify(make_ring("Zmod:6"))
    js = rep.to_json()
    assert js["ring"] == "Zmod:6"
    assert all(v is True for k, v in js["flags"].items() if not k.startswith("wh3"))
    assert "timing" not in js
    rep = C.classify(make_ring(TABLE), flags=("bezout", "hermite", "u2"))
    assert rep.flags == {"bezout": False, "hermite": False, "u2": True}
    with pytest.raises(ValueError):
        C.classify(make_ring("Zmod:6"), flags=("nonsense",))
