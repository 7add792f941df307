import numpy as np
import pytest

from edrlab import unitmaps as U
from edrlab.lifting import PreconditionError
from edrlab.rings import Elem, make_ring, units


def test_zero_c_gives_all_units():
    R = make_ring("Zmod:12")
    img = U.upsilon_image(R, 5, 7, 0)
    assert img.surjective
    assert set(img.image) == set(units(R).indices)


def test_unit_c_has_trivial_target():
    R = make_ring("Zmod:12")
    img = U.upsilon_image(R, 2, 3, 5)
    assert len(img.target) == 1 and img.surjective


def test_hand_instance():
    R = make_ring("Zmod:6")
    img = U.upsilon_image(R, 3, 4, 3)
    assert [R.format(x) for x in img.image] == ["1", "2"]
    assert img.surjective and img.contains(2)
    js = img.to_json()
    assert js["surjective"] and js["target"] == ["1", "2"]


def test_image_is_a_subgroup():
    R = make_ring("Prod:Zmod:4*Zmod:9")
    rng = np.random.default_rng(3)
    for a, b, c in rng.integers(0, R.order, size=(30, 3)).tolist():
        e = [Elem(R, v) for v in (a, b, c)]
        img = set(U.upsilon_image(R, *e).image)
        cos = R.coset_reps(int(R.pid[c]))
        for x in img:
            for y in img:
                assert int(cos[R.mul[x, y]]) in img


@pytest.mark.parametrize("spec", ["Zmod:2", "Zmod:12", "GF:9", "Prod:Zmod:4*GF:9", "Quot:GF:3[x]/(x^3)",
                                  "Table:f2xy_square_zero.json"])
def test_U2_on_finite_rings(spec):
    R = make_ring(spec)
    assert U.is_U2_ring(R) == (True, None)


def test_boolean_cokernel():
    R = make_ring("Zmod:8")
    # U(Z/8) is elementary abelian, so every square is 1
    for c in range(8):
        assert U.coker_is_boolean(R, 1, 0, c)
    with pytest.raises(PreconditionError):
        U.coker_is_boolean(R, 2, 4, 1)
    assert U.coker_boolean_everywhere(make_ring("Zmod:12"))[0]


def test_factorization_statements():
    for n in range(2, 13):
        R = make_ring(f"Zmod:{n}")
        fc = U.th3_factor_check(R)
        assert fc["general"][0] and fc["variant"][0]
        assert fc["general"][0] == U.is_U2_ring(R)[0]


def test_factor_witness_units():
    R = make_ring("Zmod:10")
    t, d1, d2 = U.factor_witness(R, 3, 7, 4, 9)
    assert R.add_(9, R.mul_(4, t)) == R.mul_(d1, d2)
    assert R.um2[3, d1] and R.um2[7, d2]
    # d a unit: nothing to move
    assert U.factor_witness(R, 1, 0, 2, 3)[0] == 0


@pytest.mark.parametrize("n", range(2, 13))
def test_non_full_matches_image(n):
    R = make_ring(f"Zmod:{n}")
    count, cex = U.ex10_scan(R)
    assert cex is None and count > 0


def test_correspondence_single_instance():
    R = make_ring("Zmod:6")
    assert U.ex10_admissible(R, 3, 1, 1)
    nf, inim = U.ex10_correspondence(R, 3, 1, 1)
    assert nf == inim
    with pytest.raises(PreconditionError):
        U.ex10_correspondence(R, 2, 0, 0)
