import numpy as np
import pytest

from edrlab.rings import (UNKNOWN, Elem, RingError, annihilator, is_local, is_reduced, jacobson, make_ring,
                          nilradical, quotient, tristate, units, zero_divisors)


@pytest.mark.parametrize("spec,order,char", [
    ("Zmod:6", 6, 6),
    ("GF:4", 4, 2),
    ("Quot:GF:2[x]/(x^2)", 4, 2),
    ("GF:9", 9, 3),
    ("Prod:Zmod:4*GF:9", 36, 12),
])
def test_construction(spec, order, char):
    R = make_ring(spec)
    assert R.order == order
    assert R.char == char


@pytest.mark.parametrize("spec", ["Zmod:6", "GF:4", "GF:8", "Quot:GF:3[x]/(x^2+1)", "Prod:Zmod:2*Zmod:4",
                                  "Table:f2xy_square_zero.json"])
def test_ring_axioms(spec):
    R = make_ring(spec)
    n = R.order
    a, b, c = (x.ravel() for x in np.meshgrid(*[np.arange(n)] * 3, indexing="ij"))
    assert (R.add[R.add[a, b], c] == R.add[a, R.add[b, c]]).all()
    assert (R.mul[R.mul[a, b], c] == R.mul[a, R.mul[b, c]]).all()
    assert (R.mul[a, R.add[b, c]] == R.add[R.mul[a, b], R.mul[a, c]]).all()
    assert (R.mul == R.mul.T).all()
    assert (R.add[np.arange(n), R.neg] == R.zero_idx).all()
    assert (R.mul[R.one_idx] == np.arange(n)).all()


def test_units():
    assert units(make_ring("Zmod:6")).labels() == {"1", "5"}
    assert len(units(make_ring("GF:4"))) == 3
    assert units(make_ring("Quot:GF:2[x]/(x^2)")).labels() == {"1", "x+1"}


def test_annihilator():
    assert annihilator(make_ring("Zmod:6"), 2).labels() == {"0", "3"}
    assert annihilator(make_ring("Zmod:6"), 1).labels() == {"0"}
    R = make_ring("Quot:GF:2[x]/(x^2)")
    assert annihilator(R, "x").labels() == {"0", "x"}


def test_radicals_and_zero_divisors():
    assert nilradical(make_ring("Zmod:12")).labels() == {"0", "6"}
    assert jacobson(make_ring("GF:4")).labels() == {"0"}
    assert {str(e) for e in zero_divisors(make_ring("Zmod:6"))} == {"0", "2", "3", "4"}
    assert is_reduced(make_ring("Zmod:6")) and not is_reduced(make_ring("Zmod:12"))
    assert is_local(make_ring("Zmod:8")) and not is_local(make_ring("Zmod:6"))


def test_quotients():
    Q, proj = quotient(make_ring("Zmod:6"), 2)
    assert Q.order == 2
    R = make_ring("Zmod:6")
    assert quotient(R, 0)[0] is R
    R = make_ring("Quot:GF:2[x]/(x^2)")
    Q, proj = quotient(R, "x")
    assert Q.order == 2
    # the projection is a ring map
    a, b = np.meshgrid(np.arange(4), np.arange(4))
    assert (Q.mul[proj[a], proj[b]] == proj[R.mul[a, b]]).all()
    assert (Q.add[proj[a], proj[b]] == proj[R.add[a, b]]).all()


def test_table_ring_is_not_bezout():
    R = make_ring("Table:f2xy_square_zero.json")
    assert R.order == 8
    ideal = R.join[R.pid[R.parse("x")], R.pid[R.parse("y")]]
    assert int(ideal) not in set(R.principal_ideal_ids)


def test_elements_and_formatting():
    R = make_ring("GF:4")
    for i in range(R.order):
        assert R.parse(R.format(i)) == i
    e = Elem(R, 2)
    assert R.coerce(e) == 2


def test_tristate_and_errors():
    assert tristate(True) == "TRUE" and tristate(False) == "FALSE" and tristate(UNKNOWN) == "UNKNOWN"
    with pytest.raises(RingError):
        make_ring("Zmod:")
    with pytest.raises(RingError):
        make_ring("GF:6")
