"""Computable commutative rings with identity.

Finite rings of every kind (residue rings, Galois fields, polynomial
quotients, products, user tables, principal quotients) are compiled to a
single representation: elements are the integers ``0..n-1`` in a canonical
enumeration order and arithmetic is read from dense numpy tables.  The ideal
lattice is precomputed once per ring, which turns unimodularity and
divisibility questions into table lookups.

The integers and F_p[x] are available only as *bounded profiles*: searches
over them range over elements of bounded height/degree and report UNKNOWN
instead of a negative answer when the bound is exhausted.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import polys

MAX_ORDER = 4096
MAX_TABLE_ORDER = 64
EXHAUSTIVE_AXIOM_LIMIT = 256
DATA_DIR = Path(__file__).parent / "data"


class RingError(ValueError):
    pass


class RingSpecError(RingError):
    pass


class RingSizeError(RingError):
    pass


class _Unknown:
    """Outcome of a bounded search that found nothing; never equal to False."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNKNOWN"

    def __bool__(self):
        raise TypeError("UNKNOWN has no truth value; compare with `is UNKNOWN`")


UNKNOWN = _Unknown()


def tristate(value) -> str:
    if value is UNKNOWN or value is None:
        return "UNKNOWN"
    return "TRUE" if value else "FALSE"


# ---------------------------------------------------------------------------
# elements, ideals, unit groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Elem:
    """An element of a ring; ``idx`` is the canonical index (finite rings) or
    the canonical value itself (bounded profiles)."""

    ring: object = field(compare=False, repr=False)
    idx: object
    key: str = field(default="", repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", self.ring.spec)

    @property
    def payload(self):
        return self.ring.payload(self.idx)

    def _other(self, other):
        return self.ring.coerce(other)

    def __add__(self, other):
        return Elem(self.ring, self.ring.add_(self.idx, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.ring, self.ring.sub_(self.idx, self._other(other)))

    def __rsub__(self, other):
        return Elem(self.ring, self.ring.sub_(self._other(other), self.idx))

    def __mul__(self, other):
        return Elem(self.ring, self.ring.mul_(self.idx, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.ring, self.ring.neg_(self.idx))

    def __pow__(self, k: int):
        r = self.ring.one_idx
        for _ in range(k):
            r = self.ring.mul_(r, self.idx)
        return Elem(self.ring, r)

    def __str__(self):
        return self.ring.format(self.idx)

    def __repr__(self):
        return f"Elem({self.ring.format(self.idx)} in {self.ring.spec})"


class Ideal:
    """An ideal of a finite ring, materialized as a boolean membership mask."""

    def __init__(self, ring: "FiniteRing", ideal_id: int, generators=()):
        self.ring = ring
        self.id = ideal_id
        self.generators = tuple(generators)

    @property
    def mask(self) -> np.ndarray:
        return self.ring.ideal_masks[self.id]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.mask))

    @property
    def elements(self) -> tuple[Elem, ...]:
        return tuple(Elem(self.ring, i) for i in self.indices)

    def labels(self) -> set[str]:
        return {self.ring.format(i) for i in self.indices}

    def __contains__(self, x) -> bool:
        return bool(self.mask[self.ring.coerce(x)])

    def __len__(self):
        return int(self.mask.sum())

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring is self.ring and other.id == self.id

    def __hash__(self):
        return hash((self.ring.spec, self.id))

    @property
    def is_principal(self) -> bool:
        return self.id in self.ring.principal_ideal_ids

    def __repr__(self):
        return f"Ideal({sorted(self.labels(), key=len)} in {self.ring.spec})"


class UnitGroup:
    def __init__(self, ring, elements, inverse):
        self.ring = ring
        self._elements = tuple(elements)
        self._inverse = dict(inverse)

    @property
    def elements(self) -> tuple[Elem, ...]:
        return tuple(Elem(self.ring, i) for i in self._elements)

    @property
    def indices(self):
        return self._elements

    def inverse(self, x) -> Elem:
        return Elem(self.ring, self._inverse[self.ring.coerce(x)])

    def __contains__(self, x) -> bool:
        return self.ring.coerce(x) in self._inverse

    def __len__(self):
        return len(self._elements)

    def labels(self) -> set[str]:
        return {self.ring.format(i) for i in self._elements}

    def __repr__(self):
        return f"UnitGroup({[self.ring.format(i) for i in self._elements]})"


# ---------------------------------------------------------------------------
# finite rings
# ---------------------------------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside (), [] and {}."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


class FiniteRing:
    """A finite commutative ring with identity given by operation tables."""

    is_finite = True

    def __init__(self, spec, kind, labels, add, mul, *, payloads=None, parse=None, validate=True):
        n = len(labels)
        if n > MAX_ORDER:
            raise RingSizeError(f"{spec}: {n} elements exceeds the table limit {MAX_ORDER}")
        self.spec = spec
        self.kind = kind
        self.order = n
        self.labels = list(labels)
        self._payloads = list(payloads) if payloads is not None else list(labels)
        self._parse_hook = parse
        dt = np.int16 if n <= 32767 else np.int32
        self.add = np.ascontiguousarray(add, dtype=dt)
        self.mul = np.ascontiguousarray(mul, dtype=dt)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._label_index) != n:
            raise RingError(f"{spec}: duplicate element labels")
        self._find_identities()
        if validate:
            self.check_axioms()

    # -- construction helpers --------------------------------------------

    def _find_identities(self):
        n = self.order
        ar = np.arange(n)
        zeros = [i for i in range(n) if np.array_equal(self.add[i], ar)]
        ones = [i for i in range(n) if np.array_equal(self.mul[i], ar)]
        if not zeros:
            raise RingError(f"{self.spec}: no additive identity")
        if not ones:
            raise RingError(f"{self.spec}: no multiplicative identity")
        self.zero_idx, self.one_idx = zeros[0], ones[0]
        if self.zero_idx == self.one_idx:
            raise RingError(f"{self.spec}: the zero ring is not allowed")
        hits = np.argwhere(self.add == self.zero_idx)
        neg = np.full(n, -1, dtype=np.int64)
        neg[hits[:, 0]] = hits[:, 1]
        if (neg < 0).any():
            raise RingError(f"{self.spec}: some element has no additive inverse")
        self.neg = neg.astype(self.add.dtype)
        self.sub = self.add[:, self.neg]
        # additive order of 1
        k, x = 1, self.one_idx
        while x != self.zero_idx:
            x = self.add[x, self.one_idx]
            k += 1
        self.char = k
        ints = [self.zero_idx]
        for _ in range(k - 1):
            ints.append(int(self.add[ints[-1], self.one_idx]))
        self._int_image = ints

    def check_axioms(self, samples: int = 10_000, seed: int = 0):
        """Verify the commutative-ring axioms (exhaustive for small rings)."""
        n, A, M = self.order, self.add, self.mul
        if not (np.array_equal(A, A.T) and np.array_equal(M, M.T)):
            raise RingError(f"{self.spec}: operations are not commutative")
        if n <= EXHAUSTIVE_AXIOM_LIMIT:
            for a in range(n):
                # (a+b)+c == a+(b+c), (ab)c == a(bc), a(b+c) == ab+ac over all b, c
                if not np.array_equal(A[A[a]][:, :], A[a][A]):
                    raise RingError(f"{self.spec}: addition is not associative")
                if not np.array_equal(M[M[a]], M[a][M]):
                    raise RingError(f"{self.spec}: multiplication is not associative")
                if not np.array_equal(M[a][A], A[M[a]][:, M[a]]):
                    raise RingError(f"{self.spec}: distributivity fails")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, samples))
            if (A[A[a, b], c] != A[a, A[b, c]]).any():
                raise RingError(f"{self.spec}: addition is not associative")
            if (M[M[a, b], c] != M[a, M[b, c]]).any():
                raise RingError(f"{self.spec}: multiplication is not associative")
            if (M[a, A[b, c]] != A[M[a, b], M[a, c]]).any():
                raise RingError(f"{self.spec}: distributivity fails")

    # -- element plumbing --------------------------------------------------

    def __repr__(self):
        return f"<FiniteRing {self.spec} |R|={self.order}>"

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    @property
    def zero(self) -> Elem:
        return Elem(self, self.zero_idx)

    @property
    def one(self) -> Elem:
        return Elem(self, self.one_idx)

    def __call__(self, x) -> Elem:
        return Elem(self, self.coerce(x))

    def elements(self) -> list[Elem]:
        return [Elem(self, i) for i in range(self.order)]

    def payload(self, i: int):
        return self._payloads[i]

    def format(self, i: int) -> str:
        return self.labels[i]

    def int_image(self, k: int) -> int:
        return self._int_image[k % self.char]

    def coerce(self, x) -> int:
        """Index of an element given as Elem, integer literal, or string literal."""
        if isinstance(x, Elem):
            if x.key != self.spec:
                raise RingError(f"element {x} belongs to {x.key}, not {self.spec}")
            return x.idx
        if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
            return self.int_image(int(x))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self.spec}")

    def parse(self, text: str) -> int:
        s = text.strip()
        if s in self._label_index:
            return self._label_index[s]
        if re.fullmatch(r"[+-]?\d+", s):
            return self.int_image(int(s))
        if self._parse_hook is not None:
            return self._parse_hook(s)
        raise RingSpecError(f"cannot parse element {text!r} of {self.spec}")

    # scalar ops on indices
    def add_(self, i, j):
        return int(self.add[i, j])

    def sub_(self, i, j):
        return int(self.sub[i, j])

    def mul_(self, i, j):
        return int(self.mul[i, j])

    def neg_(self, i):
        return int(self.neg[i])

    def pow_(self, i, k):
        r = self.one_idx
        for _ in range(k):
            r = int(self.mul[r, i])
        return r

    # -- units ---------------------------------------------------------------

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return (self.mul == self.one_idx).any(axis=1)

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.full(self.order, -1, dtype=np.int64)
        hits = np.argwhere(self.mul == self.one_idx)
        inv[hits[:, 0]] = hits[:, 1]
        return inv

    @cached_property
    def unit_indices(self) -> np.ndarray:
        return np.flatnonzero(self.unit_mask)

    def is_unit(self, i) -> bool:
        return bool(self.unit_mask[i])

    # -- ideal lattice -------------------------------------------------------

    @cached_property
    def _lattice(self):
        n = self.order
        masks: list[np.ndarray] = []
        index: dict[bytes, int] = {}

        def intern(mask):
            key = np.packbits(mask).tobytes()
            if key not in index:
                index[key] = len(masks)
                masks.append(mask)
            return index[key]

        pid = np.empty(n, dtype=np.int64)
        for a in range(n):
            m = np.zeros(n, dtype=bool)
            m[self.mul[a]] = True
            pid[a] = intern(m)
        principal = set(int(x) for x in np.unique(pid))
        # close under sums
        done = 0
        pairs_seen = {}
        frontier = True
        while frontier:
            frontier = False
            k = len(masks)
            for i in range(k):
                for j in range(i, k):
                    if (i, j) in pairs_seen:
                        continue
                    Ie, Je = np.flatnonzero(masks[i]), np.flatnonzero(masks[j])
                    m = np.zeros(n, dtype=bool)
                    m[self.add[np.ix_(Ie, Je)].ravel()] = True
                    before = len(masks)
                    pairs_seen[(i, j)] = intern(m)
                    if len(masks) > before:
                        frontier = True
            done += 1
        k = len(masks)
        join = np.empty((k, k), dtype=np.int64)
        for (i, j), s in pairs_seen.items():
            join[i, j] = join[j, i] = s
        full = index[np.packbits(np.ones(n, dtype=bool)).tobytes()]
        zero = int(pid[self.zero_idx])
        return pid, np.array(masks), join, full, zero, frozenset(principal)

    @property
    def pid(self) -> np.ndarray:
        """``pid[a]`` is the ideal id of ``Ra``."""
        return self._lattice[0]

    @property
    def ideal_masks(self) -> np.ndarray:
        return self._lattice[1]

    @property
    def join(self) -> np.ndarray:
        """``join[I, J]`` is the ideal id of ``I + J``."""
        return self._lattice[2]

    @property
    def full_id(self) -> int:
        return self._lattice[3]

    @property
    def zero_ideal_id(self) -> int:
        return self._lattice[4]

    @property
    def principal_ideal_ids(self) -> frozenset:
        return self._lattice[5]

    @property
    def num_ideals(self) -> int:
        return len(self.ideal_masks)

    @cached_property
    def um2(self) -> np.ndarray:
        """``um2[a, b]``: the pair ``(a, b)`` is unimodular."""
        p = self.pid
        return self.join[p[:, None], p[None, :]] == self.full_id

    @cached_property
    def divides(self) -> np.ndarray:
        """``divides[x, y]``: ``x`` divides ``y``."""
        return self.ideal_masks[self.pid]

    @cached_property
    def in_ideal(self) -> np.ndarray:
        """``in_ideal[I, y]``: ``y`` lies in the ideal with id ``I``."""
        return self.ideal_masks

    @cached_property
    def quotient_solver(self) -> np.ndarray:
        """``quotient_solver[x, y]`` is the least ``z`` with ``x*z == y`` or -1."""
        n = self.order
        sol = np.full((n, n), -1, dtype=np.int64)
        rows = np.repeat(np.arange(n), n)
        z = np.tile(np.arange(n), n)
        vals = self.mul.ravel().astype(np.int64)
        # assign in reverse so the smallest z wins
        sol[rows[::-1], vals[::-1]] = z[::-1]
        return sol

    def ideal_of(self, *gens) -> Ideal:
        idx = [self.coerce(g) for g in gens]
        iid = self.zero_ideal_id
        for g in idx:
            iid = int(self.join[iid, self.pid[g]])
        return Ideal(self, iid, [Elem(self, g) for g in idx])

    def ideal_id_of(self, idx) -> int:
        iid = self.zero_ideal_id
        for g in idx:
            iid = int(self.join[iid, self.pid[g]])
        return iid

    def coset_reps(self, ideal_id: int) -> np.ndarray:
        """Canonical (least index) representative of ``x + I`` for every x."""
        cache = self.__dict__.setdefault("_coset_cache", {})
        if ideal_id not in cache:
            members = np.flatnonzero(self.ideal_masks[ideal_id])
            cache[ideal_id] = self.add[:, members].min(axis=1).astype(np.int64)
        return cache[ideal_id]

    def quotient_ring(self, ideal_id: int):
        cache = self.__dict__.setdefault("_quotient_cache", {})
        if ideal_id not in cache:
            cache[ideal_id] = _quotient_by_ideal(self, ideal_id)
        return cache[ideal_id]


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def zmod(n: int) -> FiniteRing:
    if n < 2:
        raise RingError("Zmod:n needs n >= 2 (the zero ring is rejected)")
    if n > MAX_ORDER:
        raise RingSizeError(f"Zmod:{n} exceeds the table limit {MAX_ORDER}")
    ar = np.arange(n)
    return FiniteRing(
        f"Zmod:{n}", "modular", [str(i) for i in range(n)],
        (ar[:, None] + ar[None, :]) % n, (ar[:, None] * ar[None, :]) % n,
        payloads=list(range(n)), validate=n <= 64,
    )


def _poly_quotient_tables(base: FiniteRing, modulus: list[int]):
    """Tables of base[x]/(modulus) for a monic ``modulus`` (coefficients are
    base indices, lowest first, leading coefficient is the base one)."""
    k = len(modulus) - 1
    nb = base.order
    n = nb**k
    if n > MAX_ORDER:
        raise RingSizeError(f"quotient with {n} elements exceeds {MAX_ORDER}")
    digits = np.array([[(i // nb**t) % nb for t in range(k)] for i in range(n)], dtype=np.int64)
    A, M, S = base.add.astype(np.int64), base.mul.astype(np.int64), base.sub.astype(np.int64)
    z = base.zero_idx
    weights = nb ** np.arange(k)
    mul_tab = np.empty((n, n), dtype=np.int64)
    block = max(1, 2**20 // max(n, 1))
    for start in range(0, n, block):
        rows = digits[start:start + block]
        r = len(rows)
        conv = np.full((2 * k - 1, r, n), z, dtype=np.int64)
        for i in range(k):
            for j in range(k):
                term = M[rows[:, i][:, None], digits[:, j][None, :]]
                conv[i + j] = A[conv[i + j], term]
        for d in range(2 * k - 2, k - 1, -1):
            top = conv[d]
            for t in range(k):
                conv[d - k + t] = S[conv[d - k + t], M[top, modulus[t]]]
        mul_tab[start:start + r] = np.tensordot(weights, conv[:k], axes=(0, 0))
    add_tab = (A[digits[:, None, :], digits[None, :, :]] * weights).sum(axis=2)
    return digits, add_tab, mul_tab


def _coeff_fmt(base: FiniteRing):
    return dict(fmt=base.format, is_zero=lambda c: c == base.zero_idx, is_one=lambda c: c == base.one_idx)


def _make_poly_parser(base: FiniteRing, var: str, k: int, reduce_digits):
    def parse(text: str) -> int:
        s = text.replace(" ", "")
        if s.startswith("(") and s.endswith(")") and len(_split_top(s[1:-1], "+")) == 1:
            pass
        terms, cur, depth = [], "", 0
        for ch in s:
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            if ch in "+-" and depth == 0 and cur:
                terms.append(cur)
                cur = ch
            else:
                cur += ch
        if cur:
            terms.append(cur)
        coeffs: dict[int, int] = {}
        for term in terms:
            sign = 1
            if term[0] in "+-":
                sign = -1 if term[0] == "-" else 1
                term = term[1:]
            m = re.fullmatch(rf"(.*?)\*?{re.escape(var)}(?:\^(\d+))?", term)
            if m and not m.group(1).endswith(")") and m.group(1) and not re.fullmatch(r"\d+", m.group(1)):
                m = None if "(" not in term else m
            if m:
                c_text, e = m.group(1), int(m.group(2) or 1)
            else:
                c_text, e = term, 0
            if c_text == "":
                c = base.one_idx
            else:
                if c_text.startswith("(") and c_text.endswith(")"):
                    try:
                        c = base.parse(c_text)
                    except RingError:
                        c = base.parse(c_text[1:-1])
                else:
                    c = base.parse(c_text)
            if sign < 0:
                c = base.neg_(c)
            coeffs[e] = base.add_(coeffs.get(e, base.zero_idx), c)
        return reduce_digits(coeffs)

    return parse


def poly_quotient(base: FiniteRing, modulus_text: str, var: str = "x", spec: str | None = None,
                  kind: str = "poly-quotient") -> FiniteRing:
    ints = polys.parse_int_poly(modulus_text, var)
    if len(ints) < 2:
        raise RingError(f"modulus {modulus_text!r} must have positive degree")
    if ints[-1] != 1:
        raise RingError(f"modulus {modulus_text!r} is not monic")
    modulus = [base.int_image(c) for c in ints]
    return _poly_quotient(base, modulus, var, spec or f"Quot:{base.spec}[{var}]/({modulus_text})", kind)


def _poly_quotient(base, modulus, var, spec, kind):
    k = len(modulus) - 1
    nb = base.order
    digits, add_tab, mul_tab = _poly_quotient_tables(base, modulus)
    fmt = _coeff_fmt(base)
    labels = [polys.format_poly(list(d), var, **fmt) for d in digits]
    payloads = [tuple(base.format(int(c)) for c in d) for d in digits]

    # reduce a sparse {degree: coeff} polynomial modulo the modulus
    def reduce_digits(coeffs):
        top = max(coeffs) if coeffs else 0
        c = [coeffs.get(i, base.zero_idx) for i in range(max(top + 1, k))]
        for d in range(len(c) - 1, k - 1, -1):
            lead = c[d]
            for t in range(k):
                c[d - k + t] = base.sub_(c[d - k + t], base.mul_(lead, modulus[t]))
            c[d] = base.zero_idx
        return sum(int(c[t]) * nb**t for t in range(k))

    return FiniteRing(spec, kind, labels, add_tab, mul_tab, payloads=payloads,
                      parse=_make_poly_parser(base, var, k, reduce_digits))


def galois_field(q: int) -> FiniteRing:
    p, k = _prime_power(q)
    if k == 1:
        r = zmod(p)
        return FiniteRing(f"GF:{q}", "finite-field", r.labels, r.add, r.mul,
                          payloads=list(range(p)), validate=False)
    f = polys.first_irreducible(p, k)
    base = zmod(p)
    modulus = [base.int_image(c) for c in f]
    ring = _poly_quotient(base, modulus, "a", f"GF:{q}", "finite-field")
    ring.modulus = f
    return ring


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise RingError(f"GF:{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise RingError(f"GF:{q} is not a prime power")
    return p, k


def product(*factors: FiniteRing, spec: str | None = None) -> FiniteRing:
    if len(factors) < 2:
        raise RingError("a product needs at least two factors")
    n = math.prod(f.order for f in factors)
    if n > MAX_ORDER:
        raise RingSizeError(f"product with {n} elements exceeds {MAX_ORDER}")
    sizes = [f.order for f in factors]
    coords = np.array(np.unravel_index(np.arange(n), sizes)).T  # lexicographic
    add_tab = np.zeros((n, n), dtype=np.int64)
    mul_tab = np.zeros((n, n), dtype=np.int64)
    for t, f in enumerate(factors):
        stride = math.prod(sizes[t + 1:])
        ci = coords[:, t]
        add_tab += f.add[ci[:, None], ci[None, :]].astype(np.int64) * stride
        mul_tab += f.mul[ci[:, None], ci[None, :]].astype(np.int64) * stride
    labels = ["(" + ",".join(f.labels[c] for f, c in zip(factors, row)) + ")" for row in coords]
    payloads = [tuple(f.payload(int(c)) for f, c in zip(factors, row)) for row in coords]
    name = spec or "Prod:" + "*".join(f"({f.spec})" if "*" in f.spec else f.spec for f in factors)

    def parse(text: str) -> int:
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise RingSpecError(f"product element {text!r} must look like (e1,e2)")
        parts = _split_top(s[1:-1], ",")
        if len(parts) != len(factors):
            raise RingSpecError(f"product element {text!r} has the wrong arity")
        idx = 0
        for f, part, sz in zip(factors, parts, sizes):
            idx = idx * sz + f.parse(part)
        return idx

    ring = FiniteRing(name, "product", labels, add_tab, mul_tab, payloads=payloads, parse=parse,
                      validate=False)
    ring.factors = tuple(factors)
    return ring


def table_ring(data: dict, spec: str = "Table") -> FiniteRing:
    names = [str(x) for x in data["elements"]]
    n = len(names)
    if n > MAX_TABLE_ORDER:
        raise RingSizeError(f"{spec}: table rings are capped at {MAX_TABLE_ORDER} elements")
    pos = {name: i for i, name in enumerate(names)}

    def conv(tab, what):
        if len(tab) != n or any(len(row) != n for row in tab):
            raise RingError(f"{spec}: {what} table must be {n}x{n}")
        out = np.empty((n, n), dtype=np.int64)
        for i, row in enumerate(tab):
            for j, v in enumerate(row):
                if isinstance(v, int):
                    if not 0 <= v < n:
                        raise RingError(f"{spec}: {what} entry {v} out of range")
                    out[i, j] = v
                elif str(v) in pos:
                    out[i, j] = pos[str(v)]
                else:
                    raise RingError(f"{spec}: unknown element {v!r} in {what} table")
        return out

    return FiniteRing(spec, "table", names, conv(data["add"], "add"), conv(data["mul"], "mul"),
                      validate=True)


def load_table(path: str) -> FiniteRing:
    p = Path(path)
    if not p.exists() and (DATA_DIR / path).exists():
        p = DATA_DIR / path
    if not p.exists():
        raise RingSpecError(f"table file {path!r} not found")
    with open(p) as fh:
        data = json.load(fh)
    return table_ring(data, spec=f"Table:{path}")


def _quotient_by_ideal(ring: FiniteRing, ideal_id: int) -> FiniteRing:
    reps_of = ring.coset_reps(ideal_id)
    reps = np.unique(reps_of)
    new_index = np.full(ring.order, -1, dtype=np.int64)
    new_index[reps] = np.arange(len(reps))
    proj = new_index[reps_of]
    add_tab = proj[ring.add[np.ix_(reps, reps)]]
    mul_tab = proj[ring.mul[np.ix_(reps, reps)]]
    gens = [ring.format(int(g)) for g in _ideal_generators(ring, ideal_id)]
    spec = f"{ring.spec}/({','.join(gens)})"
    labels = [ring.format(int(r)) for r in reps]

    def parse(text):
        return int(proj[ring.parse(text)])

    if len(reps) == 1:
        raise RingError(f"{spec}: the quotient is the zero ring")
    q = FiniteRing(spec, "quotient", labels, add_tab, mul_tab,
                   payloads=[ring.payload(int(r)) for r in reps], parse=parse, validate=False)
    q.parent = ring
    q.projection = proj
    q.lift = reps
    return q


def _ideal_generators(ring: FiniteRing, ideal_id: int) -> list[int]:
    """A small generating set: greedy over principal ideals in index order."""
    if ideal_id in ring.principal_ideal_ids:
        return [int(np.flatnonzero(ring.pid == ideal_id)[0])]
    gens, cur = [], ring.zero_ideal_id
    mask = ring.ideal_masks[ideal_id]
    for a in np.flatnonzero(mask):
        nxt = ring.join[cur, ring.pid[a]]
        if nxt != cur:
            gens.append(int(a))
            cur = nxt
        if cur == ideal_id:
            break
    return gens


# ---------------------------------------------------------------------------
# bounded profiles of the Euclidean domains Z and F_p[x]
# ---------------------------------------------------------------------------


class IntegerProfile:
    """The integers, searched over ``|x| <= H``."""

    is_finite = False
    kind = "integers-bounded"
    order = math.inf
    char = 0
    zero_idx = 0
    one_idx = 1

    def __init__(self, bound: int):
        if bound < 1:
            raise RingError("Int:H=<bound> needs a positive bound")
        self.bound = bound
        self.spec = f"Int:H={bound}"

    def __repr__(self):
        return f"<IntegerProfile H={self.bound}>"

    def __call__(self, x) -> Elem:
        return Elem(self, self.coerce(x))

    def coerce(self, x) -> int:
        if isinstance(x, Elem):
            return int(x.idx)
        if isinstance(x, str):
            return int(x.strip())
        return int(x)

    parse = coerce

    def payload(self, x):
        return x

    def format(self, x) -> str:
        return str(x)

    def add_(self, a, b):
        return a + b

    def sub_(self, a, b):
        return a - b

    def mul_(self, a, b):
        return a * b

    def neg_(self, a):
        return -a

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def is_zero(self, a) -> bool:
        return a == 0

    def search_elements(self, bound: int | None = None):
        """0, 1, -1, 2, -2, ... up to the bound."""
        h = self.bound if bound is None else bound
        yield 0
        for k in range(1, h + 1):
            yield k
            yield -k

    def gcd(self, a, b):
        return math.gcd(a, b)

    def ext_gcd(self, a, b):
        from .constructive import ext_gcd

        return ext_gcd(a, b)

    def canonical_associate(self, a):
        return abs(a)

    def divides(self, a, b) -> bool:
        return b == 0 if a == 0 else b % a == 0

    def exact_div(self, a, b):
        """``a / b`` when ``b`` divides ``a``."""
        return a // b


class PolyProfile:
    """F_p[x], searched over polynomials of degree < D."""

    is_finite = False
    kind = "poly-over-field-bounded"
    order = math.inf
    zero_idx = ()
    one_idx = (1,)

    def __init__(self, p: int, degree_bound: int):
        if _prime_power(p)[1] != 1:
            raise RingError(f"PolyF needs a prime p, got {p}")
        self.p = p
        self.char = p
        self.bound = degree_bound
        self.spec = f"PolyF:p={p},D={degree_bound}"

    def __repr__(self):
        return f"<PolyProfile p={self.p} D={self.bound}>"

    def __call__(self, x) -> Elem:
        return Elem(self, self.coerce(x))

    def coerce(self, x):
        if isinstance(x, Elem):
            return x.idx
        if isinstance(x, str):
            return polys.trim(polys.parse_int_poly(x), self.p)
        if isinstance(x, int):
            return polys.trim([x], self.p)
        return polys.trim(x, self.p)

    parse = coerce

    def payload(self, f):
        return f

    def format(self, f) -> str:
        return polys.format_poly(f)

    def add_(self, a, b):
        return polys.add(a, b, self.p)

    def sub_(self, a, b):
        return polys.sub(a, b, self.p)

    def mul_(self, a, b):
        return polys.mul(a, b, self.p)

    def neg_(self, a):
        return polys.neg(a, self.p)

    def is_unit(self, a) -> bool:
        return len(a) == 1

    def is_zero(self, a) -> bool:
        return not a

    def search_elements(self, bound: int | None = None):
        """All polynomials of degree < D, by degree then coefficient order."""
        d = self.bound if bound is None else bound
        yield ()
        for deg in range(d):
            for idx in range((self.p - 1) * self.p**deg):
                lead = idx // self.p**deg + 1
                rest = [(idx // self.p**i) % self.p for i in range(deg)]
                yield tuple(rest) + (lead,)

    def gcd(self, a, b):
        return polys.ext_gcd(a, b, self.p)[0]

    def ext_gcd(self, a, b):
        return polys.ext_gcd(a, b, self.p)

    def canonical_associate(self, a):
        return polys.monic(a, self.p)

    def divides(self, a, b) -> bool:
        if not a:
            return not b
        return not polys.divmod_(b, a, self.p)[1]

    def exact_div(self, a, b):
        return polys.divmod_(a, b, self.p)[0]


# ---------------------------------------------------------------------------
# ring-spec mini-language
# ---------------------------------------------------------------------------

_CACHE: dict[str, object] = {}


def make_ring(spec: str):
    """Build a ring from its spec string (cached; rings are immutable)."""
    key = spec.strip()
    if key not in _CACHE:
        _CACHE[key] = _build(key)
    return _CACHE[key]


def _build(s: str):
    if s.startswith("(") and s.endswith(")") and len(_split_top(s[1:-1], "*")) >= 1 \
            and _split_top(s, "*") == [s]:
        return make_ring(s[1:-1])
    head, _, rest = s.partition(":")
    if not rest:
        raise RingSpecError(f"cannot parse ring spec {s!r}")
    try:
        if head == "Zmod":
            return zmod(int(rest))
        if head == "GF":
            if "^" in rest:
                p, k = rest.split("^")
                q = int(p) ** int(k)
                if _prime_power(q) != (int(p), int(k)):
                    raise RingSpecError(f"{s}: {p} is not prime")
            else:
                q = int(rest)
            return galois_field(q)
        if head == "Quot":
            m = re.fullmatch(r"(.*)\[([A-Za-z])\]/\((.*)\)", rest)
            if not m:
                raise RingSpecError(f"cannot parse quotient spec {s!r}")
            base = make_ring(m.group(1))
            if not isinstance(base, FiniteRing):
                raise RingSpecError(f"{s}: quotient base must be finite")
            return poly_quotient(base, m.group(3), m.group(2), spec=s)
        if head == "Prod":
            parts = _split_top(rest, "*")
            if len(parts) < 2:
                raise RingSpecError(f"{s}: a product needs at least two factors")
            return product(*(make_ring(p) for p in parts), spec=s)
        if head == "Table":
            return load_table(rest)
        if head == "Int":
            m = re.fullmatch(r"H=(\d+)", rest)
            if not m:
                raise RingSpecError(f"cannot parse {s!r}; expected Int:H=<bound>")
            return IntegerProfile(int(m.group(1)))
        if head == "PolyF":
            m = re.fullmatch(r"p=(\d+),D=(\d+)", rest)
            if not m:
                raise RingSpecError(f"cannot parse {s!r}; expected PolyF:p=<p>,D=<deg>")
            return PolyProfile(int(m.group(1)), int(m.group(2)))
    except RingSpecError:
        raise
    except (ValueError, KeyError) as exc:
        if isinstance(exc, RingError):
            raise
        raise RingSpecError(f"cannot parse ring spec {s!r}: {exc}") from exc
    raise RingSpecError(f"unknown ring kind {head!r} in {s!r}")


# ---------------------------------------------------------------------------
# derived structure
# ---------------------------------------------------------------------------


def _require_finite(R, what):
    if not getattr(R, "is_finite", False):
        raise RingError(f"{what} needs a finite ring, got {R.spec}")


def units(R) -> UnitGroup:
    """The group of units, each paired with its inverse."""
    if isinstance(R, IntegerProfile):
        return UnitGroup(R, [1, -1], {1: 1, -1: -1})
    if isinstance(R, PolyProfile):
        us = [(c,) for c in range(1, R.p)]
        return UnitGroup(R, us, {(c,): (pow(c, -1, R.p),) for c in range(1, R.p)})
    idx = [int(i) for i in R.unit_indices]
    return UnitGroup(R, idx, {i: int(R.inverse[i]) for i in idx})


def annihilator(R: FiniteRing, a) -> Ideal:
    _require_finite(R, "annihilator")
    ai = R.coerce(a)
    mask = R.mul[ai] == R.zero_idx
    return Ideal(R, _ideal_id_from_mask(R, mask))


def _ideal_id_from_mask(R: FiniteRing, mask: np.ndarray) -> int:
    hits = np.flatnonzero((R.ideal_masks == mask).all(axis=1))
    if not len(hits):
        raise RingError("set is not an ideal")
    return int(hits[0])


def nilradical(R: FiniteRing) -> Ideal:
    _require_finite(R, "nilradical")
    return Ideal(R, _ideal_id_from_mask(R, nilpotent_mask(R)))


def nilpotent_mask(R: FiniteRing) -> np.ndarray:
    cache = R.__dict__
    if "_nil_mask" not in cache:
        x = np.arange(R.order)
        p = x.copy()
        mask = p == R.zero_idx
        # x^(2^k) reaches 0 within log2|R|+1 squarings for nilpotent x
        for _ in range(max(1, R.order.bit_length() + 1)):
            p = R.mul[p, p]
            mask |= p == R.zero_idx
        cache["_nil_mask"] = mask
    return cache["_nil_mask"]


def is_reduced(R: FiniteRing) -> bool:
    return int(nilpotent_mask(R).sum()) == 1


def jacobson(R: FiniteRing) -> Ideal:
    _require_finite(R, "jacobson")
    return Ideal(R, _ideal_id_from_mask(R, jacobson_mask(R)))


def jacobson_mask(R: FiniteRing) -> np.ndarray:
    # x in J(R) iff 1 - x*y is a unit for every y
    one_minus = R.sub[R.one_idx][R.mul]
    return R.unit_mask[one_minus].all(axis=1)


def zero_divisors(R: FiniteRing) -> set[Elem]:
    _require_finite(R, "zero_divisors")
    return {Elem(R, int(i)) for i in np.flatnonzero(zero_divisor_mask(R))}


def zero_divisor_mask(R: FiniteRing) -> np.ndarray:
    nz = np.arange(R.order) != R.zero_idx
    return ((R.mul == R.zero_idx) & nz[None, :]).any(axis=1)


def is_local(R: FiniteRing) -> bool:
    # local iff the non-units form an ideal iff J(R) = nonunits
    return bool(np.array_equal(jacobson_mask(R), ~R.unit_mask))


def quotient(R, a):
    """``R/Ra`` together with the projection (an index array for finite R).

    For the integer profile the quotient by ``a != 0`` is ``Zmod:|a|``, and
    ``Z/0`` is the profile itself.
    """
    if isinstance(R, IntegerProfile):
        n = abs(R.coerce(a))
        if n == 0:
            return R, (lambda x: x)
        if n == 1:
            raise RingError("Z/(+-1) is the zero ring")
        Q = zmod(n)
        return Q, (lambda x: Q.int_image(int(x)))
    _require_finite(R, "quotient")
    ai = R.coerce(a)
    iid = int(R.pid[ai])
    if iid == R.zero_ideal_id:
        return R, np.arange(R.order)
    Q = R.quotient_ring(iid)
    return Q, Q.projection


def quotient_by_ideal(R: FiniteRing, ideal: Ideal):
    if ideal.id == R.zero_ideal_id:
        return R, np.arange(R.order)
    Q = R.quotient_ring(ideal.id)
    return Q, Q.projection
