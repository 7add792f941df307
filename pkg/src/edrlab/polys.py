"""Dense univariate polynomials over F_p.

A polynomial is a tuple of coefficients in ``[0, p)``, lowest degree first,
with no trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

import itertools
import re

Poly = tuple


def trim(coeffs, p: int) -> Poly:
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: Poly) -> int:
    return len(f) - 1  # deg(0) == -1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def neg(f: Poly, p: int) -> Poly:
    return trim([-x for x in f], p)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, neg(g, p), p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def scale(f: Poly, c: int, p: int) -> Poly:
    return trim([c * x for x in f], p)


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(g[-1], -1, p)
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    for k in range(len(f) - len(g), -1, -1):
        coef = r[k + len(g) - 1] * inv_lead % p
        q[k] = coef
        if coef:
            for j, b in enumerate(g):
                r[k + j] = (r[k + j] - coef * b) % p
    return trim(q, p), trim(r[: len(g) - 1], p)


def monic(f: Poly, p: int) -> Poly:
    if not f:
        return ()
    return scale(f, pow(f[-1], -1, p), p)


def ext_gcd(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(h, s, t)`` with ``s*f + t*g == h`` and ``h`` monic (or zero)."""
    if not f:
        if not g:
            return (), (), (1,)
        c = pow(g[-1], -1, p)
        return scale(g, c, p), (), (c,)
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    c = pow(r0[-1], -1, p)
    return scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)


def is_irreducible(f: Poly, p: int) -> bool:
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = tuple(tail) + (1,)
            if not divmod_(f, g, p)[1]:
                return False
    return True


def first_irreducible(p: int, k: int) -> Poly:
    """Lexicographically first monic irreducible polynomial of degree ``k``."""
    # scan in element-index order: constant term varies fastest
    for idx in range(p**k):
        f = tuple((idx // p**i) % p for i in range(k)) + (1,)
        if is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


def format_poly(coeffs, var: str = "x", fmt=str, is_zero=lambda c: c == 0, is_one=lambda c: c == 1) -> str:
    """Render coefficients (lowest first) highest degree first, e.g. ``x^2+2x+1``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if is_zero(c):
            continue
        cs = fmt(c)
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mon and ("+" in cs or "-" in cs[1:] or " " in cs):
            cs = f"({cs})"
        if not mon:
            terms.append(cs)
        elif is_one(c):
            terms.append(mon)
        else:
            terms.append(f"{cs}{mon}")
    return "+".join(terms) if terms else "0"


_TERM = re.compile(r"^(\d*)\*?(?:([a-zA-Z])(?:\^(\d+))?)?$")


def parse_int_poly(text: str, var: str = "x") -> list[int]:
    """Parse an integer-coefficient polynomial such as ``x^2-3x+1``.

    Returns coefficients lowest degree first (not reduced).
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    parts = re.findall(r"[+-][^+-]+", s)
    if "".join(parts) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for part in parts:
        sign = -1 if part[0] == "-" else 1
        m = _TERM.match(part[1:])
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"cannot parse term {part!r} in {text!r}")
        num, sym, exp = m.groups()
        if sym is not None and sym != var:
            raise ValueError(f"unexpected variable {sym!r} in {text!r}")
        c = int(num) if num else 1
        e = 0 if sym is None else (int(exp) if exp else 1)
        coeffs[e] = coeffs.get(e, 0) + sign * c
    top = max(coeffs)
    return [coeffs.get(i, 0) for i in range(top + 1)]
