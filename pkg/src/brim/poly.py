"""Sparse bigraded polynomials in S = k[x1..xd, t1..tp].

Monomials carry separate x- and t-exponent blocks.  The two supported term
orders are position-over-term style: "degrevlex-x" compares t-exponents
lexicographically first (positions), then degrevlex on the x-block;
"total-block" inserts the total t-degree in front.  Both are multiplicative
total orders and restrict to the same order on any fixed t-degree slice.
"""

from __future__ import annotations

import re
from math import comb
from typing import NamedTuple

from .errors import InvalidInput, Undefined
from .ring import RingSpec


class Monomial(NamedTuple):
    texp: tuple
    xexp: tuple

    @property
    def tdeg(self) -> int:
        return sum(self.texp)

    @property
    def xdeg(self) -> int:
        return sum(self.xexp)

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(
            tuple(a + b for a, b in zip(self.texp, other.texp)),
            tuple(a + b for a, b in zip(self.xexp, other.xexp)),
        )

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.texp, other.texp)) and all(
            a <= b for a, b in zip(self.xexp, other.xexp)
        )

    def div(self, other: "Monomial") -> "Monomial":
        return Monomial(
            tuple(a - b for a, b in zip(self.texp, other.texp)),
            tuple(a - b for a, b in zip(self.xexp, other.xexp)),
        )


def one_monomial(ring: RingSpec) -> Monomial:
    return Monomial((0,) * ring.p, (0,) * ring.d)


def _degrevlex_key(xexp: tuple) -> tuple:
    # descending degrevlex: compare total degree, then negated reversed exps
    return (sum(xexp),) + tuple(-e for e in reversed(xexp))


class MonomialOrder:
    """Total multiplicative order on monomials; kind in {degrevlex-x, total-block}."""

    KINDS = ("degrevlex-x", "total-block")

    def __init__(self, kind: str):
        if kind not in self.KINDS:
            raise InvalidInput(f"unknown order kind {kind!r}")
        self.kind = kind

    def key(self, m: Monomial) -> tuple:
        if self.kind == "degrevlex-x":
            return m.texp + _degrevlex_key(m.xexp)
        return (sum(m.texp),) + m.texp + _degrevlex_key(m.xexp)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


DEGREVLEX_X = MonomialOrder("degrevlex-x")
TOTAL_BLOCK = MonomialOrder("total-block")
DEFAULT_ORDER = DEGREVLEX_X


def order_compare(u: Monomial, v: Monomial, order: MonomialOrder = DEFAULT_ORDER) -> int:
    """Return 1, 0 or -1 as u >, =, < v; 0 only for identical exponents."""
    if len(u.texp) != len(v.texp) or len(u.xexp) != len(v.xexp):
        raise InvalidInput("monomials from different rings")
    ku, kv = order.key(u), order.key(v)
    return (ku > kv) - (ku < kv)


class Polynomial:
    """Immutable sparse polynomial; no zero coefficients, no duplicate monomials."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms=None):
        self.ring = ring
        fld = ring.field
        tt = {}
        if terms:
            for m, c in terms.items() if isinstance(terms, dict) else terms:
                if len(m.texp) != ring.p or len(m.xexp) != ring.d:
                    raise InvalidInput("monomial does not match ring dimensions")
                c = fld.coerce(c)
                if not fld.is_zero(c):
                    acc = tt.get(m)
                    if acc is None:
                        tt[m] = c
                    else:
                        acc = fld.add(acc, c)
                        if fld.is_zero(acc):
                            del tt[m]
                        else:
                            tt[m] = acc
        self._terms = tt
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingSpec, terms: dict) -> "Polynomial":
        # internal: terms already normalized (no zeros, coerced)
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ring: RingSpec) -> "Polynomial":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "Polynomial":
        return cls(ring, {one_monomial(ring): c})

    @classmethod
    def from_monomial(cls, ring: RingSpec, m: Monomial, c=1) -> "Polynomial":
        return cls(ring, {m: c})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def num_terms(self) -> int:
        return len(self._terms)

    def terms(self, order: MonomialOrder = DEFAULT_ORDER):
        """Term list sorted descending under the given order."""
        return tuple(sorted(self._terms.items(), key=lambda mc: order.key(mc[0]), reverse=True))

    def items(self):
        return self._terms.items()

    def coeff(self, m: Monomial):
        return self._terms.get(m, self.ring.field.zero)

    def leading_term(self, order: MonomialOrder = DEFAULT_ORDER):
        if not self._terms:
            raise Undefined("leading term of the zero polynomial")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def _check_same_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise InvalidInput("operands live in different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        fld = self.ring.field
        res = dict(self._terms)
        for m, c in other._terms.items():
            acc = res.get(m)
            if acc is None:
                res[m] = c
            else:
                acc = fld.add(acc, c)
                if fld.is_zero(acc):
                    del res[m]
                else:
                    res[m] = acc
        return Polynomial._raw(self.ring, res)

    def __neg__(self) -> "Polynomial":
        fld = self.ring.field
        return Polynomial._raw(self.ring, {m: fld.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        fld = self.ring.field
        res = dict(self._terms)
        for m, c in other._terms.items():
            acc = res.get(m)
            if acc is None:
                res[m] = fld.neg(c)
            else:
                acc = fld.sub(acc, c)
                if fld.is_zero(acc):
                    del res[m]
                else:
                    res[m] = acc
        return Polynomial._raw(self.ring, res)

    def scale(self, c) -> "Polynomial":
        fld = self.ring.field
        c = fld.coerce(c)
        if fld.is_zero(c):
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {m: fld.mul(v, c) for m, v in self._terms.items()})

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        fld = self.ring.field
        c = fld.coerce(c)
        if fld.is_zero(c):
            return Polynomial.zero(self.ring)
        return Polynomial._raw(
            self.ring, {mm.mul(m): fld.mul(v, c) for mm, v in self._terms.items()}
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        fld = self.ring.field
        res = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1.mul(m2)
                c = fld.mul(c1, c2)
                acc = res.get(m)
                if acc is None:
                    res[m] = c
                else:
                    acc = fld.add(acc, c)
                    if fld.is_zero(acc):
                        del res[m]
                    else:
                        res[m] = acc
        return Polynomial._raw(self.ring, res)

    def monic(self, order: MonomialOrder = DEFAULT_ORDER) -> "Polynomial":
        if not self._terms:
            return self
        _, lc = self.leading_term(order)
        fld = self.ring.field
        if lc == fld.one:
            return self
        inv = fld.invert(lc)
        return Polynomial._raw(self.ring, {m: fld.mul(c, inv) for m, c in self._terms.items()})

    def bidegree(self):
        """Per-block degree (xdeg, tdeg); the string "mixed" marks disagreement."""
        if not self._terms:
            raise Undefined("bidegree of the zero polynomial")
        xdegs = {m.xdeg for m in self._terms}
        tdegs = {m.tdeg for m in self._terms}
        xd = xdegs.pop() if len(xdegs) == 1 else "mixed"
        td = tdegs.pop() if len(tdegs) == 1 else "mixed"
        return (xd, td)

    def tdeg_if_homogeneous(self):
        """The common t-degree of all terms, or None (zero polynomial: None)."""
        if not self._terms:
            return None
        tdegs = {m.tdeg for m in self._terms}
        return tdegs.pop() if len(tdegs) == 1 else None

    def is_bihomogeneous(self) -> bool:
        if not self._terms:
            return False
        xd, td = self.bidegree()
        return xd != "mixed" and td != "mixed"

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<poly {format_polynomial(self)}>"


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact product; inputs must share a ring."""
    return a * b


def bidegree(f: Polynomial):
    return f.bidegree()


# ---------------------------------------------------------------------------
# monomial enumeration

def compositions_desc(total: int, parts: int):
    """All exponent tuples of the given length summing to total, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in compositions_desc(total - head, parts - 1):
            yield (head,) + rest


def t_monomials(ring: RingSpec, deg: int):
    """Degree-deg t-exponent tuples, lex descending (t1-major)."""
    return list(compositions_desc(deg, ring.p))


def count_monomials(nvars: int, deg: int) -> int:
    if deg < 0:
        return 0
    return comb(deg + nvars - 1, nvars - 1)


def count_bidegree(ring: RingSpec, tdeg: int, xdeg: int) -> int:
    """Number of monomials of S with the given pure bidegree."""
    if tdeg < 0 or xdeg < 0:
        return 0
    return count_monomials(ring.p, tdeg) * count_monomials(ring.d, xdeg)


# ---------------------------------------------------------------------------
# text grammar: term (("+"|"-") term)*, term = coeff? factors, coeff = int or a/b,
# "*" implicit or explicit, "^" for powers, variables x1..xd / t1..tp.

_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+\s*/\s*\d+)|(?P<int>\d+)|(?P<var>[xt]\d+)|(?P<op>[-+*^()])|(?P<bad>\S))"
)


def _tokenize(text: str):
    toks = []
    for mo in _TOKEN.finditer(text):
        kind = mo.lastgroup
        if kind == "bad":
            raise InvalidInput(f"unexpected character {mo.group('bad')!r} in polynomial text")
        toks.append((kind, mo.group(kind)))
    return toks


def parse_polynomial(ring: RingSpec, text: str) -> Polynomial:
    """Parse the canonical textual syntax into a polynomial over the ring."""
    toks = _tokenize(text)
    if not toks:
        raise InvalidInput("empty polynomial text")
    fld = ring.field
    terms = []
    i = 0
    n = len(toks)

    def var_index(name: str):
        block, idx = name[0], int(name[1:]) - 1
        limit = ring.d if block == "x" else ring.p
        if idx < 0 or idx >= limit:
            raise InvalidInput(f"variable {name} out of range for this ring")
        return block, idx

    while i < n:
        sign = 1
        while i < n and toks[i][0] == "op" and toks[i][1] in "+-":
            if toks[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise InvalidInput("dangling sign in polynomial text")
        coeff = None
        kind, val = toks[i]
        if kind == "rat":
            num, den = (int(s) for s in val.replace(" ", "").split("/"))
            coeff = fld.from_fraction(num, den)
            i += 1
        elif kind == "int":
            coeff = fld.coerce(int(val))
            i += 1
        if coeff is None:
            coeff = fld.one
        if sign < 0:
            coeff = fld.neg(coeff)
        xexp = [0] * ring.d
        texp = [0] * ring.p
        saw_var = False
        while i < n:
            kind, val = toks[i]
            if kind == "op" and val == "*":
                i += 1
                continue
            if kind != "var":
                break
            block, idx = var_index(val)
            i += 1
            exp = 1
            if i < n and toks[i] == ("op", "^"):
                i += 1
                if i >= n or toks[i][0] != "int":
                    raise InvalidInput("expected integer exponent after '^'")
                exp = int(toks[i][1])
                i += 1
            if block == "x":
                xexp[idx] += exp
            else:
                texp[idx] += exp
            saw_var = True
        if not saw_var and fld.is_zero(coeff) and sign > 0:
            pass  # literal "0"
        terms.append((Monomial(tuple(texp), tuple(xexp)), coeff))
        if i < n and not (toks[i][0] == "op" and toks[i][1] in "+-"):
            raise InvalidInput(f"unexpected token {toks[i][1]!r} in polynomial text")
    return Polynomial(ring, terms)


def _format_coeff_and_vars(ring: RingSpec, m: Monomial, c) -> str:
    parts = []
    for name, e in zip(ring.xvars, m.xexp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    for name, e in zip(ring.tvars, m.texp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    body = "*".join(parts)
    cs = ring.field.fmt(c)
    if not body:
        return cs
    if cs == "1":
        return body
    if cs == "-1":
        return "-" + body
    return f"{cs}*{body}"


def format_polynomial(f: Polynomial, order: MonomialOrder = DEFAULT_ORDER) -> str:
    """Canonical text: terms descending under the order; round-trips via parse."""
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.terms(order):
        s = _format_coeff_and_vars(f.ring, m, c)
        if not out:
            out.append(s)
        elif s.startswith("-"):
            out.append("- " + s[1:])
        else:
            out.append("+ " + s)
    return " ".join(out)
