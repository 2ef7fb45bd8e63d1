"""Buchberger-style Groebner bases for R-submodules of a t-degree slice of S.

A t-homogeneous polynomial of degree e is a vector over R = k[x1..xd] whose
positions are the degree-e t-monomials; leading-term divisibility therefore
requires equal t-exponents and componentwise <= on x-exponents.  S-pairs are
only formed between elements whose leading positions coincide.  The product
(coprimality) criterion is not sound in the module setting and is not used;
the chain criterion is.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidInput, ResourceLimit
from .poly import DEFAULT_ORDER, Monomial, MonomialOrder, Polynomial, t_monomials
from .ring import RingSpec

STANDARD_MONOMIAL_CAP = 10**6
KEEP_MONOMIALS_CAP = 10_000
PAIR_CAP = 200_000


@dataclass(frozen=True)
class GeneratorSet:
    """Generators of an R-submodule of the degree-tdeg t-slice of S."""

    ring: RingSpec
    tdeg: int
    gens: tuple

    def __init__(self, ring: RingSpec, tdeg: int, gens):
        kept = []
        for g in gens:
            if not isinstance(g, Polynomial):
                raise InvalidInput("generators must be polynomials")
            if g.ring != ring:
                raise InvalidInput("generator from a different ring")
            if g.is_zero():
                continue
            if g.tdeg_if_homogeneous() != tdeg:
                raise InvalidInput(
                    f"generator {g} is not t-homogeneous of degree {tdeg}"
                )
            kept.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "tdeg", tdeg)
        object.__setattr__(self, "gens", tuple(kept))


class _Reducer:
    """Division engine: monic divisors indexed by leading position."""

    __slots__ = ("order", "field", "by_pos")

    def __init__(self, order: MonomialOrder, field):
        self.order = order
        self.field = field
        self.by_pos = {}

    def add(self, g: Polynomial):
        lt, _ = g.leading_term(self.order)
        tail = tuple((m, c) for m, c in g.items() if m != lt)
        self.by_pos.setdefault(lt.texp, []).append((lt.xexp, tail))

    def reduce(self, work: dict) -> dict:
        """Full normal form of the term dict; consumes and returns dicts."""
        order_key = self.order.key
        fld = self.field
        by_pos = self.by_pos
        heap = [tuple(-k for k in order_key(m)) + (m,) for m in work]
        heapq.heapify(heap)
        rem = {}
        while heap:
            m = heapq.heappop(heap)[-1]
            c = work.get(m)
            if c is None:
                continue
            divisor = None
            for lx, tail in by_pos.get(m.texp, ()):
                if all(a <= b for a, b in zip(lx, m.xexp)):
                    divisor = (lx, tail)
                    break
            if divisor is None:
                rem[m] = c
                del work[m]
                continue
            lx, tail = divisor
            shift = Monomial(
                (0,) * len(m.texp), tuple(b - a for a, b in zip(lx, m.xexp))
            )
            del work[m]  # the divisor is monic: leading terms cancel exactly
            for gm, gc in tail:
                mm = gm.mul(shift)
                acc = work.get(mm)
                if acc is None:
                    nc = fld.neg(fld.mul(c, gc))
                    if not fld.is_zero(nc):
                        work[mm] = nc
                        heapq.heappush(heap, tuple(-k for k in order_key(mm)) + (mm,))
                else:
                    acc = fld.sub(acc, fld.mul(c, gc))
                    if fld.is_zero(acc):
                        del work[mm]
                    else:
                        work[mm] = acc
        return rem


class GroebnerBasis:
    """Reduced basis: inter-reduced, monic, leading terms pairwise indivisible."""

    __slots__ = ("ring", "tdeg", "order", "elements", "_reducer")

    def __init__(self, ring, tdeg, order, elements):
        self.ring = ring
        self.tdeg = tdeg
        self.order = order
        elems = tuple(g.monic(order) for g in elements)
        self.elements = elems
        self._reducer = _Reducer(order, ring.field)
        for g in elems:
            self._reducer.add(g)

    def leading_terms(self):
        return tuple(g.leading_term(self.order)[0] for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def normal_form(v: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Remainder of v on division by the basis; idempotent, v - result in span."""
    if v.ring != basis.ring:
        raise InvalidInput("polynomial from a different ring")
    if not v.is_zero() and v.tdeg_if_homogeneous() != basis.tdeg:
        raise InvalidInput(
            f"normal form requires t-degree {basis.tdeg}, got {v.tdeg_if_homogeneous()}"
        )
    rem = basis._reducer.reduce(dict(v.items()))
    return Polynomial._raw(v.ring, rem)


def contains(basis: GroebnerBasis, v: Polynomial) -> bool:
    return normal_form(v, basis).is_zero()


def _spair(f: Polynomial, g: Polynomial, order) -> Polynomial:
    # leading positions agree; both monic
    lf, _ = f.leading_term(order)
    lg, _ = g.leading_term(order)
    lcm = tuple(max(a, b) for a, b in zip(lf.xexp, lg.xexp))
    mf = Monomial((0,) * len(lf.texp), tuple(l - a for l, a in zip(lcm, lf.xexp)))
    mg = Monomial((0,) * len(lg.texp), tuple(l - a for l, a in zip(lcm, lg.xexp)))
    return f.mul_term(mf, 1) - g.mul_term(mg, 1)


def _sugar(f: Polynomial) -> int:
    return max(m.xdeg for m, _ in f.items())


def _minimalize_monomials(ring, tdeg, order, monos):
    """Reduced basis for monomial generators: drop dominated monomials."""
    monos = sorted(set(monos))  # componentwise divisors sort first
    kept = []
    for m in monos:
        if not any(k.divides(m) for k in kept):
            kept.append(m)
    elems = [Polynomial.from_monomial(ring, m, 1) for m in kept]
    elems.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return GroebnerBasis(ring, tdeg, order, elems)


def buchberger(gset: GeneratorSet, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
    """Reduced Groebner basis; deterministic for a fixed input generator order.

    Pairs are processed by the normal strategy (sugar degree, then input
    index); pairs with distinct leading positions are never formed.
    """
    order = order or DEFAULT_ORDER
    ring = gset.ring
    if all(g.num_terms() == 1 for g in gset.gens):
        return _minimalize_monomials(
            ring, gset.tdeg, order, [g.leading_term(order)[0] for g in gset.gens]
        )

    reducer = _Reducer(order, ring.field)
    G = []
    lts = []
    sugars = []
    pairs = []
    done = set()

    def append(g):
        j = len(G)
        G.append(g)
        lts.append(g.leading_term(order)[0])
        sugars.append(_sugar(g))
        reducer.add(g)
        for i in range(j):
            if lts[i].texp != lts[j].texp:
                continue
            lcm_deg = sum(max(a, b) for a, b in zip(lts[i].xexp, lts[j].xexp))
            s = max(
                sugars[i] + lcm_deg - lts[i].xdeg,
                sugars[j] + lcm_deg - lts[j].xdeg,
            )
            heapq.heappush(pairs, (s, i, j))

    for g in gset.gens:
        append(g.monic(order))

    processed = 0
    while pairs:
        processed += 1
        if processed > PAIR_CAP:
            raise ResourceLimit("pair queue exceeded the desk-scale cap")
        _, i, j = heapq.heappop(pairs)
        key = (i, j)
        if key in done:
            continue
        lcm = tuple(max(a, b) for a, b in zip(lts[i].xexp, lts[j].xexp))
        chain = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            lk = lts[k]
            if lk.texp != lts[i].texp:
                continue
            if all(a <= b for a, b in zip(lk.xexp, lcm)):
                if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                    chain = True
                    break
        done.add(key)
        if chain:
            continue
        s = _spair(G[i], G[j], order)
        rem = reducer.reduce(dict(s.items()))
        if rem:
            append(Polynomial._raw(ring, rem).monic(order))

    # minimalize: drop elements whose leading term another leading term divides
    keep = []
    for i in range(len(G)):
        lt = lts[i]
        dominated = False
        for j, other in enumerate(lts):
            if i == j:
                continue
            if other.divides(lt) and (other != lt or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    minimal = [G[i] for i in keep]
    # tail-reduce each element against the others
    reduced = []
    for i, g in enumerate(minimal):
        others = GroebnerBasis(
            ring, gset.tdeg, order, [h for j, h in enumerate(minimal) if j != i]
        )
        lt, _ = g.leading_term(order)  # g is monic
        tail = Polynomial._raw(ring, {m: c for m, c in g.items() if m != lt})
        r = Polynomial.from_monomial(ring, lt, 1) + normal_form(tail, others)
        reduced.append(r)
    reduced.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return GroebnerBasis(ring, gset.tdeg, order, reduced)


def submodule_eq(a: GeneratorSet, b: GeneratorSet, order: Optional[MonomialOrder] = None) -> bool:
    """Span equality by mutual membership of generators."""
    if a.ring != b.ring:
        raise InvalidInput("submodules over different rings")
    if a.tdeg != b.tdeg:
        raise InvalidInput("submodules live in different t-degree slices")
    return bases_eq(buchberger(a, order), buchberger(b, order), a.gens, b.gens)


def bases_eq(basis_a: GroebnerBasis, basis_b: GroebnerBasis, gens_a, gens_b) -> bool:
    return all(contains(basis_b, g) for g in gens_a) and all(
        contains(basis_a, g) for g in gens_b
    )


@dataclass
class ColengthReport:
    finite: bool
    value: Optional[int]
    standard_monomials: Optional[tuple]


def colength(
    basis: GroebnerBasis,
    cap: int = STANDARD_MONOMIAL_CAP,
    keep_monomials: bool = True,
) -> ColengthReport:
    """Count standard monomials of the slice.

    Finite iff at every position the leading-term staircase contains a pure
    power of every x-variable; infinite is a valid report, not an error.
    """
    ring = basis.ring
    d = ring.d
    positions = t_monomials(ring, basis.tdeg)
    lead = {}
    for g in basis.elements:
        lt, _ = g.leading_term(basis.order)
        lead.setdefault(lt.texp, []).append(lt.xexp)

    per_pos = []
    for pos in positions:
        exps = sorted(set(lead.get(tuple(pos), [])))
        minimal = []
        for e in exps:
            if not any(all(a <= b for a, b in zip(f, e)) for f in minimal):
                minimal.append(e)
        bounds = []
        for i in range(d):
            pure = [e[i] for e in minimal if all(e[j] == 0 for j in range(d) if j != i)]
            if not pure:
                return ColengthReport(False, None, None)
            bounds.append(min(pure))
        per_pos.append((tuple(pos), minimal, bounds))

    total = 0
    monomials = []
    for pos, minimal, bounds in per_pos:
        box = 1
        for b in bounds:
            box *= b
        if box > cap:
            raise ResourceLimit("standard monomial enumeration exceeds the cap")
        for cand in itertools.product(*(range(b) for b in bounds)):
            if any(all(a <= b for a, b in zip(e, cand)) for e in minimal):
                continue
            total += 1
            if total > cap:
                raise ResourceLimit("standard monomial enumeration exceeds the cap")
            if keep_monomials and len(monomials) < KEEP_MONOMIALS_CAP:
                monomials.append(Monomial(pos, cand))
    kept = None
    if keep_monomials and total <= KEEP_MONOMIALS_CAP:
        kept = tuple(sorted(monomials, key=basis.order.key))
    return ColengthReport(True, total, kept)
