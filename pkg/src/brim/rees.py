"""Graded submodules of t-degree slices of S and their powers and products.

A submodule E of the degree-e slice generates an ideal of S through the
degree-one embedding w(h) = h1*t1 + ... + hp*tp; graded powers E^n live in the
degree n*e slice and are computed iteratively with inter-reduction (the
cached reduced Groebner basis is the canonical generator set at each step).

Lengths computed downstream are global standard-monomial counts; they agree
with lengths over the local ring at the origin exactly when the quotient is
supported there, which is what mprimary_check certifies.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import InfiniteColength, InvalidInput, ResourceLimit, SupportOffOrigin
from .groebner import GeneratorSet, GroebnerBasis, buchberger, colength, contains
from .poly import DEFAULT_ORDER, Monomial, Polynomial, parse_polynomial, t_monomials
from .ring import RingSpec  # noqa: F401  (re-exported: ambient data lives here)

PRODUCT_GENERATOR_CAP = 50_000


@dataclass(frozen=True)
class SubmoduleSpec:
    """Canonical form of a submodule presentation: t-homogeneous generators."""

    ring: RingSpec
    tdeg: int
    gens: tuple

    def __init__(self, ring: RingSpec, tdeg: int, gens):
        if tdeg < 1:
            raise InvalidInput("slice degree must be >= 1")
        gset = GeneratorSet(ring, tdeg, tuple(gens))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "tdeg", tdeg)
        object.__setattr__(self, "gens", gset.gens)


@dataclass(frozen=True)
class PrimarityCertificate:
    """colength = dim_k of the quotient; m^nakayama_exponent * F^e <= E."""

    colength: int
    nakayama_exponent: int


class GradedSubmodule:
    """A submodule of a slice with a lazily computed, cached reduced basis."""

    def __init__(self, spec: SubmoduleSpec):
        self.spec = spec
        self._lock = threading.RLock()  # cached properties call one another
        self._basis = None
        self._colength = None
        self._primarity = None
        self._powers = {1: self}

    @classmethod
    def from_gens(cls, ring: RingSpec, tdeg: int, gens) -> "GradedSubmodule":
        polys = [
            parse_polynomial(ring, g) if isinstance(g, str) else g for g in gens
        ]
        return cls(SubmoduleSpec(ring, tdeg, polys))

    @classmethod
    def from_vectors(cls, ring: RingSpec, tdeg: int, vectors) -> "GradedSubmodule":
        """Generators given as coefficient vectors over the degree-tdeg
        t-monomial basis (lex descending, t1-major)."""
        positions = t_monomials(ring, tdeg)
        polys = []
        for vec in vectors:
            if len(vec) != len(positions):
                raise InvalidInput(
                    f"vector length {len(vec)} != {len(positions)} positions in degree {tdeg}"
                )
            acc = Polynomial.zero(ring)
            for coeff_poly, pos in zip(vec, positions):
                h = (
                    parse_polynomial(ring, coeff_poly)
                    if isinstance(coeff_poly, str)
                    else coeff_poly
                )
                if not h.is_zero() and h.tdeg_if_homogeneous() != 0:
                    raise InvalidInput("vector entries must be x-polynomials")
                acc = acc + h.mul_term(Monomial(tuple(pos), (0,) * ring.d), 1)
            polys.append(acc)
        return cls(SubmoduleSpec(ring, tdeg, polys))

    @property
    def ring(self) -> RingSpec:
        return self.spec.ring

    @property
    def tdeg(self) -> int:
        return self.spec.tdeg

    @property
    def basis(self) -> GroebnerBasis:
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    self._basis = buchberger(
                        GeneratorSet(self.ring, self.tdeg, self.spec.gens),
                        DEFAULT_ORDER,
                    )
        return self._basis

    @property
    def gens(self) -> tuple:
        """Canonical (inter-reduced) generators: the reduced basis elements."""
        return self.basis.elements

    def colength_report(self):
        if self._colength is None:
            with self._lock:
                if self._colength is None:
                    self._colength = colength(self.basis)
        return self._colength

    def contains(self, v: Polynomial) -> bool:
        return contains(self.basis, v)

    def primarity(self) -> PrimarityCertificate:
        """Cached mprimary_check; raises on every call if the gate failed."""
        if self._primarity is None:
            with self._lock:
                if self._primarity is None:
                    try:
                        self._primarity = mprimary_check(self)
                    except (InfiniteColength, SupportOffOrigin) as exc:
                        self._primarity = exc
        if isinstance(self._primarity, Exception):
            raise self._primarity
        return self._primarity

    def power(self, n: int) -> "GradedSubmodule":
        if n < 1:
            raise InvalidInput("power exponent must be >= 1")
        with self._lock:
            cached = self._powers.get(n)
        if cached is not None:
            return cached
        prev = self.power(n - 1)
        result = product(self, prev)
        with self._lock:
            self._powers.setdefault(n, result)
            return self._powers[n]

    def __repr__(self):
        return f"<submodule tdeg={self.tdeg} gens={len(self.spec.gens)}>"


def embed_w(ring: RingSpec, h) -> Polynomial:
    """Degree-one embedding of a length-p vector of x-polynomials: sum h_i*t_i."""
    if len(h) != ring.p:
        raise InvalidInput(f"vector length {len(h)} != rank p = {ring.p}")
    acc = Polynomial.zero(ring)
    for i, entry in enumerate(h):
        hp = parse_polynomial(ring, entry) if isinstance(entry, str) else entry
        if not hp.is_zero() and hp.tdeg_if_homogeneous() != 0:
            raise InvalidInput("vector entries must be x-polynomials")
        texp = tuple(1 if j == i else 0 for j in range(ring.p))
        acc = acc + hp.mul_term(Monomial(texp, (0,) * ring.d), 1)
    return acc


def product(a: GradedSubmodule, b: GradedSubmodule) -> GradedSubmodule:
    """Submodule generated by pairwise products of canonical generators."""
    if a.ring != b.ring:
        raise InvalidInput("product of submodules over different rings")
    ga, gb = a.gens, b.gens
    if len(ga) * len(gb) > PRODUCT_GENERATOR_CAP:
        raise ResourceLimit(
            f"product would create {len(ga) * len(gb)} generators (cap {PRODUCT_GENERATOR_CAP})"
        )
    gens = [f * g for f in ga for g in gb]
    return GradedSubmodule(SubmoduleSpec(a.ring, a.tdeg + b.tdeg, gens))


def power(e: GradedSubmodule, n: int) -> GradedSubmodule:
    """n-th graded power, computed iteratively with inter-reduction."""
    return e.power(n)


def mprimary_check(e: GradedSubmodule) -> PrimarityCertificate:
    """Certify that the slice quotient has finite length and is supported at
    the origin: colength finite and x_i^N * mu in E for every variable and
    every position, N = colength.  The certified exponent is minimized."""
    report = e.colength_report()
    if not report.finite:
        raise InfiniteColength("quotient by the submodule has infinite length")
    ell = report.value
    ring = e.ring
    positions = t_monomials(ring, e.tdeg)

    def pure_powers_contained(n: int) -> Polynomial | None:
        """First missing x_i^n * mu, or None when all are contained."""
        for i in range(ring.d):
            xexp = tuple(n if j == i else 0 for j in range(ring.d))
            for pos in positions:
                mono = Polynomial.from_monomial(ring, Monomial(tuple(pos), xexp), 1)
                if not e.contains(mono):
                    return mono
        return None

    witness = pure_powers_contained(ell)
    if witness is not None:
        raise SupportOffOrigin(
            f"colength {ell} is finite but {witness} is outside the submodule"
        )
    # minimal pure-power exponent, by binary search (the property is upward closed)
    lo, hi = 0, ell
    while lo < hi:
        mid = (lo + hi) // 2
        if pure_powers_contained(mid) is None:
            hi = mid
        else:
            lo = mid + 1
    n_pure = lo
    # m^ell kills the quotient (strict chain); pure powers give d*(n-1)+1
    nak = min(ell, ring.d * (n_pure - 1) + 1) if n_pure > 0 else 0
    return PrimarityCertificate(colength=ell, nakayama_exponent=nak)
