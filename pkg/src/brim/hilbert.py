"""Length tables over multi-index windows and multiplicity extraction.

Every multiplicity is the normalized leading coefficient of an integer-valued
length polynomial, read off exactly by iterated forward differences: for a
degree-D polynomial the D-th difference is constant and equals D! times the
leading coefficient.  Constancy over a trailing window (default width 3, with
one margin cell) is the stabilization certificate; windows extend adaptively
when stabilization fails.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DegreeDeficiency,
    InfiniteColength,
    InvalidInput,
    NoStabilization,
    WindowTooSmall,
)
from .poly import Monomial, Polynomial, t_monomials
from .rees import GradedSubmodule, SubmoduleSpec, product
from .ring import RingSpec


@dataclass(frozen=True)
class LengthQuery:
    """One length cell: l(M_{e.n+q} / E1^n1 ... Ek^nk M_q (+ quotient elems))."""

    modules: tuple
    exponents: tuple
    qdeg: int = 0
    quotient_elems: tuple = ()

    def ambient_tdeg(self) -> int:
        return sum(m.tdeg * n for m, n in zip(self.modules, self.exponents)) + self.qdeg


@dataclass
class LengthTable:
    """Exact lengths over an inclusive multi-index window."""

    axes: tuple
    window: tuple  # per-axis (lo, hi), inclusive
    values: dict  # multi-index tuple -> int

    def indices(self):
        return itertools.product(*(range(lo, hi + 1) for lo, hi in self.window))

    def get(self, idx) -> int:
        return self.values[tuple(idx)]

    def to_json(self) -> dict:
        vals = [self.values[idx] for idx in self.indices()]
        return {
            "axes": list(self.axes),
            "window": [[lo, hi] for lo, hi in self.window],
            "values": vals,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LengthTable":
        axes = tuple(doc["axes"])
        window = tuple((int(lo), int(hi)) for lo, hi in doc["window"])
        table = cls(axes, window, {})
        flat = doc["values"]
        for i, idx in enumerate(table.indices()):
            table.values[idx] = int(flat[i])
        return table


@dataclass
class MultiplicityResult:
    value: int
    kind: dict
    certificate: dict
    table: LengthTable


@dataclass(frozen=True)
class ExtractionConfig:
    n_max: int = 12
    stab_width: int = 3
    max_extensions: int = 2
    extension_step: int = 2


DEFAULT_CONFIG = ExtractionConfig()


class Evaluator:
    """Caches powers, products of powers, and length cells for one computation."""

    def __init__(self):
        self._lock = threading.Lock()
        self._products = {}
        self._lengths = {}
        self._pinned = []  # keep id()-keyed modules alive for the cache's lifetime

    def product_of_powers(self, modules, exponents) -> Optional[GradedSubmodule]:
        key = (tuple(id(m) for m in modules), tuple(exponents))
        with self._lock:
            self._pinned.extend(modules)
            if key in self._products:
                return self._products[key]
        parts = [m.power(n) for m, n in zip(modules, exponents) if n >= 1]
        result = None
        if parts:
            result = parts[0]
            for part in parts[1:]:
                result = product(result, part)
        with self._lock:
            self._products.setdefault(key, result)
            return self._products[key]

    def length(self, query: LengthQuery) -> int:
        key = (
            tuple(id(m) for m in query.modules),
            query.exponents,
            query.qdeg,
            query.quotient_elems,
        )
        with self._lock:
            self._pinned.extend(query.modules)
            if key in self._lengths:
                return self._lengths[key]
        value = _length_uncached(query, self)
        with self._lock:
            self._lengths.setdefault(key, value)
            return self._lengths[key]


def build_slice_submodule(
    ring: RingSpec,
    modules: Sequence[GradedSubmodule],
    exponents: Sequence[int],
    qdeg: int = 0,
    quotient_elems: Sequence[Polynomial] = (),
    evaluator: Optional[Evaluator] = None,
) -> GradedSubmodule:
    """The submodule E1^n1...Ek^nk * M_q + sum elem * S_(., amb - tdeg elem)
    of the ambient slice, presented by explicit generators."""
    evaluator = evaluator or Evaluator()
    amb = sum(m.tdeg * n for m, n in zip(modules, exponents)) + qdeg
    prod = evaluator.product_of_powers(modules, exponents)
    gens = []
    if prod is None:
        # empty product acts as the unit: the full degree-q slice
        gens = [
            Polynomial.from_monomial(ring, Monomial(tuple(pos), (0,) * ring.d), 1)
            for pos in t_monomials(ring, amb)
        ]
    elif qdeg == 0:
        gens = list(prod.gens)
    else:
        shifts = [Monomial(tuple(pos), (0,) * ring.d) for pos in t_monomials(ring, qdeg)]
        gens = [g.mul_term(s, 1) for g in prod.gens for s in shifts]
    for elem in quotient_elems:
        etd = elem.tdeg_if_homogeneous()
        if etd is None:
            raise InvalidInput("quotient elements must be t-homogeneous and nonzero")
        c = amb - etd
        if c < 0:
            raise InvalidInput("quotient element t-degree exceeds the ambient degree")
        if c == 0:
            gens.append(elem)
        else:
            for pos in t_monomials(ring, c):
                gens.append(elem.mul_term(Monomial(tuple(pos), (0,) * ring.d), 1))
    return GradedSubmodule(SubmoduleSpec(ring, amb, gens))


def _length_uncached(query: LengthQuery, evaluator: Evaluator) -> int:
    ring = query.modules[0].ring
    sub = build_slice_submodule(
        ring,
        query.modules,
        query.exponents,
        query.qdeg,
        query.quotient_elems,
        evaluator,
    )
    report = sub.colength_report()
    if not report.finite:
        raise InfiniteColength(
            "length cell is infinite; an input module violates the primarity gate"
        )
    return report.value


def length(query: LengthQuery, evaluator: Optional[Evaluator] = None) -> int:
    """Exact length of one cell.  Every module must pass the primarity gate
    and at least one exponent must be >= 1."""
    if len(query.modules) != len(query.exponents):
        raise InvalidInput("exponent count does not match module count")
    if not any(n >= 1 for n in query.exponents):
        raise InvalidInput("at least one exponent must be >= 1")
    if any(n < 0 for n in query.exponents):
        raise InvalidInput("exponents must be non-negative")
    for m in query.modules:
        m.primarity()
    amb = query.ambient_tdeg()
    for elem in query.quotient_elems:
        etd = elem.tdeg_if_homogeneous()
        if etd is None or etd > amb:
            raise InvalidInput("quotient elements must be t-homogeneous of degree <= ambient")
    return (evaluator or Evaluator()).length(query)


def table(
    modules: Sequence[GradedSubmodule],
    window: Sequence[tuple],
    q_window: Optional[tuple] = None,
    qdeg: int = 0,
    quotient_elems: Sequence[Polynomial] = (),
    evaluator: Optional[Evaluator] = None,
    threads: int = 1,
) -> LengthTable:
    """Evaluate lengths over the window; module powers are memoized.

    With q_window an extra trailing "q" axis is added; otherwise qdeg is fixed.
    """
    evaluator = evaluator or Evaluator()
    axes = tuple(f"n{i + 1}" for i in range(len(modules)))
    win = tuple((int(lo), int(hi)) for lo, hi in window)
    if q_window is not None:
        axes = axes + ("q",)
        win = win + ((int(q_window[0]), int(q_window[1])),)

    def cell(idx):
        if q_window is not None:
            exps, q = idx[:-1], idx[-1]
        else:
            exps, q = idx, qdeg
        return evaluator.length(
            LengthQuery(tuple(modules), tuple(exps), q, tuple(quotient_elems))
        )

    tbl = LengthTable(axes, win, {})
    indices = list(tbl.indices())
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for idx, val in zip(indices, pool.map(cell, indices)):
                tbl.values[idx] = val
    else:
        for idx in indices:
            tbl.values[idx] = cell(idx)
    return tbl


def finite_difference(tbl: LengthTable, orders: Sequence[int]) -> LengthTable:
    """Iterated forward differences, exact; may be negative pre-stabilization."""
    if len(orders) != len(tbl.axes):
        raise InvalidInput("one difference order per axis required")
    vals = dict(tbl.values)
    window = list(tbl.window)
    naxes = len(tbl.axes)
    for ax, k in enumerate(orders):
        if k < 0:
            raise InvalidInput("difference orders must be non-negative")
        for _ in range(k):
            lo, hi = window[ax]
            if hi - lo < 1:
                raise WindowTooSmall(
                    f"axis {tbl.axes[ax]} window too small for difference order {orders[ax]}"
                )
            new = {}
            for idx in itertools.product(
                *(
                    range(window[a][0], window[a][1] + (0 if a == ax else 1))
                    for a in range(naxes)
                )
            ):
                nxt = tuple(v + 1 if a == ax else v for a, v in enumerate(idx))
                new[idx] = vals[nxt] - vals[idx]
            window[ax] = (lo, hi - 1)
            vals = new
    return LengthTable(tbl.axes, tuple(window), vals)


def stabilized_difference(tbl: LengthTable, orders: Sequence[int], width: int = 3):
    """Certified constant of the iterated difference: the trailing width-box
    must be constant and every differenced axis must keep one margin cell.

    Returns (value, certificate) or raises NoStabilization.
    """
    diff = finite_difference(tbl, orders)
    trailing = []
    for (lo, hi) in diff.window:
        if hi - lo + 1 < width + 1:
            raise NoStabilization(
                f"window of length {hi - lo + 1} cannot certify width {width}"
            )
        trailing.append((hi - width + 1, hi))
    vals = {
        idx: diff.values[idx]
        for idx in itertools.product(*(range(lo, hi + 1) for lo, hi in trailing))
    }
    distinct = set(vals.values())
    if len(distinct) != 1:
        raise NoStabilization("trailing differences are not constant")
    value = distinct.pop()
    certificate = {
        "orders": list(orders),
        "width": width,
        "window": [[lo, hi] for lo, hi in trailing],
        "constant": value,
    }
    return value, certificate


def _univariate(
    module: GradedSubmodule,
    diff_order: int,
    kind: dict,
    config: ExtractionConfig,
    evaluator: Optional[Evaluator],
    deficiency_check: bool,
) -> MultiplicityResult:
    module.primarity()
    evaluator = evaluator or Evaluator()
    width = config.stab_width
    cap = max(config.n_max, diff_order + width + 1)
    extensions = config.max_extensions
    vals = {}
    n = 0
    while True:
        while n < cap:
            n += 1
            vals[(n,)] = evaluator.length(LengthQuery((module,), (n,)))
            if n < diff_order + width + 1:
                continue
            tbl = LengthTable(("n1",), ((1, n),), dict(vals))
            try:
                value, cert = stabilized_difference(tbl, (diff_order,), width)
            except NoStabilization:
                continue
            if deficiency_check and value == 0 and any(vals.values()):
                raise DegreeDeficiency(
                    f"order-{diff_order} differences stabilize at 0 on a nonzero table"
                )
            return MultiplicityResult(value, kind, cert, tbl)
        if extensions > 0:
            extensions -= 1
            cap += config.extension_step
        else:
            raise NoStabilization(
                f"no stabilization certificate within n <= {cap}"
            )


def ebr(
    module: GradedSubmodule,
    config: ExtractionConfig = DEFAULT_CONFIG,
    evaluator: Optional[Evaluator] = None,
) -> MultiplicityResult:
    """Buchsbaum-Rim multiplicity of a degree-1 submodule: the certified
    order-(d+p-1) difference of n -> l(F^n / E^n)."""
    if module.tdeg != 1:
        raise InvalidInput("ebr requires a submodule of the degree-1 slice")
    ring = module.ring
    D = ring.d + ring.p - 1
    return _univariate(module, D, {"type": "ebr"}, config, evaluator, True)


def tilde_ebr(
    module: GradedSubmodule,
    config: ExtractionConfig = DEFAULT_CONFIG,
    evaluator: Optional[Evaluator] = None,
) -> MultiplicityResult:
    """Higher-degree variant for E inside the degree-e slice; at e = 1 it
    agrees with ebr."""
    ring = module.ring
    D = ring.d + ring.p - 1
    return _univariate(module, D, {"type": "tilde_ebr"}, config, evaluator, True)


def _box_windows(dvec, k, config):
    width = config.stab_width
    base = max(4, 12 // k)
    return [max(d + width + 1, base) for d in dvec]


def _multigraded(
    modules,
    dvec,
    j: Optional[int],
    kind: dict,
    config: ExtractionConfig,
    evaluator: Optional[Evaluator],
    threads: int = 1,
) -> MultiplicityResult:
    for m in modules:
        m.primarity()
    evaluator = evaluator or Evaluator()
    width = config.stab_width
    k = len(modules)
    his = _box_windows(dvec, k, config)
    q_hi = None if j is None else max(4, j + width)
    extensions = config.max_extensions
    while True:
        window = [(1, hi) for hi in his]
        q_window = None if q_hi is None else (0, q_hi)
        tbl = table(
            modules, window, q_window=q_window, evaluator=evaluator, threads=threads
        )
        orders = list(dvec) + ([] if j is None else [j])
        try:
            value, cert = stabilized_difference(tbl, orders, width)
            return MultiplicityResult(value, kind, cert, tbl)
        except NoStabilization:
            if extensions > 0:
                extensions -= 1
                his = [hi + config.extension_step for hi in his]
                if q_hi is not None:
                    q_hi += config.extension_step
            else:
                raise


def mixed(
    modules: Sequence[GradedSubmodule],
    dvec: Sequence[int],
    config: ExtractionConfig = DEFAULT_CONFIG,
    evaluator: Optional[Evaluator] = None,
    threads: int = 1,
) -> MultiplicityResult:
    """Mixed multiplicity of type dvec: the certified mixed difference
    Delta_1^d1 ... Delta_k^dk of the multigraded length table."""
    modules = tuple(modules)
    dvec = tuple(int(d) for d in dvec)
    if len(modules) != len(dvec):
        raise InvalidInput("type vector length must match the module count")
    if any(d < 0 for d in dvec):
        raise InvalidInput("type vector entries must be non-negative")
    ring = modules[0].ring
    D = ring.d + ring.p - 1
    if sum(dvec) != D:
        raise InvalidInput(f"type vector must sum to d+p-1 = {D}")
    kind = {"type": "mixed", "dvec": list(dvec)}
    if len(modules) == 1:
        for m in modules:
            m.primarity()
        res = _univariate(modules[0], dvec[0], kind, config, evaluator, False)
        return res
    return _multigraded(modules, dvec, None, kind, config, evaluator, threads)


def assoc_mixed(
    modules: Sequence[GradedSubmodule],
    dvec: Sequence[int],
    j: int,
    config: ExtractionConfig = DEFAULT_CONFIG,
    evaluator: Optional[Evaluator] = None,
    threads: int = 1,
) -> MultiplicityResult:
    """Associated mixed multiplicity: adds the auxiliary ambient degree q as
    a table axis and differences it j times."""
    modules = tuple(modules)
    dvec = tuple(int(d) for d in dvec)
    if len(modules) != len(dvec):
        raise InvalidInput("type vector length must match the module count")
    if any(d < 0 for d in dvec) or j < 0:
        raise InvalidInput("type vector entries and j must be non-negative")
    ring = modules[0].ring
    D = ring.d + ring.p - 1
    if sum(dvec) + j != D:
        raise InvalidInput(f"j + |dvec| must equal d+p-1 = {D}")
    kind = {"type": "assoc", "j": j, "dvec": list(dvec)}
    return _multigraded(modules, dvec, j, kind, config, evaluator, threads)
