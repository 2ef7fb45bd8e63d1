"""Superficial elements, reduction and joint-reduction deciders, and the
multiplicity-equality criterion checkers.

The deciders are honest semidecision procedures: the defining equalities are
quantified over all large exponents, so a single verified exponent certifies
a True verdict (the equality propagates upward by multiplying through), while
exhaustion of the window yields InconclusiveWithinWindow together with the
last concrete counterexample monomial.

Superficiality is verified by exact linear algebra on finite-dimensional
slice quotients: the colon condition holds at a cell exactly when
multiplication by the candidate is injective on U/V, where U is the
intersection bound and V the expected colon value.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Optional, Sequence

from .errors import (
    InfiniteColength,
    InvalidDegree,
    InvalidInput,
    NotDeskCase,
    NotMember,
    NotSubmodule,
    SuperficialSamplingFailed,
    SupportOffOrigin,
    ZeroModule,
)
from .groebner import normal_form
from .hilbert import (
    DEFAULT_CONFIG,
    Evaluator,
    ExtractionConfig,
    MultiplicityResult,
    build_slice_submodule,
    ebr,
    mixed,
)
from .linalg import PairedSpan
from .poly import DEFAULT_ORDER, Monomial, Polynomial, t_monomials
from .rees import GradedSubmodule, SubmoduleSpec, mprimary_check


class Verdict(Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive-within-window"


@dataclass
class Decision:
    verdict: Verdict
    witness_n0: Optional[int] = None
    counterexample: Optional[str] = None
    window: dict = dc_field(default_factory=dict)


@dataclass
class SuperficialCandidate:
    element: Polynomial
    seed: object
    coefficients: tuple


@dataclass(frozen=True)
class SuperficialWindow:
    """Window for the defining colon equality: n1 in [c1, c1+n1_span],
    remaining exponents in [0, other_max], q in [0, q_max]."""

    c1: int = 1
    n1_span: int = 2
    other_max: int = 1
    q_max: int = 1

    def describe(self) -> dict:
        return {
            "c1": self.c1,
            "n1_span": self.n1_span,
            "other_max": self.other_max,
            "q_max": self.q_max,
        }


@dataclass
class CriterionReport:
    lhs_mult: MultiplicityResult
    rhs_mult: MultiplicityResult
    heights_ok: bool
    radical_ok: bool
    decision: Decision
    consistent: bool
    candidates: tuple = ()
    values_by_seed: dict = dc_field(default_factory=dict)


def sample_superficial(modules: Sequence[GradedSubmodule], seed) -> SuperficialCandidate:
    """Deterministic random field-linear combination of the first module's
    canonical generators; the reduced basis is linearly independent, so the
    combination is nonzero."""
    if not modules:
        raise InvalidInput("need at least one module")
    e1 = modules[0]
    gens = e1.gens
    if not gens:
        raise ZeroModule("cannot sample from the zero module")
    rng = random.Random(f"superficial:{seed}")
    fld = e1.ring.field
    coeffs = tuple(fld.random_nonzero(rng) for _ in gens)
    elem = Polynomial.zero(e1.ring)
    for c, g in zip(coeffs, gens):
        elem = elem + g.scale(c)
    return SuperficialCandidate(element=elem, seed=seed, coefficients=coeffs)


def _std_monomial_list(sub: GradedSubmodule):
    report = sub.colength_report()
    if not report.finite:
        raise InfiniteColength("slice quotient is not finite dimensional")
    return list(report.standard_monomials or ())


def _coords(poly: Polynomial, index: dict, width: int, fld):
    vec = [fld.zero] * width
    for m, c in poly.items():
        vec[index[m]] = c
    return vec


def _injective_on_quotient(x, u_sub, v_sub, w_sub):
    """Is multiplication by x injective on U/V as a map into A'/W?

    Returns None when injective, else a witness polynomial in U \\ V whose
    x-multiple lies in W.
    """
    ring = u_sub.ring
    fld = ring.field
    sm_v = _std_monomial_list(v_sub)
    sm_w = _std_monomial_list(w_sub)
    v_index = {m: i for i, m in enumerate(sm_v)}
    w_index = {m: i for i, m in enumerate(sm_w)}
    if not sm_v:
        return None  # U/V = 0
    span = PairedSpan(fld)
    xshifts = [
        Monomial((0,) * ring.p, tuple(1 if j == i else 0 for j in range(ring.d)))
        for i in range(ring.d)
    ]
    queue = [normal_form(g, v_sub.basis) for g in u_sub.gens]
    while queue:
        rep = queue.pop(0)
        if rep.is_zero():
            continue
        v_vec = _coords(rep, v_index, len(sm_v), fld)
        image = normal_form(x * rep, w_sub.basis)
        w_vec = _coords(image, w_index, len(sm_w), fld)
        status, kernel = span.add(w_vec, v_vec)
        if status == "kernel":
            witness = Polynomial(
                ring, {m: c for m, c in zip(sm_v, kernel) if not fld.is_zero(c)}
            )
            return witness
        if status == "new":
            for shift in xshifts:
                queue.append(normal_form(rep.mul_term(shift, 1), v_sub.basis))
    return None


def verify_superficial(
    x: Polynomial,
    modules: Sequence[GradedSubmodule],
    window: Optional[SuperficialWindow] = None,
    quotient_elems: Sequence[Polynomial] = (),
    evaluator: Optional[Evaluator] = None,
) -> Decision:
    """Check the defining colon equality of a superficial element over the
    window; True means the equality held at every tested cell."""
    window = window or SuperficialWindow()
    modules = tuple(modules)
    if not modules:
        raise InvalidInput("need at least one module")
    e1 = modules[0]
    ring = e1.ring
    if not x.is_zero() and x.tdeg_if_homogeneous() != e1.tdeg:
        raise InvalidDegree(
            f"candidate t-degree {x.tdeg_if_homogeneous()} != module degree {e1.tdeg}"
        )
    if not x.is_zero() and not e1.contains(x):
        raise NotMember("candidate is not an element of the first module")
    for m in modules:
        m.primarity()
    evaluator = evaluator or Evaluator()
    quotient_elems = tuple(quotient_elems)
    k = len(modules)
    c1 = window.c1
    rest_ranges = [range(0, window.other_max + 1)] * (k - 1)
    for n1 in range(max(c1, 1), max(c1, 1) + window.n1_span + 1):
        for rest in itertools.product(*rest_ranges):
            for q in range(0, window.q_max + 1):
                slack = n1 - 1 - c1 + q
                if slack < 0:
                    continue
                amb_colon = e1.tdeg * (n1 - 1) + sum(
                    m.tdeg * r for m, r in zip(modules[1:], rest)
                ) + q
                if amb_colon < 1:
                    # degree-0 ambient slice: the colon condition degenerates
                    # to x in E1, which is already gated above
                    continue
                exps_v = (n1 - 1,) + rest
                exps_w = (n1,) + rest
                exps_u = (c1,) + rest
                v_sub = build_slice_submodule(
                    ring, modules, exps_v, q, quotient_elems, evaluator
                )
                w_sub = build_slice_submodule(
                    ring, modules, exps_w, q, quotient_elems, evaluator
                )
                u_sub = build_slice_submodule(
                    ring, modules, exps_u, slack, quotient_elems, evaluator
                )
                witness = _injective_on_quotient(x, u_sub, v_sub, w_sub)
                if witness is not None:
                    return Decision(
                        verdict=Verdict.FALSE,
                        witness_n0=None,
                        counterexample=str(witness),
                        window={
                            **window.describe(),
                            "failed_cell": {"n": [n1, *rest], "q": q},
                        },
                    )
    return Decision(
        verdict=Verdict.TRUE, witness_n0=c1, counterexample=None, window=window.describe()
    )


def _first_missing(target: GradedSubmodule, inside: GradedSubmodule):
    """Leading monomial of the first generator of target not inside."""
    basis = inside.basis
    for g in target.gens:
        r = normal_form(g, basis)
        if not r.is_zero():
            lt, _ = r.leading_term(DEFAULT_ORDER)
            return str(Polynomial.from_monomial(target.ring, lt, 1))
    return None


def is_reduction(
    u: GradedSubmodule,
    e: GradedSubmodule,
    n_max: int = 6,
    verify_propagation: bool = True,
) -> Decision:
    """Decide whether U is a reduction of E: E^(n+1) = U E^n at some n <= n_max.

    One verified exponent suffices (multiplying the equality by E propagates
    it); exhaustion returns InconclusiveWithinWindow with the last uncovered
    monomial, except that an infinite-colength U against an m-primary E is a
    permanent failure and yields False.
    """
    if u.ring != e.ring or u.tdeg != e.tdeg:
        raise InvalidInput("reduction requires submodules of the same slice")
    for g in u.gens:
        if not e.contains(g):
            raise NotSubmodule("U is not contained in E")
    window = {"n_max": n_max}
    e_primary = True
    try:
        e.primarity()
    except (InfiniteColength, SupportOffOrigin):
        e_primary = False
    if e_primary and not u.colength_report().finite:
        # a reduction of an m-primary module must itself be m-primary
        from .rees import product as _product

        ce = _first_missing(e.power(2), _product(u, e))
        return Decision(Verdict.FALSE, None, ce, {**window, "reason": "infinite colength"})

    from .rees import product as _product

    counterexample = None
    for n in range(1, n_max + 1):
        lhs = _product(u, e.power(n))
        target = e.power(n + 1)
        missing = _first_missing(target, lhs)
        if missing is None:
            if verify_propagation:
                nxt = _first_missing(e.power(n + 2), _product(u, e.power(n + 1)))
                assert nxt is None, "reduction equality failed to propagate"
            return Decision(Verdict.TRUE, n, None, window)
        counterexample = missing
    return Decision(Verdict.INCONCLUSIVE, None, counterexample, window)


def _joint_lhs(xs, modules, n, q, evaluator):
    """Generators of [sum_i x_i * prod_{j != i} E_j] * (prod E)^(n-1) * M_q."""
    ring = modules[0].ring
    k = len(modules)
    total_e = sum(m.tdeg for m in modules)
    amb = n * total_e + q
    gens = []
    shifts = [Monomial(tuple(pos), (0,) * ring.d) for pos in t_monomials(ring, q)]
    for i in range(k):
        mods = tuple(modules[:i] + modules[i + 1 :]) + tuple(modules)
        exps = (1,) * (k - 1) + (n - 1,) * k
        part = evaluator.product_of_powers(mods, exps)
        base = [xs[i]] if part is None else [xs[i] * g for g in part.gens]
        if q == 0:
            gens.extend(base)
        else:
            gens.extend(g.mul_term(s, 1) for g in base for s in shifts)
    return GradedSubmodule(SubmoduleSpec(ring, amb, gens))


def is_joint_reduction(
    xs: Sequence[Polynomial],
    modules: Sequence[GradedSubmodule],
    n_max: int = 6,
    q_max: int = 2,
    evaluator: Optional[Evaluator] = None,
) -> Decision:
    """Decide the joint-reduction equality at some n <= n_max, for all
    q <= q_max; True at the first verified n (the equality propagates)."""
    xs = tuple(xs)
    modules = tuple(modules)
    if len(xs) != len(modules) or not xs:
        raise InvalidInput("need one element per module")
    for x, m in zip(xs, modules):
        if x.is_zero() or x.tdeg_if_homogeneous() != m.tdeg:
            raise InvalidDegree("element t-degree does not match its module")
        if not m.contains(x):
            raise NotMember(f"{x} is not in its module")
    for m in modules:
        m.primarity()
    evaluator = evaluator or Evaluator()
    ring = modules[0].ring
    window = {"n_max": n_max, "q_max": q_max}
    counterexample = None
    shifts_cache = {}
    for n in range(1, n_max + 1):
        ok = True
        for q in range(0, q_max + 1):
            lhs = _joint_lhs(xs, modules, n, q, evaluator)
            rhs = evaluator.product_of_powers(modules, (n,) * len(modules))
            if q == 0:
                rhs_gens = rhs.gens
            else:
                shifts = shifts_cache.setdefault(
                    q,
                    [Monomial(tuple(pos), (0,) * ring.d) for pos in t_monomials(ring, q)],
                )
                rhs_gens = [g.mul_term(s, 1) for g in rhs.gens for s in shifts]
            missing = None
            basis = lhs.basis
            for g in rhs_gens:
                r = normal_form(g, basis)
                if not r.is_zero():
                    lt, _ = r.leading_term(DEFAULT_ORDER)
                    missing = str(Polynomial.from_monomial(ring, lt, 1))
                    break
            if missing is not None:
                ok = False
                if q == 0:
                    counterexample = missing
                elif counterexample is None:
                    counterexample = missing
                break
        if ok:
            return Decision(Verdict.TRUE, n, None, window)
    return Decision(Verdict.INCONCLUSIVE, None, counterexample, window)


def mn_joint_reduction_witness(
    xs: Sequence[Polynomial],
    n: int,
    n_max: int = 6,
    q_max: int = 2,
    evaluator: Optional[Evaluator] = None,
) -> Decision:
    """Joint-reduction decision for the sequence ((x_i) + m^n F); the gate
    requires the submodule generated by the x_i to be m-primary in F."""
    xs = tuple(xs)
    if not xs:
        raise InvalidInput("need at least one element")
    ring = xs[0].ring
    for x in xs:
        if x.is_zero() or x.tdeg_if_homogeneous() != 1:
            raise InvalidDegree("elements must be t-homogeneous of degree 1")
    span = GradedSubmodule(SubmoduleSpec(ring, 1, xs))
    mprimary_check(span)  # propagate gate failures
    if n < 1:
        raise InvalidInput("n must be >= 1")
    from .poly import compositions_desc

    mnf_gens = [
        Polynomial.from_monomial(ring, Monomial(tuple(pos), tuple(xe)), 1)
        for pos in t_monomials(ring, 1)
        for xe in compositions_desc(n, ring.d)
    ]
    modules = [
        GradedSubmodule(SubmoduleSpec(ring, 1, [x] + mnf_gens)) for x in xs
    ]
    return is_joint_reduction(xs, modules, n_max, q_max, evaluator)


def rees_equivalence_check(
    u: GradedSubmodule,
    e: GradedSubmodule,
    n_max: int = 6,
    config: ExtractionConfig = DEFAULT_CONFIG,
) -> CriterionReport:
    """Reduction iff multiplicity equality, for m-primary U <= E in F."""
    if u.tdeg != 1 or e.tdeg != 1:
        raise InvalidInput("the equivalence check requires degree-1 submodules")
    for g in u.gens:
        if not e.contains(g):
            raise NotSubmodule("U is not contained in E")
    u.primarity()
    e.primarity()
    evaluator = Evaluator()
    lhs = ebr(u, config, evaluator)
    rhs = ebr(e, config, evaluator)
    decision = is_reduction(u, e, n_max)
    consistent = (lhs.value == rhs.value) == (decision.verdict is Verdict.TRUE)
    return CriterionReport(
        lhs_mult=lhs,
        rhs_mult=rhs,
        heights_ok=True,
        radical_ok=True,
        decision=decision,
        consistent=consistent,
    )


def converse_criterion(
    xs: Sequence[Polynomial],
    modules: Sequence[GradedSubmodule],
    n_max: int = 6,
    q_max: int = 2,
    config: ExtractionConfig = DEFAULT_CONFIG,
) -> CriterionReport:
    """Multiplicity equality predicts joint reduction (and inequality predicts
    its absence); only the m-primary case with k = d+p-1 is implemented."""
    xs = tuple(xs)
    modules = tuple(modules)
    if len(xs) != len(modules) or not xs:
        raise InvalidInput("need one element per module")
    ring = modules[0].ring
    k = len(xs)
    heights_ok = k == ring.d + ring.p - 1
    if not heights_ok:
        raise NotDeskCase(f"k = {k} != d+p-1 = {ring.d + ring.p - 1}")
    if any(m.tdeg != 1 for m in modules):
        raise NotDeskCase("all modules must sit inside the degree-1 slice")
    for x, m in zip(xs, modules):
        if x.is_zero() or x.tdeg_if_homogeneous() != 1:
            raise InvalidDegree("elements must be t-homogeneous of degree 1")
        if not m.contains(x):
            raise NotMember(f"{x} is not in its module")
    span = GradedSubmodule(SubmoduleSpec(ring, 1, xs))
    try:
        span.primarity()
        for m in modules:
            m.primarity()
    except (InfiniteColength, SupportOffOrigin) as exc:
        raise NotDeskCase(f"primarity gate failed: {exc}") from exc
    radical_ok = True
    evaluator = Evaluator()
    lhs = ebr(span, config, evaluator)
    rhs = mixed(modules, (1,) * k, config, evaluator)
    decision = is_joint_reduction(xs, modules, n_max, q_max, evaluator)
    if lhs.value == rhs.value:
        consistent = decision.verdict is Verdict.TRUE
    else:
        consistent = decision.verdict is not Verdict.TRUE and (
            decision.counterexample is not None
        )
    return CriterionReport(
        lhs_mult=lhs,
        rhs_mult=rhs,
        heights_ok=heights_ok,
        radical_ok=radical_ok,
        decision=decision,
        consistent=consistent,
    )


def _sample_verified_sequence(e_list, seed, window, evaluator, attempts=5):
    last_failure = "no attempt made"
    for attempt in range(attempts):
        derived = f"{seed}:{attempt}"
        candidates = []
        elems = []
        ok = True
        for j in range(len(e_list)):
            cand = sample_superficial(e_list[j:], f"{derived}#{j}")
            decision = verify_superficial(
                cand.element, e_list[j:], window, tuple(elems), evaluator
            )
            if decision.verdict is not Verdict.TRUE:
                last_failure = f"superficiality failed at position {j}: {decision.counterexample}"
                ok = False
                break
            candidates.append(cand)
            elems.append(cand.element)
        if not ok:
            continue
        ring = e_list[0].ring
        span = GradedSubmodule(SubmoduleSpec(ring, 1, elems))
        try:
            span.primarity()
        except (InfiniteColength, SupportOffOrigin) as exc:
            # global colengths only equal local lengths for quotients supported
            # at the origin, so such a sample cannot be used
            last_failure = f"sampled span fails the primarity gate: {exc}"
            continue
        return candidates, span
    raise SuperficialSamplingFailed(
        f"no verified superficial sequence after {attempts} attempts (seed {seed});"
        f" last failure: {last_failure}"
    )


def risler_teissier_check(
    modules: Sequence[GradedSubmodule],
    dvec: Sequence[int],
    seeds: Sequence = (0, 1, 2),
    window: Optional[SuperficialWindow] = None,
    config: ExtractionConfig = DEFAULT_CONFIG,
) -> CriterionReport:
    """Mixed multiplicity equals the multiplicity of a verified superficial
    sequence, exactly and independently of the seed."""
    modules = tuple(modules)
    dvec = tuple(int(d) for d in dvec)
    if len(modules) != len(dvec):
        raise InvalidInput("type vector length must match the module count")
    ring = modules[0].ring
    if sum(dvec) != ring.d + ring.p - 1:
        raise InvalidInput("type vector must sum to d+p-1")
    if any(m.tdeg != 1 for m in modules):
        raise InvalidInput("the check requires degree-1 submodules")
    for m in modules:
        m.primarity()
    window = window or SuperficialWindow()
    evaluator = Evaluator()
    lhs = mixed(modules, dvec, config, evaluator)
    e_list = [m for m, d in zip(modules, dvec) for _ in range(d)]
    all_candidates = []
    values = {}
    rhs = None
    for seed in seeds:
        candidates, span = _sample_verified_sequence(e_list, seed, window, evaluator)
        rhs = ebr(span, config, Evaluator())
        values[str(seed)] = rhs.value
        all_candidates.extend(candidates)
    vals = set(values.values())
    consistent = len(vals) == 1 and vals == {lhs.value}
    decision = Decision(
        verdict=Verdict.TRUE if consistent else Verdict.INCONCLUSIVE,
        witness_n0=window.c1,
        counterexample=None,
        window={**window.describe(), "seeds": [str(s) for s in seeds]},
    )
    return CriterionReport(
        lhs_mult=lhs,
        rhs_mult=rhs,
        heights_ok=True,
        radical_ok=True,
        decision=decision,
        consistent=consistent,
        candidates=tuple(all_candidates),
        values_by_seed=values,
    )
