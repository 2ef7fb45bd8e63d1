"""Batch front-end: JSON spec files in, deterministic JSON reports out.

Exit codes: 0 success, 2 user error, 3 computational limit, 4 internal
invariant failure.  Reports are byte-identical for identical inputs and seed;
wall-clock timing and execution knobs (thread count, cache mode) live in the
separate "runtime" key, which golden comparisons drop.

Length tables backing the multiplicity commands are cached on disk under
./.brim-cache/, keyed by a SHA-256 of the canonicalized spec plus the
semantic command; BRIM_CACHE=off disables the cache.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .errors import BrimError, ComputationLimit, InvalidInput
from .hilbert import (
    DEFAULT_CONFIG,
    Evaluator,
    LengthQuery,
    LengthTable,
    MultiplicityResult,
    assoc_mixed,
    ebr,
    length,
    mixed,
    stabilized_difference,
    tilde_ebr,
)
from .jointred import (
    CriterionReport,
    Decision,
    SuperficialWindow,
    converse_criterion,
    is_joint_reduction,
    is_reduction,
    mn_joint_reduction_witness,
    rees_equivalence_check,
    risler_teissier_check,
    verify_superficial,
)
from .koszul import KoszulSpec, g_mult_et
from .poly import Polynomial, parse_polynomial
from .rees import GradedSubmodule, RingSpec
from .ring import field_from_config

CACHE_DIR = ".brim-cache"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class SpecFile:
    """Parsed spec document: ring block, named modules, named elements."""

    def __init__(self, doc: dict):
        if not isinstance(doc, dict) or "ring" not in doc:
            raise InvalidInput("spec file must be a JSON object with a 'ring' block")
        rb = doc["ring"]
        try:
            self.ring = RingSpec(
                d=int(rb["d"]), p=int(rb["p"]), field=field_from_config(rb.get("field", "QQ"))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed ring block: {exc}") from exc
        self.modules = {}
        for name, block in (doc.get("modules") or {}).items():
            if not name:
                raise InvalidInput("module names must be nonempty")
            tdeg = int(block.get("tdeg", 1))
            gens = block.get("gens", [])
            strings = [g for g in gens if isinstance(g, str)]
            vectors = [g for g in gens if isinstance(g, list)]
            if strings and vectors:
                raise InvalidInput(
                    f"module {name}: mix of polynomial and vector generators"
                )
            if vectors:
                self.modules[name] = GradedSubmodule.from_vectors(self.ring, tdeg, vectors)
            else:
                self.modules[name] = GradedSubmodule.from_gens(self.ring, tdeg, strings)
        self.elements = {}
        for name, text in (doc.get("elements") or {}).items():
            if not name:
                raise InvalidInput("element names must be nonempty")
            self.elements[name] = parse_polynomial(self.ring, text)
        self.doc = doc

    def module(self, name: str) -> GradedSubmodule:
        if name not in self.modules:
            raise InvalidInput(f"unknown module {name!r}")
        return self.modules[name]

    def element(self, name: str) -> Polynomial:
        if name not in self.elements:
            raise InvalidInput(f"unknown element {name!r}")
        return self.elements[name]


def load_specfile(path: str) -> SpecFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise InvalidInput(f"spec file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"spec file is not valid JSON: {exc}") from exc
    return SpecFile(doc)


# ---------------------------------------------------------------------------
# serialization of result objects


def mult_to_json(res: MultiplicityResult) -> dict:
    return {
        "value": res.value,
        "kind": res.kind,
        "certificate": res.certificate,
        "table": res.table.to_json(),
    }


def decision_to_json(dec: Decision) -> dict:
    return {
        "verdict": dec.verdict.value,
        "witness_n0": dec.witness_n0,
        "counterexample": dec.counterexample,
        "window": dec.window,
    }


def criterion_to_json(rep: CriterionReport) -> dict:
    out = {
        "lhs": mult_to_json(rep.lhs_mult),
        "rhs": mult_to_json(rep.rhs_mult),
        "heights_ok": rep.heights_ok,
        "radical_ok": rep.radical_ok,
        "decision": decision_to_json(rep.decision),
        "consistent": rep.consistent,
    }
    if rep.candidates:
        out["candidates"] = [
            {
                "element": str(c.element),
                "seed": str(c.seed),
                "coefficients": [str(v) for v in c.coefficients],
            }
            for c in rep.candidates
        ]
    if rep.values_by_seed:
        out["values_by_seed"] = rep.values_by_seed
    return out


# ---------------------------------------------------------------------------
# cache


def cache_enabled() -> bool:
    return os.environ.get("BRIM_CACHE", "on").lower() != "off"


def cache_key(spec: SpecFile, command: dict) -> str:
    blob = canonical_json({"spec": spec.doc, "command": command})
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def cache_load_table(key: str):
    path = Path(CACHE_DIR) / f"{key}.json"
    if not path.is_file():
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return LengthTable.from_json(json.load(fh))
    except (OSError, ValueError, KeyError):
        return None


def cache_store_table(key: str, table: LengthTable):
    try:
        Path(CACHE_DIR).mkdir(exist_ok=True)
        path = Path(CACHE_DIR) / f"{key}.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(table.to_json(), fh, sort_keys=True, separators=(",", ":"))
    except OSError:
        pass  # caching is best-effort


def cached_multiplicity(spec, command, kind, orders, compute):
    """Reuse the cached length table when present; the extraction itself is a
    pure function of the table."""
    key = cache_key(spec, command)
    if cache_enabled():
        table = cache_load_table(key)
        if table is not None:
            try:
                value, cert = stabilized_difference(
                    table, orders, DEFAULT_CONFIG.stab_width
                )
                return MultiplicityResult(value, kind, cert, table)
            except BrimError:
                pass  # stale or incompatible cache entry: recompute
    result = compute()
    if cache_enabled():
        cache_store_table(key, result.table)
    return result


# ---------------------------------------------------------------------------
# subcommands


def _split(text: str):
    return [part for part in (text or "").split(",") if part]


def cmd_length(spec: SpecFile, args) -> dict:
    names = _split(args.modules)
    if not names:
        raise InvalidInput("length requires at least one module (-m)")
    exps = [int(v) for v in _split(args.exponents)]
    mods = [spec.module(n) for n in names]
    quotient = tuple(spec.element(n) for n in _split(args.quotient))
    value = length(
        LengthQuery(tuple(mods), tuple(exps), int(args.q), quotient), Evaluator()
    )
    return {"length": value}


def _mult_command(spec: SpecFile, args, kind: str, threads: int) -> dict:
    names = _split(args.modules)
    mods = [spec.module(n) for n in names]
    ring = spec.ring
    D = ring.d + ring.p - 1
    if kind in ("ebr", "tilde_ebr"):
        if len(mods) != 1:
            raise InvalidInput(f"{kind} takes exactly one module")
        orders = (D,)
        command = {"subcommand": kind, "modules": names}
        if kind == "ebr":
            compute = lambda: ebr(mods[0], DEFAULT_CONFIG)
            kind_obj = {"type": "ebr"}
        else:
            compute = lambda: tilde_ebr(mods[0], DEFAULT_CONFIG)
            kind_obj = {"type": "tilde_ebr"}
        res = cached_multiplicity(spec, command, kind_obj, orders, compute)
    elif kind == "mixed":
        dvec = tuple(int(v) for v in _split(args.dvec))
        command = {"subcommand": "mixed", "modules": names, "dvec": list(dvec)}
        res = cached_multiplicity(
            spec,
            command,
            {"type": "mixed", "dvec": list(dvec)},
            dvec,
            lambda: mixed(mods, dvec, DEFAULT_CONFIG, threads=threads),
        )
    else:
        dvec = tuple(int(v) for v in _split(args.dvec))
        j = int(args.j)
        command = {
            "subcommand": "assoc",
            "modules": names,
            "dvec": list(dvec),
            "j": j,
        }
        res = cached_multiplicity(
            spec,
            command,
            {"type": "assoc", "j": j, "dvec": list(dvec)},
            tuple(dvec) + (j,),
            lambda: assoc_mixed(mods, dvec, j, DEFAULT_CONFIG, threads=threads),
        )
    return mult_to_json(res)


def cmd_gmult(spec: SpecFile, args) -> dict:
    names = _split(args.elements)
    if not names:
        raise InvalidInput("gmult requires at least one element (-e)")
    elems = [spec.element(n) for n in names]
    kspec = KoszulSpec(spec.ring, elems)
    t = int(args.t) if args.t is not None else None
    res = g_mult_et(kspec, t)
    dims = sorted((i, delta, v) for (i, delta), v in res.homology_dims.items())
    return {
        "value": res.value,
        "t": res.t,
        "homology_dims": [[i, delta, v] for i, delta, v in dims],
    }


def cmd_check(spec: SpecFile, args) -> dict:
    kind = args.kind
    n_max = int(args.nmax)
    if kind == "reduction":
        dec = is_reduction(spec.module(args.u), spec.module(_split(args.modules)[0]), n_max)
        return {"decision": decision_to_json(dec)}
    if kind == "joint":
        xs = [spec.element(n) for n in _split(args.x)]
        mods = [spec.module(n) for n in _split(args.modules)]
        dec = is_joint_reduction(xs, mods, n_max)
        return {"decision": decision_to_json(dec)}
    if kind == "mn-joint":
        xs = [spec.element(n) for n in _split(args.x)]
        dec = mn_joint_reduction_witness(xs, int(args.n), n_max)
        return {"decision": decision_to_json(dec)}
    if kind == "superficial":
        x = spec.element(_split(args.x)[0])
        mods = [spec.module(n) for n in _split(args.modules)]
        window = SuperficialWindow(c1=int(args.c1))
        dec = verify_superficial(x, mods, window)
        return {"decision": decision_to_json(dec)}
    if kind == "rees":
        rep = rees_equivalence_check(
            spec.module(args.u), spec.module(_split(args.modules)[0]), n_max
        )
        return {"criterion": criterion_to_json(rep)}
    if kind == "converse":
        xs = [spec.element(n) for n in _split(args.x)]
        mods = [spec.module(n) for n in _split(args.modules)]
        rep = converse_criterion(xs, mods, n_max)
        return {"criterion": criterion_to_json(rep)}
    if kind == "risler":
        mods = [spec.module(n) for n in _split(args.modules)]
        dvec = [int(v) for v in _split(args.dvec)]
        base = int(args.seed)
        rep = risler_teissier_check(mods, dvec, seeds=[base, base + 1, base + 2])
        return {"criterion": criterion_to_json(rep)}
    raise InvalidInput(f"unknown check kind {kind!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brim",
        description="Exact multiplicities and reduction checks for graded submodules.",
    )
    parser.add_argument("--version", action="version", version=f"brim {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("specfile")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("length", help="one exact length cell")
    add_common(p)
    p.add_argument("-m", "--modules", required=True)
    p.add_argument("-n", "--exponents", required=True)
    p.add_argument("-q", type=int, default=0)
    p.add_argument("--quotient", default="")

    for name in ("ebr", "tilde-ebr"):
        p = sub.add_parser(name, help=f"{name} multiplicity")
        add_common(p)
        p.add_argument("-m", "--modules", required=True)

    p = sub.add_parser("mixed", help="mixed multiplicity of a family")
    add_common(p)
    p.add_argument("-m", "--modules", required=True)
    p.add_argument("-d", "--dvec", required=True)

    p = sub.add_parser("assoc", help="associated mixed multiplicity")
    add_common(p)
    p.add_argument("-m", "--modules", required=True)
    p.add_argument("-d", "--dvec", required=True)
    p.add_argument("-j", required=True)

    p = sub.add_parser("gmult", help="Koszul g-multiplicity")
    add_common(p)
    p.add_argument("-e", "--elements", required=True)
    p.add_argument("-t", default=None)

    p = sub.add_parser("check", help="reduction / joint-reduction / theorem checks")
    p.add_argument(
        "kind",
        choices=["reduction", "joint", "mn-joint", "superficial", "rees", "converse", "risler"],
    )
    add_common(p)
    p.add_argument("-m", "--modules", default="")
    p.add_argument("-u", default=None)
    p.add_argument("-x", default="")
    p.add_argument("-d", "--dvec", default="")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("--c1", type=int, default=1)
    p.add_argument("--nmax", type=int, default=6)

    return parser


def semantic_command(args) -> dict:
    """The mathematically relevant part of the invocation (no execution knobs)."""
    skip = {"specfile", "threads", "subcommand"}
    out = {"subcommand": args.subcommand}
    for key, value in sorted(vars(args).items()):
        if key in skip or value in (None, ""):
            continue
        out[key] = value
    return out


def run(args) -> dict:
    spec = load_specfile(args.specfile)
    started = time.monotonic()
    sub = args.subcommand
    if sub == "length":
        payload = cmd_length(spec, args)
    elif sub in ("ebr", "tilde-ebr", "mixed", "assoc"):
        payload = _mult_command(spec, args, sub.replace("-", "_"), args.threads)
    elif sub == "gmult":
        payload = cmd_gmult(spec, args)
    elif sub == "check":
        payload = cmd_check(spec, args)
    else:  # pragma: no cover
        raise InvalidInput(f"unknown subcommand {sub!r}")
    elapsed = time.monotonic() - started
    command = semantic_command(args)
    return {
        "command": command,
        "inputs_hash": cache_key(spec, command),
        "seed": args.seed,
        "payload": payload,
        "runtime": {
            "elapsed_s": round(elapsed, 6),
            "threads": args.threads,
            "cache": "on" if cache_enabled() else "off",
        },
    }


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code or 0)
    try:
        report = run(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationLimit as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return 3
    except BrimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    print(canonical_json(report))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
