"""Command-line interface: every operation behind one subcommand binary.

Exit codes: 0 success and all checks pass; 1 a verification check failed
(witness printed); 2 usage or parse error; 3 a theorem hypothesis is not
satisfied; 4 a capacity or interval budget was exceeded.

JSON output (--json) wraps each report in a schema-versioned envelope; the
human rendering derives from the same record, never from a second
computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import (BudgetError, CapacityError, CheckFailure, DslSyntaxError,
                     HypothesisError, PreconditionError)
from .folner import (defect_report, density, lad_scan, parse_prefix,
                     ubd_estimate, ubd_window_search)
from .groups import parse_elements, parse_group_spec
from .lattices import enumerate_sublattices, hnf_reduce
from .refine import (density_gap, kj_stabilizer_periodic, refinement_search,
                     ubd_pipeline, verify_folner_theorem, verify_kneser_lad)
from .reproductions import REPRODUCTIONS
from .sumsets import (DenseSet, kj_reduce, kneser_certificate, subgroup_of, sumset)
from .sweeps import (check_gap_bound, check_jin_analog, check_push_analog,
                     check_two_subgroups, sweep_exhaustive, sweep_random)
from .symbolic import parse_set

SCHEMA_VERSION = 1


def _emit(args, command: str, record: dict, ok: bool) -> int:
    envelope = {"schema_version": SCHEMA_VERSION, "command": command, "ok": ok}
    envelope.update(record)
    if args.json:
        print(json.dumps(envelope, indent=2, sort_keys=True))
    else:
        _render(envelope)
    return 0 if ok else 1


def _render(record: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key, value in record.items():
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _render(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:")
            for item in value:
                _render(item, indent + 1)
                print()
        else:
            print(f"{pad}{key}: {value}")


def _dense_set(group, literal: str) -> DenseSet:
    return DenseSet.from_indices(group, parse_elements(group, literal))


def _cmd_analyze(args) -> int:
    G = parse_group_spec(args.group)
    A = _dense_set(G, args.a)
    B = _dense_set(G, args.b)
    cert = kneser_certificate(A, B, strict=False)
    outcomes = {
        "jin_analog": check_jin_analog(A, B),
        "push_analog": check_push_analog(A, B),
        "gap_bound": check_gap_bound(A, B),
        "two_subgroups": check_two_subgroups(sumset(A, B)),
    }
    ok = cert.period_holds and (not cert.deficient or cert.equation_holds)
    record = {"group": G.spec, "a": A.literal(), "b": B.literal(),
              "certificate": cert.to_record(), "checks": {}}
    for name, out in outcomes.items():
        record["checks"][name] = {"status": out.status}
        if out.witness:
            record["checks"][name]["witness"] = out.witness
            ok = False
    return _emit(args, "analyze", record, ok)


def _cmd_sweep(args) -> int:
    G = parse_group_spec(args.group)
    if args.random:
        stats = sweep_random(G, args.trials, args.seed, workers=args.threads)
    else:
        stats = sweep_exhaustive(G, workers=args.threads,
                                 b_sample=args.b_sample, seed=args.seed)
    record = stats.to_record()
    if args.timing:
        record["elapsed_seconds"] = round(stats.elapsed_seconds, 3)
    return _emit(args, "sweep", record, stats.total_violations() == 0)


def _cmd_density(args) -> int:
    S = parse_set(args.set)
    prefix = parse_prefix(args.prefix)
    rep = density(S, prefix, tol=Fraction(args.tol))
    record = {"set": args.set, "prefix": prefix.label, "report": rep.to_record()}
    if args.shifts:
        shifts = [int(t) for t in args.shifts.split(",")]
        record["defects"] = defect_report(prefix, shifts).to_record()
    return _emit(args, "density", record, True)


def _cmd_lad(args) -> int:
    S = parse_set(args.set)
    rep = lad_scan(S, args.limit, args.tail_from)
    return _emit(args, "lad", {"set": args.set, "report": rep.to_record()}, True)


def _cmd_ubd(args) -> int:
    S = parse_set(args.set)
    record: dict = {"set": args.set}
    if args.pipeline:
        if not args.limit:
            raise PreconditionError("--pipeline needs --limit as the scan bound")
        extra = [parse_prefix(spec) for spec in args.prefix]
        rep = ubd_pipeline(S, args.limit, Fraction(args.eps), k=args.k,
                           extra_candidates=extra)
        record["pipeline"] = rep.to_record()
        return _emit(args, "ubd", record, True)
    if args.prefix:
        candidates = [parse_prefix(spec) for spec in args.prefix]
        record["estimate"] = ubd_estimate(S, candidates).to_record()
    if args.limit:
        record["window_search"] = ubd_window_search(
            S, args.limit, min_len=args.min_len).to_record()
    if not args.prefix and not args.limit:
        raise PreconditionError("ubd needs --prefix candidates and/or --limit for window search")
    return _emit(args, "ubd", record, True)


def _cmd_refine(args) -> int:
    A = parse_set(args.a)
    B = parse_set(args.b) if args.b else A
    F = parse_prefix(args.prefix)
    if args.delta is not None:
        delta = Fraction(args.delta)
    else:
        delta = density_gap(A, B, F, args.k)
        if delta <= 0:
            raise HypothesisError(f"density gap along the prefix is {delta} <= 0")
    eps = Fraction(args.eps)
    result = refinement_search(A, B, F, args.k, delta, eps)
    check = verify_folner_theorem(A, B, F, result.psi, args.k, delta, eps)
    record = {"delta": str(delta), "result": result.to_record(),
              "checker_passes": check.passes}
    return _emit(args, "refine", record, True)


def _cmd_kneser_lad(args) -> int:
    A = parse_set(args.a)
    B = parse_set(args.b) if args.b else A
    rep = verify_kneser_lad(A, B, args.k, args.limit, Fraction(args.eps))
    return _emit(args, "kneser-lad", {"report": rep.to_record()}, rep.passes)


def _cmd_kj(args) -> int:
    if args.modulus is not None:
        A = parse_set(args.a)
        B = parse_set(args.b) if args.b else A
        result = kj_stabilizer_periodic(A, B, args.modulus)
        return _emit(args, "kj", {"mode": "periodic", "result": result.to_record()}, True)
    if not args.group:
        raise PreconditionError("kj needs --modulus (periodic mode) or --group (finite mode)")
    G = parse_group_spec(args.group)
    A = _dense_set(G, args.a)
    B = _dense_set(G, args.b) if args.b else A
    K0 = subgroup_of(G, parse_elements(G, args.k0) if args.k0 else [0])
    K = kj_reduce(A, B, K0)
    record = {"mode": "finite", "group": G.spec,
              "k0": list(K0.elements), "k_subgroup": list(K.elements),
              "index": K.index}
    return _emit(args, "kj", record, True)


def _cmd_hnf(args) -> int:
    if args.reduce:
        entries = [int(x) for x in args.reduce.split(",")]
        d = args.dim or int(round(len(entries) ** 0.5))
        if d * d != len(entries):
            raise PreconditionError("matrix entries must form a d x d square")
        rows = [entries[i * d:(i + 1) * d] for i in range(d)]
        L = hnf_reduce(rows)
        return _emit(args, "hnf", {"hnf": L.flat(), "index": L.index, "dim": L.dim}, True)
    if args.index is None:
        raise PreconditionError("hnf needs --index (enumeration) or --reduce (canonicalization)")
    lattices = enumerate_sublattices(args.dim or 2, args.index)
    record = {"dim": args.dim or 2, "index": args.index,
              "count": len(lattices), "lattices": [L.flat() for L in lattices]}
    return _emit(args, "hnf", record, True)


def _cmd_examples(args) -> int:
    runner = REPRODUCTIONS[args.which]
    kwargs = {}
    if args.terms is not None:
        kwargs["terms"] = args.terms
    if args.which in ("half-blocks", "remark-folner") and args.eps is not None:
        kwargs["eps"] = Fraction(args.eps)
    rep = runner(**kwargs)
    return _emit(args, "examples", rep.to_record(), rep.ok)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="Exact sumset, stabilizer, and density computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="certificate and lemma checks for one finite pair")
    p.add_argument("--group", required=True, help="group spec, e.g. 6 or 2x4")
    p.add_argument("--a", required=True, help="set literal, e.g. 0,1,3,4 or (0,1);(1,3)")
    p.add_argument("--b", required=True)
    common(p)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("sweep", help="exhaustive or random pair sweep")
    p.add_argument("--group", required=True)
    p.add_argument("--random", action="store_true")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--b-sample", type=int, default=None,
                   help="B draws per A for orders 11..12")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall time in the record")
    common(p)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("density", help="exact densities along a Folner prefix")
    p.add_argument("--set", required=True, help="set DSL, e.g. blocks(superexp(10),1/2,1)")
    p.add_argument("--prefix", required=True, help="e.g. intervals:superexp(10)")
    p.add_argument("--tol", default="1/100")
    p.add_argument("--shifts", default=None, help="comma-separated shifts for a defect report")
    common(p)
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("lad", help="exact lower-asymptotic-density scan")
    p.add_argument("--set", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--tail-from", type=int, default=None)
    common(p)
    p.set_defaults(fn=_cmd_lad)

    p = sub.add_parser("ubd", help="upper-density estimates and pipeline")
    p.add_argument("--set", required=True)
    p.add_argument("--prefix", action="append", default=[],
                   help="candidate prefix spec (repeatable)")
    p.add_argument("--limit", type=int, default=None, help="window-search / scan bound")
    p.add_argument("--min-len", type=int, default=1)
    p.add_argument("--pipeline", action="store_true",
                   help="full chain: estimates -> delta -> k -> refinement")
    p.add_argument("--k", type=int, default=None, help="pipeline: supply k instead of deriving it")
    p.add_argument("--eps", default="1/50")
    common(p)
    p.set_defaults(fn=_cmd_ubd)

    p = sub.add_parser("refine", help="refinement search plus independent checker")
    p.add_argument("--a", required=True)
    p.add_argument("--b", default=None)
    p.add_argument("--prefix", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", default=None, help="hypothesis gap (default: computed)")
    p.add_argument("--eps", default="1/50")
    common(p)
    p.set_defaults(fn=_cmd_refine)

    p = sub.add_parser("kneser-lad", help="classical density conclusions at scale N")
    p.add_argument("--a", required=True)
    p.add_argument("--b", default=None)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--eps", default="1/50")
    common(p)
    p.set_defaults(fn=_cmd_kneser_lad)

    p = sub.add_parser("kj", help="stabilizer reduction (periodic or finite mode)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", default=None)
    p.add_argument("--modulus", type=int, default=None, help="periodic mode: reduce mod this")
    p.add_argument("--group", default=None, help="finite mode: group spec")
    p.add_argument("--k0", default=None, help="finite mode: starting subgroup elements")
    common(p)
    p.set_defaults(fn=_cmd_kj)

    p = sub.add_parser("hnf", help="sublattice enumeration / HNF canonicalization")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--reduce", default=None, help="row-major matrix entries to canonicalize")
    common(p)
    p.set_defaults(fn=_cmd_hnf)

    p = sub.add_parser("examples", help="one-shot reproductions with pass/fail summary")
    p.add_argument("--which", required=True, choices=sorted(REPRODUCTIONS))
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--eps", default=None)
    common(p)
    p.set_defaults(fn=_cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DslSyntaxError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisError as exc:
        print(f"hypothesis not satisfied: {exc}", file=sys.stderr)
        return 3
    except (CapacityError, BudgetError) as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return 4
    except CheckFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        if exc.witness:
            print(json.dumps(exc.witness), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
