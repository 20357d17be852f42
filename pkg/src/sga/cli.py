"""Command-line entry point: ``sga <verb> ...``.

Exit codes: 0 success, 1 domain error (invalid instance, failed check,
infeasible bounds), 2 I/O or usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any

from . import action as act
from . import fnalgebra as fa
from . import ideals as idl
from . import io
from . import transformation as tg
from .action import FinitePartialAction
from .errors import CapExceeded, SGAError, ValidationError
from .fnalgebra import SUPPORTED_PRIMES
from .groupoid import Groupoid, components
from .skew import SkewRing, quotient_skew_ring
from .ultragraph import Ultragraph, check_KR, condition_K, random_ultragraph
from .verify import SUITES, run_suite

SKIPPED = "skipped"


class UsageError(Exception):
    pass


# -- rendering ----------------------------------------------------------------


def _text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)):
                sub = _text(item, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def emit(data: Any, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(_text(data)) + "\n")


def _load(path: str, *kinds: type):
    obj = io.load(path)
    if kinds and not isinstance(obj, kinds):
        wanted = " or ".join(k.__name__ for k in kinds)
        raise UsageError(f"{path}: expected {wanted}, got {io.kind_of(obj)}")
    return obj


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    obj = io.load(args.file)
    summary = {"kind": io.kind_of(obj), "valid": True}
    if isinstance(obj, Groupoid):
        summary.update(objects=len(obj.objects), morphisms=len(obj.morphisms))
    elif isinstance(obj, FinitePartialAction):
        summary.update(
            points=len(obj.points),
            morphisms=len(obj.groupoid.morphisms),
            skew_dimension=obj.skew_dimension(),
        )
    else:
        summary.update(vertices=len(obj.vertices), edges=len(obj.edges))
    emit(summary, args.format)
    return 0


def _ring_dossier(S: SkewRing, max_dim: int | None) -> dict:
    out: dict[str, Any] = {"diagonal_max_commutative": idl.is_A_maximal_commutative(S)}
    try:
        ideals = idl.all_ideals(S, max_dim)
    except CapExceeded as exc:
        for key in (
            "ideal_count",
            "graded_ideal_count",
            "intersection_property",
            "residual_intersection_property",
            "simple",
            "prime",
            "graded_simple",
            "graded_prime",
        ):
            out[key] = SKIPPED
        out["skipped_reason"] = str(exc)
        return out
    graded = [I for I in ideals if idl.is_graded_ideal(S, I)]
    nonzero = S.dim > 0
    out.update(
        ideal_count=len(ideals),
        graded_ideal_count=len(graded),
        intersection_property=idl.has_intersection_property(S, ideals),
        simple=nonzero and idl.is_simple(S, ideals),
        prime=nonzero and idl.is_prime(S, ideals),
        graded_simple=nonzero and len(graded) == 2,
        graded_prime=nonzero and idl.is_prime(S, graded),
    )
    try:
        out["residual_intersection_property"] = all(
            idl.has_intersection_property(Q, idl.all_ideals(Q, max_dim))
            for Q in (quotient_skew_ring(S, U).quotient for U in idl.invariant_supports(S))
        )
    except CapExceeded:
        out["residual_intersection_property"] = SKIPPED
    return out


def _action_dossier(a: FinitePartialAction, p: int, max_dim: int | None) -> dict:
    S = SkewRing.of(a, p)
    T = tg.build(a)
    out = {
        "kind": "action",
        "field": p,
        "points": len(a.points),
        "morphisms": len(a.groupoid.morphisms),
        "skew_dimension": S.dim,
        "invariant_subsets": len(act.invariant_subsets(a)),
        "minimal": act.is_minimal(a),
        "topologically_transitive": act.is_topologically_transitive(a),
        "topologically_free": act.is_topologically_free(a),
        "residually_topologically_free": act.is_residually_topologically_free(a),
        "G_simple": fa.is_G_simple(S.A),
        "G_prime": fa.is_G_prime(S.A),
        "transformation_groupoid": {
            "arrows": len(T),
            "units": len(T.unit_space),
            "effective": tg.is_effective(T),
            "strongly_effective": tg.is_strongly_effective(T),
            "minimal": tg.is_minimal_groupoid(T),
            "topologically_transitive": tg.is_topologically_transitive_groupoid(T),
        },
    }
    out.update(_ring_dossier(S, max_dim))
    return out


def _ultragraph_dossier(U: Ultragraph, max_len: int) -> dict:
    r = check_KR(U, max_len)
    return {
        "kind": "ultragraph",
        "vertices": len(U.vertices),
        "edges": len(U.edges),
        "sinks": sorted(U.sinks()),
        **r.to_dict(),
    }


def cmd_report(args) -> int:
    obj = io.load(args.file)
    if isinstance(obj, FinitePartialAction):
        data = _action_dossier(obj, args.field, args.max_dim)
    elif isinstance(obj, Ultragraph):
        data = _ultragraph_dossier(obj, args.max_loop_len)
    else:
        data = {
            "kind": "groupoid",
            "objects": len(obj.objects),
            "morphisms": len(obj.morphisms),
            "components": len(components(obj)),
        }
    emit(data, args.format)
    return 0


def cmd_ideals(args) -> int:
    a = _load(args.file, FinitePartialAction)
    S = SkewRing.of(a, args.field)
    ideals = idl.all_ideals(S, args.max_dim)
    rows = [
        {
            "dimension": I.dim,
            "graded": idl.is_graded_ideal(S, I),
            "support": sorted(idl.Phi(S, I)),
        }
        for I in ideals
    ]
    emit({"field": args.field, "skew_dimension": S.dim, "ideals": rows}, args.format)
    return 0


def cmd_theorems(args) -> int:
    obj = io.load(args.file)
    if isinstance(obj, Groupoid):
        raise UsageError("theorem suites need an action or ultragraph instance")
    graph = isinstance(obj, Ultragraph)
    if args.suite != "all" and graph != (args.suite == "ultragraph"):
        raise UsageError(f"suite {args.suite!r} does not apply to a {io.kind_of(obj)} instance")
    report = run_suite(
        obj, args.suite, p=args.field, max_dim=args.max_dim, samples=args.samples,
        max_len=args.max_loop_len,
    )
    emit(report.to_dict(timings=args.timings), args.format)
    return 0 if report.ok else 1


def cmd_ultragraph(args) -> int:
    U = _load(args.file, Ultragraph)
    if args.check == "k":
        k, counts = condition_K(U)
        data = {"condition_K": k, "simple_loops": counts}
    elif args.check == "recurrent":
        r = check_KR(U, args.max_loop_len)
        data = {
            "all_loops_recurrent": r.bounded_all_recurrent,
            "max_loop_len": args.max_loop_len,
            "per_vertex": {
                v: {key: d[key] for key in ("all_loops_recurrent", "method", "transitory_loop")}
                for v, d in r.per_vertex.items()
            },
        }
    else:
        data = check_KR(U, args.max_loop_len).to_dict()
    emit(data, args.format)
    return 0


def cmd_gen(args) -> int:
    if args.kind == "action":
        obj = act.random_instance(args.seed, args.points, args.morphisms, args.max_skew_dim)
    elif args.kind == "groupoid":
        if args.morphisms < 1:
            raise ValidationError("a groupoid needs at least one morphism")
        obj = act.random_groupoid(random.Random(args.seed), args.morphisms)
    else:
        if args.vertices < 1 or args.edges < 0:
            raise ValidationError("need at least one vertex and a nonnegative edge count")
        obj = random_ultragraph(args.seed, args.vertices, args.edges)
    sys.stdout.write(io.dumps(obj))
    return 0


# -- argument parsing ---------------------------------------------------------


def _field(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if p not in SUPPORTED_PRIMES:
        raise argparse.ArgumentTypeError(f"field size must be one of {SUPPORTED_PRIMES}")
    return p


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sga",
        description="Partial skew groupoid rings over prime fields: ideals, dynamics, checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    ring = argparse.ArgumentParser(add_help=False)
    ring.add_argument("--field", type=_field, default=2, help="prime field size (default 2)")
    ring.add_argument(
        "--max-dim", type=_nonneg, default=None,
        help="ideal-enumeration cap on ring dimension (overrides SGA_MAX_DIM)",
    )

    loops = argparse.ArgumentParser(add_help=False)
    loops.add_argument("--max-loop-len", type=_nonneg, default=12)

    p = sub.add_parser("validate", parents=[common], help="check an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", parents=[common, ring, loops], help="property dossier")
    p.add_argument("file")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("ideals", parents=[common, ring], help="list all two-sided ideals")
    p.add_argument("file")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("theorems", parents=[common, ring, loops], help="run a check suite")
    p.add_argument("file")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--samples", type=_nonneg, default=100, help="random samples per check")
    p.add_argument("--timings", action="store_true", help="include elapsed times")
    p.set_defaults(func=cmd_theorems)

    p = sub.add_parser("ultragraph", parents=[common, loops], help="condition K and recurrence")
    p.add_argument("file")
    p.add_argument("--check", choices=("k", "recurrent"), default=None)
    p.set_defaults(func=cmd_ultragraph)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--kind", choices=("action", "groupoid", "ultragraph"), default="action")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=_nonneg, default=3)
    p.add_argument("--morphisms", type=_nonneg, default=4)
    p.add_argument("--max-skew-dim", type=_nonneg, default=None)
    p.add_argument("--vertices", type=_nonneg, default=4)
    p.add_argument("--edges", type=_nonneg, default=6)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SGAError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
