"""Command-line interface: enumerate / verify / brace / cohomology / classify /
split / wells, with machine-readable JSON output.

Exit codes: 0 success (or verification true), 1 verification failure,
2 usage error, 3 budget exceeded.  JSON output is canonically ordered and
independent of the worker count; timings go to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .groups import BudgetError, FiniteGroup, load_group, make_group
from .operators import (
    RotaBaxterOperator,
    enumerate_rb_operators,
    identity_operator,
    induced_skew_brace,
    inversion_operator,
    is_skew_brace,
    load_operator,
    operator_to_dict,
    rb_witness,
    trivial_operator,
)
from .cohomology import (
    Cochain,
    CocyclePair,
    RBModule,
    h2_rbe,
    rb_module_witness,
    trivial_action,
)
from .extensions import (
    ExtensionError,
    build_abelian_extension,
    build_split_extension,
    classify_abelian,
)
from .wells import check_wells_exactness

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class JobSpec:
    """A resolved CLI job; budgets must be positive."""

    command: str
    format: str = "json"
    workers: int = 1
    budget: int | None = None
    bound: int | None = None

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be positive")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be positive")
        if self.bound is not None and self.bound < 1:
            raise ValueError("bound must be positive")


def _looks_like_path(spec: str) -> bool:
    return spec.endswith(".json") or "/" in spec or Path(spec).exists()


def _resolve_group(spec: str, bound: int | None) -> FiniteGroup:
    if _looks_like_path(spec):
        return load_group(spec)
    if bound is not None:
        return make_group(spec, bound=bound)
    return make_group(spec)


def _resolve_operator(spec: str, group: FiniteGroup) -> RotaBaxterOperator:
    named = {
        "zero": trivial_operator,
        "e": trivial_operator,
        "id": identity_operator,
        "inv": inversion_operator,
    }
    if spec in named:
        return named[spec](group)
    return load_operator(spec, group=group)


def _resolve_action(spec: str, h: FiniteGroup, igroup: FiniteGroup):
    if spec == "trivial":
        return trivial_action(h, igroup)
    data = json.loads(Path(spec).read_text())
    maps = data["maps"] if isinstance(data, dict) else data
    if len(maps) != h.order:
        raise ValueError(f"action file has {len(maps)} maps for |H| = {h.order}")
    return tuple(tuple(int(v) for v in row) for row in maps)


def _resolve_module(args) -> RBModule:
    h = _resolve_group(args.H, args.bound)
    igroup = _resolve_group(args.I, args.bound)
    hop = _resolve_operator(args.RH, h)
    w = rb_witness(h, hop.images)
    if w is not None:
        raise ValueError(f"--RH is not a Rota-Baxter operator (fails at {w})")
    rop = _resolve_operator(args.RI, igroup)
    action = _resolve_action(args.action, h, igroup)
    witness = rb_module_witness(hop, igroup, rop.images, action)
    if witness is not None:
        raise ValueError(f"not a Rota-Baxter module: {witness[0]} fails at {witness[1]}")
    return RBModule(hop, igroup, rop.images, action)


def _load_cochain(module: RBModule, spec: str | None, arity: int) -> Cochain:
    if spec is None:
        return Cochain.zero(module, arity)
    data = json.loads(Path(spec).read_text())
    c = Cochain.from_dict(module, data)
    if c.arity != arity:
        raise ValueError(f"cochain has arity {c.arity}, expected {arity}")
    return c


def _load_map_images(spec: str, domain: FiniteGroup, codomain: FiniteGroup):
    data = json.loads(Path(spec).read_text())
    raw = data["images"] if isinstance(data, dict) else data
    if len(raw) != domain.order:
        raise ValueError(f"map file has {len(raw)} images for |H| = {domain.order}")
    return tuple(
        v if isinstance(v, int) else codomain.label_index(str(v)) for v in raw
    )


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        for key in sorted(obj):
            print(f"{key}: {obj[key]}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    group = _resolve_group(args.group, args.bound)
    kwargs = {"workers": args.workers}
    if args.bound is not None:
        kwargs["bound"] = args.bound
    start = time.perf_counter()
    ops = enumerate_rb_operators(group, **kwargs)
    elapsed = time.perf_counter() - start
    if args.stream:
        for op in ops:
            print(json.dumps(operator_to_dict(op, group_name=args.group), sort_keys=True))
    summary = {"command": "enumerate", "group": args.group, "count": len(ops)}
    _emit(summary, args.format)
    print(f"enumerated {len(ops)} operators in {elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    group = _resolve_group(args.group, args.bound)
    op = _resolve_operator(args.operator, group)
    w = rb_witness(group, op.images)
    out = {
        "command": "verify",
        "group": args.group,
        "is_rb_operator": w is None,
        "witness": list(w) if w is not None else None,
    }
    _emit(out, args.format)
    return EXIT_OK if w is None else EXIT_FAIL


def cmd_brace(args) -> int:
    group = _resolve_group(args.group, args.bound)
    op = _resolve_operator(args.operator, group)
    w = rb_witness(group, op.images)
    if w is not None:
        _emit({"command": "brace", "error": f"not a Rota-Baxter operator at {w}"}, args.format)
        return EXIT_FAIL
    brace = induced_skew_brace(group, op)
    out = {
        "command": "brace",
        "group": args.group,
        "order": brace.order,
        "add": [list(r) for r in brace.add],
        "circ": [list(r) for r in brace.circ],
        "is_skew_brace": is_skew_brace(brace),
    }
    _emit(out, args.format)
    return EXIT_OK


def cmd_cohomology(args) -> int:
    module = _resolve_module(args)
    h2 = h2_rbe(module, **({"budget": args.budget} if args.budget else {}))
    out = h2.to_dict()
    out["command"] = "cohomology"
    _emit(out, args.format)
    return EXIT_OK


def cmd_classify(args) -> int:
    module = _resolve_module(args)
    report = classify_abelian(module, **({"budget": args.budget} if args.budget else {}))
    report["command"] = "classify"
    _emit(report, args.format)
    return EXIT_OK if report["match"] else EXIT_FAIL


def cmd_split(args) -> int:
    h = _resolve_group(args.H, args.bound)
    igroup = _resolve_group(args.I, args.bound)
    hop = _resolve_operator(args.RH, h)
    rop = _resolve_operator(args.RI, igroup)
    mu = _resolve_action(args.action, h, igroup)
    g = _load_map_images(args.g, h, igroup) if args.g else (0,) * h.order
    try:
        ext = build_split_extension(hop, rop, mu, g)
    except ExtensionError as err:
        _emit({"command": "split", "error": str(err), "witness": list(map(str, err.witness or ()))},
              args.format)
        return EXIT_FAIL
    out = {
        "command": "split",
        "order": ext.E.order,
        "table": [list(r) for r in ext.E.table],
        "operator": list(ext.operator.images),
        "verified": True,
    }
    _emit(out, args.format)
    return EXIT_OK


def cmd_wells(args) -> int:
    module = _resolve_module(args)
    tau = _load_cochain(module, args.tau, 2)
    g = _load_cochain(module, args.g, 1)
    try:
        ext = build_abelian_extension(module, CocyclePair(tau, g))
    except ExtensionError as err:
        _emit({"command": "wells", "error": str(err)}, args.format)
        return EXIT_FAIL
    report = check_wells_exactness(
        ext, **({"budget": args.budget} if args.budget else {})
    )
    report["command"] = "wells"
    _emit(report, args.format)
    ok = report["exact_at_autI"] and report["exact_at_cmu"] and report["omega_is_derivation"]
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--budget", type=int, default=None, help="brute-force candidate cap")
    p.add_argument("--bound", type=int, default=None, help="group order bound override")
    p.add_argument("--workers", type=int, default=1)


def _add_module_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--H", required=True, help="acting group descriptor or file")
    p.add_argument("--I", required=True, help="kernel group descriptor or file")
    p.add_argument("--RH", default="zero", help="operator on H: zero|id|inv|file")
    p.add_argument("--RI", default="zero", help="operator on I: zero|id|inv|file")
    p.add_argument("--action", default="trivial", help="trivial or a JSON action file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbg", description="Rota-Baxter operators on finite groups"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate all Rota-Baxter operators")
    p.add_argument("--group", required=True)
    p.add_argument("--stream", action="store_true", help="one operator JSON per line")
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check one operator against the law")
    p.add_argument("--group", required=True)
    p.add_argument("--operator", required=True, help="zero|id|inv|file")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("brace", help="dump the induced skew brace")
    p.add_argument("--group", required=True)
    p.add_argument("--operator", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_brace)

    p = sub.add_parser("cohomology", help="compute H2 of a module")
    _add_module_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("classify", help="classify abelian extensions vs H2")
    _add_module_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("split", help="build a split extension from (mu, g)")
    _add_module_flags(p)
    p.add_argument("--g", default=None, help="JSON file of g images")
    _add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("wells", help="exactness report for one extension")
    _add_module_flags(p)
    p.add_argument("--tau", default=None, help="2-cochain JSON file")
    p.add_argument("--g", default=None, help="1-cochain JSON file")
    _add_common(p)
    p.set_defaults(func=cmd_wells)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        JobSpec(
            command=args.command,
            format=args.format,
            workers=getattr(args, "workers", 1),
            budget=args.budget,
            bound=args.bound,
        )
        return args.func(args)
    except BudgetError as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
