"""Command-line front end.

Every verb prints JSON records, one per line, on stdout.  Wall time and
diagnostics go to stderr so stdout is byte-stable for fixed flags.  Exit
status is 0 when every emitted record passes, 1 on a failed check or a
computation error, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Dict, Iterable, List, Optional, Sequence

from . import carlson_simpson as cs
from . import ellentuck_hd, fin_blocks, fraisse_blocks, laflamme_trees
from .degree_calc import cross_verify, default_methods
from .errors import RamseyDegreesError
from .seq_orders import enumerate_upto
from .space_core import Family, SpaceId, audit_axioms, jsonable, parse_family

METHOD_ALIASES = {"formula": "combinator"}


class UsageError(Exception):
    pass


def _space(name: str, param: Optional[int]) -> SpaceId:
    try:
        family = parse_family(name)
    except RamseyDegreesError as exc:
        raise UsageError(str(exc)) from None
    if param is None:
        if family is not Family.CARLSON_SIMPSON:
            raise UsageError(f"--param is required for {family.value}")
        param = 0
    try:
        return SpaceId(family, param)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_degree(args: argparse.Namespace) -> List[Dict[str, Any]]:
    space = _space(args.space, args.param)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    methods = default_methods(space, args.budget)
    if args.method:
        name = METHOD_ALIASES.get(args.method, args.method)
        if name not in methods:
            raise UsageError(f"method {args.method} is not available for {space}")
        order = [name]
    else:
        order = [m for m in ("closed", "combinator", "bruteforce") if m in methods]
    for name in order:
        value = methods[name](args.n)
        if value is not None:
            return [{"space": space.family.value, "param": space.param, "n": args.n, "method": name, "value": int(value), "pass": True}]
    return [{"space": space.family.value, "param": space.param, "n": args.n, "method": order[-1], "value": None, "pass": False}]


def cmd_classes(args: argparse.Namespace) -> List[Dict[str, Any]]:
    space = _space(args.space, args.param)
    fam = space.family
    if fam is Family.ELLENTUCK_HD:
        kw = {"max_leaves": args.budget} if args.budget else {}
        count, patterns = ellentuck_hd.count_pair_classes(space.param, **kw)
        rec: Dict[str, Any] = {"space": "e", "k": space.param, "count": count}
        if args.list:
            rec["classes"] = [str(p) for p in patterns]
        return [rec]
    if fam in (Family.HYPERCUBE, Family.CLIQUEFREE):
        kw = {"max_block": args.budget} if args.budget else {}
        if args.n in (None, 2):
            count = fraisse_blocks.count_pair_classes(space, **kw)
        else:
            count = fraisse_blocks.count_approx_classes(space, args.n, **kw)
        rec = {"space": fam.value, "param": space.param, "n": args.n or 2, "count": count}
        if args.list and args.n in (None, 2):
            i = max(4, space.param)
            rec["classes"] = sorted(jsonable(c) if isinstance(c, str) else "".join(x[0] for x in c) for c in fraisse_blocks.block_pair_classes(space, i))
        return [rec]
    if fam is Family.LAFLAMME:
        n = args.n or 2
        kw = {"m_cap": args.budget} if args.budget else {}
        count = laflamme_trees.count_subset_classes(space.param, n, **kw)
        rec = {"space": fam.value, "param": space.param, "n": n, "count": count}
        if args.list:
            m = kw.get("m_cap", laflamme_trees.DEFAULT_M_CAP)
            shapes = laflamme_trees.subset_shapes(space.param, min(m, n + 2), n)
            rec["classes"] = sorted(str(laflamme_trees.SubsetShape(space.param, s)) for s in shapes)
        return [rec]
    raise UsageError(f"classes is not defined for {space}")


def cmd_enumerate(args: argparse.Namespace) -> List[Any]:
    if args.k < 1 or args.count < 0:
        raise UsageError("--k must be >= 1 and --count >= 0")
    seqs = [s.entries for s in enumerate_upto(args.k, args.count)]
    if args.order == "lex":
        # lex has no rank function; show the same initial prec-segment in lex order
        seqs.sort()
    return [list(s) for s in seqs]


def cmd_verify(args: argparse.Namespace) -> List[Dict[str, Any]]:
    space = _space(args.space, args.param)
    if args.nmax < 1:
        raise UsageError("--nmax must be >= 1")
    table = cross_verify(space, args.nmax, budget=args.budget)
    return [table.to_json()]


def cmd_fin(args: argparse.Namespace) -> List[Dict[str, Any]]:
    if args.fin_cmd == "gen":
        g = fin_blocks.BlockSeq.from_json(_load_json(args.blocks))
        k = args.k if args.k is not None else g.k
        if k != g.k:
            raise UsageError(f"--k {k} does not match the block ceiling {g.k}")
        j = args.j if args.j is not None else k
        members = sorted(fin_blocks.gen_semigroup(g, j), key=lambda f: f.entries)
        return [{"j": j, "count": len(members), "members": [f.to_json() for f in members], "pass": True}]
    left = fin_blocks.BlockSeq.from_json(_load_json(args.left))
    right = fin_blocks.BlockSeq.from_json(_load_json(args.right))
    result = fin_blocks.is_block_subseq(left, right)
    return [{"leq": result, "pass": True}]


def cmd_cs(args: argparse.Namespace) -> List[Dict[str, Any]]:
    part = _load_json(args.partition)
    if isinstance(part, dict):
        part = part.get("rgs") or part.get("partition")
    e = cs.from_surjection(part)
    c = cs.PairColoring.from_json(_load_json(args.coloring))
    f = cs.mono_coarsening(e, c, args.target)
    kept = cs.mono_witness(e, c, args.target)
    return [{"partition": f.to_json(), "minima": list(f.minima()), "monochromatic": list(kept), "pass": True}]


def cmd_audit(args: argparse.Namespace) -> List[Dict[str, Any]]:
    space = _space(args.space, args.param)
    if args.depth < 1:
        raise UsageError("--depth must be >= 1")
    kw = {"budget": args.budget} if args.budget else {}
    report = audit_axioms(space, args.depth, **kw)
    rec = report.to_json()
    rec["pass"] = report.passed
    return [rec]


def cmd_suite(args: argparse.Namespace) -> List[Dict[str, Any]]:
    from .suites import run_suite

    results = run_suite(args.name)
    out = [r.to_json() for r in results]
    for r in results:
        print(r.line(), file=sys.stderr)
    out.append({"suite": args.name, "pass": all(r.passed for r in results)})
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ramsey-degrees", description="Ramsey degree computations for finite approximations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="also write the records to this file as JSON lines")
    common.add_argument("--budget", type=int, help="override the stabilization cap of the chosen computation")
    sub = p.add_subparsers(dest="verb", required=True)

    d = sub.add_parser("degree", help="one degree value", parents=[common])
    d.add_argument("--space", required=True)
    d.add_argument("--param", type=int)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--method", choices=["bruteforce", "combinator", "formula", "closed"])
    d.set_defaults(func=cmd_degree)

    c = sub.add_parser("classes", help="count isomorphism classes", parents=[common])
    c.add_argument("--space", required=True)
    c.add_argument("--param", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--list", action="store_true")
    c.set_defaults(func=cmd_classes)

    e = sub.add_parser("enumerate", help="list members of omega^{<=k}", parents=[common])
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--order", choices=["prec", "lex"], default="prec")
    e.add_argument("--count", type=int, required=True)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="cross-verify every degree method", parents=[common])
    v.add_argument("--space", required=True)
    v.add_argument("--param", type=int)
    v.add_argument("--nmax", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fin", help="FIN_k block sequences", parents=[common])
    fsub = f.add_subparsers(dest="fin_cmd", required=True)
    fg = fsub.add_parser("gen", parents=[common])
    fg.add_argument("--k", type=int)
    fg.add_argument("--blocks", required=True)
    fg.add_argument("--j", type=int)
    fl = fsub.add_parser("leq", parents=[common])
    fl.add_argument("--left", required=True)
    fl.add_argument("--right", required=True)
    f.set_defaults(func=cmd_fin)

    s = sub.add_parser("cs", help="Carlson-Simpson partitions", parents=[common])
    ssub = s.add_subparsers(dest="cs_cmd", required=True)
    sm = ssub.add_parser("mono", parents=[common])
    sm.add_argument("--partition", required=True)
    sm.add_argument("--coloring", required=True)
    sm.add_argument("--target", type=int, required=True)
    s.set_defaults(func=cmd_cs)

    a = sub.add_parser("audit", help="check the finite axiom fragments", parents=[common])
    a.add_argument("--space", required=True)
    a.add_argument("--param", type=int)
    a.add_argument("--depth", type=int, default=4)
    a.set_defaults(func=cmd_audit)

    u = sub.add_parser("suite", help="run a bundled verification suite", parents=[common])
    u.add_argument("name", choices=["quick", "full"])
    u.set_defaults(func=cmd_suite)
    return p


def _emit(records: Iterable[Any], out_path: Optional[str]) -> None:
    lines = [json.dumps(jsonable(r), sort_keys=True) for r in records]
    for line in lines:
        print(line)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in lines))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        records = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ramsey-degrees: error: {exc}", file=sys.stderr)
        return 2
    except RamseyDegreesError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # malformed values read from input files
        print(f"ramsey-degrees: error: {exc}", file=sys.stderr)
        return 2
    _emit(records, args.out)
    print(f"wall time {1000 * (time.perf_counter() - start):.1f} ms", file=sys.stderr)
    ok = all(r.get("pass", True) for r in records if isinstance(r, dict))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
