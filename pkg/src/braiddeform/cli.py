"""Command-line front end.

Exit codes: 0 on success, 1 on usage or input errors, 2 when a
verification or agreement check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import biject, genfun, oracle, verify
from .core import (
    DeformationSpec,
    characteristic,
    parse_offsets,
    rank,
    tutte_from_coboundary,
    zaslavsky,
)
from .count import (
    coboundary_from_trees,
    signed_region_count,
    transitivity_witness,
    tuple_transitivity_witness,
    unsigned_region_count,
)
from .errors import BraidDeformError, NotTransitive
from .trees import PlaneTree, enumerate_trees, family, random_tree

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# input helpers ------------------------------------------------------------------


def _parse_n(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def load_spec(args) -> DeformationSpec:
    if args.spec:
        spec = DeformationSpec.from_json(Path(args.spec).read_text())
        if args.n is not None:
            spec = spec.with_n(_parse_n(args.n))
        return spec
    if args.S is None:
        raise UsageError("give --spec FILE or --S OFFSETS")
    n = _parse_n(args.n) if args.n is not None else (0,)
    if len(n) != 1:
        raise UsageError("--S describes one type; --n must be a single integer")
    return DeformationSpec.uniform(parse_offsets(args.S), n[0])


def _fraction_text(value) -> str:
    from fractions import Fraction

    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def _emit(payload, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    if not isinstance(payload, list) or not all(isinstance(row, dict) for row in payload):
        raise UsageError("csv output is only available for flat tables")
    buffer = io.StringIO()
    fields = list(payload[0]) if payload else []
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(payload)
    out.write(buffer.getvalue())


# subcommands ----------------------------------------------------------------------


def cmd_count(args, out) -> int:
    spec = load_spec(args)
    methods = ["signed", "unsigned", "whitney", "sketch"] if args.method == "all" else [args.method]
    result: dict[str, object] = {}
    for method in methods:
        if method == "signed":
            result["signed"] = signed_region_count(spec, jobs=args.jobs)
        elif method == "unsigned":
            try:
                result["unsigned"] = unsigned_region_count(spec, jobs=args.jobs)
            except NotTransitive as err:
                if args.method != "all":
                    raise
                result["unsigned"] = None
                result["unsigned_skipped"] = str(err)
        elif method == "whitney":
            P = oracle.whitney_coboundary(spec)
            result["whitney"] = zaslavsky(characteristic(P), spec.size, rank(spec))[0]
        else:
            result["sketch"] = oracle.regions_by_sketch_enumeration(spec)[0]
    values = {v for k, v in result.items() if k in methods and v is not None}
    result["agree"] = len(values) <= 1
    if args.format == "csv":
        rows = [{"method": k, "regions": v} for k, v in result.items() if k in methods]
        _emit(rows, "csv", out)
    else:
        _emit(result, "json", out)
    return EXIT_OK if result["agree"] else EXIT_FAILED


def cmd_trees(args, out) -> int:
    spec = load_spec(args)
    if args.sample:
        rng = random.Random(args.seed)
        trees = [random_tree(spec.m, spec.labels(), rng) for _ in range(args.sample)]
        payload = {"trees": [t.to_text() for t in trees]}
        _emit(payload, args.format, out)
        return EXIT_OK
    if args.all:
        stream = enumerate_trees(spec.m, spec.labels())
    else:
        witness = (
            transitivity_witness(spec.offsets(1, 1)) if spec.N == 1 else tuple_transitivity_witness(spec)
        )
        if witness is not None:
            raise NotTransitive(witness)
        stream = family(spec)
    if args.count_only:
        payload = {"count": sum(1 for _ in stream)}
    else:
        texts = [t.to_text() for t in stream]
        payload = {"count": len(texts), "trees": texts}
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_poly(args, out) -> int:
    spec = load_spec(args)
    if args.method == "whitney":
        P = oracle.whitney_coboundary(spec)
    else:
        P = coboundary_from_trees(spec, spec.size)[spec.n_vector]
    r = rank(spec)
    payload: dict[str, object] = {"kind": args.kind, "dimension": spec.size, "rank": r}
    if args.kind == "coboundary":
        payload["polynomial"] = P.to_json(("q", "y"))
        payload["text"] = str(P)
    elif args.kind == "characteristic":
        chi = characteristic(P)
        regions, bounded = zaslavsky(chi, spec.size, r)
        payload["polynomial"] = chi.to_json(("q",))
        payload["text"] = str(chi)
        payload["regions"] = regions
        payload["bounded"] = bounded
    else:
        T = tutte_from_coboundary(P, r, spec.size)
        payload["polynomial"] = T.to_json(("x", "y"))
        payload["text"] = str(T)
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_series(args, out) -> int:
    spec = load_spec(args)
    if args.kind == "region":
        series = genfun.solve_region_gf(spec, args.trunc)
        payload = series.to_json()
    else:
        series = genfun.solve_coboundary_gf(spec, args.trunc)
        payload = series.to_json(coefficient_variables=("q", "y"))
    _emit(payload, args.format, out)
    return EXIT_OK


def _tree_arg(args, spec: DeformationSpec | None = None) -> PlaneTree:
    if not args.tree:
        raise UsageError("this action needs --tree")
    arity = spec.m + 1 if spec is not None else None
    return PlaneTree.parse(args.tree, arity)


def cmd_bijection(args, out) -> int:
    action = args.action
    if action == "tree-to-region":
        spec = load_spec(args)
        tree = _tree_arg(args, spec)
        region = biject.region_of_tree(spec, tree)
        payload = {
            "tree": tree.to_text(),
            "sketch": biject.psi(tree).to_text(),
            "region": region.to_json(spec),
        }
    elif action == "parking":
        tree = _tree_arg(args)
        payload = {
            "tree": tree.to_text(),
            "pak_stanley": list(biject.pak_stanley(tree)),
            "athanasiadis_linusson": list(biject.athanasiadis_linusson(tree)),
        }
    elif action == "theta":
        tree = _tree_arg(args)
        payload = {"tree": tree.to_text(), "theta": biject.theta(tree).to_text()}
    elif action == "psi":
        tree = _tree_arg(args)
        payload = {"tree": tree.to_text(), "sketch": biject.psi(tree).to_text()}
    elif action == "phi":
        if not args.sketch:
            raise UsageError("phi needs --sketch")
        sketch = biject.AnnotatedSketch.parse(args.sketch, args.m)
        point = biject.representative_point(sketch)
        payload = {
            "sketch": sketch.to_text(),
            "tree": biject.phi(sketch).to_text(),
            "point": {str(k): _fraction_text(v) for k, v in point.items()},
        }
    else:
        spec = load_spec(args)
        labels = spec.labels()
        trees = list(enumerate_trees(spec.m, labels))
        sketches = list(biject.enumerate_sketches(spec.m, labels))
        payload = {
            "trees": len(trees),
            "sketches": len(sketches),
            "phi_psi": all(biject.phi(biject.psi(t)) == t for t in trees),
            "sigma_representative": all(
                biject.sigma(biject.representative_point(s), spec.m) == s for s in sketches
            ),
            "maximality": biject.maximality_audit(spec),
        }
        ok = payload["phi_psi"] and payload["sigma_representative"] and all(
            v for v in payload["maximality"].values() if isinstance(v, bool)
        )
        _emit(payload, args.format, out)
        return EXIT_OK if ok else EXIT_FAILED
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    rows = []
    for result in verify.run_checks(args.scale):
        rows.append(result.to_json())
        print(f"{'PASS' if result.ok else 'FAIL'} {result.check}: {result.detail}", file=sys.stderr)
    _emit(rows, args.format, out)
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_FAILED


def cmd_configs(args, out) -> int:
    spec = None
    if args.spec or args.S is not None:
        spec = load_spec(args)
    m = spec.m if spec is not None and args.m is None else (args.m or 0)
    N = spec.N if spec is not None else args.N
    if spec is not None and (spec.m != m or spec.N != N):
        raise UsageError("--m and --N must match the offset data")
    if args.zero_energy and spec is None:
        raise UsageError("--zero-energy needs a spec")
    rows = []
    for config in genfun.enumerate_configs(m, N, args.size, spec, args.zero_energy):
        row = {
            "gaps": " ".join(map(str, config.gaps)),
            "word": " ".join(str(v) for v in config.word),
            "width": config.width(m),
        }
        if spec is not None:
            row["energy"] = config.energy(spec)
        rows.append(row)
    _emit(rows, args.format, out)
    return EXIT_OK


# parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="braiddeform", description="Regions, polynomials and bijections for deformed braid arrangements.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def spec_options(p, required=True):
        p.add_argument("--spec", help="JSON spec file")
        p.add_argument("--S", help='offset set, e.g. "-1,0,1" or "-2..1"')
        p.add_argument("--n", help="number of hyperplane vertices; comma list for graded specs")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("count", help="count regions")
    spec_options(p)
    p.add_argument("--method", choices=["signed", "unsigned", "whitney", "sketch", "all"], default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("trees", help="enumerate the tree family")
    spec_options(p)
    p.add_argument("--all", action="store_true", help="every tree, not just the family")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--sample", type=int, default=0, help="draw random trees instead")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("poly", help="characteristic, coboundary or Tutte polynomial")
    spec_options(p)
    p.add_argument("--kind", choices=["characteristic", "coboundary", "tutte"], default="characteristic")
    p.add_argument("--method", choices=["whitney", "trees"], default="whitney")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("series", help="generating series to a truncation")
    spec_options(p)
    p.add_argument("--kind", choices=["region", "coboundary"], default="region")
    p.add_argument("--trunc", type=int, default=4)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("bijection", help="tree, sketch, region and parking bijections")
    spec_options(p)
    p.add_argument("--action", choices=["tree-to-region", "parking", "theta", "psi", "phi", "audit"], required=True)
    p.add_argument("--tree", help='tree text such as "(1 (2 . .) .)"')
    p.add_argument("--sketch", help='sketch text such as "a1^0 a2^0 a1^1 a2^1"')
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--scale", choices=sorted(verify.SCALES), default="small")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("configs", help="list (m,N)-configurations")
    spec_options(p)
    p.add_argument("--m", type=int)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--zero-energy", action="store_true")
    p.set_defaults(func=cmd_configs)
    return parser


def _glue_offsets(argv: Sequence[str]) -> list[str]:
    # argparse reads "--S -1,0,1" as two options; glue the value on
    out: list[str] = []
    for arg in argv:
        if out and out[-1] == "--S" and arg.startswith("-"):
            out[-1] = f"--S={arg}"
        else:
            out.append(arg)
    return out


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    argv = _glue_offsets(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as err:
        print(f"braiddeform: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (BraidDeformError, ValueError, OSError, KeyError) as err:
        print(f"braiddeform: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
