"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or
input errors (including a refused GH search).

File formats (JSON):

  scaffold      {"dim": N, "M": M, "C": 4M, "D": 10M, "variant": "full-square", "x": [...]}
  metric space  {"labels": [...], "matrix": [[...], ...]}
  point set     {"dim": N, "points": [[...], ...]}
  map           [[i, j], ...]   index pairs from the first space into the second
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import gh
from .hausdorff import scaffold_hausdorff_sampled, scaffold_hausdorff_witness
from .kuratowski import embed_finite_space
from .lemma import certify_lemma
from .metric import FiniteMetricSpace, load_point_set
from .scaffold import Scaffold, Variant, build_scaffold
from .svg import render_svg, write_svg
from .verify import SUITES, VerifyConfig, run_verify

SEED_ENV = "GHEMBED_SEED"

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _variant_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--variant",
        default=Variant.FULL_SQUARE.value,
        choices=[v.value for v in Variant],
        help="block shape (default: full-square)",
    )


def _load_space(path: str) -> FiniteMetricSpace:
    """Metric-space JSON, or a point-set JSON taken under the Chebyshev metric."""
    with open(path) as fh:
        data = json.load(fh)
    if "matrix" in data:
        return FiniteMetricSpace.from_dict(data)
    if "points" in data:
        return FiniteMetricSpace.from_points(load_point_set(path))
    raise UsageError(f"{path}: expected a 'matrix' or 'points' key")


def cmd_construct(args) -> int:
    k = build_scaffold(args.x, args.M, args.variant)
    if args.json:
        k.dump(args.json)
    if args.svg:
        write_svg(k, args.svg)
    if not args.json:
        print(json.dumps(k.to_dict()))
    return EXIT_OK


def cmd_render(args) -> int:
    k = Scaffold.load(args.scaffold)
    if args.out:
        write_svg(k, args.out)
    else:
        sys.stdout.write(render_svg(k))
    return EXIT_OK


def cmd_hausdorff(args) -> int:
    ka, kb = Scaffold.load(args.a), Scaffold.load(args.b)
    if args.mode == "exact":
        w = scaffold_hausdorff_witness(ka, kb)
        print(format(w.value, ".17g"))
        print(f"witness: marker {w.marker} sign {w.sign} ({w.direction})", file=sys.stderr)
    else:
        if args.eps is None:
            raise UsageError("--mode sampled needs --eps")
        print(format(scaffold_hausdorff_sampled(ka, kb, args.eps), ".17g"))
    return EXIT_OK


def cmd_gh(args) -> int:
    x, y = _load_space(args.x), _load_space(args.y)
    lower = gh.gh_lower_bounds(x, y)
    if args.map:
        with open(args.map) as fh:
            pairs = json.load(fh)
        rep = gh.check_eps_isometry(pairs, x, y)
        out = {
            "max_distortion": rep.max_distortion,
            "max_surjectivity_gap": rep.max_surjectivity_gap,
            "distortion_witness": list(rep.distortion_witness),
            "gap_witness": rep.gap_witness,
        }
        if args.eps is not None:
            out["is_eps_isometry"] = rep.is_eps_isometry(args.eps)
        print(json.dumps(out))
        return EXIT_OK
    if args.lower_only:
        print(format(lower, ".17g"))
        return EXIT_OK
    res = gh.gh_search(x, y, args.max_cost)
    print(format(res.distance, ".17g"))
    if args.verbose:
        print(f"lower bound {lower:g}; correspondence {list(res.correspondence)}; {res.nodes} nodes", file=sys.stderr)
    return EXIT_OK


def cmd_embed_finite(args) -> int:
    space = FiniteMetricSpace.load(args.input)
    result = embed_finite_space(space, args.variant, args.base)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, k in enumerate(result.scaffolds):
        k.dump(out / f"scaffold_{i}.json")
        write_svg(k, out / f"scaffold_{i}.svg")
    result.recovered.dump(out / "recovered.json")
    dev = float(np.max(np.abs(result.recovered.matrix - space.matrix)))
    print(f"{len(space)} points embedded with M={result.bound:g}; max deviation {dev:.3g}")
    return EXIT_OK if dev <= args.tolerance else EXIT_FAILED


def cmd_verify_lemma(args) -> int:
    cert = certify_lemma(args.dims, args.bounds, args.variant)
    print(f"{cert.cases} cases, {len(cert.failures)} failures, worst closed-form/grid gap {cert.worst_gap:g}")
    for f in cert.failures[:20]:
        print(json.dumps(f))
    for f in cert.relation_failures:
        print(json.dumps(f))
    return EXIT_OK if cert.passed else EXIT_FAILED


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else int(os.environ.get(SEED_ENV, "42"))
    try:
        cfg = VerifyConfig(
            seed=seed,
            trials=args.trials,
            dims=tuple(args.dims),
            bound=args.M,
            eps_list=tuple(args.eps),
            variant=args.variant,
            tolerance=args.tolerance,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_verify(cfg, args.suites or SUITES)
    if args.report:
        Path(args.report).write_text(report.to_json())
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghembed",
        description="Scaffold embedding of bounded Chebyshev sets into the Gromov-Hausdorff space.",
        epilog=__doc__.split("\n\n", 2)[2],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("construct", help="build the scaffold of a point")
    p.add_argument("--x", type=_floats, required=True, help="coordinates, e.g. 1,2")
    p.add_argument("--M", type=float, required=True, help="bound M with 0 <= x_n <= M")
    _variant_arg(p)
    p.add_argument("--json", help="write scaffold JSON here instead of stdout")
    p.add_argument("--svg", help="also write an SVG drawing")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("render", help="draw a scaffold JSON file as SVG")
    p.add_argument("--scaffold", required=True)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("hausdorff", help="Hausdorff distance between two scaffold files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--eps", type=float, help="sampling density for --mode sampled")
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("gh", help="exact Gromov-Hausdorff distance of two small spaces")
    p.add_argument("--x", required=True, help="metric-space or point-set JSON")
    p.add_argument("--y", required=True)
    p.add_argument("--lower-only", action="store_true", help="print only the cheap lower bound")
    p.add_argument("--map", help="JSON index pairs of a map X -> Y; report its distortion instead")
    p.add_argument("--eps", type=float, help="with --map, also decide epsilon-isometry")
    p.add_argument("--max-cost", type=int, default=gh.DEFAULT_MAX_COST, help="refuse when |X|*|Y| exceeds this")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_gh)

    p = sub.add_parser("embed-finite", help="embed a finite metric space as scaffolds")
    p.add_argument("--input", required=True)
    _variant_arg(p)
    p.add_argument("--base", type=int, default=0, help="index of the base point")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.set_defaults(func=cmd_embed_finite)

    p = sub.add_parser("verify-lemma", help="check every closed-form component distance against grids")
    p.add_argument("--dims", type=_ints, default=[1, 2, 3, 4])
    p.add_argument("--bounds", type=_floats, default=[0.5, 1.0, 2.0, 7.0])
    _variant_arg(p)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("verify", help="run the seeded verification campaign")
    p.add_argument("--seed", type=int, help=f"default: ${SEED_ENV} or 42")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dims", type=_ints, default=[1, 2, 3, 4])
    p.add_argument("--M", type=float, default=2.0)
    p.add_argument("--eps", type=_floats, default=[1.0, 0.5])
    _variant_arg(p)
    p.add_argument("--tolerance", type=float, default=1e-12)
    p.add_argument("--suite", dest="suites", action="append", choices=SUITES, help="run only this suite (repeatable)")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except gh.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, IndexError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
