"""Command-line surface for the compression pipeline.

Exit codes: 0 = success / everything certified; 1 = semantically valid
input that fails certification, minimality, or decomposition; 2 = usage
or input errors.  Commands validate all inputs before writing anything,
so a run that exits 2 leaves no artifacts behind.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .certifier import EPSILON, certify_facets, certify_polytope, write_report
from .factorization import (
    InfeasibleDecompositionError,
    decompose_state,
    deterministic_measurement_matrices,
    factorization_residual,
    model_vertex_polytope,
    probvec_to_table_column,
    read_model,
    write_model,
)
from .mub import build_mub, is_prime, projectors, read_mub, verify_mub, write_mub
from .polytope import (
    Facet,
    enumerate_vertices,
    hull_facets,
    initial_ontic_polytope,
    read_fct,
    read_vtx,
    write_fct,
    write_vtx,
)
from .qstate import born_probabilities, read_state
from .report import write_campaign_csv, write_model_grid, write_size_histogram
from .search import (
    STRATEGIES,
    STRATEGY_UNIFORM,
    SearchConfig,
    UncertifiedInputError,
    campaign_to_jsonable,
    compress,
    is_minimal,
    multi_seed,
    write_trace,
)


def _facet_text(facet: Facet) -> str:
    return " ".join(str(c) for c in facet.c) + f" | {facet.f}"


def _require_prime(d: int) -> None:
    if not is_prime(d):
        raise ValueError(f"dimension {d} not supported: prime required")


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------


def _cmd_mub_gen(args: argparse.Namespace) -> int:
    mub = build_mub(args.dim)
    check = verify_mub(mub)
    deviation = max(check.orthonormality_deviation, check.unbiasedness_deviation)
    if not check.ok:
        raise ValueError(
            f"generated basis set failed validation: deviation {deviation}"
        )
    write_mub(args.out, mub)
    print(
        f"wrote {args.out}: {args.dim + 1} bases x {args.dim} vectors "
        f"({mub.convention_id}), max deviation {deviation:.3e}"
    )
    return 0


def _cmd_polytope_initial(args: argparse.Namespace) -> int:
    _require_prime(args.dim)
    v = initial_ontic_polytope(args.dim)
    write_vtx(
        args.out,
        v,
        comment=f"initial ontic polytope, d = {args.dim}: "
        f"{len(v.vertices)} vertices in {v.dim} dimensions",
    )
    print(f"wrote {args.out}: {len(v.vertices)} vertices in {v.dim} dimensions")
    return 0


def _cmd_polytope_hull(args: argparse.Namespace) -> int:
    v = read_vtx(args.infile)
    h = hull_facets(v)
    write_fct(
        args.out,
        h,
        comment=f"facets of the {len(v.vertices)}-vertex polytope from {args.infile}",
    )
    print(f"wrote {args.out}: {len(h.facets)} facets from {len(v.vertices)} vertices")
    return 0


def _cmd_polytope_vertices(args: argparse.Namespace) -> int:
    h = read_fct(args.infile)
    v = enumerate_vertices(h)
    write_vtx(
        args.out,
        v,
        comment=f"vertices of the {len(h.facets)}-facet system from {args.infile}",
    )
    print(f"wrote {args.out}: {len(v.vertices)} vertices from {len(h.facets)} facets")
    return 0


def _cmd_certify(args: argparse.Namespace) -> int:
    h = read_fct(args.facets)
    mub = read_mub(args.mub)
    proj = projectors(mub)
    expected_dim = mub.dim * mub.dim - 1
    if h.facets and h.dim != expected_dim:
        raise ValueError(
            f"facet file has {h.dim} coefficients per row, "
            f"dimension {mub.dim} needs {expected_dim}"
        )
    result = certify_facets(h.facets, proj, args.epsilon)
    for cert in result.facets:
        print(
            f"{_facet_text(cert.facet)}  lambda_min={cert.lambda_min!r}  "
            f"margin={cert.margin!r}  {cert.status}"
        )
    if args.report is not None:
        write_report(args.report, result)
    verdict = "all certified" if result.ok else "violated"
    print(f"{len(result.facets)} facets, min margin {result.min_margin!r}: {verdict}")
    return 0 if result.ok else 1


def _cmd_compress(args: argparse.Namespace) -> int:
    _require_prime(args.dim)
    proj = projectors(build_mub(args.dim))
    v0 = initial_ontic_polytope(args.dim)
    cfg = SearchConfig(
        seed=args.seed,
        epsilon=args.epsilon,
        strategy=args.strategy,
        max_removals_per_pass=args.max_removals_per_pass,
        incremental_certification=not args.full_certification,
    )
    try:
        final, trace = compress(v0, proj, cfg)
    except UncertifiedInputError as exc:
        print(f"input polytope fails certification: {exc}", file=sys.stderr)
        return 1
    model = deterministic_measurement_matrices(args.dim, final, seed=args.seed)
    write_model(args.out, model)
    if args.trace is not None:
        write_trace(args.trace, trace)
    print(
        f"wrote {args.out}: omega = {model.omega} of {len(v0.vertices)} "
        f"ontic states, {trace.hull_count} hull computations, "
        f"certified = {trace.certified}, minimal = {trace.minimal}"
    )
    return 0


def _cmd_verify_model(args: argparse.Namespace) -> int:
    model = read_model(args.model)
    expected = build_mub(model.dim).convention_id
    if model.convention_id and model.convention_id != expected:
        raise ValueError(
            f"model uses basis convention {model.convention_id!r}, "
            f"this build provides {expected!r}"
        )
    proj = projectors(build_mub(model.dim))
    v = model_vertex_polytope(model)
    result = certify_polytope(v, proj, args.epsilon)
    if not result.ok:
        worst = min(result.facets, key=lambda cert: cert.margin)
        print(
            f"certification FAILED: facet {_facet_text(worst.facet)} has "
            f"lambda_min={worst.lambda_min!r} < f - epsilon"
        )
        return 1
    minimal, counterexample = is_minimal(v, proj, args.epsilon)
    if not minimal:
        print(f"model is NOT minimal: state {counterexample} is removable")
        return 1
    print(
        f"model OK: omega = {model.omega}, all facets certified, "
        f"single-removal minimal"
    )
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    model = read_model(args.model)
    state = read_state(args.state)
    if state.dim != model.dim:
        raise ValueError(f"state dimension {state.dim} != model dimension {model.dim}")
    proj = projectors(build_mub(model.dim))
    p = born_probabilities(state, proj)
    v = model_vertex_polytope(model)
    try:
        weights = decompose_state(p, v)
    except InfeasibleDecompositionError as exc:
        print(
            f"infeasible: state lies outside the model polytope, "
            f"violated facet {_facet_text(exc.facet)} (value {exc.value!r})"
        )
        return 1
    table = probvec_to_table_column(p)
    residual = factorization_residual(model, np.asarray(weights)[:, None], table)
    for label, w in zip(model.labels, weights):
        if w != 0.0:
            print(f"{label} {float(w)!r}")
    print(f"residual {float(residual)!r}")
    return 0


def _cmd_campaign(args: argparse.Namespace) -> int:
    _require_prime(args.dim)
    if args.seeds < 1:
        raise ValueError("--seeds must be at least 1")
    if args.jobs < 1:
        raise ValueError("--jobs must be at least 1")
    proj = projectors(build_mub(args.dim))
    v0 = initial_ontic_polytope(args.dim)
    cfg = SearchConfig(seed=0, epsilon=args.epsilon, strategy=args.strategy)
    seeds = list(range(args.first_seed, args.first_seed + args.seeds))
    report = multi_seed(v0, proj, seeds, cfg)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_campaign_csv(out_dir / "campaign.csv", report)
    write_size_histogram(out_dir / "sizes.png", report)
    best = deterministic_measurement_matrices(
        args.dim, report.best_model, seed=report.best_seed
    )
    write_model(out_dir / "best_model.json", best)
    write_model_grid(out_dir / "best_model.png", best)
    (out_dir / "campaign.json").write_text(
        json.dumps(campaign_to_jsonable(report, args.dim), indent=1) + "\n"
    )
    hist = " ".join(f"{size}:{count}" for size, count in report.histogram.items())
    print(
        f"{len(seeds)} seeds, best omega = {len(report.best_model.vertices)} "
        f"(seed {report.best_seed}), sizes {{{hist}}}, "
        f"{report.total_hull_computations} hull computations, "
        f"{report.wall_time_s:.1f}s"
    )
    print(f"wrote campaign.csv, campaign.json, sizes.png, best_model.json, best_model.png to {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onticmodels",
        description="Ontological compression of MUB outcome statistics.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mub-gen", help="generate and validate a basis set")
    p.add_argument("--dim", type=int, required=True, help="prime Hilbert dimension")
    p.add_argument("--out", required=True, help="output JSON path")
    p.set_defaults(handler=_cmd_mub_gen)

    p = sub.add_parser("polytope", help="polytope representations and conversions")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("initial", help="write the full ontic vertex set")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--out", required=True, help="output .vtx path")
    q.set_defaults(handler=_cmd_polytope_initial)
    q = psub.add_parser("hull", help="facets of a vertex file")
    q.add_argument("--in", dest="infile", required=True, help="input .vtx path")
    q.add_argument("--out", required=True, help="output .fct path")
    q.set_defaults(handler=_cmd_polytope_hull)
    q = psub.add_parser("vertices", help="vertices of a facet file")
    q.add_argument("--in", dest="infile", required=True, help="input .fct path")
    q.add_argument("--out", required=True, help="output .vtx path")
    q.set_defaults(handler=_cmd_polytope_vertices)

    p = sub.add_parser("certify", help="minimax-eigenvalue test for every facet")
    p.add_argument("--facets", required=True, help="input .fct path")
    p.add_argument("--mub", required=True, help="basis-set JSON path")
    p.add_argument("--report", default=None, help="optional certificate JSON path")
    p.add_argument("--epsilon", type=float, default=EPSILON)
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("compress", help="seeded greedy vertex removal")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default=STRATEGY_UNIFORM)
    p.add_argument("--epsilon", type=float, default=EPSILON)
    p.add_argument("--max-removals-per-pass", type=int, default=None)
    p.add_argument(
        "--full-certification",
        action="store_true",
        help="re-certify every facet after each removal instead of only new ones",
    )
    p.add_argument("--out", required=True, help="output model JSON path")
    p.add_argument("--trace", default=None, help="optional trace JSONL path")
    p.set_defaults(handler=_cmd_compress)

    p = sub.add_parser("verify-model", help="re-run certification and minimality")
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--epsilon", type=float, default=EPSILON)
    p.set_defaults(handler=_cmd_verify_model)

    p = sub.add_parser("decompose", help="ontic weights reproducing a quantum state")
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--state", required=True, help="state JSON path")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("campaign", help="multi-seed compression with report files")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seeds", type=int, required=True, help="number of seeds to run")
    p.add_argument("--first-seed", type=int, default=1)
    p.add_argument("--strategy", choices=sorted(STRATEGIES), default=STRATEGY_UNIFORM)
    p.add_argument("--epsilon", type=float, default=EPSILON)
    p.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker processes; execution is serial either way so output "
        "ordering never depends on scheduling",
    )
    p.add_argument("--out-dir", required=True, help="report directory")
    p.set_defaults(handler=_cmd_campaign)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (ValueError, OSError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
