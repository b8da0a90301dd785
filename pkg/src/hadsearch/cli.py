"""Command-line driver: build models, anneal, verify, run oracles, export.

Batch, non-interactive.  Exit codes: 0 success, 1 usage or input error,
2 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import annealer, ising, verify
from .poly import Domain, Polynomial
from .problems import (
    Completion,
    HSearch,
    OrthoSet,
    ProblemSpec,
    layout_for,
    problem_name,
    read_known_columns,
)
from .reduce import Delta, default_delta, run_pipeline

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


class CliError(Exception):
    """Input or flag-combination problem; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_spec(args) -> ProblemSpec:
    if args.problem == "hsearch":
        if args.count is not None or args.known is not None:
            raise CliError("hsearch takes neither --count nor --known")
        return HSearch(args.order)
    if args.problem == "orthoset":
        if args.count is None:
            raise CliError("orthoset requires --count")
        if args.known is not None:
            raise CliError("orthoset does not take --known")
        return OrthoSet(args.order, args.count)
    if args.count is not None:
        raise CliError("completion does not take --count")
    if args.known is None:
        raise CliError("completion requires --known")
    return Completion(args.order, read_known_columns(args.known, args.order))


def _add_problem_flags(parser) -> None:
    parser.add_argument("--problem", required=True, choices=["hsearch", "orthoset", "completion"])
    parser.add_argument("--order", required=True, type=int, metavar="M")
    parser.add_argument("--count", type=int, metavar="N", help="unknown vectors (orthoset)")
    parser.add_argument("--known", metavar="FILE", help="known columns file (completion)")


def _print_stats(spec: ProblemSpec, result) -> None:
    layout = result.layout
    counts = result.term_counts()
    stats = result.e2_s.stats()
    print(f"problem: {problem_name(spec)} order={spec.order} unknown_cols={layout.unknown_cols}")
    print(
        f"variables: {layout.total_vars} "
        f"(main {layout.main_count}, ancilla {layout.ancilla_count})"
    )
    print(f"delta: {result.delta.value}")
    print(f"terms: Ek(s)={counts[0]} Ek(q)={counts[1]} E2(q)={counts[2]} E2(s)={counts[3]}")
    print(
        f"E2(s): constant={stats.constant} max|coeff|={stats.max_abs_coefficient} "
        f"degree={stats.degree}"
    )


def _cmd_build(args) -> int:
    spec = _build_spec(args)
    delta = Delta(args.delta) if args.delta is not None else default_delta(spec)
    result = run_pipeline(spec, delta)
    model = ising.extract(result.e2_s, spec)
    ising.save_model(model, args.out)
    _print_stats(spec, result)
    print(f"model written to {args.out}")
    return EXIT_OK


def _cmd_anneal(args) -> int:
    model = ising.load_model(args.model)
    if args.normalize:
        model = ising.normalize(model)
    config = annealer.AnnealConfig(
        sweeps=args.sweeps,
        reads=args.reads,
        beta_min=args.beta_min,
        beta_max=args.beta_max,
        schedule=args.schedule,
        seed=args.seed,
    )
    result = annealer.anneal(model, config)
    annealer.save_results(result, args.out)
    hist_path = args.hist or str(Path(args.out).with_suffix(".hist.csv"))
    Path(hist_path).write_text(annealer.histogram_csv(result))
    best = result.best()
    print(f"reads: {result.reads}  distinct states: {len(result.samples)}")
    print(f"best energy: {best.energy:.2f}  ({best.occurrences} reads)")
    for level, n in annealer.histogram(result):
        print(f"  {level:.2f}: {n} reads")
    print(f"results written to {args.out}, histogram to {hist_path}")
    return EXIT_OK


def _verdict(model: ising.IsingModel, spins) -> bool:
    layout = model.layout
    matrix = verify.decode(layout, spins)
    if matrix.shape[1] == matrix.shape[0]:
        return verify.is_hadamard(matrix)
    return not verify.mutual_orthogonality(list(matrix.T))


def _cmd_verify(args) -> int:
    model = ising.load_model(args.model)
    results = annealer.load_results(args.results)
    if model.problem is None:
        raise CliError("model document carries no layout; cannot decode samples")
    digest = ising.model_digest(model)
    if results.model_digest != digest:
        raise CliError(
            f"results were produced for model {results.model_digest}, not {digest}"
        )
    ok_reads = 0
    total = 0
    print("spins  energy  occurrences  verdict")
    for sample in results.samples:
        good = _verdict(model, sample.spins)
        signs = "".join("+" if v > 0 else "-" for v in sample.spins)
        print(f"{signs}  {sample.energy:.2f}  {sample.occurrences}  {'Y' if good else 'N'}")
        total += sample.occurrences
        if good:
            ok_reads += sample.occurrences
    print(f"verified: {ok_reads}/{total} reads")
    return EXIT_OK if ok_reads else EXIT_VERIFICATION


def _cmd_oracle(args) -> int:
    spec = _build_spec(args)
    report = verify.brute_force_ground(spec, budget=args.budget)
    print(f"minimum energy: {report.min_energy}")
    print(f"minimizers: {report.minimizer_count}")
    signs = "".join("+" if v > 0 else "-" for v in report.witness)
    print(f"witness (main block): {signs}")
    # cross-check the quadratic form against the k-body energy on the witness
    # and on random consistent extensions
    result = run_pipeline(spec)
    layout = result.layout
    rng = np.random.default_rng(0)
    mains = rng.choice((-1, 1), size=(256, layout.main_count))
    mains[0] = report.witness
    extended = np.array([verify.consistent_ancilla_extension(layout, m) for m in mains])
    e2 = verify.evaluate_batch(result.e2_s, extended)
    ek = verify.evaluate_batch(result.ek_s, extended[:, : layout.main_count])
    if not np.array_equal(e2, ek):
        raise RuntimeError("quadratic energy disagrees with the k-body energy")
    print("E2 agreement on consistent extensions: OK")
    return EXIT_OK


def _cmd_export(args) -> int:
    model = ising.load_model(args.model)
    if args.format == "flat":
        Path(args.out).write_text(ising.to_flat_text(model))
    else:
        q, offset = ising.to_qubo(model)
        lines = [f"c offset {offset}"]
        lines += [f"Q {i} {j} {c}" for (i, j), c in sorted(q.items())]
        Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"{args.format} export written to {args.out}")
    return EXIT_OK


# Reference chain for the order-2 search: the four stages any correct build
# must reproduce exactly.
_DEMO_STAGES = [
    ("Ek(s)", "ek_s", Domain.SPIN, {(): 2, (0, 1, 2, 3): 2}),
    (
        "Ek(q)",
        "ek_q",
        Domain.BOOLEAN,
        {
            (): 4, (0,): -4, (1,): -4, (2,): -4, (3,): -4,
            (0, 1): 8, (0, 2): 8, (0, 3): 8, (1, 2): 8, (1, 3): 8, (2, 3): 8,
            (0, 1, 2): -16, (0, 1, 3): -16, (0, 2, 3): -16, (1, 2, 3): -16,
            (0, 1, 2, 3): 32,
        },
    ),
    (
        "E2(q)",
        "e2_q",
        Domain.BOOLEAN,
        {
            (): 4, (0,): -4, (1,): -4, (2,): -4, (3,): -4, (4,): 56, (5,): 56,
            (0, 1): 8, (0, 2): 16, (0, 3): 8, (0, 4): -32, (0, 5): -16,
            (1, 2): 8, (1, 3): 16, (1, 4): -16, (1, 5): -32,
            (2, 3): 8, (2, 4): -32, (2, 5): -16, (3, 4): -16, (3, 5): -32,
            (4, 5): 32,
        },
    ),
    (
        "E2(s)",
        "e2_s",
        Domain.SPIN,
        {
            (): 28, (0,): 6, (1,): 6, (2,): 6, (3,): 6, (4,): -12, (5,): -12,
            (0, 1): 2, (0, 2): 4, (0, 3): 2, (0, 4): -8, (0, 5): -4,
            (1, 2): 2, (1, 3): 4, (1, 4): -4, (1, 5): -8,
            (2, 3): 2, (2, 4): -8, (2, 5): -4, (3, 4): -4, (3, 5): -8,
            (4, 5): 8,
        },
    ),
]


def _cmd_demo(args) -> int:
    result = run_pipeline(HSearch(2), Delta(16))
    all_ok = True
    for label, attr, domain, terms in _DEMO_STAGES:
        got = getattr(result, attr)
        want = Polynomial(domain, terms)
        ok = got == want
        all_ok &= ok
        print(f"{label}: {got.render()}")
        print(f"  -> {'matches' if ok else 'DIFFERS FROM'} reference ({len(want.terms)} terms)")
    model = ising.normalize(ising.extract(result.e2_s, HSearch(2)))
    # minimum of E2 is zero, so with the offset dropped the floor sits at -offset
    print(f"normalized ground energy: {float(-model.offset):.2f} (scale {model.scale})")
    return EXIT_OK if all_ok else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hadsearch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parser_class=_Parser, help="run the pipeline and write a model")
    _add_problem_flags(p)
    p.add_argument("--delta", type=int, help="penalty weight (default per family)")
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("anneal", parser_class=_Parser, help="sample a model file")
    p.add_argument("--model", required=True, metavar="FILE")
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--reads", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta-min", type=float, default=0.1)
    p.add_argument("--beta-max", type=float, default=400.0)
    p.add_argument("--schedule", choices=list(annealer.SCHEDULES), default="geometric")
    p.add_argument(
        "--normalize",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="divide coefficients by the largest magnitude before solving",
    )
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--hist", metavar="FILE", help="histogram CSV (default: <out>.hist.csv)")
    p.set_defaults(func=_cmd_anneal)

    p = sub.add_parser("verify", parser_class=_Parser, help="check samples against the problem")
    p.add_argument("--model", required=True, metavar="FILE")
    p.add_argument("--results", required=True, metavar="FILE")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", parser_class=_Parser, help="exhaustive ground-state search")
    _add_problem_flags(p)
    p.add_argument("--budget", type=int, default=verify.DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("export", parser_class=_Parser, help="write a sampler exchange format")
    p.add_argument("--model", required=True, metavar="FILE")
    p.add_argument("--format", choices=["flat", "qubo"], default="flat")
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("demo", parser_class=_Parser, help="order-2 walkthrough with self-check")
    p.set_defaults(func=_cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError, verify.BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
