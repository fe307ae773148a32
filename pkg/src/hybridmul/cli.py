"""Command-line interface.

Subcommands:
  compare  run a campaign across architectures and emit a report
  trace    explain one multiplication step by step
  table2   print the calibrated 3-architecture power/delay grid
  stream   run the cell-level toggle simulation over an input stream

Exit status: 0 on success, 1 when a simulated product disagrees with the
native-multiply oracle, 2 on bad inputs or configuration.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bitnum import check_operand_width
from .datapath import ProductMismatchError, simulate_stream
from .encoding import Architecture
from .harness import (
    Campaign,
    InputFormatError,
    RandomSource,
    gen_inputs,
    parse_input_spec,
    render_ascii,
    render_cost_grid_ascii,
    render_cost_grid_csv,
    render_cost_grid_json,
    render_cost_grid_svg,
    render_csv,
    render_json,
    render_svg,
    run_campaign,
    trace,
)
from .metrics import (
    REFERENCE_SWITCHING_REDUCTION_PCT,
    CostModel,
    OffGridVoltageError,
    reduction_percent,
    table2_report,
)

_ARCH_BY_NAME = {a.value: a for a in Architecture}


def _add_stream_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--width", type=int, default=8, help="operand width in bits (4-32)")
    p.add_argument(
        "--inputs",
        default="random:1000",
        help="input source: exhaustive, random:N, or file:PATH",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for random inputs")
    p.add_argument(
        "--dist",
        default="uniform",
        help="random distribution: uniform, uniform8, or sparseK (e.g. sparse3)",
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridmul",
        description="Bit-accurate multiplier architecture simulator and analyzer",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compare = sub.add_parser("compare", help="compare architectures over an input campaign")
    _add_stream_args(compare)
    compare.add_argument(
        "--arch",
        action="append",
        choices=sorted(_ARCH_BY_NAME),
        help="architecture to include (repeatable; default: all three)",
    )
    compare.add_argument("--toggles", action="store_true", help="also run the cell-level toggle simulation")
    compare.add_argument("--ssst", action="store_true", help="enable freeze gating in the toggle simulation")
    compare.add_argument("--vdd", action="append", type=float, help="supply voltage for cost estimates (repeatable)")
    compare.add_argument("--interpolate", action="store_true", help="allow off-grid voltages via linear interpolation")
    compare.add_argument("--model", help="cost-model config file (vdd power_uW delay_ns per line)")
    compare.add_argument("--prefer-sparse", action="store_true", help="use the operand with fewer set bits as multiplier")
    compare.add_argument("--format", choices=("ascii", "csv", "json", "svg"), default="ascii")
    compare.add_argument("--out", help="write the report to a file instead of stdout")

    tr = sub.add_parser("trace", help="explain one multiplication")
    tr.add_argument("a", type=int)
    tr.add_argument("b", type=int)
    tr.add_argument("--width", type=int, default=8)

    t2 = sub.add_parser("table2", help="print the calibrated power/delay grid")
    t2.add_argument("--model", help="cost-model config file (vdd power_uW delay_ns per line)")
    t2.add_argument("--format", choices=("ascii", "csv", "json", "svg"), default="ascii")
    t2.add_argument("--out", help="write the grid to a file instead of stdout")

    st = sub.add_parser("stream", help="cell-level toggle simulation over a stream")
    _add_stream_args(st)
    st.add_argument(
        "--arch",
        action="append",
        choices=sorted(_ARCH_BY_NAME),
        help="architecture to simulate (repeatable; default: all three)",
    )
    st.add_argument("--ssst", action="store_true", help="enable freeze gating")
    st.add_argument("--trace-toggles", help="write a per-evaluation toggle CSV to this path")

    return parser


def _cmd_compare(args: argparse.Namespace) -> int:
    archs = tuple(_ARCH_BY_NAME[name] for name in (args.arch or sorted(_ARCH_BY_NAME)))
    source = parse_input_spec(args.inputs)
    if isinstance(source, RandomSource):
        source = RandomSource(source.count, args.dist)
    campaign = Campaign(
        width=args.width,
        architectures=archs,
        source=source,
        seed=args.seed,
        ssst=args.ssst,
        simulate_toggles=args.toggles,
        vdds=tuple(args.vdd) if args.vdd else (1.2,),
        prefer_sparse=args.prefer_sparse,
    )
    model = CostModel.load(args.model) if args.model else CostModel.default()
    report = run_campaign(campaign, model, interpolate=args.interpolate)
    renderer = {
        "ascii": render_ascii,
        "csv": render_csv,
        "json": render_json,
        "svg": render_svg,
    }[args.format]
    _emit(renderer(report), args.out)
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    result = trace(args.a, args.b, width=args.width)
    sys.stdout.write(result.render() + "\n")
    return 0


def _cmd_table2(args: argparse.Namespace) -> int:
    model = CostModel.load(args.model) if args.model else CostModel.default()
    grid = table2_report(model)
    renderer = {
        "ascii": render_cost_grid_ascii,
        "csv": render_cost_grid_csv,
        "json": render_cost_grid_json,
        "svg": render_cost_grid_svg,
    }[args.format]
    _emit(renderer(grid), args.out)
    return 0


def _cmd_stream(args: argparse.Namespace) -> int:
    check_operand_width(args.width)
    source = parse_input_spec(args.inputs)
    if isinstance(source, RandomSource):
        source = RandomSource(source.count, args.dist)
    pairs = gen_inputs(source, args.width, args.seed)
    archs = tuple(_ARCH_BY_NAME[name] for name in (args.arch or sorted(_ARCH_BY_NAME)))

    trace_rows: list[str] = []

    def tracer(index: int, delta) -> None:
        for row, (bits, cells) in enumerate(zip(delta.row_bit_toggles, delta.csa_toggles)):
            trace_rows.append(f"{index},{row},{bits + cells}")
        trace_rows.append(f"{index},final,{delta.cpa_toggles}")

    reports = []
    for arch in archs:
        reports.append(
            simulate_stream(
                pairs,
                arch,
                args.width,
                args.ssst,
                trace=tracer if args.trace_toggles else None,
            )
        )

    lines = [
        f"stream: width={args.width} inputs={args.inputs} pairs={len(pairs)} "
        f"ssst={'on' if args.ssst else 'off'}",
        f"{'arch':<14}{'toggles':>12}{'frozen_evals':>14}{'ops':>8}",
    ]
    for report in reports:
        lines.append(
            f"{report.arch.value:<14}{report.total_toggles:>12}"
            f"{report.frozen_cell_evaluations:>14}{report.operations_simulated:>8}"
        )
    by_arch = {r.arch: r for r in reports}
    hybrid = by_arch.get(Architecture.HYBRID)
    for base_arch in (Architecture.CONVENTIONAL, Architecture.BOOTH):
        base = by_arch.get(base_arch)
        if hybrid and base and base.total_toggles > 0:
            measured = reduction_percent(base.total_toggles, hybrid.total_toggles)
            claim = REFERENCE_SWITCHING_REDUCTION_PCT[base_arch.value]
            lines.append(
                f"toggle reduction hybrid vs {base_arch.value}: {measured:.2f}% "
                f"(reference claim: {claim:.0f}%)"
            )
    sys.stdout.write("\n".join(lines) + "\n")

    if args.trace_toggles:
        Path(args.trace_toggles).write_text(
            "operation,row,toggles\n" + "\n".join(trace_rows) + "\n"
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "compare": _cmd_compare,
        "trace": _cmd_trace,
        "table2": _cmd_table2,
        "stream": _cmd_stream,
    }
    try:
        return handlers[args.command](args)
    except ProductMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputFormatError, OffGridVoltageError, OverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
