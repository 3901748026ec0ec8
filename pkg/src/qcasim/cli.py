"""Command-line surface: list, simulate, verify, metrics, power."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import circuits
from .bistable import BistableParams, InputError, simulate_bistable
from .coherence import CoherenceParams, simulate_coherence
from .layout import Layout, LayoutError, metrics as layout_metrics
from .power import PowerParams, estimate_power
from .qcl import LayoutParseError, parse_layout
from .trace import exhaustive_vectors
from .verify import TruthTableSpec, check_trace, parse_truth_table


class CliError(Exception):
    """User-facing failure reported as an `error:` line with exit status 2."""


def _load_layout(ref: str) -> Layout:
    if ref.startswith("builtin:"):
        return circuits.builtin(ref.split(":", 1)[1]).layout
    path = Path(ref)
    if not path.exists():
        raise CliError(f"layout file {ref!r} not found")
    return parse_layout(path.read_text(), name=path.stem)


def _load_truth(ref: str) -> TruthTableSpec:
    if ref.startswith("builtin:"):
        return circuits.builtin(ref.split(":", 1)[1]).spec
    path = Path(ref)
    if not path.exists():
        raise CliError(f"truth table file {ref!r} not found")
    return parse_truth_table(path.read_text())


def _parse_vectors(ref: str, layout: Layout) -> list[dict[str, int]]:
    input_labels = [c.label for c in layout.inputs]
    if ref == "exhaustive":
        return exhaustive_vectors(input_labels)
    path = Path(ref)
    if not path.exists():
        raise CliError(f"vectors file {ref!r} not found")
    lines = [ln.strip() for ln in path.read_text().splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise CliError("vectors file is empty")
    labels = lines[0].split()
    vectors = []
    for ln in lines[1:]:
        bits = ln.replace(" ", "")
        if len(bits) != len(labels) or any(c not in "01" for c in bits):
            raise CliError(f"bad vector line {ln!r}")
        vectors.append({lab: int(c) for lab, c in zip(labels, bits)})
    return vectors


def _simulate(layout: Layout, vectors, engine: str):
    if engine == "bistable":
        return simulate_bistable(layout, vectors, BistableParams())
    if engine == "coherence":
        return simulate_coherence(layout, vectors, CoherenceParams())
    raise CliError(f"unknown engine {engine!r}")


def cmd_list(args) -> int:
    for name in circuits.builtin_names():
        entry = circuits.builtin(name)
        m = entry.expected_metrics
        print(
            f"{name:10s} {entry.summary:34s} "
            f"cells={m.cell_count:<3d} area={m.area_um2:.2f}um2 "
            f"latency={m.latency_zones} crossover={m.crossover}"
        )
    return 0


def cmd_simulate(args) -> int:
    layout = _load_layout(args.layout)
    vectors = _parse_vectors(args.vectors, layout)
    trace = _simulate(layout, vectors, args.engine)
    with open(args.out, "w") as fh:
        trace.write_csv(fh)
    print(f"wrote {trace.total_samples} samples x {len(trace.labels)} labelled cells to {args.out}")
    if trace.nonconverged:
        print(f"warning: {len(trace.nonconverged)} samples did not converge")
    if args.plot:
        from .plots import save_trace_plot

        save_trace_plot(trace, args.plot)
        print(f"wrote waveform plot to {args.plot}")
    return 0


def cmd_verify(args) -> int:
    layout = _load_layout(args.layout)
    spec = _load_truth(args.truth)
    vectors = exhaustive_vectors(list(spec.input_labels))
    trace = _simulate(layout, vectors, args.engine)
    verdict = check_trace(trace, spec, args.engine)
    if verdict.passed:
        print(f"PASS: {layout.name} matches {args.truth} over {verdict.vectors_checked} vectors ({args.engine})")
        return 0
    print(f"FAIL: {len(verdict.mismatches)} mismatch(es) over {verdict.vectors_checked} vectors ({args.engine})")
    for m in verdict.mismatches:
        vec = " ".join(f"{k}={v}" for k, v in sorted(m.vector.items()))
        print(f"  {m.kind}: [{vec}] {m.output}: expected {m.expected}, "
              f"observed {m.observed}, P={m.polarization:+.4f}")
    return 1


def cmd_metrics(args) -> int:
    layout = _load_layout(args.layout)
    m = layout_metrics(layout)
    print(f"layout    {layout.name}")
    print(f"cells     {m.cell_count}")
    print(f"area      {m.area_um2:.2f} um2 (raw {m.area_raw_um2:.6f})")
    print(f"latency   {m.latency_zones} clock zone(s)")
    print(f"crossover {m.crossover}")
    if args.compare:
        rows = (circuits.reference.MUX2_COMPARISON if args.compare == "table3"
                else circuits.reference.MUX4_COMPARISON)
        print(f"\nreference comparison ({args.compare}):")
        print(f"{'design':20s} {'area':>6s} {'cells':>6s} {'crossover':>10s} {'latency':>8s}")
        for r in rows:
            print(f"{r.key:20s} {r.area_um2:6.2f} {r.cell_count:6d} {r.crossover:>10s} {r.latency_zones:8d}")
    return 0


def cmd_power(args) -> int:
    layout = _load_layout(args.layout)
    try:
        gamma_levels = tuple(float(x) for x in args.gamma.split(","))
    except ValueError:
        raise CliError(f"bad --gamma list {args.gamma!r}") from None
    params = PowerParams(temperature=args.temp, gamma_levels=gamma_levels)
    report = estimate_power(layout, params)
    with open(args.out, "w") as fh:
        report.write_csv(fh)
    print(f"wrote energy report to {args.out}")
    print(f"{'level(Ek)':>9s} {'leakage_meV':>12s} {'switching_meV':>14s} {'total_meV':>10s}")
    for lv in report.levels:
        print(f"{lv.level_ek:9.2f} {lv.avg_leakage_mev:12.4f} {lv.avg_switching_mev:14.4f} {lv.total_mev:10.4f}")
    print("\npublished reference (meV at 0.5/1.0/1.5 Ek):")
    for r in circuits.reference.MUX2_POWER_REFERENCE:
        print(f"  {r.key:18s} leakage {r.leakage_mev} switching {r.switching_mev} total {r.total_mev}")
    if args.map:
        from .plots import save_power_map

        save_power_map(report, layout, args.map)
        print(f"wrote dissipation map to {args.map}")
    if args.map_csv:
        with open(args.map_csv, "w") as fh:
            report.write_map_csv(fh)
        print(f"wrote dissipation grid to {args.map_csv}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcasim",
        description="Cell-level simulator, verifier and power estimator for QCA circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list built-in circuits").set_defaults(fn=cmd_list)

    p = sub.add_parser("simulate", help="simulate a layout and export the trace")
    p.add_argument("layout", help="layout file or builtin:NAME")
    p.add_argument("--engine", choices=("bistable", "coherence"), default="bistable")
    p.add_argument("--vectors", default="exhaustive", help="'exhaustive' or a vectors file")
    p.add_argument("--out", required=True, help="trace CSV output path")
    p.add_argument("--plot", help="optional waveform SVG path")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("verify", help="check a layout against a truth table")
    p.add_argument("layout", help="layout file or builtin:NAME")
    p.add_argument("--truth", required=True, help="truth table file or builtin:NAME")
    p.add_argument("--engine", choices=("bistable", "coherence"), default="bistable")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("metrics", help="report cell count, area, latency, crossover")
    p.add_argument("layout", help="layout file or builtin:NAME")
    p.add_argument("--compare", choices=("table3", "table4"))
    p.set_defaults(fn=cmd_metrics)

    p = sub.add_parser("power", help="estimate leakage/switching energy")
    p.add_argument("layout", help="layout file or builtin:NAME")
    p.add_argument("--gamma", default="0.5,1.0,1.5", help="comma list of Ek multipliers")
    p.add_argument("--temp", type=float, default=2.0, help="temperature in kelvin")
    p.add_argument("--out", required=True, help="report CSV output path")
    p.add_argument("--map", help="optional dissipation heatmap SVG path")
    p.add_argument("--map-csv", help="optional dissipation grid CSV path")
    p.set_defaults(fn=cmd_power)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, LayoutError, LayoutParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
