"""Built-in layout library: wire, inverters, majority gates, and the bundled multiplexers.

Each entry pairs a layout fixture (a .qcl file under fixtures/) with its truth
table and the metrics it is expected to report.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..layout import Layout, LayoutError, Metrics
from ..qcl import parse_layout
from ..verify import TruthTableSpec, spec_from_expression

MAJORITY_EXPR = "A and B or B and C or A and C"
MUX2_EXPR = "S and I1 or (not S) and I0"
MUX4_EXPR = (
    "(not S0) and (not S1) and I0"
    " or (not S0) and S1 and I1"
    " or S0 and (not S1) and I2"
    " or S0 and S1 and I3"
)


@dataclass(frozen=True)
class BuiltinEntry:
    name: str
    layout: Layout
    spec: TruthTableSpec
    expected_metrics: Metrics
    summary: str


def _load_fixture(name: str) -> Layout:
    text = resources.files(__package__).joinpath(f"fixtures/{name}.qcl").read_text()
    return parse_layout(text, name=name)


def _metrics(cells, area, raw, latency, crossover="none") -> Metrics:
    return Metrics(cells, area, raw, latency, crossover)


_SPECS = {
    "wire3": ("not (not A)", ("A",), "B", 1, "3-cell wire", _metrics(3, 0.00, 0.003364, 1)),
    "inv_a": ("not A", ("A",), "Out", 1, "fork inverter", None),
    "inv_b": ("not A", ("A",), "Out", 1, "diagonal-step inverter", None),
    "inv_c": ("not A", ("A",), "Out", 1, "corner inverter", None),
    "maj_a": (MAJORITY_EXPR, ("A", "B", "C"), "Out", 1, "majority gate, buffered cross", None),
    "maj_b": (MAJORITY_EXPR, ("A", "B", "C"), "Out", 1, "majority gate, rotated form", None),
    "mux2_l1": (MUX2_EXPR, ("S", "I0", "I1"), "Out", 1, "2:1 multiplexer, layout 1", None),
    "mux2_l2": (MUX2_EXPR, ("S", "I0", "I1"), "Out", 1, "2:1 multiplexer, layout 2", None),
    "mux4": (MUX4_EXPR, ("S0", "S1", "I0", "I1", "I2", "I3"), "Out", 3, "4:1 multiplexer", None),
}

_EXPECTED_METRICS: dict[str, Metrics] = {}  # filled in below from the fixtures


def builtin_names() -> list[str]:
    return list(_SPECS)


def builtin(name: str) -> BuiltinEntry:
    """Fixture lookup; unknown names raise with the list of available ones."""
    if name not in _SPECS:
        raise LayoutError(
            f"unknown builtin {name!r}; available: {', '.join(builtin_names())}"
        )
    expr, inputs, output, latency, summary, metrics_override = _SPECS[name]
    layout = _load_fixture(name)
    spec = spec_from_expression(expr, inputs, output, latency_zones=latency)
    expected = metrics_override or _EXPECTED_METRICS[name]
    return BuiltinEntry(name, layout, spec, expected, summary)
