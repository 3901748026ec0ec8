"""Truth-table verification: exhaustive drive, latency-aligned sampling, thresholding."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bistable import BistableParams, InputError, simulate_bistable
from .coherence import CoherenceParams, simulate_coherence
from .layout import Layout
from .trace import Trace, exhaustive_vectors

LOGIC_THRESHOLD = 0.5


class ExpressionError(Exception):
    """Raised for malformed Boolean expressions or unknown labels."""


@dataclass(frozen=True)
class TruthTableSpec:
    """Complete input-vector to expected-bits mapping with declared latency."""

    input_labels: tuple[str, ...]
    output_labels: tuple[str, ...]
    rows: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    latency_zones: int = 1

    def __post_init__(self) -> None:
        n = len(self.input_labels)
        if len(self.rows) != 1 << n:
            raise ValueError(f"expected {1 << n} rows, got {len(self.rows)}")
        seen = set()
        for bits_in, bits_out in self.rows:
            if len(bits_in) != n or len(bits_out) != len(self.output_labels):
                raise ValueError("row width does not match labels")
            if any(b not in (0, 1) for b in bits_in + bits_out):
                raise ValueError("truth table bits must be 0 or 1")
            if bits_in in seen:
                raise ValueError(f"duplicate input row {bits_in}")
            seen.add(bits_in)

    def expected(self, vector: dict[str, int]) -> tuple[int, ...]:
        key = tuple(vector[lab] for lab in self.input_labels)
        for bits_in, bits_out in self.rows:
            if bits_in == key:
                return bits_out
        raise KeyError(f"no row for {key}")


# --- Boolean expressions -------------------------------------------------

_TOKEN_OPS = {"(": "(", ")": ")"}


def _tokenize(expr: str) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(expr):
        ch = expr[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            out.append(ch)
            i += 1
        elif ch in "&|!~":
            out.append({"&": "and", "|": "or", "!": "not", "~": "not"}[ch])
            i += 1
        elif ch.isalnum() or ch == "_":
            j = i
            while j < len(expr) and (expr[j].isalnum() or expr[j] == "_"):
                j += 1
            word = expr[i:j]
            out.append(word.lower() if word.lower() in ("and", "or", "not") else word)
            i = j
        else:
            raise ExpressionError(f"unexpected character {ch!r} in expression")
    return out


class _Parser:
    """Recursive descent over: or_expr := and_expr (OR and_expr)* etc."""

    def __init__(self, tokens: list[str], labels: Sequence[str]):
        self.toks = tokens
        self.pos = 0
        self.labels = set(labels)

    def peek(self) -> Optional[str]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self):
        node = self.or_expr()
        if self.peek() is not None:
            raise ExpressionError(f"trailing token {self.peek()!r}")
        return node

    def or_expr(self):
        node = self.and_expr()
        while self.peek() == "or":
            self.take()
            rhs = self.and_expr()
            node = ("or", node, rhs)
        return node

    def and_expr(self):
        node = self.unary()
        while self.peek() == "and":
            self.take()
            rhs = self.unary()
            node = ("and", node, rhs)
        return node

    def unary(self):
        tok = self.take()
        if tok == "not":
            return ("not", self.unary())
        if tok == "(":
            node = self.or_expr()
            if self.take() != ")":
                raise ExpressionError("missing closing parenthesis")
            return node
        if tok in ("and", "or", ")"):
            raise ExpressionError(f"unexpected token {tok!r}")
        if tok not in self.labels:
            raise ExpressionError(f"unknown label {tok!r}")
        return ("var", tok)


def _eval_node(node, env: dict[str, int]) -> int:
    kind = node[0]
    if kind == "var":
        return env[node[1]]
    if kind == "not":
        return 1 - _eval_node(node[1], env)
    a, b = _eval_node(node[1], env), _eval_node(node[2], env)
    return (a & b) if kind == "and" else (a | b)


def spec_from_expression(
    expression: str,
    inputs: Sequence[str],
    output: str = "Out",
    latency_zones: int = 1,
) -> TruthTableSpec:
    """Enumerate a Boolean expression (AND/OR/NOT over the input labels) into a full table."""
    tree = _Parser(_tokenize(expression), inputs).parse()
    rows = []
    n = len(inputs)
    for k in range(1 << n):
        bits = tuple((k >> (n - 1 - i)) & 1 for i in range(n))
        env = dict(zip(inputs, bits))
        rows.append((bits, (_eval_node(tree, env),)))
    return TruthTableSpec(tuple(inputs), (output,), tuple(rows), latency_zones)


# --- Truth table files ---------------------------------------------------

ARROW = "→"  # ->


def format_truth_table(spec: TruthTableSpec) -> str:
    lines = [" ".join(spec.input_labels) + f" {ARROW} " + " ".join(spec.output_labels)]
    for bits_in, bits_out in spec.rows:
        lines.append("".join(map(str, bits_in)) + f" {ARROW} " + "".join(map(str, bits_out)))
    return "\n".join(lines) + "\n"


def parse_truth_table(text: str, latency_zones: int = 1) -> TruthTableSpec:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ExpressionError("empty truth table file")

    def split_arrow(line: str) -> tuple[str, str]:
        for arrow in (ARROW, "->"):
            if arrow in line:
                left, right = line.split(arrow, 1)
                return left.strip(), right.strip()
        raise ExpressionError(f"missing arrow in line {line!r}")

    left, right = split_arrow(lines[0])
    inputs = tuple(left.split())
    outputs = tuple(right.split())
    rows = []
    for ln in lines[1:]:
        li, ro = split_arrow(ln)
        bits_in = tuple(int(c) for c in li.replace(" ", ""))
        bits_out = tuple(int(c) for c in ro.replace(" ", ""))
        rows.append((bits_in, bits_out))
    return TruthTableSpec(inputs, outputs, tuple(rows), latency_zones)


# --- Verification --------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    vector: dict[str, int]
    output: str
    expected: int
    observed: Optional[int]  # None when polarization too weak
    polarization: float

    @property
    def kind(self) -> str:
        return "weak-polarization" if self.observed is None else "mismatch"


@dataclass
class Verdict:
    passed: bool
    engine: str
    mismatches: list[Mismatch] = field(default_factory=list)
    vectors_checked: int = 0


def verify(
    layout: Layout,
    spec: TruthTableSpec,
    engine: str = "bistable",
    threshold: float = LOGIC_THRESHOLD,
    bistable_params: Optional[BistableParams] = None,
    coherence_params: Optional[CoherenceParams] = None,
) -> Verdict:
    """Drive all 2^n vectors in Gray-code order and compare thresholded outputs.

    Outputs are sampled at the hold plateau of each output cell's clock zone,
    which aligns the comparison with the declared zone latency for monotone
    single-period pipelines.
    """
    layout_labels = set(layout.labels)
    missing = (set(spec.input_labels) | set(spec.output_labels)) - layout_labels
    if missing:
        raise InputError(f"spec labels not in layout: {sorted(missing)}")

    vectors = exhaustive_vectors(spec.input_labels)
    if engine == "bistable":
        trace = simulate_bistable(layout, vectors, bistable_params)
    elif engine == "coherence":
        trace = simulate_coherence(layout, vectors, coherence_params)
    else:
        raise ValueError(f"unknown engine {engine!r} (expected bistable or coherence)")
    return check_trace(trace, spec, engine, threshold)


def check_trace(
    trace: Trace,
    spec: TruthTableSpec,
    engine: str,
    threshold: float = LOGIC_THRESHOLD,
) -> Verdict:
    verdict = Verdict(passed=True, engine=engine, vectors_checked=len(trace.schedule))
    for w, vec in enumerate(trace.schedule):
        expected = spec.expected(vec)
        for out_label, exp_bit in zip(spec.output_labels, expected):
            p = trace.value_at(out_label, w)
            if abs(p) < threshold:
                verdict.mismatches.append(Mismatch(dict(vec), out_label, exp_bit, None, p))
            else:
                got = 1 if p > 0 else 0
                if got != exp_bit:
                    verdict.mismatches.append(Mismatch(dict(vec), out_label, exp_bit, got, p))
    verdict.mismatches.sort(key=lambda m: (sorted(m.vector.items()), m.output))
    verdict.passed = not verdict.mismatches
    return verdict
