"""Algebraic circuits over the integers: IR, text format, degree analysis.

A circuit is a straight-line program: an ordered sequence of gates
``g0, g1, ..., gt`` where each gate is a variable input, a parameter input,
a plugged integer constant, or an addition/multiplication of two strictly
earlier gates.  The last gate is the output.  There is no division,
subtraction, or power gate; subtraction is expressed with ``const -1`` and
``mul``.

Text format (one statement per line, ``#`` starts a comment, gate ids must
be 0, 1, 2, ... in order, files use extension ``.ac``)::

    g0 = var x1
    g1 = param p1
    g2 = const -3
    g3 = add g0 g1
    g4 = mul g3 g2
    output g4

Degree analysis is syntactic: variable, parameter and constant inputs all
contribute degree 1, addition takes the max of its operands, multiplication
the sum.  Individual degrees are tracked per input; constant gates count as
anonymous inputs keyed by their gate id (a constant gate is a parameter
gate with its value plugged).  Degrees are plain Python integers because a
t-gate circuit can reach degree 2^t.

All values are immutable after construction and every operation is a pure
function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import CircuitSyntaxError, CircuitValidationError

VAR = "var"
PARAM = "param"
CONST = "const"
ADD = "add"
MUL = "mul"

_INPUT_KINDS = (VAR, PARAM, CONST)
_BINARY_KINDS = (ADD, MUL)


@dataclass(frozen=True)
class Gate:
    """One straight-line-program gate.

    ``name`` is the 1-based variable/parameter index for var/param gates,
    ``value`` the integer for const gates, ``lhs``/``rhs`` the operand gate
    indices for add/mul gates.
    """

    op: str
    name: int = 0
    value: int = 0
    lhs: int = -1
    rhs: int = -1

    @staticmethod
    def var(name: int) -> "Gate":
        return Gate(VAR, name=name)

    @staticmethod
    def param(name: int) -> "Gate":
        return Gate(PARAM, name=name)

    @staticmethod
    def const(value: int) -> "Gate":
        return Gate(CONST, value=value)

    @staticmethod
    def add(lhs: int, rhs: int) -> "Gate":
        return Gate(ADD, lhs=lhs, rhs=rhs)

    @staticmethod
    def mul(lhs: int, rhs: int) -> "Gate":
        return Gate(MUL, lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class Circuit:
    """A validated straight-line program; the last gate is the output."""

    gates: Tuple[Gate, ...]
    n_vars: int
    n_params: int
    plugged: Tuple[Tuple[int, int], ...] = ()  # sorted (param name, value) pairs

    def __post_init__(self):
        validate(self)

    @property
    def output(self) -> int:
        return len(self.gates) - 1

    @property
    def plugged_map(self) -> Dict[int, int]:
        return dict(self.plugged)

    @property
    def fully_plugged(self) -> bool:
        return len(self.plugged) == self.n_params

    def constants(self) -> Tuple[int, ...]:
        """All integers plugged into the circuit (const gates and plugged params)."""
        vals = [g.value for g in self.gates if g.op == CONST]
        vals.extend(v for _, v in self.plugged)
        return tuple(vals)


def circuit(gates: Iterable[Gate], plugged: Optional[Mapping[int, int]] = None) -> Circuit:
    """Build a circuit, inferring dimensions from the gate list."""
    gates = tuple(gates)
    n_vars = max((g.name for g in gates if g.op == VAR), default=0)
    n_params = max((g.name for g in gates if g.op == PARAM), default=0)
    pairs = tuple(sorted((plugged or {}).items()))
    return Circuit(gates, n_vars, n_params, pairs)


def validate(c: Circuit) -> None:
    """Check every structural invariant; raise with the offending gate index."""
    if not c.gates:
        raise CircuitValidationError("empty gate list")
    var_names = set()
    param_names = set()
    for i, g in enumerate(c.gates):
        if g.op in _BINARY_KINDS:
            for operand in (g.lhs, g.rhs):
                if operand >= i:
                    raise CircuitValidationError(
                        f"gate {i}: forward reference to g{operand}"
                    )
                if operand < 0:
                    raise CircuitValidationError(f"gate {i}: negative operand index")
        elif g.op == VAR:
            if g.name < 1:
                raise CircuitValidationError(f"gate {i}: variable index must be >= 1")
            var_names.add(g.name)
        elif g.op == PARAM:
            if g.name < 1:
                raise CircuitValidationError(f"gate {i}: parameter index must be >= 1")
            param_names.add(g.name)
        elif g.op != CONST:
            raise CircuitValidationError(f"gate {i}: unknown gate kind {g.op!r}")
    if var_names != set(range(1, c.n_vars + 1)):
        raise CircuitValidationError(
            f"gap in variable naming: saw {sorted(var_names)}, n_vars={c.n_vars}"
        )
    if param_names != set(range(1, c.n_params + 1)):
        raise CircuitValidationError(
            f"gap in parameter naming: saw {sorted(param_names)}, n_params={c.n_params}"
        )
    for name, _ in c.plugged:
        if name not in param_names:
            raise CircuitValidationError(f"plugged value for unknown parameter p{name}")


@dataclass(frozen=True)
class DegreeReport:
    """Syntactic degrees of a circuit's output gate.

    ``individual`` maps input names ("x1", "p2", or "g<k>" for the constant
    gate at index k) to individual syntactic degrees.
    """

    total: int
    individual: Dict[str, int] = field(hash=False)
    max_individual: int

    def var_max(self) -> int:
        """Max individual degree over the variables only."""
        return max((d for u, d in self.individual.items() if u.startswith("x")), default=0)


def _input_key(i: int, g: Gate) -> Optional[str]:
    if g.op == VAR:
        return f"x{g.name}"
    if g.op == PARAM:
        return f"p{g.name}"
    if g.op == CONST:
        return f"g{i}"
    return None


def syntactic_total_degree(c: Circuit) -> int:
    """Total syntactic degree of the output gate (single cheap pass)."""
    deg = [0] * len(c.gates)
    for i, g in enumerate(c.gates):
        if g.op in _INPUT_KINDS:
            deg[i] = 1
        elif g.op == ADD:
            deg[i] = max(deg[g.lhs], deg[g.rhs])
        else:
            deg[i] = deg[g.lhs] + deg[g.rhs]
    return deg[-1]


def individual_degree(c: Circuit, key: str) -> int:
    """Individual syntactic degree of a single named input (cheap pass)."""
    deg = [0] * len(c.gates)
    for i, g in enumerate(c.gates):
        if g.op in _INPUT_KINDS:
            deg[i] = 1 if _input_key(i, g) == key else 0
        elif g.op == ADD:
            deg[i] = max(deg[g.lhs], deg[g.rhs])
        else:
            deg[i] = deg[g.lhs] + deg[g.rhs]
    return deg[-1]


def analyze_degrees(c: Circuit) -> DegreeReport:
    """Apply the inductive degree rules bottom-up in one pass.

    input -> 1, add -> max, mul -> sum, per input and in total.  Sparse
    dicts keep this near-linear for circuits whose gates each depend on few
    inputs.
    """
    totals = [0] * len(c.gates)
    per_input: list = [None] * len(c.gates)
    for i, g in enumerate(c.gates):
        if g.op in _INPUT_KINDS:
            totals[i] = 1
            per_input[i] = {_input_key(i, g): 1}
        elif g.op == ADD:
            totals[i] = max(totals[g.lhs], totals[g.rhs])
            a, b = per_input[g.lhs], per_input[g.rhs]
            if len(a) < len(b):
                a, b = b, a
            merged = dict(a)
            for u, d in b.items():
                if d > merged.get(u, 0):
                    merged[u] = d
            per_input[i] = merged
        else:
            totals[i] = totals[g.lhs] + totals[g.rhs]
            a, b = per_input[g.lhs], per_input[g.rhs]
            if len(a) < len(b):
                a, b = b, a
            merged = dict(a)
            for u, d in b.items():
                merged[u] = merged.get(u, 0) + d
            per_input[i] = merged
    individual = per_input[-1]
    return DegreeReport(
        total=totals[-1],
        individual=individual,
        max_individual=max(individual.values(), default=0),
    )


# -- text format ---------------------------------------------------------

_GATE_RE = re.compile(
    r"^g(?P<id>\d+) = (?:"
    r"var x(?P<var>\d+)"
    r"|param p(?P<param>\d+)"
    r"|const (?P<const>-?\d+)"
    r"|(?P<binop>add|mul) g(?P<lhs>\d+) g(?P<rhs>\d+)"
    r")$"
)
_OUTPUT_RE = re.compile(r"^output g(?P<id>\d+)$")


def parse_circuit(text: str) -> Circuit:
    """Parse the line format; the left inverse of :func:`serialize_circuit`."""
    gates: list = []
    output_id: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if output_id is not None:
            raise CircuitSyntaxError("statement after output line", lineno, 1)
        m = _OUTPUT_RE.match(line)
        if m:
            output_id = int(m.group("id"))
            continue
        m = _GATE_RE.match(line)
        if m is None:
            col = _first_mismatch_col(line)
            raise CircuitSyntaxError(f"cannot parse statement {line!r}", lineno, col)
        gate_id = int(m.group("id"))
        if gate_id != len(gates):
            kind = "duplicate" if gate_id < len(gates) else "out-of-order"
            raise CircuitSyntaxError(f"{kind} gate id g{gate_id}", lineno, 2)
        if m.group("var") is not None:
            gates.append(Gate.var(int(m.group("var"))))
        elif m.group("param") is not None:
            gates.append(Gate.param(int(m.group("param"))))
        elif m.group("const") is not None:
            gates.append(Gate.const(int(m.group("const"))))
        else:
            lhs, rhs = int(m.group("lhs")), int(m.group("rhs"))
            if lhs >= gate_id or rhs >= gate_id:
                raise CircuitSyntaxError(
                    f"forward or self reference in g{gate_id}", lineno, 1
                )
            op = m.group("binop")
            gates.append(Gate.add(lhs, rhs) if op == ADD else Gate.mul(lhs, rhs))
    if output_id is None:
        raise CircuitSyntaxError("missing output line", 0, 0)
    if not gates:
        raise CircuitSyntaxError("no gates before output line", 0, 0)
    if output_id != len(gates) - 1:
        raise CircuitSyntaxError(
            f"output must name the final gate g{len(gates) - 1}, got g{output_id}", 0, 0
        )
    try:
        return circuit(gates)
    except CircuitValidationError as e:
        raise CircuitSyntaxError(str(e), 0, 0) from e


def _first_mismatch_col(line: str) -> int:
    # Best-effort column: first char where the line stops looking like a statement.
    probe = re.match(r"g\d+ = \w*", line)
    return (probe.end() + 1) if probe else 1


def serialize_circuit(c: Circuit) -> str:
    """Canonical text: gates in index order, single spaces, final output line."""
    lines = []
    for i, g in enumerate(c.gates):
        if g.op == VAR:
            lines.append(f"g{i} = var x{g.name}")
        elif g.op == PARAM:
            lines.append(f"g{i} = param p{g.name}")
        elif g.op == CONST:
            lines.append(f"g{i} = const {g.value}")
        else:
            lines.append(f"g{i} = {g.op} g{g.lhs} g{g.rhs}")
    lines.append(f"output g{len(c.gates) - 1}")
    return "\n".join(lines) + "\n"


def representation_size(c: Circuit) -> int:
    """Serialized bit length; always at least the gate count."""
    return 8 * len(serialize_circuit(c).encode())


# -- conversions ---------------------------------------------------------

def plug_params(c: Circuit, values: Mapping[int, int]) -> Circuit:
    """Replace parameter gates with const gates carrying the given values."""
    missing = set(range(1, c.n_params + 1)) - set(values) - {k for k, _ in c.plugged}
    if missing:
        raise CircuitValidationError(f"no value for parameters {sorted(missing)}")
    plugged = {**c.plugged_map, **dict(values)}
    gates = [
        Gate.const(plugged[g.name]) if g.op == PARAM else g for g in c.gates
    ]
    return circuit(gates)


def constants_to_params(c: Circuit) -> Circuit:
    """Turn const gates into param gates with their values plugged."""
    gates = []
    plugged = c.plugged_map
    next_param = c.n_params
    for g in c.gates:
        if g.op == CONST:
            next_param += 1
            plugged[next_param] = g.value
            gates.append(Gate.param(next_param))
        else:
            gates.append(g)
    return circuit(gates, plugged)


def resolve_plugged(c: Circuit) -> Circuit:
    """Replace every plugged parameter gate by a const gate.

    Parameters that remain unplugged keep their gates; when all parameters
    are plugged the result is parameter-free.
    """
    if not c.plugged:
        return c
    plugged = c.plugged_map
    gates = []
    name_map: Dict[int, int] = {}
    for g in c.gates:
        if g.op == PARAM and g.name in plugged:
            gates.append(Gate.const(plugged[g.name]))
        elif g.op == PARAM:
            if g.name not in name_map:
                name_map[g.name] = len(name_map) + 1
            gates.append(Gate.param(name_map[g.name]))
        else:
            gates.append(g)
    return circuit(gates)


def pad_vars(c: Circuit, n: int) -> Circuit:
    """Append unused variable gates so the circuit has exactly n variables."""
    if c.n_vars > n:
        raise CircuitValidationError(f"circuit has {c.n_vars} > {n} variables")
    if c.n_vars == n:
        return c
    extra = tuple(Gate.var(j) for j in range(c.n_vars + 1, n + 1))
    # Extra inputs go before the existing program so the output gate stays last.
    offset = len(extra)
    shifted = []
    for g in c.gates:
        if g.op in _BINARY_KINDS:
            shifted.append(Gate(g.op, lhs=g.lhs + offset, rhs=g.rhs + offset))
        else:
            shifted.append(g)
    return circuit(extra + tuple(shifted), c.plugged_map or None)
