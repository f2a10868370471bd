"""Builtin definable classes of algebraic circuits.

These are the stock decoders used by the CLI and the test suites:

  multilinear   m = 2^n coefficient bits, one per monomial of z_1..z_n with
                exponents in {0,1}; description 0^m is the zero polynomial.
  linear        m = n bits choosing which variables appear in c_1 z_1 + ...
  monomial      m = 1 bit switching z_1 * ... * z_n on or off.
  all-circuits  a compact binary gate encoding covering Ckt(n, d, s);
                descriptions that fail to decode, or decode outside the
                slice, fall back to the constant-0 circuit.

Decoder surjectivity onto an intended class is a trust assumption; nothing
here can verify it for the all-circuits encoding.
"""

from __future__ import annotations

from typing import List

from .circuit import Circuit, Gate, circuit, representation_size
from .errors import CircuitValidationError
from .hitting import DefinableClass, zero_circuit


def _sum_chain(gates: List[Gate], terms: List[int]) -> int:
    acc = terms[0]
    for t in terms[1:]:
        gates.append(Gate.add(acc, t))
        acc = len(gates) - 1
    return acc


def multilinear_class(n: int, d: int = 1, s: int = 0) -> DefinableClass:
    """All 2^(2^n) multilinear 0/1-coefficient polynomials in n variables."""
    m = 1 << n

    def decoder(x: str) -> Circuit:
        gates: List[Gate] = [Gate.var(j) for j in range(1, n + 1)]
        terms = []
        for mask in range(m):
            gates.append(Gate.const(int(x[mask])))
            acc = len(gates) - 1
            for j in range(n):
                if mask >> j & 1:
                    gates.append(Gate.mul(acc, j))
                    acc = len(gates) - 1
            terms.append(acc)
        _sum_chain(gates, terms)
        return circuit(gates)

    probe = decoder("0" * m)
    return DefinableClass(
        decoder=decoder, n=n, d=max(d, 1), s=s or representation_size(probe), m=m,
        e="multilinear",
    )


def linear_class(n: int, s: int = 0) -> DefinableClass:
    """The 2^n sums of a subset of the variables (degree 1)."""

    def decoder(x: str) -> Circuit:
        gates: List[Gate] = [Gate.var(j) for j in range(1, n + 1)]
        terms = []
        for j in range(n):
            gates.append(Gate.const(int(x[j])))
            gates.append(Gate.mul(len(gates) - 1, j))
            terms.append(len(gates) - 1)
        _sum_chain(gates, terms)
        return circuit(gates)

    probe = decoder("0" * n)
    return DefinableClass(
        decoder=decoder, n=n, d=1, s=s or representation_size(probe), m=n, e="linear"
    )


def monomial_class(n: int, s: int = 0) -> DefinableClass:
    """{0, z_1 * z_2 * ... * z_n}, description length 1."""

    def decoder(x: str) -> Circuit:
        gates: List[Gate] = [Gate.var(j) for j in range(1, n + 1)]
        gates.append(Gate.const(int(x)))
        acc = len(gates) - 1
        for j in range(n):
            gates.append(Gate.mul(acc, j))
            acc = len(gates) - 1
        return circuit(gates)

    probe = decoder("0")
    return DefinableClass(
        decoder=decoder, n=n, d=1, s=s or representation_size(probe), m=1, e="monomial"
    )


# -- all-circuits binary decoder --------------------------------------------

_CONST_FIELD = 5  # two's-complement value field for const gates


class _BitReader:
    def __init__(self, bits: str):
        self.bits = bits
        self.pos = 0

    def take(self, width: int) -> int:
        if self.pos + width > len(self.bits):
            raise EOFError
        v = int(self.bits[self.pos : self.pos + width] or "0", 2) if width else 0
        self.pos += width
        return v


def _decode_gates(x: str, n: int) -> Circuit:
    """Read gate records until the bits run out; kind(2) + payload.

    00 var(idx), 01 const(two's complement), 10 add(ops), 11 mul(ops);
    operand/variable indices use just enough bits for the current prefix.
    """
    reader = _BitReader(x)
    gates: List[Gate] = []
    var_width = max(1, (n - 1).bit_length()) if n > 1 else 0
    try:
        while True:
            kind = reader.take(2)
            if kind == 0:
                idx = reader.take(var_width) if var_width else 0
                if idx >= n:
                    break
                gates.append(Gate.var(idx + 1))
            elif kind == 1:
                raw = reader.take(_CONST_FIELD)
                value = raw - (1 << _CONST_FIELD) if raw >> (_CONST_FIELD - 1) else raw
                gates.append(Gate.const(value))
            else:
                if not gates:
                    break
                op_width = max(1, (len(gates) - 1).bit_length())
                lhs = reader.take(op_width)
                rhs = reader.take(op_width)
                if lhs >= len(gates) or rhs >= len(gates):
                    break
                gates.append(Gate.add(lhs, rhs) if kind == 2 else Gate.mul(lhs, rhs))
    except EOFError:
        pass
    if not gates:
        raise CircuitValidationError("no decodable gates")
    # Variable naming gaps are repaired by renumbering the names that occur.
    seen = sorted({g.name for g in gates if g.op == "var"})
    renum = {name: i + 1 for i, name in enumerate(seen)}
    gates = [Gate.var(renum[g.name]) if g.op == "var" else g for g in gates]
    return circuit(gates)


def all_circuits_class(n: int, d: int, s: int, m: int) -> DefinableClass:
    """Ckt(n, d, s) presented through the compact binary gate encoding."""

    def decoder(x: str) -> Circuit:
        try:
            return _decode_gates(x, n)
        except CircuitValidationError:
            return zero_circuit(n)

    return DefinableClass(decoder=decoder, n=n, d=d, s=s, m=m, e="all-circuits")


BUILTIN_CLASSES = {
    "multilinear": lambda n, d, s, m: multilinear_class(n, d=d or 1, s=s),
    "linear": lambda n, d, s, m: linear_class(n, s=s),
    "monomial": lambda n, d, s, m: monomial_class(n, s=s),
    "all": lambda n, d, s, m: all_circuits_class(n, d, s, m),
}
