"""Polynomial identity testing three ways.

All three testers decide "is the polynomial computed by this circuit
identically zero?" against the cube {0..q-1}^n of side q = 2nd, where d
bounds the maximum individual syntactic degree:

  pit_cube_brute        exhaustive scan, the ground truth at desk scale
                        (zero on this cube implies zero everywhere);
  pit_random            seeded uniform sampling; a non-vanishing circuit is
                        caught by a single sample with probability >= 1/2,
                        so the error after k trials is at most 2^-k;
  pit_with_hitting_set  scan a caller-supplied hitting set H; sound only
                        when H was verified for a class containing the
                        circuit, which is the caller's responsibility.

q is always derived as 2nd internally; callers may enlarge d (and hence q)
but can never shrink it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Tuple

from .circuit import Circuit, Gate, analyze_degrees, circuit, resolve_plugged
from .config import DEFAULT_BITLEN_GUARD, DEFAULT_EXHAUSTION_CAP
from .errors import CapExceededError, DimensionMismatchError, PreconditionError
from .evaluator import eval_gates
from .hitting import HittingSet
from .rng import Rng

NONZERO = "NonZero"
ZERO_ON_CUBE = "ZeroOnCube"
PROBABLY_ZERO = "ProbablyZero"


@dataclass(frozen=True)
class PitVerdict:
    kind: str
    witness: Optional[Tuple[int, ...]] = None
    trials: Optional[int] = None
    provenance: str = "cube"  # "cube" | "random" | "hitting-set"

    @property
    def is_zero_verdict(self) -> bool:
        return self.kind != NONZERO

    def to_json(self) -> dict:
        out = {"kind": self.kind, "provenance": self.provenance}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.trials is not None:
            out["trials"] = self.trials
        return out


def _prepare(ckt: Circuit, d: Optional[int]) -> Tuple[Circuit, int, int, int]:
    """Resolve plugging, fix (n, d, q) with q = 2nd (at least 1)."""
    ckt = resolve_plugged(ckt)
    if ckt.n_params:
        raise PreconditionError("identity testing needs all parameters plugged")
    n = ckt.n_vars
    true_d = analyze_degrees(ckt).max_individual
    if d is None:
        d = true_d
    elif d < true_d:
        raise PreconditionError(f"declared degree {d} below actual {true_d}")
    q = max(1, 2 * n * d)
    return ckt, n, d, q


def pit_cube_brute(
    ckt: Circuit,
    d: Optional[int] = None,
    cap: int = DEFAULT_EXHAUSTION_CAP,
    bitlen_guard: int = DEFAULT_BITLEN_GUARD,
) -> PitVerdict:
    """Scan the whole cube; the first lexicographic non-root wins."""
    ckt, n, d, q = _prepare(ckt, d)
    if q**n > cap:
        raise CapExceededError(f"cube size {q ** n} exceeds the cap {cap}")
    for point in product(range(q), repeat=n):
        if eval_gates(ckt, point, (), bitlen_guard) != 0:
            return PitVerdict(NONZERO, witness=point, provenance="cube")
    return PitVerdict(ZERO_ON_CUBE, provenance="cube")


def pit_random(
    ckt: Circuit,
    trials: int,
    seed: int,
    d: Optional[int] = None,
    bitlen_guard: int = DEFAULT_BITLEN_GUARD,
) -> PitVerdict:
    """Sample the cube uniformly; NonZero answers are never wrong."""
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    ckt, n, d, q = _prepare(ckt, d)
    rng = Rng(seed, "pit")
    for _ in range(trials):
        point = rng.point(n, q)
        if eval_gates(ckt, point, (), bitlen_guard) != 0:
            return PitVerdict(NONZERO, witness=point, provenance="random")
    return PitVerdict(PROBABLY_ZERO, trials=trials, provenance="random")


def pit_with_hitting_set(
    ckt: Circuit,
    h: HittingSet,
    bitlen_guard: int = DEFAULT_BITLEN_GUARD,
) -> PitVerdict:
    """Scan H in order; zero verdicts carry hitting-set provenance."""
    ckt = resolve_plugged(ckt)
    if ckt.n_params:
        raise PreconditionError("identity testing needs all parameters plugged")
    if h.n != ckt.n_vars:
        raise DimensionMismatchError(
            f"hitting set dimension {h.n} != circuit dimension {ckt.n_vars}"
        )
    for point in h.points:
        if eval_gates(ckt, point, (), bitlen_guard) != 0:
            return PitVerdict(NONZERO, witness=point, provenance="hitting-set")
    return PitVerdict(ZERO_ON_CUBE, provenance="hitting-set")


def difference_circuit(f: Circuit, g: Circuit) -> Circuit:
    """The circuit f + (-1) * g over the shared variables."""
    f = resolve_plugged(f)
    g = resolve_plugged(g)
    if f.n_params or g.n_params:
        raise PreconditionError("difference needs all parameters plugged")
    if f.n_vars != g.n_vars:
        raise DimensionMismatchError(
            f"cannot compare {f.n_vars}-variable and {g.n_vars}-variable circuits"
        )
    gates = list(f.gates)
    offset = len(gates)
    for gate in g.gates:
        if gate.op in ("add", "mul"):
            gates.append(Gate(gate.op, lhs=gate.lhs + offset, rhs=gate.rhs + offset))
        else:
            gates.append(gate)
    f_out = offset - 1
    g_out = len(gates) - 1
    gates.append(Gate.const(-1))
    gates.append(Gate.mul(len(gates) - 1, g_out))
    gates.append(Gate.add(f_out, len(gates) - 1))
    return circuit(gates)


def equiv_test(
    f: Circuit,
    g: Circuit,
    method: str = "cube",
    trials: int = 40,
    seed: int = 0,
    hitting_set: Optional[HittingSet] = None,
    cap: int = DEFAULT_EXHAUSTION_CAP,
) -> PitVerdict:
    """PIT on the difference circuit, with the degree bound taken as the
    max of the two circuits' maximum individual degrees."""
    diff = difference_circuit(f, g)
    d = max(
        analyze_degrees(resolve_plugged(f)).max_individual,
        analyze_degrees(resolve_plugged(g)).max_individual,
        1,
    )
    if method == "cube":
        return pit_cube_brute(diff, d=d, cap=cap)
    if method == "random":
        return pit_random(diff, trials=trials, seed=seed, d=d)
    if method == "hs":
        if hitting_set is None:
            raise PreconditionError("method 'hs' needs a hitting set")
        return pit_with_hitting_set(diff, hitting_set)
    raise PreconditionError(f"unknown method {method!r}")
