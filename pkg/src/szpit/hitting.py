"""Hitting sets for definable classes of algebraic circuits.

A class is given by a decoding function: bitstrings of length m map to
circuits with at most n variables, maximum individual syntactic degree at
most d, and representation size at most s.  Decoder outputs violating that
contract are silently replaced by the trivial constant-0 circuit, which
keeps every description meaningful.

An r-sequence H of points in S_q^n is a hitting set for the class slice if
every member that is non-vanishing somewhere on Z^n is nonzero on at least
one point of H.  With q >= 2dn and r > m + n*|q| (|x| = ceil(log2(x+1))),
uniformly random H verifies with probability at least 1/2, which is what
``search_hitting_set`` exploits: sample, verify, repeat.

``nonrange_is_hitting`` checks the underlying counting argument directly at
micro scale: a tuple outside the image of the batch-decode map g is
necessarily a hitting set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, Optional, Tuple

from .circuit import Circuit, Gate, analyze_degrees, circuit, pad_vars, representation_size
from .codec import SZContext, RootCode, all_codes, decode_code
from .config import (
    DEFAULT_BITLEN_GUARD,
    DEFAULT_CLASS_CAP,
    DEFAULT_EXHAUSTION_CAP,
    DEFAULT_SEARCH_BUDGET,
    DEFAULT_WITNESS_BUDGET,
)
from .errors import (
    CapExceededError,
    DimensionMismatchError,
    PreconditionError,
    SearchBudgetError,
    SzpitError,
    WitnessBudgetError,
    ZeroOnCubeError,
)
from .evaluator import eval_gates
from .rng import Rng


def bitlen(x: int) -> int:
    """The length function |x| = ceil(log2(x+1)), with |0| = 0."""
    return x.bit_length()


@dataclass(frozen=True)
class HittingSet:
    """An r-sequence of n-vectors over S_q; duplicates allowed."""

    points: Tuple[Tuple[int, ...], ...]
    n: int
    q: int

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.n:
                raise DimensionMismatchError(f"point {p!r} has length != {self.n}")
            for v in p:
                if not 0 <= v < self.q:
                    raise PreconditionError(f"coordinate {v} outside S_{self.q}")

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def size(self) -> int:
        """Number of distinct tuples."""
        return len(set(self.points))


def serialize_hitting_set(h: HittingSet) -> str:
    """One point per line, comma-separated coordinates."""
    return "\n".join(",".join(str(v) for v in p) for p in h.points) + "\n"


def parse_hitting_set(text: str, n: int, q: int) -> HittingSet:
    points = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        points.append(tuple(int(tok) for tok in line.split(",")))
    return HittingSet(tuple(points), n, q)


def zero_circuit(n: int = 0) -> Circuit:
    """The trivial constant-0 circuit, padded to n variables."""
    return pad_vars(circuit([Gate.const(0)]), n)


@dataclass
class DefinableClass:
    """A decoder-presented class of at most 2^m algebraic circuits.

    ``decoder`` maps a description bitstring of length m to a circuit.
    Outputs outside Ckt(n, d, s) are replaced by the constant-0 circuit;
    surjectivity of caller-supplied decoders onto their intended class is a
    trust assumption that cannot be verified here.
    """

    decoder: Callable[[str], Circuit]
    n: int
    d: int
    s: int
    m: int
    e: object = None  # opaque parameter blob, reported verbatim in traces
    # Membership sampler for classes too large to enumerate: maps an Rng to
    # a description.  Verification then degrades to seeded spot-checking.
    sampler: Optional[Callable[["Rng"], str]] = None
    _cache: Dict[str, Circuit] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.d < 1 or self.s < 1 or self.m < 0:
            raise PreconditionError("class parameters must satisfy n,d,s >= 1 and m >= 0")

    def descriptions(self) -> Iterator[str]:
        for bits in product("01", repeat=self.m):
            yield "".join(bits)

    def decode(self, x: str) -> Circuit:
        if len(x) != self.m or any(ch not in "01" for ch in x):
            raise PreconditionError(f"description {x!r} is not a bitstring of length {self.m}")
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        try:
            raw = self.decoder(x)
            member = pad_vars(raw, self.n)
            if not self._in_ckt(member):
                member = zero_circuit(self.n)
        except SzpitError:
            member = zero_circuit(self.n)
        self._cache[x] = member
        return member

    def _in_ckt(self, c: Circuit) -> bool:
        if c.n_vars > self.n or not c.fully_plugged:
            return False
        if representation_size(c) > self.s:
            return False
        return analyze_degrees(c).max_individual <= self.d

    def members(self) -> Iterator[Tuple[str, Circuit]]:
        for x in self.descriptions():
            yield x, self.decode(x)


@dataclass(frozen=True)
class HSVerdict:
    """Outcome of hitting-set verification.

    ``hits`` is the positive verdict; otherwise ``x`` names a member that H
    misses and ``witness`` is a point where that member is nonzero.
    ``exhaustive`` is False when only sampled descriptions were checked, in
    which case a Hits verdict is reported evidence, not a proof.
    """

    hits: bool
    x: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None
    exhaustive: bool = True


def find_small_witness(
    ckt: Circuit,
    n: int,
    d: int,
    q: int,
    hint: Optional[Tuple[int, ...]] = None,
    budget: int = DEFAULT_WITNESS_BUDGET,
    rng: Optional[Rng] = None,
    cap: int = DEFAULT_EXHAUSTION_CAP,
    bitlen_guard: int = DEFAULT_BITLEN_GUARD,
) -> Tuple[int, ...]:
    """Find a point of S_q^n where the circuit is nonzero.

    Requires q >= 2dn, which guarantees that a non-vanishing circuit is
    nonzero on at least half the cube, so seeded uniform sampling finds a
    witness quickly.  When the budget runs out the cube is scanned
    exhaustively if it fits the cap; an empty scan proves the circuit
    vanishes on the whole cube (and hence, at this q, everywhere).
    """
    if n != ckt.n_vars:
        raise DimensionMismatchError(f"n={n} but circuit has {ckt.n_vars} variables")
    true_d = analyze_degrees(ckt).max_individual
    if d < true_d:
        raise PreconditionError(f"declared degree {d} below actual {true_d}")
    if q < 2 * d * n:
        raise PreconditionError(f"q={q} < 2dn = {2 * d * n}")
    if hint is not None:
        if len(hint) != n:
            raise DimensionMismatchError("hint has the wrong dimension")
        if eval_gates(ckt, tuple(hint), (), bitlen_guard) == 0:
            raise PreconditionError("hint is not a non-root")
    rng = rng or Rng(0, "witness")
    for _ in range(budget):
        w = rng.point(n, q)
        if eval_gates(ckt, w, (), bitlen_guard) != 0:
            return w
    if q**n <= cap:
        for w in product(range(q), repeat=n):
            if eval_gates(ckt, w, (), bitlen_guard) != 0:
                return w
        if hint is not None:
            raise SzpitError(
                "hint certifies a non-root exists but the cube has none; "
                "this contradicts the root-count bound"
            )
        raise ZeroOnCubeError(trials=budget, points=q**n)
    raise WitnessBudgetError(trials=budget)


def g_map(
    cls: DefinableClass,
    x: str,
    a: Tuple[int, ...],
    codes: Iterable[RootCode],
    q: int,
) -> Tuple[Tuple[int, ...], ...]:
    """Batch-decode candidate root codes against member x at reference a.

    When the member vanishes at a, every component decodes to the all-zero
    point, so the output is the all-zero tuple (the don't-care value).
    """
    member = cls.decode(x)
    ctx = SZContext(member, cls.n, cls.d, q, a)
    return tuple(decode_code(ctx, code) for code in codes)


def verify_hitting_set(
    cls: DefinableClass,
    h: HittingSet,
    seed: int = 0,
    witness_budget: int = DEFAULT_WITNESS_BUDGET,
    class_cap: int = DEFAULT_CLASS_CAP,
    cap: int = DEFAULT_EXHAUSTION_CAP,
) -> HSVerdict:
    """Decide whether H hits every non-vanishing member of the slice.

    Descriptions are enumerated in lexicographic order, so the returned
    Misses pair is deterministic for a fixed seed.  Because q >= 2dn is
    required, the witness search is a complete test of non-vanishing at
    desk scale and the witness accompanying a miss lies in S_q^n.
    """
    if h.n != cls.n:
        raise DimensionMismatchError(f"hitting set dimension {h.n} != class dimension {cls.n}")
    if h.q < 2 * cls.d * cls.n:
        raise PreconditionError(f"q={h.q} < 2dn = {2 * cls.d * cls.n}")
    exhaustive = 2**cls.m <= class_cap
    rng = Rng(seed, "hs-verify")
    if exhaustive:
        descriptions = cls.descriptions()
    elif cls.sampler is not None:
        # Spot-checking: a Hits verdict is then evidence, not proof.
        sample_rng = rng.split("sample")
        descriptions = (cls.sampler(sample_rng) for _ in range(class_cap))
    else:
        raise CapExceededError(
            f"2^m = {2 ** cls.m} exceeds the class cap {class_cap} and the "
            "class supplies no membership sampler"
        )
    for idx, x in enumerate(descriptions):
        member = cls.decode(x)
        try:
            witness = find_small_witness(
                member, cls.n, cls.d, h.q,
                budget=witness_budget, rng=rng.split(f"{idx}:{x}"), cap=cap,
            )
        except ZeroOnCubeError:
            continue  # vanishing member: hit vacuously
        if all(eval_gates(member, p) == 0 for p in h.points):
            return HSVerdict(hits=False, x=x, witness=witness, exhaustive=exhaustive)
    return HSVerdict(hits=True, exhaustive=exhaustive)


def search_hitting_set(
    cls: DefinableClass,
    q: int,
    r: int,
    seed: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
    witness_budget: int = DEFAULT_WITNESS_BUDGET,
    class_cap: int = DEFAULT_CLASS_CAP,
    cap: int = DEFAULT_EXHAUSTION_CAP,
) -> HittingSet:
    """Sample uniform H from (S_q^n)^r and verify, up to ``budget`` draws.

    Preconditions mirror the existence guarantee: q >= 2dn and
    r > m + n*|q|, under which at least half of all draws verify.
    """
    if q < 2 * cls.d * cls.n:
        raise PreconditionError(f"q={q} < 2dn = {2 * cls.d * cls.n}")
    if r <= cls.m + cls.n * bitlen(q):
        raise PreconditionError(
            f"r={r} <= m + n*|q| = {cls.m + cls.n * bitlen(q)}; largeness fails"
        )
    rng = Rng(seed, "hs-search")
    last_miss = None
    for attempt in range(budget):
        draw = rng.split(f"draw{attempt}")
        points = tuple(draw.point(cls.n, q) for _ in range(r))
        h = HittingSet(points, cls.n, q)
        verdict = verify_hitting_set(
            cls, h, seed=seed, witness_budget=witness_budget,
            class_cap=class_cap, cap=cap,
        )
        if verdict.hits:
            return h
        last_miss = verdict.x
    raise SearchBudgetError(draws=budget, last_miss=last_miss)


def nonrange_is_hitting(
    cls: DefinableClass,
    h: HittingSet,
    cap: int = DEFAULT_EXHAUSTION_CAP,
) -> bool:
    """True iff H lies outside the image of the batch-decode map g.

    Exhausts the whole domain of g (descriptions x reference points x code
    r-tuples), so it is practical only for micro parameters.  Whenever it
    returns True, verify_hitting_set must return Hits.
    """
    n, d, q, r = cls.n, cls.d, h.q, h.r
    code_count = n * d * q ** (n - 1)
    domain = (2**cls.m) * (q**n) * (code_count**r)
    if domain > cap:
        raise CapExceededError(f"g-domain size {domain} exceeds the cap {cap}")
    codes = tuple(all_codes(n, d, q))
    target = h.points
    for x in cls.descriptions():
        member = cls.decode(x)
        for a in product(range(q), repeat=n):
            ctx = SZContext(member, n, d, q, a)
            decoded = {code: decode_code(ctx, code) for code in codes}
            for tup in product(codes, repeat=r):
                if tuple(decoded[c] for c in tup) == target:
                    return False
    return True


def largeness_holds(n: int, d: int, q: int, r: int, m: int) -> bool:
    """The domain/range inequality behind hitting-set existence: b >= 2a.

    a = 2^m * n^r * d^r * q^((n-1)r + n) counts (member, reference point,
    code r-tuple) triples; b = q^(nr) counts candidate hitting sets.
    """
    a = (2**m) * (n**r) * (d**r) * q ** ((n - 1) * r + n)
    b = q ** (n * r)
    return b >= 2 * a
