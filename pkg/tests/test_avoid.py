"""Range avoidance: normalization, amplification, inversion, reduction."""

from itertools import product

import pytest

from szpit.avoid import (
    AvoidInstance,
    ExhaustiveOracle,
    amplify,
    amplify_steps,
    avoid_via_hitting,
    build_avoid_class,
    desk_schedule,
    encode_hitting_set_bits,
    instance_from_bool_circuit,
    instance_from_tsv,
    instance_to_tsv,
    invert_amplified,
    normalize,
    paper_schedule,
    solution_set,
    solve_avoid_brute,
    triple_decode,
    triple_encode,
)
from szpit.boolfunc import BoolFunc, boolfunc_from_callable, int_to_bits, parse_bool_circuit
from szpit.circuit import analyze_degrees
from szpit.errors import (
    InversionFailedError,
    PreconditionError,
    StageError,
)
from szpit.evaluator import eval_gates
from szpit.hitting import bitlen, search_hitting_set
from szpit.rng import Rng


def random_instance(rng, a, b=None):
    b = b if b is not None else 2 * a + rng.randint(0, 6)
    return AvoidInstance(a, b, tuple(rng.randint(1, b) for _ in range(a)))


# -- instances ---------------------------------------------------------------

def test_instance_validation():
    with pytest.raises(PreconditionError):
        AvoidInstance(3, 5, (1, 2, 3))  # b < 2a
    with pytest.raises(PreconditionError):
        AvoidInstance(2, 4, (1, 5))  # value outside [b]


def test_tsv_roundtrip():
    inst = AvoidInstance(3, 6, (5, 1, 5))
    assert instance_from_tsv(instance_to_tsv(inst), b=6) == inst
    assert instance_from_tsv("1\t2\n2\t1\n").b == 4  # b defaults to 2a


def test_instance_from_bool_circuit():
    # f(x) = x on [4], as the identity on 2 bits.
    c = parse_bool_circuit("g0 = var x1\ng1 = var x2\noutput g0 g1\n")
    inst = instance_from_bool_circuit(c, 4, 8)
    assert inst.table == (1, 2, 3, 4)


def test_solve_brute_examples():
    assert solve_avoid_brute(AvoidInstance(2, 4, (1, 1))) == 2
    assert solve_avoid_brute(AvoidInstance(3, 6, (1, 2, 3))) == 4


# -- normalization -----------------------------------------------------------

def test_normalize_degenerate_a1():
    # f : [1] -> [b] hits one of the two values of [2]; the other bit
    # string backmaps to the free one.
    for fv in (1, 2, 3, 4):
        inst = AvoidInstance(1, 4, (fv,))
        g, backmap = normalize(inst)
        assert g.in_bits == 0 and g.out_bits == 1
        missing = [y for y in ((0,), (1,)) if y not in g.range_set()]
        assert len(missing) == 1
        assert backmap(missing[0]) not in inst.range_set()


def test_normalize_identity_a3():
    inst = AvoidInstance(3, 6, (1, 2, 3))
    g, backmap = normalize(inst)
    assert g.in_bits == 2 and g.out_bits == 3
    for v in range(8):
        y = int_to_bits(v, 3)
        if y not in g.range_set():
            assert backmap(y) in {4, 5, 6}


def test_normalize_constant_a4():
    inst = AvoidInstance(4, 8, (1, 1, 1, 1))
    g, backmap = normalize(inst)
    assert len(g.range_set()) == 1
    for v in range(8):
        y = int_to_bits(v, 3)
        if y not in g.range_set():
            assert backmap(y) != 1


def test_normalize_guarantee_exhaustive():
    # Every string outside range(g) backmaps outside range(f), for every
    # a <= 8 over assorted b and random tables.
    rng = Rng(401, "norm")
    for a in range(1, 9):
        for trial in range(8):
            r = rng.split(f"{a}:{trial}")
            b = min(32, 2 * a + r.randint(0, 16))
            inst = random_instance(r, a, b)
            g, backmap = normalize(inst)
            hit = inst.range_set()
            seen = g.range_set()
            for v in range(1 << (a - 1).bit_length() + 1):
                y = int_to_bits(v, g.out_bits)
                if y not in seen:
                    out = backmap(y)
                    assert 1 <= out <= 2 * a
                    assert out not in hit


def test_normalize_wrap_soundness_on_representative_strings():
    # The mod-wrap argument itself: in-range values y with f-preimages are
    # always covered by g, so their representative strings never look free.
    rng = Rng(403, "wrap")
    for trial in range(30):
        r = rng.split(str(trial))
        inst = random_instance(r, r.randint(1, 8))
        g, _ = normalize(inst)
        seen = g.range_set()
        for y in inst.range_set():
            if y <= 2 * inst.a:
                assert int_to_bits(y - 1, g.out_bits) in seen


# -- amplification -----------------------------------------------------------

def fixed_g_m2():
    # A fixed 4-row table {0,1}^2 -> {0,1}^3 used by the hand-unrolled test.
    return BoolFunc(2, 3, ((1, 0, 1), (0, 1, 1), (1, 1, 0), (0, 0, 0)))


def test_amplify_t1_is_g():
    g = fixed_g_m2()
    assert amplify(g, 1).table == g.table


def test_amplify_hand_unrolled():
    g = fixed_g_m2()
    h = amplify(g, 3)
    for x in g.inputs():
        h1 = g(x)
        h2 = g(h1[:2]) + h1[2:]
        h3 = g(h2[:2]) + h2[2:]
        assert h(x) == h3
        assert len(h3) == 5


def test_amplify_prefix_property():
    # Tail bits persist: step i+1 keeps step i's stretch bits shifted by one.
    g = fixed_g_m2()
    for x in g.inputs():
        states = amplify_steps(g, x, 4)
        for i in range(len(states) - 1):
            assert states[i + 1][3:] == states[i][2:]


def test_amplify_step_claim():
    # If h_i(z) = y:v then h_{i+1}(z) = g(y):v, for all m <= 3, i <= 4.
    rng = Rng(405, "step")
    for m in (1, 2, 3):
        for trial in range(4):
            r = rng.split(f"{m}:{trial}")
            table = tuple(
                int_to_bits(r.randrange(1 << (m + 1)), m + 1) for _ in range(1 << m)
            )
            g = BoolFunc(m, m + 1, table)
            for z in g.inputs():
                states = amplify_steps(g, z, 5)
                for i in range(5):
                    y, v = states[i][:m], states[i][m:]
                    assert states[i + 1] == g(y) + v


def test_amplify_shape_checks():
    g = fixed_g_m2()
    with pytest.raises(PreconditionError):
        amplify(g, 0)
    square = BoolFunc(1, 1, ((0,), (1,)))
    with pytest.raises(Exception):
        amplify(square, 2)


# -- inversion ---------------------------------------------------------------

def test_invert_t1_returns_y():
    g = fixed_g_m2()
    outside = [int_to_bits(v, 3) for v in range(8) if int_to_bits(v, 3) not in g.range_set()]
    y = outside[0]
    assert invert_amplified(g, 1, y) == y


def test_invert_soundness_exhaustive():
    # m <= 3, several t: every y outside range(h) inverts to a string
    # outside range(g); the planted-preimage case fails.
    rng = Rng(407, "invert")
    for m in (1, 2, 3):
        for t in (2, 3, 4):
            r = rng.split(f"{m}:{t}")
            table = tuple(
                int_to_bits(r.randrange(1 << (m + 1)), m + 1) for _ in range(1 << m)
            )
            g = BoolFunc(m, m + 1, table)
            h = amplify(g, t)
            h_range = h.range_set()
            g_range = g.range_set()
            for v in range(1 << (m + t)):
                y = int_to_bits(v, m + t)
                if y in h_range:
                    continue
                out = invert_amplified(g, t, y)
                assert len(out) == m + 1
                assert out not in g_range


def test_invert_planted_preimage_fails():
    # g(x) = x:0 makes the walk circle back into range(g) forever, so a y
    # inside range(h) is detected and the procedure fails.
    m, t = 2, 3
    g = boolfunc_from_callable(lambda x: x + (0,), m, m + 1)
    h = amplify(g, t)
    y = h((1, 0))
    with pytest.raises(InversionFailedError):
        invert_amplified(g, t, y)


def test_exhaustive_oracle_walk_is_length_maximal():
    g = fixed_g_m2()
    h = amplify(g, 3)
    oracle = ExhaustiveOracle()
    for v in range(1 << 5):
        y = int_to_bits(v, 5)
        if y in h.range_set():
            continue
        k, ys, ws = oracle.longest_walk(g, y, 3)
        assert k <= 2 and len(ys) == k + 1 and len(ws) == k
        for j in range(k):
            assert g(ws[j]) == ys[j]


# -- triple index ------------------------------------------------------------

def test_triple_extremes():
    assert triple_encode(1, 1, 1, 3, 2, 4) == 1
    assert triple_encode(3, 2, 4, 3, 2, 4) == 24


def test_triple_roundtrip_exhaustive():
    r, n, w = 3, 2, 4
    for i, j, k in product(range(1, r + 1), range(1, n + 1), range(1, w + 1)):
        assert triple_decode(triple_encode(i, j, k, r, n, w), r, n, w) == (i, j, k)
    with pytest.raises(PreconditionError):
        triple_encode(4, 1, 1, 3, 2, 4)
    with pytest.raises(PreconditionError):
        triple_decode(25, r, n, w)


# -- schedules and the compression class --------------------------------------

def test_desk_schedule_inequalities():
    for m in range(0, 6):
        s = desk_schedule(m)
        w = bitlen(s.q)
        assert s.q >= 2 * s.d * s.n
        assert s.d >= 2 * s.r * w
        assert s.r > m + s.n * w
        assert s.t_prime >= s.r * s.n * w
        assert not s.violations


def test_paper_schedule_reports_violations_at_small_m():
    s = paper_schedule(2)
    assert s.violations
    with pytest.raises(PreconditionError):
        s.check()
    # The asymptotic choice does satisfy everything once m is large.
    assert not paper_schedule(4096).violations


def build_small_class(m=2, seed=11):
    rng = Rng(seed, "avoid-class")
    inst = random_instance(rng, 1 << (m - 1) if m else 1)
    g, _ = normalize(inst)
    sched = desk_schedule(g.in_bits)
    h = amplify(g, sched.t_prime - g.in_bits)
    return inst, g, sched, h, build_avoid_class(h, sched)


def test_avoid_class_degree_audit():
    _, _, sched, _, cls = build_small_class(m=2)
    for x, member in cls.members():
        rep = analyze_degrees(member)
        for j in range(1, sched.n + 1):
            assert rep.individual[f"x{j}"] == 2 * sched.r
        assert rep.max_individual <= sched.d


def test_avoid_class_positivity():
    _, _, sched, _, cls = build_small_class(m=2)
    point = (2 * sched.q,) * sched.n
    for x, member in cls.members():
        assert eval_gates(member, point) > 0


def test_avoid_class_vanishes_on_encoded_points():
    _, _, sched, h, cls = build_small_class(m=2)
    for x, member in cls.members():
        bits = h(tuple(int(ch) for ch in x))
        for i in range(1, sched.r + 1):
            point = tuple(
                sum(
                    bits[triple_encode(i, j, k, sched.r, sched.n, sched.w) - 1] << (k - 1)
                    for k in range(1, sched.w + 1)
                )
                for j in range(1, sched.n + 1)
            )
            assert eval_gates(member, point) == 0


def test_avoid_class_member_size_is_declared():
    _, _, sched, _, cls = build_small_class(m=2)
    for x, member in cls.members():
        assert len(member.gates) <= cls.s


def test_encoded_hitting_set_outside_h_range():
    # The compression argument, run forward on a real hitting set.
    _, g, sched, h, cls = build_small_class(m=2)
    h_set = search_hitting_set(cls, sched.q, sched.r, seed=3)
    y = encode_hitting_set_bits(h_set, sched, h.out_bits)
    assert all(h(x) != y for x in h.inputs())


# -- end to end ----------------------------------------------------------------

def test_avoid_examples():
    v = avoid_via_hitting(AvoidInstance(2, 4, (3, 3)), seed=1).value
    assert v in {1, 2, 4}
    v = avoid_via_hitting(AvoidInstance(4, 8, (1, 2, 3, 4)), seed=1).value
    assert v in {5, 6, 7, 8}


def test_avoid_end_to_end_random():
    rng = Rng(409, "end2end")
    for trial in range(12):
        r = rng.split(str(trial))
        inst = random_instance(r, r.randint(1, 16))
        result = avoid_via_hitting(inst, seed=trial)
        assert result.value in solution_set(inst)
        assert result.trace["value"] == result.value
        assert result.trace["schedule"]["mode"] == "desk"


def test_avoid_trace_stages():
    result = avoid_via_hitting(AvoidInstance(3, 7, (2, 2, 7)), seed=5)
    trace = result.trace
    for key in ("g_digest", "schedule", "class_size", "hitting_set", "y",
                "inversion_walk", "inversion_output", "value"):
        assert key in trace
    assert trace["inversion_walk"]["chain"][-1] == trace["inversion_output"]
    assert trace["class_size"] == 4
    assert len(trace["y"]) == trace["schedule"]["t_prime"]


def test_avoid_paper_schedule_rejected_at_desk_scale():
    with pytest.raises(StageError) as exc:
        avoid_via_hitting(AvoidInstance(3, 7, (2, 2, 7)), seed=5, schedule="paper")
    assert exc.value.stage == "schedule"


def test_avoid_stage_provenance():
    def broken_solver(cls):
        raise ValueError("boom")

    with pytest.raises(StageError) as exc:
        avoid_via_hitting(AvoidInstance(2, 4, (1, 2)), hs_solver=broken_solver, seed=1)
    assert exc.value.stage == "hitting-set"


def test_pigeonhole_always_solvable():
    # f : [a] -> [b] covers at most a < b values, so a solution exists and
    # brute search never raises; degenerate a=1 frees one of two values.
    rng = Rng(411, "pigeon")
    for trial in range(20):
        r = rng.split(str(trial))
        inst = random_instance(r, r.randint(1, 16))
        assert solve_avoid_brute(inst) in solution_set(inst)
    inst = AvoidInstance(1, 2, (2,))
    assert solve_avoid_brute(inst) == 1


def test_avoid_class_member_matches_direct_formula():
    # Evaluate the built circuit against the product-of-sums-of-squares
    # formula computed directly from the h-bits, at random points.
    _, _, sched, h, cls = build_small_class(m=2)
    rng = Rng(413, "formula")
    for x, member in cls.members():
        bits = h(tuple(int(ch) for ch in x))
        targets = [
            [
                sum(
                    bits[triple_encode(i, j, k, sched.r, sched.n, sched.w) - 1]
                    << (k - 1)
                    for k in range(1, sched.w + 1)
                )
                for j in range(1, sched.n + 1)
            ]
            for i in range(1, sched.r + 1)
        ]
        for _ in range(4):
            z = tuple(rng.randint(-sched.q, sched.q) for _ in range(sched.n))
            want = 1
            for i in range(sched.r):
                want *= sum((z[j] - targets[i][j]) ** 2 for j in range(sched.n))
            assert eval_gates(member, z) == want


def test_avoid_with_large_codomain():
    # b far above 2a: values outside [2a] wrap harmlessly through the
    # normalization, and the answer still lands in [2a].
    rng = Rng(417, "big-b")
    inst = AvoidInstance(9, 10**6, tuple(rng.randint(1, 10**6) for _ in range(9)))
    result = avoid_via_hitting(inst, seed=2)
    assert 1 <= result.value <= 18
    assert result.value in solution_set(inst)
