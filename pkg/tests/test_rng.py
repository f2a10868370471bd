"""The named generator: SHA-256 label derivation over random.Random."""

from szpit.rng import Rng, derive_seed


def test_same_path_same_stream():
    a = Rng(42, "x").split("y")
    b = Rng(42, "x", "y")
    assert [a.randrange(100) for _ in range(5)] == [b.randrange(100) for _ in range(5)]


def test_sibling_streams_differ():
    root = Rng(42, "x")
    assert root.split("a").randrange(1 << 30) != root.split("b").randrange(1 << 30)


def test_split_is_interleaving_independent():
    r1 = Rng(7)
    c1 = r1.split("child")
    _ = r1.randrange(1000)  # draws on the parent do not disturb the child
    r2 = Rng(7)
    _ = r2.randrange(1000)
    c2 = r2.split("child")
    assert [c1.randrange(10) for _ in range(4)] == [c2.randrange(10) for _ in range(4)]


def test_derive_seed_stable():
    assert derive_seed(1, "a", "b") == derive_seed(1, "a", "b")
    assert derive_seed(1, "a", "b") != derive_seed(1, "ab")


def test_bits_and_point_shapes():
    r = Rng(5, "shapes")
    assert len(r.bits(8)) == 8 and set(r.bits(32)) <= {"0", "1"}
    p = r.point(3, 4)
    assert len(p) == 3 and all(0 <= v < 4 for v in p)
