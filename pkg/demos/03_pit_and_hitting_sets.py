#!/usr/bin/env python3
"""Identity testing three ways, and hitting sets found by sampling.

The root-count bound makes randomness effective: a non-vanishing circuit
of max individual degree d is nonzero on at least half of {0..2nd-1}^n, so
a handful of random evaluations decides identity with error 2^-trials.
Pushing the same counting one level up, a random sequence of r points is a
hitting set for a whole 2^m-member circuit class with probability >= 1/2
once r > m + n*|q| -- so sample-and-verify finds one in a couple of draws.
"""

from szpit import Gate, circuit
from szpit.classes import multilinear_class
from szpit.hitting import bitlen, search_hitting_set, verify_hitting_set
from szpit.pit import equiv_test, pit_cube_brute, pit_random, pit_with_hitting_set

# Two circuits for the same polynomial (x1 + x2)^2.
lhs = circuit([
    Gate.var(1), Gate.var(2), Gate.add(0, 1), Gate.mul(2, 2),
])
rhs = circuit([
    Gate.var(1), Gate.var(2),
    Gate.mul(0, 0), Gate.mul(1, 1),            # x1^2, x2^2
    Gate.const(2), Gate.mul(0, 1), Gate.mul(4, 5),  # 2 x1 x2
    Gate.add(2, 6), Gate.add(7, 3),
])

print("equiv_test((x1+x2)^2, expanded form):")
print("  cube   :", equiv_test(lhs, rhs, method="cube").kind)
print("  random :", equiv_test(lhs, rhs, method="random", trials=40, seed=7).kind)

prod = circuit([Gate.var(1), Gate.var(2), Gate.mul(0, 1)])
print("\npit on x1*x2:")
print("  cube   :", pit_cube_brute(prod))
print("  random :", pit_random(prod, trials=5, seed=1))

# A hitting set for the class of all 16 multilinear 0/1-coefficient
# polynomials in two variables.  Parameters sized by the existence bound.
cls = multilinear_class(2, d=2)
q = 2 * cls.d * cls.n
r = cls.m + cls.n * bitlen(q) + 1
print(f"\nclass: 2^{cls.m} multilinear members; q = {q}, r = {r}")

h = search_hitting_set(cls, q=q, r=r, seed=2024)
print(f"found a verified hitting set of {h.size} distinct points:")
for p in h.points:
    print("   ", p)

verdict = verify_hitting_set(cls, h)
print("re-verification:", "Hits" if verdict.hits else f"Misses {verdict.x}")

# Hardwiring H gives a non-adaptive identity test for the class.
print("\npit_with_hitting_set against the found H:")
print(f"  {'x1*x2':34}: {pit_with_hitting_set(prod, h).kind}")
diff = equiv_test(lhs, rhs, method="hs", hitting_set=h)
print(f"  {'(x1+x2)^2 minus its expansion':34}: {diff.kind}")
