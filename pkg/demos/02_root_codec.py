#!/usr/bin/env python3
"""Compressing the roots of a multivariate circuit.

Given one point where P is nonzero, every root of P inside the cube S_q^n
can be written as a short code (k, i, rest): the position k where a hybrid
walk from the non-root first makes P vanish, the rank i of the missing
coordinate among the roots of a univariate restriction, and the other n-1
coordinates verbatim.  Decoding is total and inverts encoding on roots, so
counting codes bounds the number of roots: at most d * n * q^(n-1).
"""

from itertools import product

from szpit import Gate, circuit
from szpit.evaluator import eval_gates
from szpit.codec import (
    SZContext,
    all_codes,
    code_space_size,
    count_roots_brute,
    cube_roots,
    decode_code,
    encode_root,
    pack_code,
)

# P(z1, z2) = z1 * (z2 - z1): vanishes on the axis z1 = 0 and the diagonal.
P = circuit([
    Gate.var(1), Gate.var(2),
    Gate.const(-1), Gate.mul(2, 0),   # -z1
    Gate.add(1, 3),                   # z2 - z1
    Gate.mul(0, 4),
])

n, d, q = 2, 2, 6
nonroot = (1, 2)  # P(1,2) = 1
ctx = SZContext(P, n, d, q, nonroot)
print(f"reference point {nonroot} is a non-root: {ctx.nonroot_ok}\n")

roots = cube_roots(P, n, q)
print(f"P has {len(roots)} roots in S_{q}^{n}; the code space has "
      f"{code_space_size(n, d, q)} elements")
print(f"(the root-count bound d*n*q^(n-1) = {d * n * q ** (n - 1)} indeed "
      f"covers {count_roots_brute(P, n, q)})\n")

print("root  ->  code (k:i:rest)  ->  packed  ->  decoded")
for b in roots:
    code = encode_root(ctx, b)
    back = decode_code(ctx, code)
    packed = pack_code(code, n, d, q)
    print(f"{b}  ->  {code.k}:{code.i}:{code.rest}  ->  {packed:3}  ->  {back}")
    assert back == b

# Surjectivity: decoding every code in the space recovers every root,
# which is the whole counting argument in executable form.
image = {decode_code(ctx, c) for c in all_codes(n, d, q)}
assert set(roots) <= image
print("\ndecoding the full code space covers every root: OK")

# Any non-root works as the reference, even a gigantic one.
far = SZContext(P, n, d, q, (10**30, 3))
assert all(decode_code(far, encode_root(far, b)) == b for b in roots)
print("same story from the non-root (10^30, 3): OK")

# The density view: most of the cube is non-roots once q >= 2dn.
Q = 2 * d * n
hits = sum(1 for p in product(range(Q), repeat=n) if eval_gates(P, p) != 0)
print(f"\nat q = 2dn = {Q}: {hits}/{Q**n} cube points are non-roots "
      f"(>= half, as the code count promises)")
