"""
Smallest nowhere-zero first eigenvectors of J(n, k)
===================================================

Everything reduces to a zero-sum point vector u: its lift is nowhere-zero
integral exactly when all k-sums of u are nonzero integers.
"""

from stsflow import johnson_min as jm

print("T(3) =", jm.T_of(3), " T(4) =", jm.T_of(4), " T(5) =", jm.T_of(5))

# past T(3) the minimum is known in closed form; compare with the bounds
print(" n  m  lower exact upper  reasons")
for n in range(64, 82):
    r = jm.lower_bound(n, 3)
    print(f"{n:3d} {jm.m1_jn3(n)} {r.lower!s:>5} {r.exact!s:>5} {r.upper:>5}  {','.join(r.exact_reasons)}")

# n = 81 uses values 5/3 and -4/3
u = jm.jn3_witness(81)
print("n=81 witness values:", sorted(set(u)), "norm", jm.lift_norm(u, 3)[0])

# small orders: bounded exhaustive search against the constructions
for n in range(6, 15):
    res = jm.brute_min(n, 3, 8)
    up = jm.upper_vector(n, 3)
    print(f"n={n:2d} brute={res.minimum} construction={up.norm + 1} ({up.tag})")

# k = 4 and 5 use the other constructions
for n, k in [(12, 4), (13, 4), (20, 5)]:
    up = jm.upper_vector(n, k)
    print((n, k), up.tag, up.norm, up.candidates)
