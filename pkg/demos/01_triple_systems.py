"""
Building Steiner triple systems
===============================

A tour of the constructions: Bose on Z_m x Z_3, the projective (Hamming)
systems, the doubling construction, and the bundled order-13/15 catalog.
"""

from stsflow import designs

# Bose with m = 3 gives the affine plane of order 3
s9 = designs.bose(3)
print("STS(9):", s9.n, "points,", s9.b, "blocks, replication", s9.replication)
print(designs.format_sts(s9))

# points of PG(3,2) are the nonzero vectors of GF(2)^4, lines are {a, b, a^b}
pg = designs.hamming_sts(4)
print("PG(3,2): binary rank", designs.binary_rank(pg))   # 2^4 - 1 - 4 = 11

# every order-7 subsystem is a Fano plane inside PG(3,2); there are 2^(15-11) - 1 of them
subs = designs.find_subsystems(pg, 7)
print(len(subs), "Fano subplanes, e.g.", subs[0])

# doubling: STS(n) -> STS(2n+1); tau picks which quadruple replaces each base block
fano = designs.fano()
s15 = designs.assmuss_mattson(fano, designs.tau_constant(fano, 0))
print("doubled Fano:", s15.n, s15.b, "rank", designs.binary_rank(s15))
s15r = designs.assmuss_mattson(fano, designs.parse_tau(fano, "seed:4"))
print("random tau:", s15r.n, "rank", designs.binary_rank(s15r))

# resolutions: AG(2,3) splits into 4 parallel classes, PG(3,2) into 7 (Kirkman)
for sts in (s9, pg):
    res = designs.find_resolution(sts)
    print(f"order {sts.n}: {len(res.classes)} parallel classes")
print("Fano resolvable?", designs.find_resolution(fano))

# the catalog holds both classes of STS(13) and STS(15)s of each binary rank
for name in designs.catalog_names():
    sts = designs.load_catalog(name)
    print(f"{name:18s} n={sts.n:2d} rank={designs.binary_rank(sts):2d} pasch={designs.pasch_count(sts)}")

# invalid input is reported, not silently accepted
try:
    designs.validate_sts(7, list(fano.blocks) + [(1, 2, 3)])
except designs.StsValidationError as err:
    print("rejected:", err.report[:2])
