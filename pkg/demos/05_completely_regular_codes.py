"""
Completely regular codes in block graphs
========================================

A code of covering radius 1 is the same thing as one side of an equitable
bipartition. The enumerator finds all of them for a given eigenvalue.
"""

from collections import Counter

from stsflow import crc, designs, spectra

sts = designs.load_catalog("sts13b")
g = spectra.block_graph(sts)

pencil = crc.construction_1(sts, 1)
rep = crc.check_crc(g, pencil)
print("pencil:", rep)
print("two-valued vector:", sorted(set(crc.two_valued_vector(g, pencil, rep))))

res = crc.enumerate_equitable_bipartitions(g, 2, sts=sts)
print(len(res.partitions), "partitions at eigenvalue 2; expected", crc.expected_count(13, designs.binary_rank(sts)))

# PG(3,2) has 15 Fano subplanes, so many more codes
pg = designs.hamming_sts(4)
gp = spectra.block_graph(pg)
res = crc.enumerate_equitable_bipartitions(gp, 3, sts=pg)
print(len(res.partitions), "partitions on PG(3,2); formula gives", crc.expected_count(15, 11))
print(Counter(t for p in res.partitions for t in p.tags + p.complement_tags))

# construction 5: a small subsystem has covering radius 2
print(crc.check_crc(gp, crc.construction_5(pg, list(pg.blocks[0]))))

# eigenvalue -3 codes are exactly the 1-designs
s9 = designs.affine_plane_9()
g9 = spectra.block_graph(s9)
for p in crc.enumerate_equitable_bipartitions(g9, -3, sts=s9).partitions:
    print(p.side, "lambda =", crc.is_one_design(s9, p.side))

# a random block set is (almost always) not completely regular
try:
    crc.check_crc(g, [0, 5, 9, 17, 22])
except crc.NotCompletelyRegular as err:
    print(err)
