"""
Nowhere-zero flows of triple systems
====================================

A flow puts a nonzero integer on each block so the blocks through every
point sum to zero. Its value is max|v| + 1.
"""

import time

from stsflow import designs, flows

# resolvable systems: weight parallel classes
s9 = designs.affine_plane_9()
cert = flows.resolvable_flow(s9, designs.find_resolution(s9))
print("STS(9):", cert.value, "flow", cert.v)

pg = designs.hamming_sts(4)
cert = flows.resolvable_flow(pg, designs.find_resolution(pg))
print("PG(3,2):", cert.value, "flow")

# the Fano plane has no flow at all
print("Fano search up to 5:", flows.min_flow_search(designs.fano(), 5))

# exhaustive search on the doubled Fano plane: replication 7 rules out 2-flows
fano = designs.fano()
s15 = designs.assmuss_mattson(fano, designs.tau_constant(fano, 0))
t = time.time()
cert = flows.min_flow_search(s15, 3)
print(f"doubled Fano: value {cert.value} in {time.time() - t:.1f}s")

# doubling an STS(51) gives an STS(103) with a 5-flow built block by block
base = designs.bose(17)
for spec in ("zero", "seed:7"):
    diag = []
    t = time.time()
    cert = flows.am_five_flow(base, designs.parse_tau(base, spec), diagnostics=diag)
    alphas = sorted(set(diag[0].alpha.values()))
    print(f"tau={spec}: STS({cert.sts.n}) value {cert.value}, alpha values {alphas}, {time.time() - t:.2f}s")

# certificates are plain JSON and re-verify on load
text = cert.dumps()
print(len(text), "bytes; reloads:", flows.load_certificate(text).value)

# small first eigenvectors (not flows, but the same certificate format)
for sts in (s9, designs.load_catalog("sts13a"), pg):
    res = flows.first_eig_nzi(sts)
    print(f"STS({sts.n}) first eigenvector norm {res.norm}")
