"""
Block graphs and their three eigenvalues
========================================

The block graph of an STS(n) is strongly regular with eigenvalues
3(n-3)/2, (n-9)/2 and -3. Eigenvectors are checked exactly; numpy is
only used here to print the floating point spectrum for comparison.
"""

import random
from fractions import Fraction

import numpy as np

from stsflow import designs, spectra

sts = designs.load_catalog("sts13a")
g = spectra.block_graph(sts)
print("SRG parameters:", spectra.srg_parameters(g))
print("formula:", spectra.block_graph_eigenvalues(13))

vals = np.linalg.eigvalsh(g.adjacency_matrix().astype(float))
print("numpy:", np.unique(np.round(vals).astype(int), return_counts=True))

# first eigenspace: lifts of zero-sum point vectors
rng = random.Random(1)
u = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(12)]
u.append(-sum(u))
v = spectra.lift(u, sts)
print("lift is a 2-eigenvector:", spectra.is_eigenvector(g, v, 2))

# the same u lifted to all triples of 1..13 restricts to the STS blocks
big = spectra.lift(u, (13, 3))
print("J(13,3) eigenvector:", spectra.is_johnson_eigenvector(13, 3, big, spectra.johnson_eigenvalue(13, 3, 1)))
print("restriction matches:", spectra.restrict(big, sts) == v)

# last eigenspace = kernel of the incidence matrix (these are the flows, if integral and nowhere zero)
basis = spectra.null_space_basis(spectra.incidence_matrix(sts))
print("kernel dimension:", len(basis))
print("all basis vectors are -3 eigenvectors:", all(spectra.is_eigenvector(g, b, -3) for b in basis))
print("Fano kernel:", spectra.null_space_basis(spectra.incidence_matrix(designs.fano())))
