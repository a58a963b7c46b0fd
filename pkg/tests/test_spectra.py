import random
from collections import Counter
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from stsflow import designs, spectra
from stsflow.exact import rank


def float_spectrum(graph):
    """Oracle: numpy eigenvalues rounded to integers, with multiplicities."""
    vals = np.linalg.eigvalsh(graph.adjacency_matrix().astype(float))
    rounded = np.rint(vals).astype(int)
    assert np.allclose(vals, rounded, atol=1e-8)
    return Counter(rounded.tolist())


def random_zero_sum(n, rng):
    u = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n - 1)]
    return u + [-sum(u)]


def test_fano_block_graph_is_complete(fano):
    g = spectra.block_graph(fano)
    assert g.b == 7 and g.valency == 6
    assert spectra.block_graph_eigenvalues(7).degenerate
    with pytest.raises(ValueError):
        spectra.eigenvalue_by_index(7, 1)


def test_block_graph_sizes(sts9, sts13):
    assert (spectra.block_graph(sts9).b, spectra.block_graph(sts9).valency) == (12, 9)
    assert (spectra.block_graph(sts13).b, spectra.block_graph(sts13).valency) == (26, 15)


def test_incidence(fano, sts9):
    w = spectra.incidence_matrix(fano)
    assert w.shape == (7, 7) and set(w.sum(axis=1)) == {3}
    assert rank(w.tolist()) == 7
    w9 = spectra.incidence_matrix(sts9)
    assert w9.shape == (9, 12) and set(w9.sum(axis=1)) == {4} and set(w9.sum(axis=0)) == {3}


def test_johnson_incidence():
    w = spectra.johnson_incidence_matrix(6, 3)
    assert w.shape == (6, 20) and set(w.sum(axis=0)) == {3} and set(w.sum(axis=1)) == {10}


@pytest.mark.parametrize("n,k,i,value", [(10, 3, 0, 21), (10, 3, 1, 11), (7, 3, 3, -3)])
def test_johnson_eigenvalue(n, k, i, value):
    assert spectra.johnson_eigenvalue(n, k, i) == value


def test_johnson_eigenvalues_decrease():
    for n in range(6, 30):
        for k in range(1, n // 2):
            if n <= 2 * k:
                continue
            vals = [spectra.johnson_eigenvalue(n, k, i) for i in range(k + 1)]
            assert vals[0] == k * (n - k)
            assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("n,expected", [(13, (15, 2, -3)), (15, (18, 3, -3))])
def test_block_graph_eigenvalues(n, expected):
    assert tuple(spectra.block_graph_eigenvalues(n))[:3] == expected


@pytest.mark.parametrize("sts_fn,mult", [
    (designs.affine_plane_9, {9: 1, 0: 8, -3: 3}),
    (lambda: designs.load_catalog("sts13a"), {15: 1, 2: 12, -3: 13}),
    (lambda: designs.hamming_sts(4), {18: 1, 3: 14, -3: 20}),
])
def test_spectrum_oracle(sts_fn, mult):
    sts = sts_fn()
    g = spectra.block_graph(sts)
    spec = spectra.block_graph_eigenvalues(sts.n)
    assert dict(float_spectrum(g)) == mult
    assert set(mult) == {spec.theta0, spec.theta1, spec.theta2}


@pytest.mark.parametrize("sts", [designs.affine_plane_9(), designs.load_catalog("sts13b"), designs.hamming_sts(4),
                                 designs.bose(5), designs.load_catalog("sts15_antipasch"), designs.bose(7),
                                 designs.hamming_sts(5)], ids=lambda s: f"n{s.n}")
def test_strongly_regular(sts):
    v, k, lam, mu = spectra.srg_parameters(spectra.block_graph(sts))
    n = sts.n
    assert v == sts.b and k == 3 * (n - 3) // 2
    # standard parameters of a block graph of an STS(n)
    assert lam == (n + 3) // 2 and mu == 9


def test_is_eigenvector(sts9):
    g = spectra.block_graph(sts9)
    ones = [1] * g.b
    assert spectra.is_eigenvector(g, ones, 9)
    assert not spectra.is_eigenvector(g, ones, -3)
    res = designs.find_resolution(sts9)
    cls = set(res.classes[0])
    v = [9 if t in cls else -3 for t in range(g.b)]
    assert spectra.is_eigenvector(g, v, -3)


def test_lift_support(fano):
    v = spectra.lift([1, -1, 0, 0, 0, 0, 0], fano)
    support = {fano.blocks[t] for t, x in enumerate(v) if x}
    assert support == {blk for blk in fano.blocks if (1 in blk) != (2 in blk)}


def test_lift_requires_zero_sum(sts13):
    with pytest.raises(ValueError):
        spectra.lift([1] * 13, sts13)


def test_lift_is_first_eigenvector(sts13):
    g = spectra.block_graph(sts13)
    rng = random.Random(5)
    for _ in range(20):
        v = spectra.lift(random_zero_sum(13, rng), sts13)
        assert spectra.is_eigenvector(g, v, 2)


def test_restriction_commutes(sts13):
    rng = random.Random(11)
    for _ in range(100):
        u = random_zero_sum(13, rng)
        big = spectra.lift(u, (13, 3))
        small = spectra.restrict(big, sts13)
        assert small == spectra.lift(u, sts13)
        assert max(map(abs, small)) <= max(map(abs, big))


def test_restriction_of_johnson_eigenvector(sts13):
    rng = random.Random(2)
    u = random_zero_sum(13, rng)
    big = spectra.lift(u, (13, 3))
    assert spectra.is_johnson_eigenvector(13, 3, big, spectra.johnson_eigenvalue(13, 3, 1))
    assert spectra.is_first_eigenvector_johnson(13, 3, big)
    assert spectra.is_eigenvector(spectra.block_graph(sts13), spectra.restrict(big, sts13), 2)


def test_first_eigenvector_johnson_rejects_other_vectors():
    v = [1] * comb(9, 3)
    assert not spectra.is_first_eigenvector_johnson(9, 3, v)


def test_null_space(fano, sts13):
    assert spectra.null_space_basis(spectra.incidence_matrix(fano)) == []
    basis = spectra.null_space_basis(spectra.incidence_matrix(sts13))
    assert len(basis) == 13
    g = spectra.block_graph(sts13)
    for v in basis:
        assert spectra.is_eigenvector(g, v, -3)


def test_eigen_kernel_equivalence(h15):
    """Kernel of W equals the -3 eigenspace: compare dimensions of both kernels exactly."""
    w = spectra.incidence_matrix(h15)
    a = spectra.block_graph(h15).adjacency_matrix() + 3 * np.eye(h15.b, dtype=np.int64)
    kernel_w = spectra.null_space_basis(w)
    kernel_a = spectra.null_space_basis(a)
    assert len(kernel_w) == len(kernel_a) == 20
    wm = w.tolist()
    for v in kernel_a:
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in wm)


def test_distance_partition(sts13):
    g = spectra.block_graph(sts13)
    layers, rho = spectra.distance_partition(g, sts13.pencil(1))
    assert rho == 1 and len(layers[0]) == 6
    _, rho = spectra.distance_partition(g, [0])
    assert rho <= 2
    with pytest.raises(ValueError):
        spectra.distance_partition(g, range(g.b))


def test_vector_json_round_trip():
    v = [Fraction(1, 3), -2, Fraction(-5, 7), 0]
    text = spectra.dumps_vector(v)
    assert text == '["1/3", "-2", "-5/7", "0"]'
    assert spectra.loads_vector(text) == v
