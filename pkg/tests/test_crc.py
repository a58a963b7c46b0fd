import random
from collections import Counter

import pytest

from stsflow import crc, designs, spectra
from stsflow.crc import NotCompletelyRegular


def brute_equitable(graph, code):
    """Oracle for rho = 1 codes: every member has the same number of code neighbours,
    and every outsider as well."""
    code = set(code)
    inside = {sum(1 for y in graph.neighbors[x] if y in code) for x in code}
    outside = {sum(1 for y in graph.neighbors[x] if y in code) for x in range(graph.b) if x not in code}
    return len(inside) == 1 and len(outside) == 1


@pytest.fixture(scope="module")
def enum15():
    h = designs.hamming_sts(4)
    g = spectra.block_graph(h)
    return h, g, crc.enumerate_equitable_bipartitions(g, 3, sts=h)


def test_pencil_report(sts13):
    g = spectra.block_graph(sts13)
    r = crc.check_crc(g, crc.construction_1(sts13, 1))
    assert r.rho == 1 and r.alphas[0] == 5
    assert r.intersection_array == ([10], [3])
    assert r.alphas[0] - r.gammas[1] == 2 and 2 in r.eigenvalues
    assert crc.lloyd_check(g, r)


def test_parallel_class_report(sts9):
    g = spectra.block_graph(sts9)
    cls = designs.find_resolution(sts9).classes[0]
    r = crc.check_crc(g, cls)
    assert r.rho == 1 and r.alphas[0] - r.gammas[1] == -3
    v = crc.two_valued_vector(g, cls, r)
    assert sorted(set(v)) == [-r.gammas[1], r.betas[0]]
    assert spectra.is_eigenvector(g, v, -3)


def test_random_subset_not_regular(sts13):
    g = spectra.block_graph(sts13)
    code = random.Random(0).sample(range(g.b), 5)
    with pytest.raises(NotCompletelyRegular) as exc:
        crc.check_crc(g, code)
    assert 0 <= exc.value.vertex < g.b


def test_constructions_on_projective(h15):
    g = spectra.block_graph(h15)
    c1 = crc.construction_1(h15, 1)
    c2 = crc.construction_2(h15)
    c3 = crc.construction_3(h15, 8)
    c5 = crc.construction_5(h15, list(h15.blocks[0]))
    assert (len(c1), len(c2), len(c3), len(c5)) == (7, 7, 14, 1)
    for code in (c1, c2, c3):
        r = crc.check_crc(g, code)
        assert r.rho == 1 and r.alphas[0] - r.gammas[1] == 3
    assert crc.check_crc(g, c5).rho == 2
    assert crc.classify_code(h15, c3) == ["C3"]


def test_construction_4(sts13, h15):
    for sts in (sts13, h15):
        g = spectra.block_graph(sts)
        code = crc.construction_4(sts)
        lam = crc.is_one_design(sts, code)
        assert lam is not None
        r = crc.check_crc(g, code)
        assert r.rho == 1 and r.alphas[0] - r.gammas[1] == -3


def test_construction_errors(sts13, h15):
    with pytest.raises(ValueError):
        crc.construction_2(sts13)  # no subsystem of order 6
    with pytest.raises(ValueError):
        crc.construction_5(h15, list(range(1, 8)))  # order 7 is not below 7
    with pytest.raises(ValueError):
        crc.construction_4(h15, crc.construction_1(h15, 1))
    with pytest.raises(ValueError):
        crc.construction(h15, 6)


def test_every_c5_has_radius_two():
    sts = designs.hamming_sts(5)
    g = spectra.block_graph(sts)
    for pts in designs.find_subsystems(sts, 7)[:5]:
        assert crc.check_crc(g, crc.construction_5(sts, pts)).rho == 2
    for blk in sts.blocks[:5]:
        assert crc.check_crc(g, crc.construction_5(sts, list(blk))).rho == 2


def test_is_one_design(sts9):
    res = designs.find_resolution(sts9)
    assert crc.is_one_design(sts9, res.classes[0]) == 1
    assert crc.is_one_design(sts9, res.classes[0] + res.classes[1]) == 2
    assert crc.is_one_design(sts9, sts9.pencil(1)) is None


def test_pencil_two_valued(sts13):
    g = spectra.block_graph(sts13)
    code = sts13.pencil(1)
    v = crc.two_valued_vector(g, code, crc.check_crc(g, code))
    assert sorted(set(v)) == [-3, 10]


def test_expected_count():
    assert crc.expected_count(13, 13) == 13
    assert crc.expected_count(15, 11) == 150
    assert crc.expected_count(7, 4) == 42
    with pytest.raises(ValueError):
        crc.expected_count(11, 5)


def test_charpoly_roots():
    # intersection matrix [[5, 10], [3, 12]] of a pencil in STS(13)
    poly = crc.tridiagonal_charpoly([5, 12], [10, 0], [0, 3])
    assert poly == [1, -17, 30]
    assert crc.integer_roots(poly, 15) == ([15, 2], [])


def test_enumeration_sts13(sts13):
    g = spectra.block_graph(sts13)
    res = crc.enumerate_equitable_bipartitions(g, 2, sts=sts13)
    assert res.complete and len(res.partitions) == 13
    pencils = {tuple(sts13.pencil(p)) for p in range(1, 14)}
    for p in res.partitions:
        comp = tuple(x for x in range(g.b) if x not in set(p.side))
        assert p.side in pencils or comp in pencils
        assert "C1" in p.tags + p.complement_tags
        assert p.side < comp


def test_enumeration_sts13_second(sts13):
    g = spectra.block_graph(sts13)
    res = crc.enumerate_equitable_bipartitions(g, -3, sts=sts13)
    assert res.complete and len(res.partitions) == 14
    for p in res.partitions:
        assert crc.is_one_design(sts13, p.side) is not None
        assert brute_equitable(g, p.side)


def test_second_eigenvalue_iff_one_design(sts9):
    """On STS(9), the -3 bipartitions are exactly the proper block sets forming 1-designs."""
    g = spectra.block_graph(sts9)
    res = crc.enumerate_equitable_bipartitions(g, -3, sts=sts9)
    found = {p.side for p in res.partitions}
    designs_found = set()
    for mask in range(1, 2 ** g.b - 1):
        code = tuple(t for t in range(g.b) if mask >> t & 1)
        if 0 in code and crc.is_one_design(sts9, code) is not None:
            comp = tuple(t for t in range(g.b) if t not in code)
            designs_found.add(min(code, comp))
    assert found == designs_found and len(found) == 7


def test_enumeration_sts9_first(sts9):
    g = spectra.block_graph(sts9)
    res = crc.enumerate_equitable_bipartitions(g, 0, sts=sts9)
    assert res.complete and len(res.partitions) == 81
    tally = Counter(len(p.side) for p in res.partitions)
    assert tally == {4: 27, 8: 54}
    assert sum(1 for p in res.partitions if p.tags or p.complement_tags) == 9


def test_enumeration_sts9_matches_brute_force(sts9):
    g = spectra.block_graph(sts9)
    found = {p.side for p in crc.enumerate_equitable_bipartitions(g, 0).partitions}
    brute = set()
    for mask in range(1, 2 ** g.b - 1):
        if not mask & 1:
            continue
        code = [t for t in range(g.b) if mask >> t & 1]
        if brute_equitable(g, code):
            r = crc.check_crc(g, code)
            if r.alphas[0] - r.gammas[1] == 0:
                comp = tuple(t for t in range(g.b) if t not in code)
                brute.add(min(tuple(code), comp))
    assert found == brute


def test_enumeration_projective(enum15):
    h, g, res = enum15
    assert res.complete
    assert len(res.partitions) == crc.expected_count(15, designs.binary_rank(h)) == 150
    tags = Counter(t for p in res.partitions for t in p.tags + p.complement_tags)
    assert tags == {"C1": 15, "C2": 15, "C3": 120}


def test_enumeration_lloyd_and_complements(enum15):
    h, g, res = enum15
    for p in res.partitions[:40]:
        r = crc.check_crc(g, p.side)
        assert crc.lloyd_check(g, r)
        comp = [x for x in range(g.b) if x not in set(p.side)]
        rc = crc.check_crc(g, comp)
        assert rc.rho == 1 and rc.alphas[0] - rc.gammas[1] == 3


@pytest.mark.parametrize("name", ["sts15_rank12", "sts15_rank13", "sts15_rank14", "sts15_antipasch"])
def test_enumeration_counts_by_rank(name):
    sts = designs.load_catalog(name)
    g = spectra.block_graph(sts)
    res = crc.enumerate_equitable_bipartitions(g, 3, sts=sts)
    assert res.complete
    assert len(res.partitions) == crc.expected_count(15, designs.binary_rank(sts))
    assert all(p.tags or p.complement_tags for p in res.partitions)


def test_budget_stops_early(h15):
    g = spectra.block_graph(h15)
    res = crc.enumerate_equitable_bipartitions(g, 3, budget_nodes=50)
    assert not res.complete


@pytest.mark.parametrize("sts", [designs.affine_plane_9(), designs.load_catalog("sts13a")], ids=["n9", "n13"])
def test_equal_array_gives_norm_one(sts):
    """Every {b0; b0} code found by the enumerator yields a +-b0 eigenvector, so m = 2."""
    g = spectra.block_graph(sts)
    res = crc.enumerate_equitable_bipartitions(g, -3, sts=sts)
    equal = [p for p in res.partitions if p.beta0 == p.gamma1]
    assert equal
    for p in equal:
        r = crc.check_crc(g, p.side)
        v = crc.two_valued_vector(g, p.side, r)
        assert set(v) == {r.betas[0], -r.betas[0]}
        scaled = [x // r.betas[0] for x in v]
        assert spectra.is_eigenvector(g, scaled, -3) and max(map(abs, scaled)) + 1 == 2
