from fractions import Fraction
from math import gcd

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from stsflow import crc, designs, flows, spectra
from stsflow import johnson_min as jm

from conftest import pair_cover_counts

SYSTEMS = {
    "fano": designs.fano(),
    "sts9": designs.affine_plane_9(),
    "sts13a": designs.load_catalog("sts13a"),
    "sts13b": designs.load_catalog("sts13b"),
    "h15": designs.hamming_sts(4),
    "rank14": designs.load_catalog("sts15_rank14"),
    "bose15": designs.bose(5),
    "bose21": designs.bose(7),
}
GRAPHS = {name: spectra.block_graph(s) for name, s in SYSTEMS.items()}
KERNELS = {name: spectra.null_space_basis(spectra.incidence_matrix(s)) for name, s in SYSTEMS.items()}

fractions_ = st.fractions(min_value=-20, max_value=20, max_denominator=6)
system_names = st.sampled_from(sorted(SYSTEMS))
big_systems = st.sampled_from(["sts9", "sts13a", "sts13b", "h15", "rank14", "bose15", "bose21"])


def zero_sum(n):
    return st.lists(fractions_, min_size=n - 1, max_size=n - 1).map(lambda u: u + [-sum(u, Fraction(0))])


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5, 7, 9, 11]), st.sampled_from([0, 1]), st.integers(0, 10 ** 6))
def test_constructions_are_systems(m, mode, seed):
    base = designs.bose(m)
    tau = designs.tau_random(base, seed) if mode else designs.tau_constant(base, seed % 2)
    for sts in (base, designs.assmuss_mattson(base, tau)):
        assert set(pair_cover_counts(sts.n, sts.blocks).values()) == {1}
        assert sts.b == sts.n * (sts.n - 1) // 6


@settings(max_examples=20, deadline=None)
@given(system_names, st.integers(0, 10 ** 6))
def test_text_round_trip(name, seed):
    base = SYSTEMS[name]
    sts = designs.assmuss_mattson(base, designs.tau_random(base, seed))
    assert designs.parse_sts(designs.format_sts(sts)).blocks == sts.blocks


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.data())
def test_lift_is_first_eigenvector_and_restricts(data):
    name = data.draw(st.sampled_from(["sts13a", "sts13b", "h15", "rank14"]))
    sts = SYSTEMS[name]
    u = data.draw(zero_sum(sts.n))
    v = spectra.lift(u, sts)
    if any(v):
        assert spectra.is_eigenvector(GRAPHS[name], v, (sts.n - 9) // 2)
    assert spectra.restrict(spectra.lift(u, (sts.n, 3)), sts) == v


@settings(max_examples=40, deadline=None)
@given(big_systems, st.data())
def test_kernel_vectors_are_minus_three_eigenvectors(name, data):
    basis = KERNELS[name]
    coeffs = data.draw(st.lists(fractions_, min_size=len(basis), max_size=len(basis)))
    v = [sum((c * b[t] for c, b in zip(coeffs, basis)), Fraction(0)) for t in range(SYSTEMS[name].b)]
    assume(any(v))
    assert spectra.is_eigenvector(GRAPHS[name], v, -3)
    assert all(s == 0 for s in flows.point_sums(SYSTEMS[name], v))


@settings(max_examples=30, deadline=None)
@given(st.integers(-4, 4).filter(bool))
def test_certificates_scale(c):
    sts = SYSTEMS["h15"]
    cert = flows.resolvable_flow(sts, designs.find_resolution(sts))
    scaled = flows.verify_flow(sts, [c * x for x in cert.v])
    assert scaled.value == abs(c) * (cert.value - 1) + 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.integers(0, 60))
def test_upper_vectors_zero_sum_nzi(k, extra):
    n = 2 * k + extra
    up = jm.upper_vector(n, k)
    assert sum(up.u) == 0 and len(up.u) == n
    norm, nzi = jm.lift_norm(up.u, k)
    assert nzi and norm == up.norm <= up.claimed


@settings(max_examples=200, deadline=None)
@given(st.integers(6, 90), st.sampled_from([3, 4, 5, 6]), st.integers(0, 6), st.integers(1, 6), st.data())
def test_two_value_nzi_implies_in_B(n, k, a, b, data):
    """k copies each of a + r/s and -b + r/s with an NZI lift force (a, b, r, s) into B(n, k)."""
    assume(n >= 2 * k)
    d = gcd(n, k)
    s = data.draw(st.sampled_from([x for x in range(1, d + 1) if d % x == 0]))
    r = data.draw(st.sampled_from([x for x in range(s) if gcd(x, s) == 1]))
    f = Fraction(r, s)
    u = [a + f] * k + [-b + f] * k
    _, nzi = jm.lift_norm(u, k)
    if nzi:
        assert jm.in_B(n, k, jm.ParamTuple(a, b, r, s))


@pytest.mark.parametrize("n", range(6, 13))
def test_brute_witnesses_share_fraction(n):
    res = jm.brute_min(n, 3, 6)
    fracs = {Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in res.witness}
    assert len(fracs) == 1
    (f,) = fracs
    assert gcd(n, 3) % f.denominator == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["sts9", "sts13a", "h15"]), st.data())
def test_random_codes_checked_consistently(name, data):
    g = GRAPHS[name]
    code = data.draw(st.sets(st.integers(0, g.b - 1), min_size=1, max_size=g.b - 1))
    try:
        r = crc.check_crc(g, code)
    except crc.NotCompletelyRegular:
        return
    assert crc.lloyd_check(g, r)
    assert all(a + b + c == g.valency for a, b, c in zip(r.alphas, r.betas, r.gammas))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["sts13a", "h15", "rank14", "bose15"]), st.data())
def test_construction_codes(name, data):
    sts = SYSTEMS[name]
    g = GRAPHS[name]
    point = data.draw(st.integers(1, sts.n))
    theta1 = (sts.n - 9) // 2
    r = crc.check_crc(g, crc.construction_1(sts, point))
    assert r.rho == 1 and r.alphas[0] - r.gammas[1] == theta1
    subs = designs.find_subsystems(sts, (sts.n - 1) // 2)
    for pts in subs:
        r = crc.check_crc(g, crc.construction_2(sts, pts))
        assert r.rho == 1 and r.alphas[0] - r.gammas[1] == theta1
        if point not in pts:
            r = crc.check_crc(g, crc.construction_3(sts, point, pts))
            assert r.rho == 1 and r.alphas[0] - r.gammas[1] == theta1
