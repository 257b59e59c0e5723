"""Koszul complex construction, pullback, and exact cohomology lengths."""

import random

import pytest

from entrolab import (
    MonomialMap,
    NotFiniteLengthError,
    RegionOverflowError,
    RingSpec,
    build_koszul,
    colength,
    exact_rank,
    generator_profile,
    h0_length,
    homology_lengths,
    iterate,
    minimalize,
    pullback,
)

from helpers import (
    dd_product_terms,
    koszul_homology_oracle,
    koszul_slice_oracle,
    random_monomial_sequence,
)

R2 = RingSpec.polynomial(0, 2)
CROSS = RingSpec(0, 2, minimalize({(1, 1)}))  # k[X,Y]/(XY)


def test_exact_rank_depends_on_characteristic():
    mat = [[1, 1], [1, -1]]
    assert exact_rank(mat, 0) == 2
    assert exact_rank(mat, 3) == 2
    assert exact_rank(mat, 2) == 1
    assert exact_rank([[0, 0], [0, 0]], 0) == 0
    assert exact_rank([], 5) == 0


def test_build_ranks():
    k = build_koszul(R2, [(1, 0), (0, 1)])
    assert [k.module_rank(d) for d in (-2, -1, 0)] == [1, 2, 1]
    assert k.module_rank(1) == 0 and k.module_rank(-3) == 0
    r3 = RingSpec.polynomial(0, 3)
    k3 = build_koszul(r3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert [k3.module_rank(-j) for j in range(4)] == [1, 3, 3, 1]


def test_build_requires_finite_colength():
    with pytest.raises(NotFiniteLengthError):
        build_koszul(R2, [(1, 0)])
    with pytest.raises(NotFiniteLengthError):
        build_koszul(R2, [(1, 0), (0, 0)])
    # (X, Y) + (XY) generates the maximal ideal, so this is accepted
    build_koszul(CROSS, [(1, 0), (0, 1)])


def _random_ring(rng, dim):
    char = rng.choice((0, 2, 3))
    if rng.random() < 0.5:
        return RingSpec.polynomial(char, dim)
    jgen = tuple(rng.randint(0, 1) for _ in range(dim))
    if sum(jgen) == 0:
        jgen = (1,) * dim
    return RingSpec(char, dim, minimalize([jgen], dim))


def test_dd_zero_random():
    rng = random.Random(77)
    for _ in range(40):
        dim = rng.randint(1, 3)
        ring = _random_ring(rng, dim)
        length = rng.randint(dim, 4)
        seq = random_monomial_sequence(rng, dim, length)
        complex_ = build_koszul(ring, seq)
        assert not any(dd_product_terms(complex_).values())


def test_regular_sequence_concentration():
    rng = random.Random(101)
    for _ in range(25):
        dim = rng.randint(1, 3)
        ring = RingSpec.polynomial(rng.choice((0, 2, 5)), dim)
        perm = list(range(dim))
        rng.shuffle(perm)
        seq = []
        for i in range(dim):
            vec = [0] * dim
            vec[perm[i]] = rng.randint(1, 4)
            seq.append(tuple(vec))
        complex_ = build_koszul(ring, seq)
        lengths = homology_lengths(complex_)
        expected = colength(minimalize(seq, dim), ring)
        assert lengths.length(0) == expected
        assert all(lengths.length(-j) == 0 for j in range(1, dim + 1))
        profile = generator_profile(complex_, lengths)
        assert profile.width == 0 and profile.peak == expected


def test_cross_ring_homology():
    complex_ = build_koszul(CROSS, [(1, 0), (0, 1)])
    lengths = homology_lengths(complex_)
    assert lengths.lengths == {0: 1, -1: 1, -2: 0}
    profile = generator_profile(complex_, lengths)
    assert (profile.peak, profile.width) == (1, 1)
    assert h0_length(complex_) == 1


def test_cross_ring_pullback_by_frobenius_square():
    field_ring = RingSpec(2, 2, minimalize({(1, 1)}))
    base = build_koszul(field_ring, [(1, 0), (0, 1)])
    frob = MonomialMap.frobenius(field_ring)
    pulled = pullback(base, iterate(frob, 2))
    assert pulled.sequence == ((4, 0), (0, 4))
    lengths = homology_lengths(pulled)
    assert lengths.lengths == {0: 7, -1: 7, -2: 0}
    assert h0_length(pulled) == 7


def test_pullback_requires_finite_length():
    base = build_koszul(R2, [(1, 0), (0, 1)])
    collapse = MonomialMap.from_columns([(1, 1), (1, 1)], R2)
    with pytest.raises(NotFiniteLengthError):
        pullback(base, collapse)


def test_pullback_functorial():
    rng = random.Random(55)
    base = build_koszul(R2, [(2, 0), (1, 1), (0, 3)])
    for _ in range(10):
        exps_a = tuple(rng.randint(1, 3) for _ in range(2))
        exps_b = tuple(rng.randint(1, 3) for _ in range(2))
        phi = MonomialMap.diagonal(exps_a, R2)
        psi = MonomialMap.diagonal(exps_b, R2)
        from entrolab import compose

        once = pullback(base, compose(phi, psi))
        twice = pullback(pullback(base, psi), phi)
        assert once.sequence == twice.sequence
        assert once.ring == twice.ring


def test_h0_matches_homology_degree_zero():
    rng = random.Random(202)
    for _ in range(15):
        dim = rng.randint(1, 2)
        char = rng.choice((0, 2, 3))
        if rng.random() < 0.5 and dim == 2:
            ring = RingSpec(char, 2, minimalize({(1, 1)}))
        else:
            ring = RingSpec.polynomial(char, dim)
        seq = random_monomial_sequence(rng, dim, rng.randint(dim, 3))
        complex_ = build_koszul(ring, seq)
        lengths = homology_lengths(complex_)
        assert lengths.length(0) == h0_length(complex_)


def test_homology_matches_bruteforce_oracle():
    cases = [
        (RingSpec(2, 2, minimalize({(1, 1)})), [(1, 0), (0, 1)]),
        (RingSpec(3, 2, minimalize({(2, 1)})), [(1, 0), (0, 2)]),
        (RingSpec.polynomial(0, 2), [(2, 0), (1, 1), (0, 2)]),
        (CROSS, [(2, 0), (0, 3)]),
    ]
    for ring, seq in cases:
        complex_ = build_koszul(ring, seq)
        lengths = homology_lengths(complex_)
        box = tuple(2 * s for s in lengths.region)
        oracle = koszul_homology_oracle(
            ring.characteristic, ring.quotient.generators, complex_.sequence, box
        )
        assert lengths.lengths == oracle


def test_slice_dims_independent_of_order():
    complex_ = build_koszul(CROSS, [(1, 0), (0, 1)])
    lengths = homology_lengths(complex_)
    cells = [
        (a, b) for a in range(lengths.region[0]) for b in range(lengths.region[1])
    ]
    rng = random.Random(8)
    totals = {k: 0 for k in lengths.lengths}
    rng.shuffle(cells)
    for v in cells:
        for k, val in complex_.slice_dims(v).items():
            totals[k] += val
    assert totals == lengths.lengths


def test_slice_dims_match_oracle_pointwise():
    rng = random.Random(303)
    ring = RingSpec(5, 2, minimalize({(1, 2)}))
    complex_ = build_koszul(ring, [(1, 0), (0, 1), (1, 1)])
    for _ in range(60):
        v = (rng.randint(0, 6), rng.randint(0, 6))
        assert complex_.slice_dims(v) == koszul_slice_oracle(
            5, ring.quotient.generators, complex_.sequence, v
        )


def test_region_cap_failure_is_explicit():
    complex_ = build_koszul(R2, [(2, 0), (0, 3)])
    with pytest.raises(RegionOverflowError):
        homology_lengths(complex_, max_side=3)


def test_generator_profile_examples():
    k = build_koszul(R2, [(1, 0), (0, 1)])
    assert generator_profile(k) == generator_profile(k, homology_lengths(k))
    profile = generator_profile(k)
    assert (profile.peak, profile.width) == (1, 0)
    k2 = build_koszul(R2, [(2, 0), (0, 3)])
    profile2 = generator_profile(k2)
    assert (profile2.peak, profile2.width) == (6, 0)
