"""2-group actions, orbit structure, and dyadic quotient analysis."""

import itertools

import pytest

from cascadekit.errors import CertificateError, DomainError, ParseError, PreconditionError
from cascadekit.orbits import (
    FiniteAction,
    TranslationPartition,
    close_group,
    format_partition,
    odd_fixed_point,
    orbit_partition,
    parse_partition,
    quotient_analysis,
)


def transposition(n, i, j):
    p = list(range(n))
    p[i], p[j] = p[j], p[i]
    return tuple(p)


def subspace_span(basis):
    vectors = {0}
    for b in basis:
        vectors |= {v ^ b for v in vectors}
    return vectors


class TestCloseGroup:
    def test_single_involution(self):
        action = close_group([transposition(3, 0, 1)])
        assert len(action.elements) == 2

    def test_two_commuting_involutions(self):
        action = close_group([transposition(4, 0, 1), transposition(4, 2, 3)])
        assert len(action.elements) == 4

    def test_three_cycle_rejected_with_witness(self):
        with pytest.raises(CertificateError, match="odd order 3"):
            close_group([(1, 2, 0)])

    def test_dihedral_of_odd_rotation_rejected(self):
        # two involutions whose product is a 3-cycle generate S3
        with pytest.raises(CertificateError):
            close_group([transposition(3, 0, 1), transposition(3, 1, 2)])

    def test_mismatched_sizes(self):
        with pytest.raises(DomainError):
            close_group([(1, 0), (1, 2, 0, 3)])

    def test_non_permutation(self):
        with pytest.raises(DomainError):
            close_group([(0, 0, 1)])


class TestOrbitPartition:
    def test_identity_group_gives_singletons(self):
        action = close_group([], set_size=5)
        assert orbit_partition(action) == [(0,), (1,), (2,), (3,), (4,)]

    def test_single_swap(self):
        action = close_group([transposition(3, 0, 1)])
        assert orbit_partition(action) == [(0, 1), (2,)]

    def test_two_swaps_brute_force(self):
        action = close_group([transposition(4, 0, 1), transposition(4, 2, 3)])
        # oracle: brute-force orbit closure point by point
        reach = {x: {x} for x in range(4)}
        changed = True
        while changed:
            changed = False
            for x in range(4):
                for p in action.elements:
                    for y in list(reach[x]):
                        if p[y] not in reach[x]:
                            reach[x].add(p[y])
                            changed = True
        assert orbit_partition(action) == [(0, 1), (2, 3)]
        for orbit in orbit_partition(action):
            for x in orbit:
                assert reach[x] == set(orbit)

    def test_orbit_sizes_are_dyadic(self):
        gens = [transposition(6, 0, 1), transposition(6, 2, 3), transposition(6, 0, 2)]
        for k in range(1, len(gens) + 1):
            for combo in itertools.combinations(gens, k):
                try:
                    action = close_group(list(combo))
                except CertificateError:
                    continue
                for orbit in orbit_partition(action):
                    assert len(orbit) & (len(orbit) - 1) == 0


class TestOddFixedPoint:
    def test_swap_on_three_points(self):
        action = close_group([transposition(3, 0, 1)])
        assert odd_fixed_point(action) == 2

    def test_identity_on_singleton(self):
        action = close_group([], set_size=1)
        assert odd_fixed_point(action) == 0

    def test_two_swaps_on_five_points(self):
        action = close_group([transposition(5, 0, 1), transposition(5, 2, 3)])
        assert odd_fixed_point(action) == 4

    def test_even_size_rejected(self):
        action = close_group([transposition(4, 0, 1)])
        with pytest.raises(PreconditionError):
            odd_fixed_point(action)


class TestFiniteActionValidation:
    def test_missing_identity(self):
        with pytest.raises(DomainError):
            FiniteAction(2, ((1, 0),))

    def test_not_closed(self):
        with pytest.raises(DomainError):
            FiniteAction(3, (tuple(range(3)), (1, 2, 0)))

    def test_non_dyadic_order_rejected(self):
        elements = tuple(sorted(itertools.permutations(range(3))))
        with pytest.raises(CertificateError):
            FiniteAction(3, elements)


def coset_labels(d, basis):
    """Label each vector of F2^d by its coset of the span of the basis."""
    span = subspace_span(basis)
    labels = [-1] * (1 << d)
    next_label = 0
    for v in range(1 << d):
        if labels[v] < 0:
            for w in span:
                labels[v ^ w] = next_label
            next_label += 1
    return TranslationPartition(d, tuple(labels))


class TestQuotientAnalysis:
    def test_first_coordinate_labels(self):
        labels = tuple(v & 1 for v in range(4))
        result = quotient_analysis(TranslationPartition(2, labels))
        assert result.invariant
        assert result.subspace_basis == (2,)  # span{(0,1)}
        assert result.class_count == 2

    def test_all_distinct_labels(self):
        result = quotient_analysis(TranslationPartition(2, (0, 1, 2, 3)))
        assert result.invariant
        assert result.subspace_basis == ()
        assert result.class_count == 4

    def test_every_three_class_partition_rejected(self):
        for labels in itertools.product(range(3), repeat=4):
            if len(set(labels)) != 3:
                continue
            result = quotient_analysis(TranslationPartition(2, labels))
            assert not result.invariant
            q, q2, v = result.witness
            assert labels[q] == labels[q2]
            assert labels[q ^ v] != labels[q2 ^ v]

    def test_all_subspace_partitions_up_to_dim3(self):
        for d in range(4):
            all_vectors = list(range(1, 1 << d))
            seen_spans = set()
            for k in range(d + 1):
                for basis in itertools.combinations(all_vectors, k):
                    span = frozenset(subspace_span(basis))
                    if span in seen_spans:
                        continue
                    seen_spans.add(span)
                    partition = coset_labels(d, basis)
                    result = quotient_analysis(partition)
                    assert result.invariant
                    dim_w = len(result.subspace_basis)
                    assert 1 << dim_w == len(span)
                    assert result.class_count == 1 << (d - dim_w)

    def test_witnesses_on_random_relabelings(self):
        # merging two cosets of a strict subspace under one label must fail
        partition = coset_labels(3, [0b001])
        labels = list(partition.labels)
        relabel = {0: 0, 1: 1, 2: 0, 3: 2}
        merged = TranslationPartition(3, tuple(relabel[x] for x in labels))
        result = quotient_analysis(merged)
        assert not result.invariant
        q, q2, v = result.witness
        assert merged.labels[q] == merged.labels[q2]
        assert merged.labels[q ^ v] != merged.labels[q2 ^ v]

    def test_dimension_bound(self):
        with pytest.raises(DomainError):
            TranslationPartition(21, tuple())


class TestPartitionText:
    def test_round_trip(self):
        partition = coset_labels(3, [0b011])
        assert parse_partition(format_partition(partition)) == partition

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_partition("")
        with pytest.raises(ParseError, match="line 2"):
            parse_partition("2\n0 0\n")
        with pytest.raises(ParseError):
            parse_partition("1\n0 0\n")
