"""Star vectors, the triangular star matrix, and span solving."""

import itertools

import pytest

from conftest import all_closed_subsets, all_forests, forest_of
from cascadekit.errors import DomainError
from cascadekit.f2linalg import (
    F2Vector,
    combine_stars,
    forest_height,
    matrix_order,
    solve_all_targets,
    solve_star_span,
    star_matrix,
    star_vector,
)
from cascadekit.forest import Window, random_forest, rho_closure


def brute_force_solutions(K, target):
    """All coefficient subsets reproducing the target; the solver oracle."""
    hits = []
    for r in range(len(K.ordered) + 1):
        for combo in itertools.combinations(K.ordered, r):
            if combine_stars(K, combo) == target:
                hits.append(set(combo))
    return hits


def gf2_invertible(matrix):
    """Gaussian-elimination invertibility oracle, independent of triangularity."""
    n = len(matrix.row_order)
    rows = [sum(matrix.entry(i, j) << j for j in range(n)) for i in range(n)]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if (rows[r] >> col) & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(n):
            if r != rank and (rows[r] >> col) & 1:
                rows[r] ^= rows[rank]
        rank += 1
    return rank == n


class TestHeight:
    def test_fork(self):
        f = forest_of(3, {1: 0, 2: 0})
        K = Window(f, frozenset({0, 1, 2}))
        assert forest_height(K, 0) == 1
        assert forest_height(K, 1) == 0
        assert forest_height(K, 2) == 0

    def test_chain(self):
        f = forest_of(3, {1: 0, 2: 1})
        K = Window(f, frozenset({0, 1, 2}))
        assert forest_height(K, 0) == 2

    def test_singleton(self):
        f = forest_of(3, {1: 0, 2: 1})
        K = Window(f, frozenset({0}))
        assert forest_height(K, 0) == 0

    def test_outside_window(self):
        f = forest_of(3, {1: 0, 2: 1})
        K = Window(f, frozenset({0}))
        with pytest.raises(DomainError):
            forest_height(K, 2)

    def test_children_precede_parents_in_order(self):
        for f in all_forests(6):
            for closed in all_closed_subsets(f):
                if not closed:
                    continue
                order = matrix_order(Window(f, closed))
                pos = {xi: i for i, xi in enumerate(order)}
                for xi in closed:
                    if xi >= 1 and f.parents[xi] in closed:
                        assert pos[xi] < pos[f.parents[xi]]


class TestStarVector:
    def test_root_star_in_fork(self):
        f = forest_of(3, {1: 0, 2: 0})
        K = Window(f, frozenset({0, 1, 2}))
        assert star_vector(K, 0).support() == {0, 1, 2}

    def test_leaf_star(self):
        f = forest_of(3, {1: 0, 2: 0})
        K = Window(f, frozenset({0, 1, 2}))
        assert star_vector(K, 1).support() == {1}

    def test_intersection_with_window(self):
        f = forest_of(3, {1: 0, 2: 0})
        K = Window(f, frozenset({0, 1}))
        assert star_vector(K, 0).support() == {0, 1}

    def test_diagonal_always_set(self):
        for f in all_forests(5):
            for closed in all_closed_subsets(f):
                K = Window(f, closed)
                for xi in closed:
                    assert star_vector(K, xi).entry(xi) == 1


class TestStarMatrix:
    def test_fork_order_and_triangularity(self):
        f = forest_of(3, {1: 0, 2: 0})
        K = Window(f, frozenset({0, 1, 2}))
        m = star_matrix(K)
        assert m.col_order == (1, 2, 0)
        assert m.is_upper_triangular_unit()

    def test_singleton_identity(self):
        f = forest_of(2, {1: 0})
        m = star_matrix(Window(f, frozenset({0})))
        assert m.shape() == (1, 1) and m.entry(0, 0) == 1

    def test_chain_matrix_by_hand(self):
        f = forest_of(3, {1: 0, 2: 1})
        m = star_matrix(Window(f, frozenset({0, 1, 2})))
        assert m.col_order == (2, 1, 0)
        expected = {
            (0, 0): 1, (0, 1): 1, (0, 2): 0,
            (1, 0): 0, (1, 1): 1, (1, 2): 1,
            (2, 0): 0, (2, 1): 0, (2, 2): 1,
        }
        for (i, j), v in expected.items():
            assert m.entry(i, j) == v

    def test_rejects_empty_window(self):
        f = forest_of(2, {1: 0})
        with pytest.raises(DomainError):
            star_matrix(Window(f, frozenset()))

    def test_triangular_and_invertible_everywhere(self):
        for f in all_forests(6):
            for closed in all_closed_subsets(f):
                if not closed:
                    continue
                m = star_matrix(Window(f, closed))
                assert m.is_upper_triangular_unit()
                assert gf2_invertible(m)

    def test_off_diagonal_ones_strictly_above(self):
        for seed in range(10):
            f = random_forest(9, seed)
            K = rho_closure(f, {3, 5, 8})
            m = star_matrix(K)
            for j, col in enumerate(m.cols):
                above = col & ~(1 << j)
                assert above >> j == 0

    def test_export_text(self):
        f = forest_of(3, {1: 0, 2: 0})
        text = star_matrix(Window(f, frozenset({0, 1, 2}))).to_text()
        lines = text.splitlines()
        assert lines[0] == "1 2 0"
        assert len(lines) == 4
        assert all(set(row) <= {"0", "1"} for row in lines[1:])


class TestSolve:
    def test_chain_e0(self):
        f = forest_of(2, {1: 0})
        K = Window(f, frozenset({0, 1}))
        target = F2Vector.from_nodes(K, {0})
        got = solve_star_span(K, target)
        assert [got] == brute_force_solutions(K, target)
        assert got == {0, 1}

    def test_zero_target(self):
        f = forest_of(2, {1: 0})
        K = Window(f, frozenset({0, 1}))
        assert solve_star_span(K, F2Vector.zero(K)) == set()

    def test_fork_all_ones(self):
        f = forest_of(3, {1: 0, 2: 0})
        K = Window(f, frozenset({0, 1, 2}))
        target = F2Vector.from_nodes(K, {0, 1, 2})
        got = solve_star_span(K, target)
        assert [got] == brute_force_solutions(K, target)
        assert got == {0}

    def test_window_mismatch_rejected(self):
        f = forest_of(3, {1: 0, 2: 0})
        K1 = Window(f, frozenset({0, 1, 2}))
        K2 = Window(f, frozenset({0, 1}))
        with pytest.raises(DomainError):
            solve_star_span(K1, F2Vector.zero(K2))

    def test_round_trip_all_targets(self):
        for seed in (0, 1, 2):
            f = random_forest(10, seed)
            K = rho_closure(f, set(range(f.size)))
            for bits in range(1 << len(K)):
                target = F2Vector(K, bits)
                assert combine_stars(K, solve_star_span(K, target)) == target

    def test_batch_solver_matches_per_target(self):
        for seed in range(6):
            f = random_forest(7, seed)
            K = rho_closure(f, set(range(f.size)))
            batch = solve_all_targets(K)
            for bits in range(1 << len(K)):
                assert batch[bits] == solve_star_span(K, F2Vector(K, bits))

    def test_unique_solution_small_windows(self):
        for f in all_forests(5):
            K = Window(f, frozenset(range(5)))
            for bits in range(1 << 5):
                target = F2Vector(K, bits)
                assert brute_force_solutions(K, target) == [solve_star_span(K, target)]

    def test_unique_solution_six_node_windows(self):
        for seed in range(5):
            f = random_forest(6, seed)
            K = Window(f, frozenset(range(6)))
            for bits in range(1 << 6):
                target = F2Vector(K, bits)
                assert brute_force_solutions(K, target) == [solve_star_span(K, target)]
