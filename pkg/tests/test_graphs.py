import numpy as np
import pytest

from suburban.graphs import (
    GraphEnsembleSpec,
    GraphKind,
    draw_adjacency,
    edge_count,
    effective_dimension,
    lattice_edge_set,
    neighbors,
    validate_adjacency,
)


def ring_edges(m):
    # independent oracle: enumerate ring neighbors directly
    return {(i, (i + 1) % m) if i < (i + 1) % m else ((i + 1) % m, i) for i in range(m)}


class TestLatticeEdgeSet:
    def test_1d_m3_is_a_3_cycle(self):
        edges = lattice_edge_set(1, 3)
        assert edges.shape == (3, 2)
        assert {tuple(e) for e in edges} == ring_edges(3)

    def test_2d_m3_counts_and_degrees(self):
        edges = lattice_edge_set(2, 3)
        assert edges.shape[0] == 2 * 3 ** 2  # d * m**d
        deg = np.bincount(edges.ravel(), minlength=9)
        assert np.all(deg == 4)

    def test_4d_m3_edge_count(self):
        edges = lattice_edge_set(4, 3)
        assert edges.shape[0] == 4 * 3 ** 4 == 324
        assert edges.max() == 80

    def test_every_site_has_2d_distinct_neighbors(self):
        for d, m in [(1, 5), (2, 4), (3, 3)]:
            edges = lattice_edge_set(d, m)
            assert len({tuple(e) for e in edges}) == edges.shape[0]
            deg = np.bincount(edges.ravel(), minlength=m ** d)
            assert np.all(deg == 2 * d)

    @pytest.mark.parametrize("d,m", [(0, 3), (1, 2), (2, 1), (-1, 3)])
    def test_degenerate_lattices_rejected(self, d, m):
        with pytest.raises(ValueError):
            lattice_edge_set(d, m)


class TestSpecValidation:
    def test_mismatched_m_d_rejected(self):
        with pytest.raises(ValueError):
            GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=0.5, d=3, m=3)

    def test_p_join_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            GraphEnsembleSpec(GraphKind.ERDOS_RENYI, M=10, p_join=1.5)
        with pytest.raises(ValueError):
            GraphEnsembleSpec(GraphKind.ERDOS_RENYI, M=10, p_join=-0.1)

    def test_m2_torus_rejected(self):
        with pytest.raises(ValueError):
            GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=4, p_join=0.5, d=2, m=2)

    def test_hypercubic_requires_d_and_m(self):
        with pytest.raises(ValueError):
            GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=0.5)

    def test_configured_deff(self):
        spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=0.5, d=2, m=9)
        assert spec.d_eff_configured == 1.0
        er = GraphEnsembleSpec(GraphKind.ERDOS_RENYI, M=81, p_join=1.0)
        assert er.d_eff_configured == 40.0


class TestDrawAdjacency:
    def test_p_zero_is_empty(self):
        rng = np.random.default_rng(0)
        for spec in (
            GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=0.0, d=2, m=9),
            GraphEnsembleSpec(GraphKind.ERDOS_RENYI, M=81, p_join=0.0),
        ):
            A = draw_adjacency(spec, rng)
            assert edge_count(A) == 0

    @pytest.mark.parametrize("shuffle", [True, False])
    def test_full_torus_degree_2d(self, shuffle):
        spec = GraphEnsembleSpec(
            GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=2, m=9, shuffle=shuffle
        )
        A = draw_adjacency(spec, np.random.default_rng(1))
        assert np.all(A.sum(axis=0) == 4)

    def test_er_complete_graph(self):
        spec = GraphEnsembleSpec(GraphKind.ERDOS_RENYI, M=81, p_join=1.0)
        A = draw_adjacency(spec, np.random.default_rng(2))
        assert np.all(A.sum(axis=0) == 80)

    def test_all_draws_symmetric_and_loop_free(self):
        rng = np.random.default_rng(3)
        specs = [
            GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=p, d=2, m=9)
            for p in (0.0, 0.3, 0.7, 1.0)
        ] + [GraphEnsembleSpec(GraphKind.ERDOS_RENYI, M=40, p_join=0.2)]
        for spec in specs:
            for _ in range(20):
                validate_adjacency(draw_adjacency(spec, rng))

    def test_expected_edge_count_matches_binomial(self):
        # over R = 1000 draws the mean edge count sits within 5 binomial
        # standard deviations of p * d * m**d
        p, d, m = 0.37, 2, 9
        E = d * m ** d
        spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=p, d=d, m=m)
        rng = np.random.default_rng(4)
        R = 1000
        counts = [edge_count(draw_adjacency(spec, rng)) for _ in range(R)]
        se = np.sqrt(E * p * (1 - p) / R)
        assert abs(np.mean(counts) - p * E) < 5 * se

    def test_full_draw_deff_equals_d_for_all_shuffles(self):
        rng = np.random.default_rng(5)
        for d, m in [(1, 81), (2, 9), (4, 3)]:
            spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=d, m=m)
            for _ in range(25):
                assert effective_dimension(draw_adjacency(spec, rng)) == d

    def test_shuffle_preserves_degree_multiset(self):
        base = GraphEnsembleSpec(
            GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=2, m=9, shuffle=False
        )
        shuf = GraphEnsembleSpec(
            GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=2, m=9, shuffle=True
        )
        rng = np.random.default_rng(6)
        deg_base = np.sort(draw_adjacency(base, rng).sum(axis=0))
        deg_shuf = np.sort(draw_adjacency(shuf, rng).sum(axis=0))
        assert np.array_equal(deg_base, deg_shuf)

    def test_same_seed_identical_draws(self):
        spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=0.5, d=2, m=9)
        a = draw_adjacency(spec, np.random.default_rng(7))
        b = draw_adjacency(spec, np.random.default_rng(7))
        assert np.array_equal(a, b)

    def test_different_seeds_differ(self):
        spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=0.5, d=2, m=9)
        a = draw_adjacency(spec, np.random.default_rng(8))
        b = draw_adjacency(spec, np.random.default_rng(9))
        assert not np.array_equal(a, b)


class TestEffectiveDimension:
    def test_empty_graph(self):
        assert effective_dimension(np.zeros((10, 10), dtype=bool)) == 0.0

    def test_full_2d_torus_m9(self):
        spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=2, m=9)
        A = draw_adjacency(spec, np.random.default_rng(0))
        assert edge_count(A) == 162
        assert effective_dimension(A) == 2.0

    def test_full_ring_m81(self):
        spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=1, m=81)
        A = draw_adjacency(spec, np.random.default_rng(0))
        assert edge_count(A) == 81
        assert effective_dimension(A) == 1.0


class TestNeighbors:
    def test_empty_graph(self):
        A = np.zeros((5, 5), dtype=bool)
        for sigma in range(5):
            assert neighbors(A, sigma).size == 0

    def test_3_cycle(self):
        A = np.zeros((3, 3), dtype=bool)
        for i, j in [(0, 1), (1, 2), (2, 0)]:
            A[i, j] = A[j, i] = True
        assert list(neighbors(A, 1)) == [0, 2]

    def test_full_torus_m3_degree(self):
        spec = GraphEnsembleSpec(
            GraphKind.HYPERCUBIC, M=9, p_join=1.0, d=2, m=3, shuffle=False
        )
        A = draw_adjacency(spec, np.random.default_rng(0))
        for sigma in range(9):
            assert neighbors(A, sigma).size == 4

    def test_out_of_range(self):
        A = np.zeros((4, 4), dtype=bool)
        with pytest.raises(IndexError):
            neighbors(A, 4)
        with pytest.raises(IndexError):
            neighbors(A, -1)


class TestValidateAdjacency:
    def test_rejects_asymmetric(self):
        A = np.zeros((3, 3), dtype=bool)
        A[0, 1] = True
        with pytest.raises(ValueError):
            validate_adjacency(A)

    def test_rejects_self_loop(self):
        A = np.zeros((3, 3), dtype=bool)
        A[1, 1] = True
        with pytest.raises(ValueError):
            validate_adjacency(A)
