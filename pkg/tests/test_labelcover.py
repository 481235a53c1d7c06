import numpy as np
import pytest

from ncglab import labelcover as lc


def tiny_instance():
    """Single edge, n=k=2, identity projections."""
    ident = np.array([0, 1])
    edge = lc.Edge(u=0, v=1, pi_u=ident.copy(), pi_v=ident.copy())
    return lc.LabelCoverInstance(num_vertices=2, n=2, k=2, t=1, gamma=0.0,
                                 zeta=0.1, edges=[edge])


class TestInstanceModel:
    def test_validation(self):
        with pytest.raises(ValueError):
            lc.LabelCoverInstance(num_vertices=0, n=1, k=1, t=1, gamma=0, zeta=0, edges=[])
        with pytest.raises(ValueError):  # out-of-range projection value
            lc.LabelCoverInstance(num_vertices=2, n=2, k=2, t=1, gamma=0, zeta=0,
                                  edges=[lc.Edge(0, 1, np.array([0, 5]), np.array([0, 1]))])
        with pytest.raises(ValueError):  # self loop
            lc.LabelCoverInstance(num_vertices=2, n=1, k=1, t=1, gamma=0, zeta=0,
                                  edges=[lc.Edge(0, 0, np.array([0]), np.array([0]))])

    def test_degree_and_connectivity(self):
        inst = tiny_instance()
        assert inst.is_regular() and inst.is_connected()
        assert inst.max_preimage_size() == 1


class TestSatisfiedFraction:
    def test_identity_projection_mismatch(self):
        inst = tiny_instance()
        assert lc.satisfied_fraction(inst, [0, 1]) == 0.0
        assert lc.satisfied_fraction(inst, [1, 1]) == 1.0

    def test_matches_bruteforce_count(self):
        inst = lc.generate_random(10, 4, 5, 3, 2, seed=3)
        rng = np.random.default_rng(4)
        labels = rng.integers(0, 5, inst.num_vertices)
        brute = sum(
            1 for e in inst.edges if e.pi_u[labels[e.u]] == e.pi_v[labels[e.v]]
        ) / inst.num_edges
        assert lc.satisfied_fraction(inst, labels) == pytest.approx(brute)

    def test_relabeling_invariance(self):
        inst, planted = lc.generate_planted(8, 3, 4, 2, 2, seed=5)
        rng = np.random.default_rng(6)
        perm = rng.permutation(inst.num_vertices)
        edges = [lc.Edge(u=int(perm[e.u]), v=int(perm[e.v]),
                         pi_u=e.pi_u.copy(), pi_v=e.pi_v.copy()) for e in inst.edges]
        shuffled = lc.LabelCoverInstance(num_vertices=inst.num_vertices, n=inst.n,
                                         k=inst.k, t=inst.t, gamma=inst.gamma,
                                         zeta=inst.zeta, edges=edges)
        relabeled = np.empty_like(planted)
        relabeled[perm] = planted
        assert lc.satisfied_fraction(shuffled, relabeled) == \
            lc.satisfied_fraction(inst, planted)

    def test_out_of_range_label(self):
        with pytest.raises(ValueError):
            lc.satisfied_fraction(tiny_instance(), [0, 7])


class TestGenerators:
    def test_two_vertex_single_edge(self):
        inst, planted = lc.generate_planted(2, 1, 2, 2, 1, seed=0)
        assert inst.num_edges == 1
        assert lc.satisfied_fraction(inst, planted) == 1.0

    @pytest.mark.parametrize("seed", range(5))
    def test_planted_contract(self, seed):
        inst, planted = lc.generate_planted(8, 3, 6, 3, 2, seed=seed)
        assert lc.satisfied_fraction(inst, planted) == 1.0
        assert inst.is_regular() and inst.is_connected()
        assert inst.max_preimage_size() <= inst.t
        assert lc.check_smoothness(inst) <= inst.gamma

    def test_infeasible_parameters(self):
        with pytest.raises(ValueError):  # k*t < n
            lc.generate_planted(8, 3, 6, 2, 2, seed=0)
        with pytest.raises(ValueError):  # degree >= vertices
            lc.generate_planted(4, 4, 2, 2, 1, seed=0)
        with pytest.raises(ValueError):  # odd degree, odd vertex count
            lc.generate_planted(5, 3, 2, 2, 1, seed=0)
        with pytest.raises(ValueError):  # degree-1 matching is disconnected
            lc.generate_planted(6, 1, 2, 2, 1, seed=0)

    def test_random_generator_structure(self):
        inst = lc.generate_random(8, 4, 5, 3, 2, seed=9)
        assert inst.is_regular() and inst.is_connected()
        assert inst.max_preimage_size() <= inst.t


class TestSmoothness:
    def test_injective_projections_zero(self):
        inst, _ = lc.generate_planted(6, 2, 3, 3, 1, seed=1)
        assert inst.max_preimage_size() == 1
        assert lc.check_smoothness(inst) == 0.0

    def test_forced_collision_one(self):
        # the only incident edge maps labels 0 and 1 together at u
        pi_u = np.array([0, 0])
        pi_v = np.array([0, 1])
        inst = lc.LabelCoverInstance(num_vertices=2, n=2, k=2, t=2, gamma=1.0,
                                     zeta=0.1, edges=[lc.Edge(0, 1, pi_u, pi_v)])
        assert lc.check_smoothness(inst) == 1.0

    def test_at_most_one(self):
        inst = lc.generate_random(8, 3, 6, 3, 2, seed=11)
        assert 0.0 <= lc.check_smoothness(inst) <= 1.0


class TestWeakExpansion:
    def test_complete_graph_half(self):
        inst, _ = lc.generate_planted(4, 3, 2, 2, 1, seed=2)  # K4
        assert inst.num_edges == 6
        rows = lc.check_weak_expansion(inst, [0.5])
        assert rows[0].exhaustive
        assert rows[0].min_edges == 1
        assert rows[0].required == pytest.approx(0.75)
        assert rows[0].passed

    def test_full_subset_trivial(self):
        inst, _ = lc.generate_planted(6, 3, 2, 2, 1, seed=3)
        rows = lc.check_weak_expansion(inst, [1.0])
        assert rows[0].min_edges == inst.num_edges
        assert rows[0].passed

    def test_sampled_path_dense_graph(self):
        inst = lc.generate_random(20, 8, 4, 2, 2, seed=4)
        rows = lc.check_weak_expansion(inst, [0.5, 0.75], subset_samples=50, seed=0)
        assert all(not r.exhaustive for r in rows)
        assert all(r.subsets_checked == 50 for r in rows)
        for r in rows:
            assert r.passed

    def test_reports_counterexample_on_sparse_graph(self):
        # a degree-4 circulant admits independent 5-subsets, and the checker
        # must report the violation rather than hide it
        inst = lc.generate_random(20, 4, 4, 2, 2, seed=4)
        rows = lc.check_weak_expansion(inst, [0.25], subset_samples=50, seed=0)
        assert rows[0].min_edges == 0
        assert not rows[0].passed
