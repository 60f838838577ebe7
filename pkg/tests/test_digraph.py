import random
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from oracles import closed_walk_cycles, cycle_list, flow_sum_oracle, walk_paths
from grasspaths.arith import RationalMatrix, mat_inverse
from grasspaths.digraph import (
    Cycle,
    CycleCollection,
    Digraph,
    Flow,
    Path,
    adjacency_matrix,
    b_matrix,
    enumerate_cycle_collections,
    enumerate_flows,
    enumerate_flows_free,
    enumerate_flows_general,
    enumerate_flows_mixed,
    enumerate_simple_paths,
    flow_sum,
    path_matrix,
    q_matrix,
    rpq_matrices,
    simple_cycles,
)
from grasspaths.errors import (
    CardinalityMismatch,
    IndexOutOfRange,
    OddCardinality,
    OverlappingSets,
    SingularSystem,
    SizeLimit,
)
from grasspaths.fuzz import random_digraph
from grasspaths.identities import reaches

F = Fraction
W = F(1, 3)
LOOP = Digraph(1, [(1, 1, W)])


def test_adjacency_examples():
    assert adjacency_matrix(Digraph(3)) == RationalMatrix.zeros(3)
    a = adjacency_matrix(Digraph(2, [(1, 2, F(2, 5))]))
    assert a == RationalMatrix([[0, F(2, 5)], [0, 0]])
    a = adjacency_matrix(Digraph(2, [(1, 2, F(1, 2)), (1, 2, F(1, 3))]))
    assert a[0, 1] == F(5, 6)


def test_path_matrix_examples():
    assert path_matrix(Digraph(3)) == RationalMatrix.identity(3)
    assert path_matrix(LOOP) == RationalMatrix([[F(3, 2)]])
    with pytest.raises(SingularSystem):
        path_matrix(Digraph(1, [(1, 1, 1)]))


def test_edges_must_be_in_range():
    with pytest.raises(IndexOutOfRange):
        Digraph(2, [(1, 3, 1)])


def test_b_matrix_examples():
    assert b_matrix(3, ()) == RationalMatrix.zeros(3)
    assert b_matrix(2, (1, 2)) == RationalMatrix([[0, 1], [-1, 0]])
    b = b_matrix(5, (1, 3, 4))
    assert b.is_skew_symmetric()
    assert b[0, 2] == 1 and b[3, 0] == -1 and b[1, 2] == 0


def test_q_matrix_examples():
    rng = random.Random(21)
    for _ in range(20):
        g = random_digraph(rng, 4, 6, acyclic=True)
        m = path_matrix(g)
        assert q_matrix(g, (2,)) == RationalMatrix.zeros(4)
        for ii in [(1, 3), (2, 3, 4), (1, 2, 3, 4)]:
            q = q_matrix(g, ii)
            assert q == m @ b_matrix(4, ii) @ m.T
            assert all(q[i, i] == 0 for i in range(4))


def test_rpq_without_extra_ends():
    g = Digraph(3, [(1, 2, F(1, 2)), (2, 3, 2), (3, 1, F(1, 5))])
    r, p, q = rpq_matrices(g, (), ())
    assert r == path_matrix(g)
    assert p == q == RationalMatrix.zeros(3)


def test_rpq_when_i_cannot_reach_j():
    rng = random.Random(22)
    hits = 0
    while hits < 20:
        g = random_digraph(rng, 5, 7, allowed=lambda s, d: s not in (1, 2) or d in (1, 2))
        ii, jj = (1, 2), (4, 5)
        assert not reaches(g, ii, jj)
        try:
            m = path_matrix(g)
        except SingularSystem:
            continue
        r, p, q = rpq_matrices(g, ii, jj)
        assert b_matrix(5, ii) @ m @ b_matrix(5, jj) == RationalMatrix.zeros(5)
        assert p == q_matrix(g, jj)
        assert q == m.T @ b_matrix(5, ii) @ m
        hits += 1


def test_rpq_defining_relation():
    rng = random.Random(23)
    for _ in range(20):
        g = random_digraph(rng, 4, 6, acyclic=True)
        m = path_matrix(g)
        ii, jj = (3, 4), (2, 3)
        r, p, q = rpq_matrices(g, ii, jj)
        inner = RationalMatrix.identity(4) + b_matrix(4, jj) @ m.T @ b_matrix(4, ii) @ m
        assert r @ inner == m
        assert mat_inverse(inner) == mat_inverse(m) @ r


def test_simple_path_examples():
    g = Digraph(2)
    assert [str(p) for p in enumerate_simple_paths(g, 1, 1)] == ["1"]
    assert enumerate_simple_paths(g, 1, 2) == []
    chain = Digraph(3, [(1, 2, 2), (2, 3, F(1, 7))])
    paths = enumerate_simple_paths(chain, 1, 3)
    assert len(paths) == 1 and paths[0].weight == F(2, 7)
    assert str(paths[0]) == "1-e1->2-e2->3"


def test_paths_are_ordered_by_length():
    g = Digraph(3, [(1, 3, 1), (1, 2, 1), (2, 3, 1), (1, 3, 1)])
    assert [p.edge_ids for p in enumerate_simple_paths(g, 1, 3)] == [(1,), (4,), (2, 3)]


def test_cycle_collection_examples():
    chain = Digraph(3, [(1, 2, 1), (2, 3, 1)])
    assert [str(c) for c in enumerate_cycle_collections(chain)] == ["∅"]
    cs = enumerate_cycle_collections(LOOP)
    assert [str(c) for c in cs] == ["∅", "{(1-e1->1)}"]
    assert flow_sum(cs) == 1 - W
    assert [str(c) for c in enumerate_cycle_collections(LOOP, forbidden={1})] == ["∅"]


def test_cycle_is_rotated_to_smallest_vertex():
    g = Digraph(3, [(3, 2, 1), (2, 3, 1), (1, 1, 1)])
    c = Cycle((g.edge(1), g.edge(2)))
    assert c.vertices == (2, 3)
    assert [c.vertices for c in simple_cycles(g)] == [(1,), (2, 3)]
    with pytest.raises(ValueError):
        Cycle((g.edge(1), g.edge(3)))


def test_flow_examples():
    g = Digraph(2, [(1, 2, F(4, 9))])
    flows = enumerate_flows(g, (1,), (2,))
    assert len(flows) == 1 and flows[0].weight == F(4, 9) and flows[0].sign == 1
    assert flow_sum(flows) == F(4, 9)

    flows = enumerate_flows(LOOP, (1,), (1,))
    assert len(flows) == 1
    assert flows[0].paths == (Path(1),) and flows[0].cycles == CycleCollection()

    chain = Digraph(3, [(1, 2, 1), (2, 3, 1)])
    flows = enumerate_flows(chain, (), ())
    assert len(flows) == 1 and flows[0].signed_weight == 1


def test_empty_flows_are_cycle_collections():
    g = Digraph(3, [(1, 2, 2), (2, 1, 3), (3, 3, 5), (2, 2, 7)])
    flows = enumerate_flows(g, (), ())
    colls = enumerate_cycle_collections(g)
    assert [str(f) for f in flows] == [str(c) for c in colls]
    assert flow_sum(flows) == flow_sum(colls)


def test_crossing_flows_are_negative():
    # 1 -> 4 and 2 -> 3 cannot both go straight without crossing order
    g = Digraph(4, [(1, 4, 2), (2, 3, 3)])
    flows = enumerate_flows(g, (1, 2), (3, 4))
    assert len(flows) == 1
    assert flows[0].permutation == (1, 0) and flows[0].sign == -1
    assert flow_sum(flows) == -6


def test_paths_may_not_pass_through_other_terminals():
    g = Digraph(3, [(1, 2, 1), (2, 3, 1)])
    assert enumerate_flows(g, (1, 2), (2, 3)) == []
    assert len(enumerate_flows(g, (1, 2), (1, 3))) == 1


def test_enumeration_errors():
    with pytest.raises(CardinalityMismatch):
        enumerate_flows(LOOP, (1,), ())
    with pytest.raises(OddCardinality):
        enumerate_flows_free(LOOP, (1,), (1,))
    with pytest.raises(OverlappingSets):
        enumerate_flows_mixed(Digraph(2), (1, 2), (1,), (1, 2))
    with pytest.raises(OverlappingSets):
        enumerate_flows_general(Digraph(2), (1,), (), (1,), ())
    with pytest.raises(SizeLimit):
        simple_cycles(Digraph(13))
    dense = Digraph(6, [(s, d, 1) for s in range(1, 7) for d in range(1, 7)])
    with pytest.raises(SizeLimit):
        enumerate_cycle_collections(dense, limit=50)


def test_free_and_mixed_are_unions():
    rng = random.Random(31)
    for _ in range(20):
        g = random_digraph(rng, 5, 7)
        free = enumerate_flows_free(g, (1, 2), (3, 4, 5))
        expected = sum(len(enumerate_flows(g, (1, 2), b)) for b in [(3, 4), (3, 5), (4, 5)])
        assert len(free) == expected
        mixed = enumerate_flows_mixed(g, (1, 2, 3), (1,), (4, 5))
        assert mixed == enumerate_flows(g, (1, 2, 3), (1, 4, 5))


def test_general_union_sizes():
    g = Digraph(4, [(1, 2, 1), (3, 4, 1), (1, 4, 1)])
    flows = enumerate_flows_general(g, (1,), (), (3,), (2, 4))
    sizes = sorted({len(f.sources) for f in flows})
    assert sizes == [1, 2]
    assert all(f.sources[0] == 1 for f in flows)


def test_flow_invariants_on_random_graphs():
    rng = random.Random(32)
    for _ in range(60):
        g = random_digraph(rng, 5, 8)
        a = tuple(sorted(rng.sample(range(1, 6), 2)))
        b = tuple(sorted(rng.sample(range(1, 6), 2)))
        for f in enumerate_flows(g, a, b):
            f.check()
            used = [v for p in f.paths for v in p.vertices]
            assert len(used) == len(set(used))
            assert all(p.is_self_avoiding() for p in f.paths)


def test_flow_sum_matches_brute_force():
    rng = random.Random(33)
    for _ in range(150):
        n = rng.randint(1, 4)
        g = random_digraph(rng, n, 6)
        es = [(e.src, e.dst) for e in g.edges]
        ws = [e.weight for e in g.edges]
        p = rng.randint(0, min(2, n))
        a = tuple(sorted(rng.sample(range(1, n + 1), p)))
        b = tuple(sorted(rng.sample(range(1, n + 1), p)))
        assert flow_sum(enumerate_flows(g, a, b)) == flow_sum_oracle(n, es, ws, a, b)


def test_cycles_match_oracle_edge_sets():
    rng = random.Random(34)
    for _ in range(100):
        g = random_digraph(rng, 5, 9)
        es = [(e.src, e.dst) for e in g.edges]
        ours = sorted((frozenset(k - 1 for k in c.edge_ids) for c in simple_cycles(g)), key=sorted)
        assert ours == cycle_list(g.n, es)


def test_disjoint_union_multiplies_cycle_sums():
    rng = random.Random(35)
    for _ in range(20):
        g1 = random_digraph(rng, 3, 5)
        g2 = random_digraph(rng, 3, 5)
        joined = Digraph(6, [(e.src, e.dst, e.weight) for e in g1.edges]
                         + [(e.src + 3, e.dst + 3, e.weight) for e in g2.edges])
        lhs = flow_sum(enumerate_cycle_collections(joined))
        rhs = flow_sum(enumerate_cycle_collections(g1)) * flow_sum(enumerate_cycle_collections(g2))
        assert lhs == rhs


def _all_multigraphs(n, max_edges):
    pairs = list(product(range(1, n + 1), repeat=2))
    for k in range(max_edges + 1):
        yield from combinations_with_replacement(pairs, k)


def test_exhaustive_small_multigraphs():
    """Every multigraph with n <= 4 and at most 6 edges, against walk oracles."""
    graphs = 0
    for n in range(1, 5):
        for es in _all_multigraphs(n, 6):
            g = Digraph(n, [(s, d, 1) for s, d in es])
            assert len(simple_cycles(g)) == closed_walk_cycles(n, es)
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    ours = sorted(tuple(k - 1 for k in p.edge_ids) for p in enumerate_simple_paths(g, a, b))
                    assert ours == sorted(walk_paths(n, es, a, b))
            graphs += 1
    assert graphs == 79835


def test_flow_str():
    g = Digraph(2, [(1, 2, 1), (2, 2, 1)])
    flows = enumerate_flows(g, (1,), (2,))
    assert [str(f) for f in flows] == ["paths=[1-e1->2] cycles=∅"]
    assert isinstance(flows[0], Flow)
