"""Weighted digraphs, their path matrices, and brute-force flow enumeration.

Vertices are ``1..n`` with the integer order.  Edges carry 1-based ids in
insertion order; loops and parallel edges are allowed and parallel edges
are distinct steps of a path.

A *flow* from sources ``A`` to targets ``B`` is a family of pairwise
vertex-disjoint self-avoiding paths, one leaving each source and one
entering each target, together with a collection of vertex-disjoint simple
cycles avoiding every path.  Its signed weight is

    sgn(sigma) * prod(path weights) * (-1)**(#cycles) * prod(cycle weights)

where ``sigma`` maps the i-th smallest source to the rank of its target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .arith import (
    IndexSet,
    RationalMatrix,
    index_set,
    mat_inverse,
    permutation_sign,
)
from .errors import (
    CardinalityMismatch,
    IndexOutOfRange,
    OddCardinality,
    OverlappingSets,
    SingularCorrection,
    SingularMatrix,
    SingularSystem,
    SizeLimit,
)

MAX_VERTICES = 12
DEFAULT_FLOW_LIMIT = 10**6


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int
    weight: Fraction


class Digraph:
    """Immutable weighted directed multigraph on vertices ``1..n``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int, object]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        built = []
        for k, (src, dst, w) in enumerate(edges, start=1):
            if not (1 <= src <= n and 1 <= dst <= n):
                raise IndexOutOfRange(f"edge {src}->{dst} outside vertices 1..{n}")
            built.append(Edge(k, int(src), int(dst), Fraction(w)))
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(built)
        out: list[list[Edge]] = [[] for _ in range(n + 1)]
        for e in self.edges:
            out[e.src].append(e)
        self._out = tuple(tuple(es) for es in out)

    def out_edges(self, v: int) -> tuple[Edge, ...]:
        return self._out[v]

    def edge(self, edge_id: int) -> Edge:
        return self.edges[edge_id - 1]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={[(e.src, e.dst, str(e.weight)) for e in self.edges]})"


@dataclass(frozen=True)
class Path:
    """Edge sequence from ``start`` to ``end``; zero-length when ``edges`` is empty."""

    start: int
    edges: tuple[Edge, ...] = ()

    @property
    def end(self) -> int:
        return self.edges[-1].dst if self.edges else self.start

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.start,) + tuple(e.dst for e in self.edges)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    @property
    def weight(self) -> Fraction:
        w = Fraction(1)
        for e in self.edges:
            w *= e.weight
        return w

    def is_self_avoiding(self) -> bool:
        vs = self.vertices
        return len(set(vs)) == len(vs)

    def __str__(self) -> str:
        out = str(self.start)
        for e in self.edges:
            out += f"-e{e.id}->{e.dst}"
        return out


@dataclass(frozen=True)
class Cycle:
    """Simple closed walk, stored starting at its smallest vertex."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        es = self.edges
        if not es:
            raise ValueError("a cycle needs at least one edge")
        for a, b in zip(es, es[1:] + es[:1]):
            if a.dst != b.src:
                raise ValueError("cycle edges do not chain")
        starts = [e.src for e in es]
        if len(set(starts)) != len(starts):
            raise ValueError("cycle is not self-avoiding")
        k = starts.index(min(starts))
        object.__setattr__(self, "edges", es[k:] + es[:k])

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(e.src for e in self.edges)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges)

    @property
    def weight(self) -> Fraction:
        w = Fraction(1)
        for e in self.edges:
            w *= e.weight
        return w

    def __str__(self) -> str:
        return "(" + str(Path(self.edges[0].src, self.edges)) + ")"


@dataclass(frozen=True)
class CycleCollection:
    cycles: tuple[Cycle, ...] = ()

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for c in self.cycles for v in c.vertices)

    @property
    def sign(self) -> int:
        return -1 if len(self.cycles) % 2 else 1

    @property
    def weight(self) -> Fraction:
        w = Fraction(1)
        for c in self.cycles:
            w *= c.weight
        return w

    @property
    def signed_weight(self) -> Fraction:
        return self.sign * self.weight

    def __str__(self) -> str:
        if not self.cycles:
            return "∅"
        return "{" + ", ".join(str(c) for c in self.cycles) + "}"


@dataclass(frozen=True)
class Flow:
    """Self-avoiding flow: ``paths[i]`` leaves ``sources[i]``."""

    sources: IndexSet
    targets: IndexSet
    paths: tuple[Path, ...]
    cycles: CycleCollection

    @property
    def permutation(self) -> tuple[int, ...]:
        """``sigma`` with ``paths[i]`` ending at ``targets[sigma[i]]`` (0-based)."""
        rank = {b: k for k, b in enumerate(self.targets)}
        return tuple(rank[p.end] for p in self.paths)

    @property
    def path_sign(self) -> int:
        return permutation_sign(self.permutation)

    @property
    def path_weight(self) -> Fraction:
        w = Fraction(1)
        for p in self.paths:
            w *= p.weight
        return w

    @property
    def sign(self) -> int:
        return self.path_sign * self.cycles.sign

    @property
    def weight(self) -> Fraction:
        return self.path_weight * self.cycles.weight

    @property
    def signed_weight(self) -> Fraction:
        return self.sign * self.weight

    def check(self) -> None:
        """Assert the flow invariants; used on every emitted flow."""
        assert len(self.paths) == len(self.sources) == len(self.targets)
        assert tuple(p.start for p in self.paths) == self.sources
        assert sorted(p.end for p in self.paths) == list(self.targets)
        seen: set[int] = set()
        for p in self.paths:
            vs = p.vertices
            assert len(set(vs)) == len(vs), f"path {p} revisits a vertex"
            assert seen.isdisjoint(vs), f"path {p} meets another path"
            seen.update(vs)
        for c in self.cycles.cycles:
            assert seen.isdisjoint(c.vertices), f"cycle {c} meets the flow"
            seen.update(c.vertices)

    def __str__(self) -> str:
        # a flow without paths is just its cycle collection
        if not self.paths:
            return str(self.cycles)
        paths = ", ".join(str(p) for p in self.paths)
        return f"paths=[{paths}] cycles={self.cycles}"


def flow_from_cycles(cycles: CycleCollection) -> Flow:
    return Flow((), (), (), cycles)


# ---------------------------------------------------------------- matrices


def adjacency_matrix(g: Digraph) -> RationalMatrix:
    a = [[Fraction(0)] * g.n for _ in range(g.n)]
    for e in g.edges:
        a[e.src - 1][e.dst - 1] += e.weight
    return RationalMatrix(a, cols=g.n)


def path_matrix(g: Digraph) -> RationalMatrix:
    """``M = (1 - A)^-1``, the rational value of the path generating series."""
    try:
        return mat_inverse(RationalMatrix.identity(g.n) - adjacency_matrix(g))
    except SingularMatrix:
        raise SingularSystem("1 - A is singular; the path series has no rational value") from None


def b_matrix(n: int, k: Iterable[int]) -> RationalMatrix:
    """Skew matrix with +1 above and -1 below the diagonal on ``K x K``."""
    ks = set(index_set(sorted(k), n))
    return RationalMatrix(
        (
            [(1 if i < j else -1 if i > j else 0) if i in ks and j in ks else 0
             for j in range(1, n + 1)]
            for i in range(1, n + 1)
        ),
        cols=n,
    )


def q_matrix(g: Digraph, targets: Iterable[int], m: RationalMatrix | None = None) -> RationalMatrix:
    """``Q_ij = sum_{k<l in I} (M_ik M_jl - M_il M_jk)``."""
    ii = index_set(targets, g.n)
    if m is None:
        m = path_matrix(g)
    rows = []
    for i in range(g.n):
        mi = m.row(i)
        row = []
        for j in range(g.n):
            mj = m.row(j)
            s = Fraction(0)
            for k, l in combinations(ii, 2):
                s += mi[k - 1] * mj[l - 1] - mi[l - 1] * mj[k - 1]
            row.append(s)
        rows.append(row)
    return RationalMatrix(rows, cols=g.n)


def rpq_matrices(g: Digraph, sources: Iterable[int], targets: Iterable[int],
                 m: RationalMatrix | None = None):
    """``R = M (1 + B^J M^t B^I M)^-1``, ``P = M B^J R^t``, ``Q = M^t B^I R``."""
    if m is None:
        m = path_matrix(g)
    bi = b_matrix(g.n, sources)
    bj = b_matrix(g.n, targets)
    inner = RationalMatrix.identity(g.n) + bj @ m.T @ bi @ m
    try:
        r = m @ mat_inverse(inner)
    except SingularMatrix:
        raise SingularCorrection("1 + B^J M^t B^I M is singular") from None
    p = m @ bj @ r.T
    q = m.T @ bi @ r
    return r, p, q


# ------------------------------------------------------------- enumeration


def _check_size(g: Digraph) -> None:
    if g.n > MAX_VERTICES:
        raise SizeLimit(f"enumeration is capped at {MAX_VERTICES} vertices, graph has {g.n}")


def _paths_avoiding(g: Digraph, a: int, b: int, blocked: frozenset[int]) -> list[Path]:
    if a in blocked or b in blocked:
        return []
    if a == b:
        return [Path(a)]
    found: list[tuple[Edge, ...]] = []
    visited = {a}
    trail: list[Edge] = []

    def walk(v: int) -> None:
        for e in g.out_edges(v):
            w = e.dst
            if w in visited or w in blocked:
                continue
            trail.append(e)
            if w == b:
                found.append(tuple(trail))
            else:
                visited.add(w)
                walk(w)
                visited.discard(w)
            trail.pop()

    walk(a)
    found.sort(key=lambda es: (len(es), [e.id for e in es]))
    return [Path(a, es) for es in found]


def enumerate_simple_paths(g: Digraph, a: int, b: int) -> list[Path]:
    """All self-avoiding paths ``a -> b`` ordered by length then edge ids."""
    _check_size(g)
    if not (1 <= a <= g.n and 1 <= b <= g.n):
        raise IndexOutOfRange(f"endpoints {a}, {b} outside 1..{g.n}")
    return _paths_avoiding(g, a, b, frozenset())


def simple_cycles(g: Digraph) -> list[Cycle]:
    """Every simple cycle once, ordered by (smallest vertex, length, edge ids)."""
    _check_size(g)
    found: list[tuple[Edge, ...]] = []
    for s in g.vertices:
        visited = {s}
        trail: list[Edge] = []

        def walk(v: int) -> None:
            for e in g.out_edges(v):
                w = e.dst
                if w == s:
                    found.append(tuple(trail) + (e,))
                elif w > s and w not in visited:
                    visited.add(w)
                    trail.append(e)
                    walk(w)
                    trail.pop()
                    visited.discard(w)

        walk(s)
    found.sort(key=lambda es: (es[0].src, len(es), [e.id for e in es]))
    return [Cycle(es) for es in found]


def _collections(cycles: Sequence[Cycle], forbidden: frozenset[int], start: int = 0
                 ) -> Iterator[tuple[Cycle, ...]]:
    yield ()
    for k in range(start, len(cycles)):
        c = cycles[k]
        vs = c.vertices
        if forbidden.isdisjoint(vs):
            for rest in _collections(cycles, forbidden | frozenset(vs), k + 1):
                yield (c,) + rest


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.count = 0

    def tick(self) -> None:
        self.count += 1
        if self.count > self.limit:
            raise SizeLimit(f"more than {self.limit} flows; raise the limit or shrink the graph")


def enumerate_cycle_collections(g: Digraph, forbidden: Iterable[int] = (),
                                limit: int = DEFAULT_FLOW_LIMIT) -> list[CycleCollection]:
    """Vertex-disjoint sets of simple cycles avoiding ``forbidden``; starts with the empty set."""
    cycles = simple_cycles(g)
    budget = _Budget(limit)
    out = []
    for cs in _collections(cycles, frozenset(forbidden)):
        budget.tick()
        out.append(CycleCollection(cs))
    return out


def _flows(g: Digraph, sources: IndexSet, targets: IndexSet, cycles: list[Cycle],
           budget: _Budget) -> Iterator[Flow]:
    terminals = frozenset(sources) | frozenset(targets)
    p = len(sources)

    def place(i: int, used: frozenset[int], free_targets: tuple[int, ...],
              chosen: tuple[Path, ...]) -> Iterator[Flow]:
        if i == p:
            for cs in _collections(cycles, used):
                budget.tick()
                flow = Flow(sources, targets, chosen, CycleCollection(cs))
                flow.check()
                yield flow
            return
        a = sources[i]
        for b in free_targets:
            # a path may not touch any other terminal: that vertex belongs to another path
            blocked = used | (terminals - {a, b})
            for path in _paths_avoiding(g, a, b, blocked):
                rest = tuple(t for t in free_targets if t != b)
                yield from place(i + 1, used | frozenset(path.vertices), rest, chosen + (path,))

    yield from place(0, frozenset(), targets, ())


def enumerate_flows(g: Digraph, sources: Iterable[int], targets: Iterable[int],
                    limit: int = DEFAULT_FLOW_LIMIT) -> list[Flow]:
    """All self-avoiding flows from ``sources`` to ``targets``."""
    _check_size(g)
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    if len(a) != len(b):
        raise CardinalityMismatch(f"|A| = {len(a)} but |B| = {len(b)}")
    return list(_flows(g, a, b, simple_cycles(g), _Budget(limit)))


def _union(g: Digraph, pairs: Iterable[tuple[IndexSet, IndexSet]], limit: int) -> list[Flow]:
    cycles = simple_cycles(g)
    budget = _Budget(limit)
    out: list[Flow] = []
    for a, b in pairs:
        out.extend(_flows(g, a, b, cycles, budget))
    return out


def enumerate_flows_free(g: Digraph, sources: Iterable[int], region: Iterable[int],
                         limit: int = DEFAULT_FLOW_LIMIT) -> list[Flow]:
    """Flows from ``sources`` to any equinumerous subset of ``region``."""
    _check_size(g)
    a = index_set(sources, g.n)
    ii = index_set(region, g.n)
    if len(a) % 2:
        raise OddCardinality(f"|A| = {len(a)} must be even")
    return _union(g, ((a, b) for b in combinations(ii, len(a))), limit)


def enumerate_flows_mixed(g: Digraph, sources: Iterable[int], targets: Iterable[int],
                          region: Iterable[int], limit: int = DEFAULT_FLOW_LIMIT) -> list[Flow]:
    """Flows from ``sources`` to ``targets`` plus some subset of ``region``."""
    _check_size(g)
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    ii = index_set(region, g.n)
    if set(b) & set(ii):
        raise OverlappingSets(f"B = {b} meets I = {ii}")
    if (len(a) + len(b)) % 2 or len(b) > len(a):
        raise CardinalityMismatch(f"need |A| + |B| even and |B| <= |A|, got {len(a)}, {len(b)}")
    pairs = ((a, tuple(sorted(b + d))) for d in combinations(ii, len(a) - len(b)))
    return _union(g, pairs, limit)


def enumerate_flows_general(g: Digraph, sources: Iterable[int], targets: Iterable[int],
                            extra_sources: Iterable[int], extra_targets: Iterable[int],
                            limit: int = DEFAULT_FLOW_LIMIT) -> list[Flow]:
    """Union over ``A' <= I``, ``B' <= J`` of flows ``A u A' -> B u B'``."""
    _check_size(g)
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    ii = index_set(extra_sources, g.n)
    jj = index_set(extra_targets, g.n)
    if set(a) & set(ii):
        raise OverlappingSets(f"A = {a} meets I = {ii}")
    if set(b) & set(jj):
        raise OverlappingSets(f"B = {b} meets J = {jj}")

    def pairs():
        for size in range(max(len(a), len(b)), min(len(a) + len(ii), len(b) + len(jj)) + 1):
            for a2 in combinations(ii, size - len(a)):
                for b2 in combinations(jj, size - len(b)):
                    yield tuple(sorted(a + a2)), tuple(sorted(b + b2))

    return _union(g, pairs(), limit)


def flow_sum(flows: Iterable[Flow | CycleCollection]) -> Fraction:
    total = Fraction(0)
    for f in flows:
        total += f.signed_weight
    return total
