"""Independent reference computations used only by the tests."""

from fractions import Fraction
from itertools import combinations, permutations, product


def det_cofactor(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def det_leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction((-1) ** inv)
        for i, p in enumerate(perm):
            term *= rows[i][p]
        total += term
    return total


def walk_paths(n, edges, a, b):
    """Self-avoiding paths a -> b as edge-index tuples, by growing every edge
    sequence breadth first and discarding any that revisit a vertex."""
    if a == b:
        return [()]
    found = []
    frontier = [((), a, frozenset([a]))]
    while frontier:
        nxt = []
        for seq, v, visited in frontier:
            for k, (s, d) in enumerate(edges):
                if s != v or d in visited:
                    continue
                if d == b:
                    found.append(seq + (k,))
                else:
                    nxt.append((seq + (k,), d, visited | {d}))
        frontier = nxt
    return found


def closed_walk_cycles(n, edges):
    """Number of simple cycles: closed edge sequences with distinct vertices,
    each cycle of length L counted L times (once per starting edge)."""
    total = 0
    for start in range(1, n + 1):
        frontier = [(start, frozenset([start]), 0)]
        while frontier:
            nxt = []
            for v, visited, length in frontier:
                for s, d in edges:
                    if s != v:
                        continue
                    if d == start:
                        total += Fraction(1, length + 1)
                    elif d not in visited:
                        nxt.append((d, visited | {d}, length + 1))
            frontier = nxt
    return total


def cycle_list(n, edges):
    """Simple cycles as frozensets of edge indices, collected from every
    closed walk and deduplicated by their edge set."""
    found = set()
    for start in range(1, n + 1):
        frontier = [(start, frozenset([start]), ())]
        while frontier:
            nxt = []
            for v, visited, seq in frontier:
                for k, (s, d) in enumerate(edges):
                    if s != v:
                        continue
                    if d == start:
                        found.add(frozenset(seq + (k,)))
                    elif d not in visited:
                        nxt.append((d, visited | {d}, seq + (k,)))
            frontier = nxt
    return sorted(found, key=sorted)


def _verts(edges, ks, extra=()):
    return {edges[k][0] for k in ks} | {edges[k][1] for k in ks} | set(extra)


def flow_sum_oracle(n, edges, weights, sources, targets):
    """Signed flow sum by brute force over permutations, path tuples and
    subsets of simple cycles."""
    def wt(ks):
        w = Fraction(1)
        for k in ks:
            w *= weights[k]
        return w

    cycles = cycle_list(n, edges)
    total = Fraction(0)
    p = len(sources)
    for perm in permutations(range(p)):
        inv = sum(1 for i in range(p) for j in range(i + 1, p) if perm[i] > perm[j])
        choices = [walk_paths(n, edges, sources[i], targets[perm[i]]) for i in range(p)]
        for combo in product(*choices):
            vsets = [_verts(edges, ks, (sources[i],)) for i, ks in enumerate(combo)]
            if sum(map(len, vsets)) != len(set().union(*vsets)):
                continue
            used = set().union(*vsets)
            path_w = (-1) ** inv * wt([k for ks in combo for k in ks])
            for r in range(len(cycles) + 1):
                for cs in combinations(cycles, r):
                    cv = [_verts(edges, c) for c in cs]
                    if sum(map(len, cv)) != len(used.union(*cv)) - len(used):
                        continue
                    if any(used & c for c in cv):
                        continue
                    total += path_w * (-1) ** r * wt([k for c in cs for k in c])
    return total
