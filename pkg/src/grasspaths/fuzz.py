"""Seeded random instances and the verification harness behind ``fuzz``.

Everything is drawn from one :class:`random.Random` seeded by the caller,
so a run is reproducible byte for byte.  Instances whose matrix side is
undefined (singular ``1 - A``, singular correction, vanishing denominator)
are redrawn and counted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .arith import format_rational
from .digraph import Digraph
from .errors import SingularCorrection, SingularSystem, ZeroDenominator
from .identities import IDENTITIES, reaches, run_check

UNDEFINED = (SingularSystem, SingularCorrection, ZeroDenominator)
MAX_REDRAWS = 10_000


@dataclass(frozen=True)
class Instance:
    identity: str
    graph: Digraph
    A: tuple[int, ...] = ()
    B: tuple[int, ...] = ()
    I: tuple[int, ...] = ()
    J: tuple[int, ...] = ()

    def describe(self) -> str:
        edges = " ".join(f"{e.src}>{e.dst}:{format_rational(e.weight)}" for e in self.graph.edges)
        sets = " ".join(f"{k}={list(getattr(self, k))}" for k in "ABIJ")
        return f"n={self.graph.n} edges=[{edges}] {sets}"


def random_weight(rng: random.Random, bound: int = 3) -> Fraction:
    num = rng.choice([k for k in range(-bound, bound + 1) if k])
    return Fraction(num, rng.randint(1, bound))


def random_digraph(rng: random.Random, n: int, max_edges: int, *, bound: int = 3,
                   acyclic: bool = False,
                   allowed: Callable[[int, int], bool] | None = None) -> Digraph:
    """Random multigraph; ``acyclic`` keeps only edges ``src < dst``."""
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        for _ in range(100):
            src, dst = rng.randint(1, n), rng.randint(1, n)
            if acyclic and src >= dst:
                continue
            if allowed is not None and not allowed(src, dst):
                continue
            edges.append((src, dst, random_weight(rng, bound)))
            break
    return Digraph(n, edges)


def _subset(rng: random.Random, pool: Sequence[int], size: int | None = None) -> tuple[int, ...]:
    pool = list(pool)
    if size is None:
        size = rng.randint(0, len(pool))
    return tuple(sorted(rng.sample(pool, size)))


def _split(rng: random.Random, n: int, max_low: int = 3) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """A random low set and a random high set with ``low < high``."""
    cut = rng.randint(0, n)
    low = _subset(rng, range(1, cut + 1), rng.randint(0, min(cut, max_low)))
    high = _subset(rng, range(cut + 1, n + 1))
    return low, high


def draw_instance(rng: random.Random, identity: str, max_n: int = 5, max_edges: int = 8,
                  bound: int = 3) -> Instance:
    """One instance meeting the identity's ordering and parity preconditions."""
    if identity == "lgv":
        n = rng.randint(1, max_n)
        p = rng.randint(0, min(3, n))
        return Instance(identity, random_digraph(rng, n, max_edges, bound=bound),
                        _subset(rng, range(1, n + 1), p), _subset(rng, range(1, n + 1), p))
    if identity == "stembridge-free":
        n = rng.randint(2, max(2, max_n))
        size = rng.choice([k for k in (2, 4) if k <= n])
        return Instance(identity, random_digraph(rng, n, max_edges, bound=bound),
                        A=_subset(rng, range(1, n + 1), size),
                        I=_subset(rng, range(1, n + 1), rng.randint(size, n)))
    if identity == "stembridge-mixed":
        n = rng.randint(1, max_n)
        b, ii = _split(rng, n)
        s = len(b)
        r = rng.choice([r for r in range(s, min(n, s + 4) + 1) if (r - s) % 2 == 0])
        a = _subset(rng, range(1, n + 1), r)
        return Instance(identity, random_digraph(rng, n, max_edges, bound=bound),
                        A=a, B=b, I=ii)
    if identity == "general":
        n = rng.randint(1, max_n)
        while True:
            a, ii = _split(rng, n)
            b, jj = _split(rng, n)
            if (len(a) + len(b)) % 2 == 0:
                return Instance(identity, random_digraph(rng, n, max_edges, bound=bound),
                                a, b, ii, jj)
    if identity == "corollary":
        n = rng.randint(1, max_n)
        while True:
            a, ii = _split(rng, n)
            b, jj = _split(rng, n)
            # I sits inside a closed set X that J avoids, and no edge leaves X
            closed = set(ii) | set(_subset(rng, range(1, n + 1)))
            jj = tuple(j for j in jj if j not in closed)
            if (len(a) + len(b)) % 2:
                continue
            g = random_digraph(rng, n, max_edges, bound=bound,
                               allowed=lambda s, d: s not in closed or d in closed)
            assert not reaches(g, ii, jj)
            return Instance(identity, g, a, b, ii, jj)
    if identity == "paths-lemma":
        n = rng.randint(1, min(max_n, 4))
        p = rng.randint(0, min(2, n))
        return Instance(identity, random_digraph(rng, n, max_edges, bound=bound),
                        _subset(rng, range(1, n + 1), p), _subset(rng, range(1, n + 1), p))
    raise ValueError(f"unknown identity {identity!r}")


def evaluate(inst: Instance, literal: bool = False) -> bool:
    result = run_check(inst.identity, inst.graph, inst.A, inst.B, inst.I, inst.J, literal=literal)
    return result.equal


def draw_defined(rng: random.Random, identity: str, literal: bool = False, **kw):
    """Draw until the instance is defined; returns (instance, verdict, redraws)."""
    for redraws in range(MAX_REDRAWS):
        inst = draw_instance(rng, identity, **kw)
        try:
            return inst, evaluate(inst, literal), redraws
        except UNDEFINED:
            continue
    raise RuntimeError(f"no defined {identity} instance after {MAX_REDRAWS} draws")


@dataclass
class Tally:
    identity: str
    passed: int = 0
    failed: int = 0
    resampled: int = 0
    failures: list[str] = field(default_factory=list)


@dataclass
class FuzzSummary:
    seed: int
    count: int
    max_n: int
    max_edges: int
    literal: bool
    tallies: list[Tally]

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies)

    def as_record(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "max_n": self.max_n,
            "max_edges": self.max_edges,
            "literal": self.literal,
            "results": [
                {"identity": t.identity, "pass": t.passed, "fail": t.failed,
                 "resampled": t.resampled, "failures": t.failures}
                for t in self.tallies
            ],
            "ok": self.ok,
        }

    def render(self) -> str:
        lines = [f"fuzz seed={self.seed} count={self.count} max_n={self.max_n} "
                 f"max_edges={self.max_edges}" + (" literal" if self.literal else "")]
        for t in self.tallies:
            lines.append(f"{t.identity}: pass={t.passed} fail={t.failed} resampled={t.resampled}")
            lines.extend(f"  FAIL {d}" for d in t.failures)
        lines.append("result: " + ("ok" if self.ok else "FAILURES"))
        return "\n".join(lines) + "\n"


def run_fuzz(seed: int, count: int, identities: Sequence[str] = IDENTITIES, max_n: int = 5,
             max_edges: int = 8, bound: int = 3, literal: bool = False) -> FuzzSummary:
    rng = random.Random(seed)
    tallies = []
    for identity in identities:
        t = Tally(identity)
        for _ in range(count):
            inst, ok, redraws = draw_defined(rng, identity, literal=literal, max_n=max_n,
                                             max_edges=max_edges, bound=bound)
            t.resampled += redraws
            if ok:
                t.passed += 1
            else:
                t.failed += 1
                t.failures.append(inst.describe())
        tallies.append(t)
    return FuzzSummary(seed, count, max_n, max_edges, literal, tallies)
