"""Two-sided checks of the path/Pfaffian identities.

Each checker evaluates a matrix functional of the path matrix (left side)
and, separately, brute-force signed flow sums (right side), then compares
them exactly.  The two routes share nothing but the graph.

Signs.  Read literally, the bordered-Pfaffian identities (mixed endpoints,
the general ``I``/``J`` form and its no-path corollary) are off by a sign
``(-1)**(s*(s+1)//2)`` with ``s = |B|``.  The general form also needs the
extra sources ``A'`` and targets ``B'`` to have even size, and each such
flow then carries the factor ``(-1)**(|A'|//2)``.  Both corrections come
from expanding the Gaussian weight, whose quadratic source/sink terms only
create endpoints in pairs.  The checkers verify the corrected statements
by default.  Pass ``literal=True`` to evaluate the statements exactly as
printed; they fail on many instances.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .arith import (
    IndexSet,
    RationalMatrix,
    format_rational,
    index_set,
    mat_det,
    perfect_matchings,
    pfaffian,
    submatrix,
)
from .digraph import (
    Digraph,
    Flow,
    adjacency_matrix,
    b_matrix,
    enumerate_cycle_collections,
    enumerate_flows,
    enumerate_flows_free,
    enumerate_flows_general,
    enumerate_flows_mixed,
    flow_sum,
    path_matrix,
    q_matrix,
    rpq_matrices,
)
from .errors import (
    CardinalityMismatch,
    OddCardinality,
    PathExistsItoJ,
    PreconditionViolation,
    SizeLimit,
    ZeroDenominator,
)
from .grassmann import Multivector, berezin_integral, bilinear_form, mv_exp, mv_mul

IDENTITIES = ("lgv", "stembridge-free", "stembridge-mixed", "general", "corollary", "paths-lemma")
MAX_LEMMA_VERTICES = 8


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of one identity instance.

    ``lhs`` is the matrix side after the sign correction ``lhs_sign`` (so the
    raw Pfaffian or determinant is ``lhs_sign * lhs``).  ``equal`` holds iff
    ``lhs * rhs_denominator == rhs_numerator``.
    """

    identity: str
    lhs: Fraction
    rhs_numerator: Fraction
    rhs_denominator: Fraction
    flow_count: int
    cycle_collection_count: int
    lhs_sign: int = 1
    literal: bool = False

    @property
    def equal(self) -> bool:
        return self.lhs * self.rhs_denominator == self.rhs_numerator

    @property
    def rhs(self) -> Fraction:
        return self.rhs_numerator / self.rhs_denominator

    def as_record(self) -> dict:
        rec = asdict(self)
        for key in ("lhs", "rhs_numerator", "rhs_denominator"):
            rec[key] = format_rational(rec[key])
        rec["rhs"] = format_rational(self.rhs)
        rec["equal"] = self.equal
        return rec


def _report(identity: str, lhs: Fraction, numerator: Fraction, denominator: Fraction,
            flow_count: int, cycle_count: int, lhs_sign: int = 1,
            literal: bool = False) -> IdentityReport:
    if not denominator:
        raise ZeroDenominator(f"{identity}: the signed cycle/flow sum in the denominator is 0")
    return IdentityReport(identity, lhs_sign * lhs, numerator, denominator,
                          flow_count, cycle_count, lhs_sign, literal)


def _bordered(top_left: RationalMatrix, top_right: RationalMatrix,
              bottom_right: RationalMatrix) -> RationalMatrix:
    """``[[X, -Y], [Y^t, Z]]`` with rows ordered A then B."""
    return RationalMatrix.from_blocks([[top_left, -top_right], [top_right.T, bottom_right]])


def _border_sign(s: int) -> int:
    return -1 if (s * (s + 1) // 2) % 2 else 1


def _precede(lower: IndexSet, upper: IndexSet, what: str) -> None:
    if lower and upper and lower[-1] >= upper[0]:
        raise PreconditionViolation(f"{what}: every element of {lower} must be below {upper}")


def _paired_sum(flows: Iterable[Flow], base: int) -> tuple[Fraction, int]:
    """Sum over flows whose extra sources ``|sources| - base`` are even.

    Each term carries ``(-1)**(extra // 2)``; returns (sum, flows used).
    """
    total = Fraction(0)
    used = 0
    for f in flows:
        extra = len(f.sources) - base
        if extra % 2:
            continue
        used += 1
        total += f.signed_weight if extra % 4 == 0 else -f.signed_weight
    return total, used


def _cycle_side(g: Digraph) -> tuple[Fraction, int]:
    cs = enumerate_cycle_collections(g)
    return flow_sum(cs), len(cs)


def check_lgv(g: Digraph, sources: Iterable[int], targets: Iterable[int]) -> IdentityReport:
    """``det M_AB`` against flows A -> B over signed cycle collections."""
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    if len(a) != len(b):
        raise CardinalityMismatch(f"|A| = {len(a)} but |B| = {len(b)}")
    m = path_matrix(g)
    lhs = mat_det(submatrix(m, a, b))
    flows = enumerate_flows(g, a, b)
    den, ncyc = _cycle_side(g)
    return _report("lgv", lhs, flow_sum(flows), den, len(flows), ncyc)


def check_stembridge_free(g: Digraph, sources: Iterable[int], region: Iterable[int]) -> IdentityReport:
    """``pf Q^I_AA`` against flows from A into any subset of I."""
    a = index_set(sources, g.n)
    ii = index_set(region, g.n)
    if len(a) % 2:
        raise OddCardinality(f"|A| = {len(a)} must be even")
    m = path_matrix(g)
    lhs = pfaffian(submatrix(q_matrix(g, ii, m), a, a))
    flows = enumerate_flows_free(g, a, ii)
    den, ncyc = _cycle_side(g)
    return _report("stembridge-free", lhs, flow_sum(flows), den, len(flows), ncyc)


def check_stembridge_mixed(g: Digraph, sources: Iterable[int], targets: Iterable[int],
                           region: Iterable[int], literal: bool = False) -> IdentityReport:
    """Bordered Pfaffian ``[[Q^I_AA, -M_AB], [M_AB^t, 0]]`` against flows to B u D, D <= I."""
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    ii = index_set(region, g.n)
    r, s = len(a), len(b)
    if (r + s) % 2 or s > r:
        raise PreconditionViolation(f"need |A| + |B| even and |B| <= |A|, got r={r}, s={s}")
    _precede(b, ii, "B < I")
    m = path_matrix(g)
    raw = pfaffian(_bordered(submatrix(q_matrix(g, ii, m), a, a), submatrix(m, a, b),
                             RationalMatrix.zeros(s)))
    sign = 1 if literal else _border_sign(s)
    flows = enumerate_flows_mixed(g, a, b, ii)
    den, ncyc = _cycle_side(g)
    return _report("stembridge-mixed", raw, flow_sum(flows), den, len(flows), ncyc,
                   sign, literal)


def _general_flow_sides(g: Digraph, a: IndexSet, b: IndexSet, ii: IndexSet, jj: IndexSet,
                        literal: bool) -> tuple[Fraction, int, Fraction, int]:
    num_flows = enumerate_flows_general(g, a, b, ii, jj)
    den_flows = enumerate_flows_general(g, (), (), ii, jj)
    if literal:
        return flow_sum(num_flows), len(num_flows), flow_sum(den_flows), len(den_flows)
    num, nused = _paired_sum(num_flows, len(a))
    den, dused = _paired_sum(den_flows, 0)
    return num, nused, den, dused


def _general_checks(g: Digraph, a: IndexSet, b: IndexSet, ii: IndexSet, jj: IndexSet) -> None:
    if (len(a) + len(b)) % 2:
        raise PreconditionViolation(f"|A| + |B| = {len(a) + len(b)} must be even")
    _precede(a, ii, "A < I")
    _precede(b, jj, "B < J")


def check_general(g: Digraph, sources: Iterable[int], targets: Iterable[int],
                  extra_sources: Iterable[int], extra_targets: Iterable[int],
                  literal: bool = False) -> IdentityReport:
    """``pf [[P_AA, -R_AB], [R_AB^t, Q_BB]]`` against flows with extra ends in I and J."""
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    ii = index_set(extra_sources, g.n)
    jj = index_set(extra_targets, g.n)
    _general_checks(g, a, b, ii, jj)
    r_mat, p_mat, q_mat = rpq_matrices(g, ii, jj)
    raw = pfaffian(_bordered(submatrix(p_mat, a, a), submatrix(r_mat, a, b),
                             submatrix(q_mat, b, b)))
    sign = 1 if literal else _border_sign(len(b))
    num, nflows, den, dflows = _general_flow_sides(g, a, b, ii, jj, literal)
    return _report("general", raw, num, den, nflows, dflows, sign, literal)


def reaches(g: Digraph, starts: Iterable[int], ends: Iterable[int]) -> bool:
    """Whether some (possibly zero-length) path joins ``starts`` to ``ends``."""
    ends = set(ends)
    seen = set(starts)
    stack = list(seen)
    while stack:
        v = stack.pop()
        if v in ends:
            return True
        for e in g.out_edges(v):
            if e.dst not in seen:
                seen.add(e.dst)
                stack.append(e.dst)
    return False


def check_corollary(g: Digraph, sources: Iterable[int], targets: Iterable[int],
                    extra_sources: Iterable[int], extra_targets: Iterable[int],
                    literal: bool = False) -> IdentityReport:
    """The general identity when nothing in I reaches J.

    Left side ``pf [[Q^J_AA, -M_AB], [M_AB^t, (M^t B^I M)_BB]]``; the
    denominator collapses to the signed cycle sum.
    """
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    ii = index_set(extra_sources, g.n)
    jj = index_set(extra_targets, g.n)
    _general_checks(g, a, b, ii, jj)
    if reaches(g, ii, jj):
        raise PathExistsItoJ(f"some vertex of I = {ii} reaches J = {jj}")
    m = path_matrix(g)
    q_in = m.T @ b_matrix(g.n, ii) @ m
    raw = pfaffian(_bordered(submatrix(q_matrix(g, jj, m), a, a), submatrix(m, a, b),
                             submatrix(q_in, b, b)))
    sign = 1 if literal else _border_sign(len(b))
    num_flows = enumerate_flows_general(g, a, b, ii, jj)
    if literal:
        num, nflows = flow_sum(num_flows), len(num_flows)
    else:
        num, nflows = _paired_sum(num_flows, len(a))
    den, ncyc = _cycle_side(g)
    return _report("corollary", raw, num, den, nflows, ncyc, sign, literal)


class LemmaCheck(NamedTuple):
    integral: Fraction
    flow_sum: Fraction
    equal: bool


def paths_integrand(g: Digraph, sources: Sequence[int], targets: Sequence[int]) -> Multivector:
    """``[tb_B . t_A] exp(sum tb_i (1 - A)_ij t_j)`` on 2n generators.

    ``t_i`` is generator ``i`` and ``tb_i`` is generator ``n + i``.
    """
    n = g.n
    kernel = RationalMatrix.identity(n) - adjacency_matrix(g)
    plain = list(range(1, n + 1))
    weight = mv_exp(bilinear_form(2 * n, kernel, [n + i for i in plain], plain))
    word = [x for bk, ak in zip(targets, sources) for x in (n + bk, ak)]
    return mv_mul(Multivector.monomial(2 * n, word), weight)


def paths_measure(n: int) -> list[int]:
    """``dt_n dtb_n ... dt_1 dtb_1`` as generator indices."""
    return [x for i in range(n, 0, -1) for x in (i, n + i)]


def verify_paths_lemma(g: Digraph, sources: Iterable[int], targets: Iterable[int]) -> LemmaCheck:
    """Grassmann integral of the path action against the signed flow sum A -> B."""
    a = index_set(sources, g.n)
    b = index_set(targets, g.n)
    if len(a) != len(b):
        raise CardinalityMismatch(f"|A| = {len(a)} but |B| = {len(b)}")
    if g.n > MAX_LEMMA_VERTICES:
        raise SizeLimit(f"Grassmann route limited to {MAX_LEMMA_VERTICES} vertices")
    lhs = berezin_integral(paths_integrand(g, a, b), measure=paths_measure(g.n))
    rhs = flow_sum(enumerate_flows(g, a, b))
    return LemmaCheck(lhs, rhs, lhs == rhs)


def crossing_number(pairing: Sequence[tuple[int, int]]) -> int:
    return sum(
        1
        for (a, b), (c, d) in combinations(pairing, 2)
        if a < c < b < d or c < a < d < b
    )


def crossing_sum(m: int) -> int:
    """Sum of ``(-1)**cr`` over all pairings of ``{1..2m}``."""
    total = 0
    for pairing in perfect_matchings(range(1, 2 * m + 1)):
        total += -1 if crossing_number(pairing) % 2 else 1
    return total


def run_check(identity: str, g: Digraph, A: Sequence[int] = (), B: Sequence[int] = (),
              I: Sequence[int] = (), J: Sequence[int] = (), literal: bool = False):
    """Dispatch by identity name; returns an IdentityReport or LemmaCheck."""
    if identity == "lgv":
        return check_lgv(g, A, B)
    if identity == "stembridge-free":
        return check_stembridge_free(g, A, I)
    if identity == "stembridge-mixed":
        return check_stembridge_mixed(g, A, B, I, literal=literal)
    if identity == "general":
        return check_general(g, A, B, I, J, literal=literal)
    if identity == "corollary":
        return check_corollary(g, A, B, I, J, literal=literal)
    if identity == "paths-lemma":
        return verify_paths_lemma(g, A, B)
    raise ValueError(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")
