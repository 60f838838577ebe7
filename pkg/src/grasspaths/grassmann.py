"""Finite Grassmann algebra over Q and Berezin integration.

A :class:`Multivector` over ``m`` generators stores only its nonzero
coefficients, keyed by the bitmask of the (sorted) generator subset: bit
``i - 1`` stands for the generator ``x_i``.  The empty mask is the scalar.

Berezin integration is normalised so that ``integral dx_m ... dx_1`` of
``x_1 ... x_m`` equals 1.  Any other written order of the differentials is
reduced to this one by the sign of the reordering (see :func:`berezin_integral`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .arith import (
    IndexSet,
    RationalMatrix,
    format_rational,
    index_set,
    mat_inverse,
    permutation_sign,
    pfaffian_elimination,
    require_skew,
    submatrix,
)
from .errors import (
    GeneratorCountMismatch,
    IndexOutOfRange,
    NonzeroScalarTerm,
    OddCardinality,
    ZeroNormalization,
)


@lru_cache(maxsize=1 << 18)
def _merge_sign(a: int, b: int) -> int:
    """Sign of sorting the word (a's generators)(b's generators), a & b == 0."""
    crossings = 0
    a >>= 1
    while a:
        crossings += (a & b).bit_count()
        a >>= 1
    return -1 if crossings & 1 else 1


def _mask(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << (i - 1)
    return out


def _indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class Multivector:
    """Element of Q[x_1, ..., x_m]; immutable."""

    __slots__ = ("generator_count", "_terms")

    def __init__(self, generator_count: int, terms: Mapping[int, Fraction] | None = None):
        self.generator_count = generator_count
        clean = {}
        if terms:
            top = 1 << generator_count
            for mask, c in terms.items():
                if not 0 <= mask < top:
                    raise IndexOutOfRange(f"monomial mask {mask:b} exceeds {generator_count} generators")
                if c:
                    clean[mask] = Fraction(c)
        self._terms = clean

    @classmethod
    def _raw(cls, generator_count: int, terms: dict[int, Fraction]) -> Multivector:
        # trusted constructor: terms already nonzero Fractions with valid masks
        mv = cls.__new__(cls)
        mv.generator_count = generator_count
        mv._terms = terms
        return mv

    @classmethod
    def scalar(cls, generator_count: int, value=1) -> Multivector:
        return cls(generator_count, {0: Fraction(value)})

    @classmethod
    def generator(cls, generator_count: int, i: int) -> Multivector:
        if not 1 <= i <= generator_count:
            raise IndexOutOfRange(f"generator x{i} outside 1..{generator_count}")
        return cls._raw(generator_count, {1 << (i - 1): Fraction(1)})

    @classmethod
    def monomial(cls, generator_count: int, word: Sequence[int], coeff=1) -> Multivector:
        """The product ``coeff * x_{w1} x_{w2} ...`` in the given (any) order."""
        out = cls.scalar(generator_count, coeff)
        for i in word:
            out = out * cls.generator(generator_count, i)
        return out

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {_indices(m): c for m, c in self._terms.items()}

    def coefficient(self, indices: Iterable[int]) -> Fraction:
        return self._terms.get(_mask(indices), Fraction(0))

    @property
    def scalar_part(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    @property
    def top_coefficient(self) -> Fraction:
        return self._terms.get((1 << self.generator_count) - 1, Fraction(0))

    def is_even(self) -> bool:
        return all(m.bit_count() % 2 == 0 for m in self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Multivector):
            return self.generator_count == other.generator_count and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.generator_count, frozenset(self._terms.items())))

    def _coerce(self, other) -> Multivector:
        if isinstance(other, Multivector):
            if other.generator_count != self.generator_count:
                raise GeneratorCountMismatch(
                    f"{self.generator_count} vs {other.generator_count} generators"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Multivector.scalar(self.generator_count, other)
        raise TypeError(f"cannot combine Multivector with {type(other).__name__}")

    def __add__(self, other) -> Multivector:
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Multivector._raw(self.generator_count, terms)

    __radd__ = __add__

    def __neg__(self) -> Multivector:
        return Multivector._raw(self.generator_count, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Multivector:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Multivector:
        return self._coerce(other) - self

    def scale(self, c) -> Multivector:
        c = Fraction(c)
        if not c:
            return Multivector._raw(self.generator_count, {})
        return Multivector._raw(self.generator_count, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other) -> Multivector:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mv_mul(self, other)

    def __rmul__(self, other) -> Multivector:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=lambda m: (m.bit_count(), _indices(m)))
        parts = []
        for k, mask in enumerate(keys):
            c = self._terms[mask]
            mono = "^".join(f"x{i}" for i in _indices(mask))
            mag = format_rational(abs(c))
            body = mag if not mono else (mono if mag == "1" else f"{mag}*{mono}")
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Multivector({self.generator_count}, {self})"


def mv_mul(f: Multivector, g: Multivector) -> Multivector:
    """Grassmann product: bilinear, overlapping monomials annihilate."""
    if f.generator_count != g.generator_count:
        raise GeneratorCountMismatch(f"{f.generator_count} vs {g.generator_count} generators")
    out: dict[int, Fraction] = {}
    get = out.get
    gt = g._terms.items()
    for a, ca in f._terms.items():
        for b, cb in gt:
            if a & b:
                continue
            k = a | b
            v = ca * cb
            if _merge_sign(a, b) < 0:
                v = -v
            out[k] = get(k, 0) + v
    return Multivector._raw(f.generator_count, {k: v for k, v in out.items() if v})


def mv_exp(f: Multivector) -> Multivector:
    """Exponential series; finite because f has no scalar term."""
    if f.scalar_part:
        raise NonzeroScalarTerm("exp is only defined here for nilpotent arguments")
    result = Multivector.scalar(f.generator_count, 1)
    term = result
    for p in range(1, f.generator_count + 1):
        term = mv_mul(term, f).scale(Fraction(1, p))
        if not term:
            break
        result = result + term
    return result


def berezin_integral(f: Multivector, measure: Sequence[int] | None = None) -> Fraction:
    """Integrate against the differentials ``d x_{k1} d x_{k2} ... d x_{km}``.

    ``measure`` lists the generator indices in written order; it must be a
    permutation of ``1..m``.  The default ``(m, ..., 1)`` returns the
    coefficient of ``x_1 ... x_m`` unchanged.
    """
    m = f.generator_count
    if measure is None:
        return f.top_coefficient
    if sorted(measure) != list(range(1, m + 1)):
        raise ValueError(f"measure {tuple(measure)} is not a permutation of 1..{m}")
    # the written measure pairs to the reversed word with integral 1
    return f.top_coefficient * permutation_sign(list(reversed(measure)))


def bilinear_form(
    generator_count: int,
    matrix: RationalMatrix,
    left: Sequence[int],
    right: Sequence[int],
    coeff=1,
) -> Multivector:
    """``coeff * sum_ij y_i matrix_ij z_j`` with y = x_left, z = x_right."""
    coeff = Fraction(coeff)
    out = Multivector(generator_count)
    for i, li in enumerate(left):
        yi = Multivector.generator(generator_count, li)
        for j, rj in enumerate(right):
            c = matrix[i, j]
            if c:
                out = out + mv_mul(yi, Multivector.generator(generator_count, rj)).scale(coeff * c)
    return out


def pfaffian_via_integral(a: RationalMatrix) -> Fraction:
    """``integral dx_1 ... dx_m exp(-1/2 sum x_i A_ij x_j)``."""
    require_skew(a)
    m = a.rows
    gens = range(1, m + 1)
    weight = mv_exp(bilinear_form(m, a, gens, gens, Fraction(-1, 2)))
    return berezin_integral(weight, measure=list(gens))


def det_via_integral(m: RationalMatrix) -> Fraction:
    """``integral dxb_n dx_n ... dxb_1 dx_1 exp(-sum xb_i M_ij x_j)``.

    Generators: ``x_i`` is index ``i`` and ``xb_i`` is index ``n + i``.
    """
    if not m.is_square:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    plain = list(range(1, n + 1))
    barred = [n + i for i in plain]
    weight = mv_exp(bilinear_form(2 * n, m, barred, plain, -1))
    measure = [g for i in reversed(plain) for g in (n + i, i)]
    return berezin_integral(weight, measure=measure)


@dataclass(frozen=True)
class GaussianSpec:
    """Normalised Grassmann Gaussian measure with covariance ``S``.

    Build it with :meth:`from_covariance`; the weight
    ``exp(-1/2 x S^-1 x)`` is kept so several moments share one exponential.
    """

    s_inverse: RationalMatrix
    normalization: Fraction
    weight: Multivector = field(repr=False, compare=False)

    @classmethod
    def from_covariance(cls, s: RationalMatrix) -> GaussianSpec:
        require_skew(s)
        s_inv = mat_inverse(s)
        gens = range(1, s.rows + 1)
        weight = mv_exp(bilinear_form(s.rows, s_inv, gens, gens, Fraction(-1, 2)))
        norm = berezin_integral(weight)
        if not norm:
            raise ZeroNormalization("Gaussian normalisation integral vanishes")
        return cls(s_inv, norm, weight)

    @property
    def dimension(self) -> int:
        return self.s_inverse.rows


def gaussian_moment(spec: GaussianSpec, indices: Iterable[int]) -> Fraction:
    """Moment of the monomial ``x_{i1} ... x_{ik}`` (ratio of two integrals)."""
    idx = index_set(indices, spec.dimension)
    if len(idx) % 2:
        raise OddCardinality(f"odd moment {idx} vanishes by parity; not supported")
    if not spec.normalization:
        raise ZeroNormalization("Gaussian normalisation integral vanishes")
    mono = Multivector.monomial(spec.dimension, idx)
    return berezin_integral(mv_mul(mono, spec.weight)) / spec.normalization


def gaussian_moment_pf(s: RationalMatrix, indices: Iterable[int]) -> Fraction:
    """Moment defined as ``pf(S_II)``; works for singular ``S`` too."""
    require_skew(s)
    idx = index_set(indices, s.rows)
    if len(idx) % 2:
        raise OddCardinality(f"odd moment {idx} vanishes by parity; not supported")
    return pfaffian_elimination(submatrix(s, idx, idx))


__all__ = [
    "GaussianSpec",
    "IndexSet",
    "Multivector",
    "berezin_integral",
    "bilinear_form",
    "det_via_integral",
    "gaussian_moment",
    "gaussian_moment_pf",
    "mv_exp",
    "mv_mul",
    "pfaffian_via_integral",
]
