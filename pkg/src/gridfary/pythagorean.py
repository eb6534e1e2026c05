"""Primitive Pythagorean triples: generation, ordering and size bounds.

Everything here is integer-exact. Angles are never evaluated; two triples are
compared by the sign of an integer cross product.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

__all__ = [
    "PI_SQ_UPPER",
    "PI_SQ_LOWER",
    "Variant",
    "PythTriple",
    "GeneratorParams",
    "TripleSequence",
    "BoundAudit",
    "euclid_triple",
    "is_primitive",
    "iter_primitive",
    "first_k_primitive",
    "slope_compare",
    "angle_sorted_prefix",
    "size_bound_audit",
]

# pi^2 = 9.86960440108935861883...
PI_SQ_UPPER = Fraction(98696044011, 10**10)
PI_SQ_LOWER = Fraction(98696044010, 10**10)


class Variant(enum.IntEnum):
    """Which of the two Euclid generators produced a triple.

    ``EQ_ONE`` gives ``(m^2 - n^2, 2mn)``, ``EQ_ONE_PRIME`` the mirrored
    ``(2mn, m^2 - n^2)``. The integer values realize the tie-break order.
    """

    EQ_ONE = 0
    EQ_ONE_PRIME = 1


@dataclass(frozen=True, slots=True)
class PythTriple:
    """Integer triple with ``x**2 + y**2 == ell**2`` and positive entries."""

    x: int
    y: int
    ell: int

    def __post_init__(self) -> None:
        if self.x <= 0 or self.y <= 0 or self.ell <= 0:
            raise ValueError(f"triple entries must be positive: {tuple(self)}")
        if self.x * self.x + self.y * self.y != self.ell * self.ell:
            raise ValueError(f"not a Pythagorean triple: {tuple(self)}")

    def __iter__(self) -> Iterator[int]:
        yield self.x
        yield self.y
        yield self.ell

    def scaled(self, k: int) -> tuple[int, int, int]:
        return (k * self.x, k * self.y, k * self.ell)


@dataclass(frozen=True, slots=True)
class GeneratorParams:
    m: int
    n: int
    variant: Variant = Variant.EQ_ONE

    def __post_init__(self) -> None:
        if not (self.m > self.n > 0):
            raise ValueError(f"need m > n > 0, got m={self.m}, n={self.n}")

    def key(self) -> tuple[int, int, int]:
        """Sort key realizing the generator order (m, then n, then variant)."""
        return (self.m, self.n, int(self.variant))


def euclid_triple(params: GeneratorParams) -> PythTriple:
    """Evaluate Euclid's formula. The result need not be primitive."""
    m, n = params.m, params.n
    a, b, c = m * m - n * n, 2 * m * n, m * m + n * n
    if params.variant is Variant.EQ_ONE:
        return PythTriple(a, b, c)
    return PythTriple(b, a, c)


def is_primitive(t: PythTriple) -> bool:
    # gcd(x, y) = 1 already forces gcd with ell to be 1
    return math.gcd(t.x, t.y) == 1


def iter_primitive() -> Iterator[tuple[PythTriple, GeneratorParams]]:
    """Yield every primitive triple once, in generator-parameter order."""
    m = 2
    while True:
        for n in range(1, m):
            for variant in (Variant.EQ_ONE, Variant.EQ_ONE_PRIME):
                params = GeneratorParams(m, n, variant)
                t = euclid_triple(params)
                if is_primitive(t):
                    yield t, params
        m += 1


def slope_compare(a: PythTriple, b: PythTriple) -> int:
    """Return -1, 0 or 1 as the angle of ``a`` is below, equal to or above ``b``."""
    s = a.y * b.x - b.y * a.x
    return (s > 0) - (s < 0)


_slope_key = functools.cmp_to_key(slope_compare)


@dataclass(frozen=True)
class TripleSequence:
    """The first ``len(triples)`` primitive triples in generator order.

    ``angle_sorted`` holds indices into ``triples`` such that the referenced
    triples are strictly increasing in slope.
    """

    triples: tuple[PythTriple, ...]
    params: tuple[GeneratorParams, ...]
    angle_sorted: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.triples)

    def angle_sorted_triples(self) -> list[PythTriple]:
        return [self.triples[i] for i in self.angle_sorted]

    def prefix(self, k: int) -> "TripleSequence":
        """The first ``k`` triples, re-sorted by angle among themselves."""
        if k > len(self.triples):
            raise ValueError(f"sequence holds {len(self.triples)} triples, asked for {k}")
        if k == len(self.triples):
            return self
        return _make_sequence(self.triples[:k], self.params[:k])


def _make_sequence(triples: Sequence[PythTriple], params: Sequence[GeneratorParams]) -> TripleSequence:
    order = sorted(range(len(triples)), key=lambda i: _slope_key(triples[i]))
    return TripleSequence(tuple(triples), tuple(params), tuple(order))


def first_k_primitive(k: int) -> TripleSequence:
    """Enumerate the first ``k`` primitive triples.

    Sweeps ``m = 2, 3, ...``, ``n = 1 .. m-1``, and for each pair tries the
    plain generator before the mirrored one, dropping non-primitive results.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    triples: list[PythTriple] = []
    params: list[GeneratorParams] = []
    if k:
        for t, p in iter_primitive():
            triples.append(t)
            params.append(p)
            if len(triples) == k:
                break
    return _make_sequence(triples, params)


def angle_sorted_prefix(k: int) -> list[PythTriple]:
    """The first ``k`` primitive triples sorted by increasing slope."""
    return first_k_primitive(k).angle_sorted_triples()


@dataclass
class BoundAudit:
    """Outcome of checking generated triples against the size bounds.

    ``first_violation`` is ``None`` on a pass. Ratios are exact; the
    parameter ratio is reported squared (``m^2 / k``) to stay rational.
    """

    checked: int
    first_violation: dict | None
    max_component_ratio: Fraction
    max_param_sq_ratio: Fraction
    min_param_sq_ratio: Fraction

    @property
    def passed(self) -> bool:
        return self.first_violation is None


def size_bound_audit(seq: TripleSequence) -> BoundAudit:
    """Check ``max(x, y, ell) <= ceil(2 pi^2 k / 3)`` and
    ``m, n <= ceil(pi sqrt(k) / sqrt(3))`` for every index ``k`` (1-based).

    ``pi^2`` is replaced by a rational upper bound so that rounding of the
    constant can never produce a spurious violation.
    """
    if not len(seq):
        raise ValueError("empty sequence")
    num, den = PI_SQ_UPPER.numerator, PI_SQ_UPPER.denominator
    first_violation = None
    max_comp = Fraction(0)
    max_par = Fraction(0)
    min_par: Fraction | None = None
    for k, (t, p) in enumerate(zip(seq.triples, seq.params), start=1):
        c = max(t.x, t.y, t.ell)
        # c <= ceil(B)  <=>  c - 1 < B, with B = 2 pi^2 k / 3
        comp_ok = 3 * (c - 1) * den < 2 * num * k
        # m <= ceil(X)  <=>  (m - 1)^2 < X^2 = pi^2 k / 3   (m >= 1)
        par_ok = all(3 * (v - 1) ** 2 * den < num * k for v in (p.m, p.n))
        if first_violation is None and not (comp_ok and par_ok):
            first_violation = {
                "k": k,
                "triple": tuple(t),
                "m": p.m,
                "n": p.n,
                "component_ok": comp_ok,
                "param_ok": par_ok,
            }
        max_comp = max(max_comp, Fraction(c, k))
        r = Fraction(p.m * p.m, k)
        max_par = max(max_par, r)
        min_par = r if min_par is None else min(min_par, r)
    return BoundAudit(len(seq), first_violation, max_comp, max_par, min_par)
