"""Decomposition rules for Severi-Brauer varieties of p-primary division algebras.

The variety of reduced-dimension ``p**level`` right ideals of a division
algebra of degree ``p**n`` twists a Grassmannian, which fixes its dimension
and all split-level rank data.  This module packages the handful of exact
statements the rest of the engine consumes:

* the count of rational cycle classes on the product with the classical
  Severi-Brauer variety, and the order of the rational Chow group it forces;
* the splitting of the motive over the function field of the half-degree
  ideal variety (explicit twists are only printed for ``p = 2``; for other
  primes only the endpoint summands are produced);
* the classification of reduced dimensions for which the lifting property of
  motivic decompositions is settled.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, UnsupportedOperationError
from .motive import DivisionContext, MotiveExpr, SBProduct, Term, UpperMotive
from .qpoly import PartitionBoxSpec, count_partitions_in_box

__all__ = [
    "SBVariety",
    "ChowOrderReport",
    "mu",
    "rational_chow_order",
    "function_field_decomposition",
    "function_field_endpoints",
    "CoverageReason",
    "PrimaryCase",
    "CaseClassification",
    "classify_reduced_dimension",
]


@dataclass(frozen=True)
class SBVariety:
    """The Severi-Brauer variety of reduced-dimension ``p**level`` ideals."""

    context: DivisionContext
    level: int

    def __post_init__(self) -> None:
        if not isinstance(self.level, int) or not 0 <= self.level <= self.context.n:
            raise DomainError(
                f"level must satisfy 0 <= level <= {self.context.n}, got {self.level!r}"
            )

    @property
    def reduced_dimension(self) -> int:
        return self.context.p**self.level

    def dimension(self) -> int:
        """k(deg - k) for reduced dimension k: the variety twists G(k, deg)."""
        k = self.reduced_dimension
        return k * (self.context.degree - k)

    def __repr__(self) -> str:
        return f"SB(p={self.context.p}, n={self.context.n}, level={self.level})"


def mu(context: DivisionContext, level: int, i: int) -> int:
    """Number of partitions with ``p**n - p**level`` parts, each at most
    ``p**level``, of total size ``p**n + p**level*(p**n - p**level) - i``.

    Zero whenever the target size falls outside the box.  These counts index
    the rational cycle classes in homological degree ``i - 1`` on the product
    of the classical variety with the level-``level`` one.
    """
    if not isinstance(level, int) or not 0 <= level <= context.n:
        raise DomainError(
            f"level must satisfy 0 <= level <= {context.n}, got {level!r}"
        )
    if not isinstance(i, int):
        raise DomainError(f"homological degree must be an integer, got {i!r}")
    reduced = context.p**level
    degree = context.degree
    parts = degree - reduced
    capacity = reduced * parts
    target = degree + capacity - i
    if target < 0 or target > capacity:
        return 0
    return count_partitions_in_box(PartitionBoxSpec(parts, reduced, target))


@dataclass(frozen=True)
class ChowOrderReport:
    """Order of a rational Chow group of ``SB_1(D) x SB_{p^level}(D)``.

    The group is a direct sum of ``summand_count`` cyclic groups of order
    ``prime`` (only codimension-0 classes of the classical factor survive on
    rational cycles), so its order is ``prime ** summand_count``.  The product
    ``summand_count * prime`` is recorded alongside as ``literal_order``: it
    is how the order is usually quoted, and the degenerate cases (an empty sum
    must give the trivial group, not order zero) show why the exponent reading
    is the consistent one.  Both are preserved for transparency.
    """

    prime: int
    i: int
    summand_count: int

    @property
    def order_exponent(self) -> int:
        return self.summand_count

    @property
    def literal_order(self) -> int:
        return self.summand_count * self.prime

    def group_order(self) -> int:
        return self.prime**self.summand_count

    def to_json_obj(self) -> dict[str, str]:
        return {
            "i": str(self.i),
            "mu": str(self.summand_count),
            "order_exponent": str(self.order_exponent),
            "literal_order": str(self.literal_order),
        }


def rational_chow_order(variety: SBVariety, i: int) -> ChowOrderReport:
    """Order report for the rational Chow group in homological degree ``i``.

    Valid for ``0 <= i <= dim(SB_1(D) x SB_{p^level}(D))``.
    """
    context = variety.context
    max_i = (context.degree - 1) + variety.dimension()
    if not isinstance(i, int) or not 0 <= i <= max_i:
        raise DomainError(
            f"homological degree must satisfy 0 <= i <= {max_i}, got {i!r}"
        )
    return ChowOrderReport(
        prime=context.p,
        i=i,
        summand_count=mu(context, variety.level, i + 1),
    )


def function_field_decomposition(variety: SBVariety) -> MotiveExpr:
    """Split the motive of ``SB_{2^level}(D)`` over the function field of the
    half-degree ideal variety of ``D``.

    Over that field the algebra's division part ``C`` has degree ``2**(n-1)``
    and the motive decomposes as the sum of the products
    ``M(SB_i(C)) x M(SB_j(C))`` twisted by ``i*(2**(n-1) - j)`` over all
    ``i + j = 2**level``.  Pairs with a component above ``deg C`` index empty
    varieties and contribute nothing.  Restricted to ``p = 2``: for odd primes
    the interior twists are not produced, only the endpoints (see
    :func:`function_field_endpoints`).

    The split polynomial of the result equals the Gaussian binomial
    ``[2**n choose 2**level]_q`` exactly (a q-Vandermonde identity), which the
    verify suite checks coefficient by coefficient.
    """
    context = variety.context
    if context.p != 2:
        raise UnsupportedOperationError(
            "explicit interior twists are only available for p = 2; "
            "use function_field_endpoints for other primes"
        )
    if context.n == 0:
        raise DomainError("a split algebra has no function-field reduction")
    half = DivisionContext(2, context.n - 1)
    half_degree = half.degree
    m = variety.reduced_dimension
    terms = []
    for i in range(max(0, m - half_degree), min(m, half_degree) + 1):
        j = m - i
        terms.append((SBProduct(half, (i, j)), i * (half_degree - j)))
    return MotiveExpr(terms)


def function_field_endpoints(context: DivisionContext, level: int) -> tuple[Term, Term]:
    """Endpoint summands the level-``level`` upper motive acquires over the
    function field of the half-degree ideal variety.

    Works for every prime: the upper motive of the reduced-degree algebra
    ``C`` (exponent ``n - 1``) appears untwisted and again twisted by
    ``p**(n + level - 1) * (p - 1)``, which is exactly the dimension the
    motive loses in the reduction.
    """
    if context.n < 1:
        raise DomainError("a split algebra has no function-field reduction")
    if not isinstance(level, int) or not 0 <= level <= context.n - 1:
        raise DomainError(
            f"level must satisfy 0 <= level <= {context.n - 1}, got {level!r}"
        )
    p = context.p
    reduced = DivisionContext(p, context.n - 1)
    lower_twist = p ** (context.n + level - 1) * (p - 1)
    return (
        Term(UpperMotive(reduced, level), 0),
        Term(UpperMotive(reduced, level), lower_twist),
    )


class CoverageReason(Enum):
    SQUAREFREE = "squarefree"
    FOUR_TIMES_ODD_SQUAREFREE = "four-times-odd-squarefree"


@dataclass(frozen=True)
class PrimaryCase:
    """One prime-primary sub-case a reduced dimension reduces to."""

    prime: int
    reduced_dimension: int


@dataclass(frozen=True)
class CaseClassification:
    """Whether the decomposition-lifting property is settled for ``SB_k``.

    Covered exactly when ``k`` is squarefree or four times an odd squarefree
    number.  Covered classifications carry the prime-primary sub-cases the
    question reduces to (reduced dimension 1, ``p`` or 4); open ones record
    the smallest prime-power factor that blocks the reduction.
    """

    k: int
    covered: bool
    reason: CoverageReason | None
    odd_squarefree_part: int | None
    blocking_factor: int | None
    reductions: tuple[PrimaryCase, ...]


def _factorize(k: int) -> list[tuple[int, int]]:
    factors = []
    rest = k
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            exp = 0
            while rest % p == 0:
                rest //= p
                exp += 1
            factors.append((p, exp))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return factors


def classify_reduced_dimension(k: int) -> CaseClassification:
    """Classify a reduced dimension against the settled cases.

    The settled condition is arithmetic: every odd prime must divide ``k`` at
    most once, and 2 may divide it 0, 1 or exactly 2 times.
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"reduced dimension must be a positive integer, got {k!r}")
    factors = _factorize(k)
    blocking = sorted(
        p**e for p, e in factors if (p == 2 and e >= 3) or (p > 2 and e >= 2)
    )
    reductions = tuple(PrimaryCase(p, p**e) for p, e in factors)
    if blocking:
        return CaseClassification(
            k=k,
            covered=False,
            reason=None,
            odd_squarefree_part=None,
            blocking_factor=blocking[0],
            reductions=reductions,
        )
    two_exp = next((e for p, e in factors if p == 2), 0)
    if two_exp == 2:
        return CaseClassification(
            k=k,
            covered=True,
            reason=CoverageReason.FOUR_TIMES_ODD_SQUAREFREE,
            odd_squarefree_part=k // 4,
            blocking_factor=None,
            reductions=reductions,
        )
    return CaseClassification(
        k=k,
        covered=True,
        reason=CoverageReason.SQUAREFREE,
        odd_squarefree_part=None,
        blocking_factor=None,
        reductions=reductions,
    )
