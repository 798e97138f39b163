"""Exact arithmetic on graded rank polynomials and box-bounded partition counts.

A :class:`GradedRankPoly` records, degree by degree, how many Tate summands a
geometrically split motive acquires over a splitting field.  Coefficients are
arbitrary-precision nonnegative integers: the counts grow like binomial
coefficients, so fixed-width arithmetic would silently overflow and is never
used.  Polynomials are supported on nonnegative degrees only; every twist that
occurs in the decomposition formulas handled by this package is nonnegative.

The module also counts integer partitions constrained to a box (at most
``parts`` rows, every entry at most ``max_part``).  Two independent
implementations are shipped on purpose: a dynamic-programming recurrence
(:func:`count_partitions_in_box`, the production path) and an exhaustive
enumerator (:func:`count_partitions_by_enumeration`, kept as a cross-checking
oracle).  The degree-``s`` coefficient of ``gaussian_binomial(m + c, c)``
equals the number of partitions of ``s`` inside an ``m x c`` box; the test
suite and the ``verify`` command check all three paths against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import DomainError

__all__ = [
    "GradedRankPoly",
    "PartitionBoxSpec",
    "gaussian_binomial",
    "count_partitions_in_box",
    "count_partitions_by_enumeration",
    "enumerate_partitions_in_box",
]


def _checked_count(value: object, what: str) -> int:
    if not isinstance(value, int):
        raise DomainError(f"{what} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{what} must be nonnegative, got {value}")
    return value


class GradedRankPoly:
    """Finitely supported map from nonnegative degree to a nonnegative count.

    Instances are immutable; every operation returns a new polynomial.  Zero
    coefficients are never stored, so two equal polynomials always have equal
    internal maps.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Mapping[int, int] | None = None):
        checked: dict[int, int] = {}
        if coefficients:
            for degree, count in coefficients.items():
                _checked_count(degree, "degree")
                _checked_count(count, "coefficient")
                if count:
                    checked[degree] = count
        # ascending-degree insertion order backs bottom_degree/top_degree
        self._coeffs = {d: checked[d] for d in sorted(checked)}

    @classmethod
    def zero(cls) -> "GradedRankPoly":
        return cls()

    @classmethod
    def one(cls) -> "GradedRankPoly":
        """The rank polynomial of a single untwisted Tate summand."""
        return cls({0: 1})

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self) -> tuple[tuple[int, int], ...]:
        """(degree, coefficient) pairs in ascending degree order."""
        return tuple(self._coeffs.items())

    def support(self) -> tuple[int, ...]:
        return tuple(self._coeffs)

    def coefficient(self, degree: int) -> int:
        return self._coeffs.get(degree, 0)

    def bottom_degree(self) -> int:
        if not self._coeffs:
            raise DomainError("the zero polynomial has no bottom degree")
        return next(iter(self._coeffs))

    def top_degree(self) -> int:
        if not self._coeffs:
            raise DomainError("the zero polynomial has no top degree")
        return next(reversed(self._coeffs))

    def dim(self) -> int:
        """Top degree minus bottom degree (motive dimension at the rank level)."""
        return self.top_degree() - self.bottom_degree()

    def rank(self) -> int:
        """Sum of all coefficients (total number of Tate summands)."""
        return sum(self._coeffs.values())

    def shift(self, twist: int) -> "GradedRankPoly":
        """Add ``twist`` to every degree; the rank-level effect of a Tate twist."""
        _checked_count(twist, "twist")
        if twist == 0 or not self._coeffs:
            return self
        return GradedRankPoly({d + twist: c for d, c in self._coeffs.items()})

    def __add__(self, other: "GradedRankPoly") -> "GradedRankPoly":
        if not isinstance(other, GradedRankPoly):
            return NotImplemented
        total = dict(self._coeffs)
        for degree, count in other._coeffs.items():
            total[degree] = total.get(degree, 0) + count
        return GradedRankPoly(total)

    def __mul__(self, other: "GradedRankPoly | int") -> "GradedRankPoly":
        if isinstance(other, int):
            other = GradedRankPoly({0: other})
        if not isinstance(other, GradedRankPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return GradedRankPoly.zero()
        # Dense convolution: rank polynomials have no gaps worth exploiting.
        oa, arr_a = self._dense()
        ob, arr_b = other._dense()
        if len(arr_a) * len(arr_b) > 1 << 12:
            out = _kronecker_convolve(arr_a, arr_b)
        else:
            out = [0] * (len(arr_a) + len(arr_b) - 1)
            for i, a in enumerate(arr_a):
                if a:
                    for j, b in enumerate(arr_b):
                        if b:
                            out[i + j] += a * b
        base = oa + ob
        return GradedRankPoly({base + d: c for d, c in enumerate(out) if c})

    __rmul__ = __mul__

    def _dense(self) -> tuple[int, list[int]]:
        bottom = self.bottom_degree()
        arr = [0] * (self.top_degree() - bottom + 1)
        for degree, count in self._coeffs.items():
            arr[degree - bottom] = count
        return bottom, arr

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedRankPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"GradedRankPoly({dict(self._coeffs)!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for degree, count in self._coeffs.items():
            if degree == 0:
                parts.append(str(count))
            elif degree == 1:
                parts.append("q" if count == 1 else f"{count}*q")
            else:
                parts.append(f"q^{degree}" if count == 1 else f"{count}*q^{degree}")
        return " + ".join(parts)

    def to_json_dict(self) -> dict[str, str]:
        """Degrees and coefficients as decimal strings, ascending by degree.

        Strings keep values above 2**53 exact for any JSON consumer.
        """
        return {str(d): str(c) for d, c in self._coeffs.items()}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, str]) -> "GradedRankPoly":
        try:
            coeffs = {int(d): int(c) for d, c in data.items()}
        except (TypeError, ValueError) as exc:
            raise DomainError(f"malformed rank polynomial encoding: {exc}") from exc
        return cls(coeffs)


@dataclass(frozen=True)
class PartitionBoxSpec:
    """A box-bounded partition counting query.

    ``parts`` is the fixed number of entries (zero padding allowed),
    ``max_part`` bounds each entry, and ``size`` is the target total.
    """

    parts: int
    max_part: int
    size: int

    def __post_init__(self) -> None:
        _checked_count(self.parts, "parts")
        _checked_count(self.max_part, "max_part")
        _checked_count(self.size, "size")

    @property
    def capacity(self) -> int:
        return self.parts * self.max_part


def _kronecker_convolve(a: list[int], b: list[int]) -> list[int]:
    """Exact convolution of nonnegative coefficient lists via integer packing.

    Each polynomial is evaluated at 2**width with ``width`` chosen so that no
    convolution coefficient can spill into its neighbor; one big-integer
    multiplication then carries out the whole convolution.
    """
    bound = min(len(a), len(b)) * max(a) * max(b)
    width = bound.bit_length() + 1
    packed_a = sum(c << (i * width) for i, c in enumerate(a) if c)
    packed_b = sum(c << (i * width) for i, c in enumerate(b) if c)
    product = packed_a * packed_b
    mask = (1 << width) - 1
    out = []
    for _ in range(len(a) + len(b) - 1):
        out.append(product & mask)
        product >>= width
    return out


def _add_shifted(a: list[int], b: list[int] | None, t: int) -> list[int]:
    # a + q^t * b on dense coefficient lists
    if b is None:
        return list(a)
    out = list(a) + [0] * max(0, t + len(b) - len(a))
    for i, c in enumerate(b):
        out[t + i] += c
    return out


@lru_cache(maxsize=None)
def gaussian_binomial(d: int, k: int) -> GradedRankPoly:
    """The Gaussian binomial coefficient [d choose k]_q as a rank polynomial.

    Computed by the q-Pascal recurrence
    ``[m, j] = [m-1, j-1] + q^j [m-1, j]`` over exact integers.  The result
    has bottom degree 0, top degree ``k*(d-k)``, symmetric coefficients and
    total rank ``C(d, k)``; it is the split Poincare polynomial of the
    Grassmannian of ``k``-planes in ``d``-space.
    """
    _checked_count(d, "d")
    _checked_count(k, "k")
    if k > d:
        raise DomainError(f"gaussian_binomial requires 0 <= k <= d, got k={k} > d={d}")
    col = min(k, d - k)  # [d, k] = [d, d-k]; iterate the narrow half
    row: list[list[int]] = [[1]]
    for m in range(1, d + 1):
        new_row: list[list[int]] = [[1]]
        for j in range(1, min(col, m) + 1):
            above = row[j] if j < len(row) else None
            new_row.append(_add_shifted(row[j - 1], above, j))
        row = new_row
    return GradedRankPoly({i: c for i, c in enumerate(row[col]) if c})


@lru_cache(maxsize=None)
def _box_size_counts(parts: int, max_part: int) -> tuple[int, ...]:
    """Counts of partitions in a ``parts x max_part`` box, indexed by size.

    Dynamic programming on the recurrence
    ``N(m, c, s) = N(m-1, c, s) + N(m, c-1, s-m)``: a partition either uses
    fewer than ``m`` rows, or all rows are positive and a full column can be
    stripped.  Independent of the q-Pascal path used by the polynomials.
    """
    cap = parts * max_part
    width = cap + 1
    # rows indexed by allowed number of parts; columns by allowed max part
    prev = [[1] + [0] * cap for _ in range(max_part + 1)]
    for m in range(1, parts + 1):
        cur = [[1] + [0] * cap]
        for c in range(1, max_part + 1):
            left = cur[c - 1]
            up = prev[c]
            merged = [
                up[s] + (left[s - m] if s >= m else 0) for s in range(width)
            ]
            cur.append(merged)
        prev = cur
    return tuple(prev[max_part])


def count_partitions_in_box(box: PartitionBoxSpec) -> int:
    """Number of weakly decreasing sequences of length ``parts`` with entries
    in ``[0, max_part]`` summing to ``size``.  Sizes beyond the box capacity
    count zero."""
    if box.size > box.capacity:
        return 0
    return _box_size_counts(box.parts, box.max_part)[box.size]


def enumerate_partitions_in_box(parts: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Yield every partition in the box as a zero-padded length-``parts`` tuple.

    Exhaustive and deliberately naive: this is the oracle the recurrence is
    tested against, so it shares no code with :func:`count_partitions_in_box`.
    """
    _checked_count(parts, "parts")
    _checked_count(max_part, "max_part")

    def rec(prefix: tuple[int, ...], slots: int, bound: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            yield prefix
            return
        for value in range(bound, -1, -1):
            yield from rec(prefix + (value,), slots - 1, value)

    yield from rec((), parts, max_part)


def count_partitions_by_enumeration(box: PartitionBoxSpec) -> int:
    """Brute-force counterpart of :func:`count_partitions_in_box`."""
    return sum(
        1
        for lam in enumerate_partitions_in_box(box.parts, box.max_part)
        if sum(lam) == box.size
    )
