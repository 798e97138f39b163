"""Formal motive expressions with Krull-Schmidt multiset semantics.

A :class:`MotiveExpr` is a finite multiset of Tate-twisted objects standing
for a direct sum of motives.  Because the isomorphism-class monoid of these
summands is free, two expressions describe isomorphic sums exactly when their
normalized term multisets agree; equality here is therefore Krull-Schmidt
equality.

Objects come in three kinds.  :class:`TateUnit` is the unit motive.
:class:`SBProduct` is the motive of a product of Severi-Brauer varieties of a
fixed division algebra, fully computable at the split level.
:class:`UpperMotive` is the level-``k`` upper motive of such an algebra; for
``0 < level < n`` its split polynomial is not determined by anything this
package knows, so it stays an opaque atom and polynomial-hungry operations
reject it instead of guessing.  Level 0 normalizes to the full motive of the
classical Severi-Brauer variety (indecomposable for a division algebra) and
level ``n`` to the Tate unit (the variety is a rational point).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import DomainError, UnsupportedOperationError
from .qpoly import GradedRankPoly, gaussian_binomial

__all__ = [
    "DivisionContext",
    "TateUnit",
    "TATE",
    "UpperMotive",
    "SBProduct",
    "MotiveObject",
    "Term",
    "MotiveExpr",
    "ExtremeTerms",
    "normalize_object",
    "object_sort_key",
    "dim_upper_motive",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class DivisionContext:
    """A p-primary division algebra reduced to its prime and exponent.

    The algebra has degree ``p**n``; ``n == 0`` is the split case.  The prime
    also fixes the characteristic of the coefficient field every decomposition
    statement refers to.
    """

    p: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise DomainError(f"p must be a prime number, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise DomainError(f"exponent n must be a nonnegative integer, got {self.n!r}")

    @property
    def degree(self) -> int:
        return self.p**self.n


@dataclass(frozen=True)
class TateUnit:
    """The unit object; every twist of it is a Tate motive."""

    def __repr__(self) -> str:
        return "Tate"


TATE = TateUnit()


@dataclass(frozen=True)
class UpperMotive:
    """Upper motive of the variety of reduced-dimension ``p**level`` ideals."""

    context: DivisionContext
    level: int

    def __post_init__(self) -> None:
        if not isinstance(self.level, int) or not 0 <= self.level <= self.context.n:
            raise DomainError(
                f"upper-motive level must satisfy 0 <= level <= {self.context.n}, "
                f"got {self.level!r}"
            )

    def __repr__(self) -> str:
        return f"Upper(p={self.context.p}, n={self.context.n}, level={self.level})"


@dataclass(frozen=True)
class SBProduct:
    """Motive of a product of Severi-Brauer varieties of one division algebra.

    ``dims`` lists the reduced dimensions of the factors, each in
    ``[0, degree]``.  Factors of reduced dimension 0 or ``degree`` are points
    and normalize away.
    """

    context: DivisionContext
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        degree = self.context.degree
        for d in self.dims:
            if not isinstance(d, int) or not 0 <= d <= degree:
                raise DomainError(
                    f"reduced dimension must lie in [0, {degree}], got {d!r}"
                )

    def __repr__(self) -> str:
        return f"SBProduct(p={self.context.p}, n={self.context.n}, dims={self.dims})"


MotiveObject = Union[TateUnit, UpperMotive, SBProduct]


def normalize_object(obj: MotiveObject) -> MotiveObject:
    """Canonical representative of an object's isomorphism class.

    Point factors of an :class:`SBProduct` are dropped (an empty product is
    the Tate unit).  An :class:`UpperMotive` of level ``n`` is the Tate unit,
    and one of level 0 is the full motive of the classical Severi-Brauer
    variety of its algebra.
    """
    if isinstance(obj, TateUnit):
        return TATE
    if isinstance(obj, SBProduct):
        degree = obj.context.degree
        kept = tuple(d for d in obj.dims if 0 < d < degree)
        if not kept:
            return TATE
        if kept != obj.dims:
            return SBProduct(obj.context, kept)
        return obj
    if isinstance(obj, UpperMotive):
        if obj.level == obj.context.n:
            return TATE
        if obj.level == 0:
            return SBProduct(obj.context, (1,))
        return obj
    raise DomainError(f"not a motive object: {obj!r}")


def object_sort_key(obj: MotiveObject) -> tuple:
    """Total order on objects: kind rank, then lexicographic payload."""
    if isinstance(obj, TateUnit):
        return (0, ())
    if isinstance(obj, UpperMotive):
        return (1, (obj.context.p, obj.context.n, obj.level))
    if isinstance(obj, SBProduct):
        return (2, (obj.context.p, obj.context.n) + obj.dims)
    raise DomainError(f"not a motive object: {obj!r}")


@dataclass(frozen=True)
class Term:
    """One summand: an object together with a nonnegative Tate twist.

    The object is normalized on construction, so structurally equal terms are
    exactly the isomorphic ones.
    """

    obj: MotiveObject
    twist: int

    def __post_init__(self) -> None:
        if not isinstance(self.twist, int) or self.twist < 0:
            raise DomainError(f"twist must be a nonnegative integer, got {self.twist!r}")
        object.__setattr__(self, "obj", normalize_object(self.obj))

    def sort_key(self) -> tuple:
        kind, payload = object_sort_key(self.obj)
        return (kind, payload, self.twist)

    def __repr__(self) -> str:
        return f"({self.obj!r}, twist={self.twist})"


def _object_poincare(obj: MotiveObject) -> GradedRankPoly:
    if isinstance(obj, TateUnit):
        return GradedRankPoly.one()
    if isinstance(obj, SBProduct):
        poly = GradedRankPoly.one()
        degree = obj.context.degree
        for d in obj.dims:
            poly = poly * gaussian_binomial(degree, d)
        return poly
    if isinstance(obj, UpperMotive):
        raise UnsupportedOperationError(
            f"the split polynomial of the opaque upper motive {obj!r} is not "
            "determined; refusing to guess"
        )
    raise DomainError(f"not a motive object: {obj!r}")


def _object_product(a: MotiveObject, b: MotiveObject) -> MotiveObject:
    if isinstance(a, UpperMotive) or isinstance(b, UpperMotive):
        raise UnsupportedOperationError(
            f"no product rule exists for opaque upper motives: {a!r} x {b!r}"
        )
    if isinstance(a, TateUnit):
        return b
    if isinstance(b, TateUnit):
        return a
    if a.context != b.context:
        raise DomainError(
            f"cannot multiply products over different algebras: {a!r} x {b!r}"
        )
    return SBProduct(a.context, a.dims + b.dims)


@dataclass(frozen=True)
class ExtremeTerms:
    """Result of locating the twist-extremal summands of an expression.

    When several summands (counted with multiplicity) realize the extreme
    degree, the corresponding slot is ``None`` and the multiplicity reports
    how many tied.
    """

    upper: Term | None
    upper_multiplicity: int
    lower: Term | None
    lower_multiplicity: int


_TermLike = Union[Term, tuple]


class MotiveExpr:
    """Multiset of terms; the empty multiset is the zero motive."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[_TermLike] | Mapping[Term, int] = ()):
        counts: Counter[Term] = Counter()
        if isinstance(terms, Mapping):
            entries: Iterable[tuple[_TermLike, int]] = terms.items()
        else:
            entries = ((t, 1) for t in terms)
        for entry, mult in entries:
            if isinstance(entry, Term):
                term = entry
            elif isinstance(entry, tuple) and len(entry) == 2:
                term = Term(entry[0], entry[1])
            elif isinstance(entry, tuple) and len(entry) == 3:
                term = Term(entry[0], entry[1])
                mult *= entry[2]
            else:
                raise DomainError(f"not a term: {entry!r}")
            if not isinstance(mult, int) or mult < 0:
                raise DomainError(f"multiplicity must be a nonnegative integer, got {mult!r}")
            if mult:
                counts[term] += mult
        self._terms = dict(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))

    @classmethod
    def zero(cls) -> "MotiveExpr":
        return cls()

    @classmethod
    def of(cls, *terms: _TermLike) -> "MotiveExpr":
        return cls(terms)

    @classmethod
    def tate(cls, twist: int = 0) -> "MotiveExpr":
        return cls(((TATE, twist),))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def term_items(self) -> tuple[tuple[Term, int], ...]:
        """(term, multiplicity) pairs in canonical order."""
        return tuple(self._terms.items())

    def total_multiplicity(self) -> int:
        return sum(self._terms.values())

    def __add__(self, other: "MotiveExpr") -> "MotiveExpr":
        if not isinstance(other, MotiveExpr):
            return NotImplemented
        merged = Counter(self._terms)
        merged.update(other._terms)
        return MotiveExpr(merged)

    def twist(self, t: int) -> "MotiveExpr":
        if not isinstance(t, int) or t < 0:
            raise DomainError(f"twist must be a nonnegative integer, got {t!r}")
        return MotiveExpr(
            {Term(term.obj, term.twist + t): mult for term, mult in self._terms.items()}
        )

    def __mul__(self, other: "MotiveExpr") -> "MotiveExpr":
        if not isinstance(other, MotiveExpr):
            return NotImplemented
        product: Counter[Term] = Counter()
        for ta, ma in self._terms.items():
            for tb, mb in other._terms.items():
                obj = _object_product(ta.obj, tb.obj)
                product[Term(obj, ta.twist + tb.twist)] += ma * mb
        return MotiveExpr(product)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MotiveExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def krull_schmidt_equal(self, other: "MotiveExpr") -> bool:
        """Multiset equality of normalized terms.

        Because decompositions into indecomposables are unique, this is the
        honest notion of isomorphism the engine can certify; it coincides with
        ``==``.
        """
        if not isinstance(other, MotiveExpr):
            raise DomainError(f"cannot compare {other!r} with a motive expression")
        return self == other

    def split_poincare(self) -> GradedRankPoly:
        """Rank polynomial over a splitting field.

        Sum over terms of the shifted polynomial of each object; a monoid
        homomorphism with respect to sum, twist and product.  Raises for
        opaque upper motives, whose polynomials are not determined.
        """
        total = GradedRankPoly.zero()
        for term, mult in self._terms.items():
            total = total + _object_poincare(term.obj).shift(term.twist) * mult
        return total

    def identify_upper_lower(self) -> ExtremeTerms:
        """Locate the summands realizing the extreme split degrees.

        The upper term realizes the global bottom degree, the lower term the
        global top degree; either is reported absent when the extremal degree
        is shared by more than one summand (with the tied multiplicity).
        """
        if self.is_zero:
            raise DomainError("the zero motive has no upper or lower summand")
        spans: list[tuple[Term, int, int, int]] = []
        for term, mult in self._terms.items():
            poly = _object_poincare(term.obj)
            spans.append(
                (term, mult, term.twist + poly.bottom_degree(), term.twist + poly.top_degree())
            )
        global_bottom = min(s[2] for s in spans)
        global_top = max(s[3] for s in spans)
        upper = [(t, m) for t, m, bot, _ in spans if bot == global_bottom]
        lower = [(t, m) for t, m, _, top in spans if top == global_top]
        upper_mult = sum(m for _, m in upper)
        lower_mult = sum(m for _, m in lower)
        return ExtremeTerms(
            upper=upper[0][0] if upper_mult == 1 else None,
            upper_multiplicity=upper_mult,
            lower=lower[0][0] if lower_mult == 1 else None,
            lower_multiplicity=lower_mult,
        )

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{term!r} x{mult}" if mult > 1 else repr(term)
            for term, mult in self._terms.items()
        )
        return f"MotiveExpr([{inner}])"

    # -- JSON encoding ------------------------------------------------------
    # Canonical ordering (object kind, payload, twist) makes the encoding
    # byte-stable; integers travel as decimal strings.

    def to_json_obj(self) -> list[dict]:
        encoded = []
        for term, mult in self._terms.items():
            encoded.append(
                {
                    "object": _object_to_json(term.obj),
                    "twist": str(term.twist),
                    "multiplicity": str(mult),
                }
            )
        return encoded

    @classmethod
    def from_json_obj(cls, data: Iterable[Mapping]) -> "MotiveExpr":
        counts: dict[Term, int] = {}
        for entry in data:
            try:
                obj = _object_from_json(entry["object"])
                term = Term(obj, int(entry["twist"]))
                mult = int(entry["multiplicity"])
            except (KeyError, TypeError, ValueError) as exc:
                raise DomainError(f"malformed motive encoding: {exc}") from exc
            counts[term] = counts.get(term, 0) + mult
        return cls(counts)


def _object_to_json(obj: MotiveObject) -> dict:
    if isinstance(obj, TateUnit):
        return {"kind": "tate"}
    if isinstance(obj, UpperMotive):
        return {
            "kind": "upper",
            "p": str(obj.context.p),
            "n": str(obj.context.n),
            "level": str(obj.level),
        }
    if isinstance(obj, SBProduct):
        return {
            "kind": "product",
            "p": str(obj.context.p),
            "n": str(obj.context.n),
            "dims": [str(d) for d in obj.dims],
        }
    raise DomainError(f"not a motive object: {obj!r}")


def _object_from_json(data: Mapping) -> MotiveObject:
    kind = data.get("kind")
    if kind == "tate":
        return TATE
    if kind == "upper":
        ctx = DivisionContext(int(data["p"]), int(data["n"]))
        return UpperMotive(ctx, int(data["level"]))
    if kind == "product":
        ctx = DivisionContext(int(data["p"]), int(data["n"]))
        return SBProduct(ctx, tuple(int(d) for d in data["dims"]))
    raise DomainError(f"unknown motive object kind: {kind!r}")


def dim_upper_motive(context: DivisionContext, level: int) -> int:
    """Dimension of the level-``level`` upper motive: it is maximal, equal to
    the dimension ``p**level * (p**n - p**level)`` of its variety."""
    if not isinstance(level, int) or not 0 <= level <= context.n:
        raise DomainError(
            f"level must satisfy 0 <= level <= {context.n}, got {level!r}"
        )
    reduced = context.p**level
    return reduced * (context.degree - reduced)
