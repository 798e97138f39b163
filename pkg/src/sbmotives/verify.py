"""Self-check suite: every module invariant, runnable over a requested range.

Each identity returns a list of failure descriptions (empty means it holds).
The registry order is fixed so reports are deterministic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .motive import TATE, DivisionContext, MotiveExpr, SBProduct, Term
from .qpoly import (
    GradedRankPoly,
    PartitionBoxSpec,
    count_partitions_by_enumeration,
    count_partitions_in_box,
    enumerate_partitions_in_box,
    gaussian_binomial,
)
from .severi_brauer import (
    SBVariety,
    classify_reduced_dimension,
    function_field_decomposition,
    function_field_endpoints,
    mu,
    rational_chow_order,
)
from .type_calculus import (
    IndecomposabilityStatus,
    RigidityStatus,
    dimension_obstruction,
    indecomposability_judgment,
    rigidity_judgment,
    type_bound,
)

__all__ = ["IdentityResult", "SuiteReport", "run_identity_suite"]


@dataclass(frozen=True)
class IdentityResult:
    identity: str
    passed: bool
    failures: tuple[str, ...]


@dataclass(frozen=True)
class SuiteReport:
    max_n: int
    results: tuple[IdentityResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failing(self) -> tuple[str, ...]:
        return tuple(r.identity for r in self.results if not r.passed)


def _brute_force_histogram(parts: int, max_part: int) -> dict[int, int]:
    hist: Counter[int] = Counter()
    for lam in enumerate_partitions_in_box(parts, max_part):
        hist[sum(lam)] += 1
    return dict(hist)


def _check_gaussian_brute_force(max_n: int) -> list[str]:
    failures = []
    for d in range(13):
        for k in range(d + 1):
            expected = GradedRankPoly(_brute_force_histogram(k, d - k))
            got = gaussian_binomial(d, k)
            if got != expected:
                failures.append(f"gaussian_binomial({d},{k}) != brute-force histogram")
    return failures


def _check_gaussian_symmetry(max_n: int) -> list[str]:
    failures = []
    for d in range(13):
        for k in range(d + 1):
            poly = gaussian_binomial(d, k)
            top = k * (d - k)
            if any(poly.coefficient(j) != poly.coefficient(top - j) for j in range(top + 1)):
                failures.append(f"gaussian_binomial({d},{k}) is not symmetric")
    return failures


def _check_gaussian_total_rank(max_n: int) -> list[str]:
    failures = []
    for d in range(13):
        for k in range(d + 1):
            if gaussian_binomial(d, k).rank() != math.comb(d, k):
                failures.append(f"rank of gaussian_binomial({d},{k}) != C({d},{k})")
    return failures


def _check_box_count_duality(max_n: int) -> list[str]:
    failures = []
    for m in range(9):
        for c in range(9):
            poly = gaussian_binomial(m + c, c)
            for s in range(m * c + 2):
                counted = count_partitions_in_box(PartitionBoxSpec(m, c, s))
                if counted != poly.coefficient(s):
                    failures.append(f"box count ({m},{c},{s}) != coefficient")
    return failures


def _check_box_count_oracle(max_n: int) -> list[str]:
    failures = []
    for m in range(7):
        for c in range(7):
            for s in range(m * c + 2):
                box = PartitionBoxSpec(m, c, s)
                if count_partitions_in_box(box) != count_partitions_by_enumeration(box):
                    failures.append(f"recurrence vs enumeration mismatch at ({m},{c},{s})")
    return failures


def _check_rank_homomorphism(max_n: int) -> list[str]:
    failures = []
    samples = [
        gaussian_binomial(4, 2),
        gaussian_binomial(6, 3),
        GradedRankPoly({0: 1, 3: 2}),
        GradedRankPoly({1: 5}),
    ]
    for a in samples:
        for b in samples:
            if (a * b).rank() != a.rank() * b.rank():
                failures.append(f"rank not multiplicative for {a} * {b}")
        for t in (0, 1, 7):
            if a.shift(t).rank() != a.rank():
                failures.append(f"rank not shift-invariant for {a} shifted by {t}")
    return failures


def _sample_expressions() -> list[MotiveExpr]:
    c21 = DivisionContext(2, 1)
    c22 = DivisionContext(2, 2)
    return [
        MotiveExpr.zero(),
        MotiveExpr.tate(0),
        MotiveExpr.of((TATE, 0), (TATE, 4)),
        MotiveExpr.of((SBProduct(c21, (1, 1)), 1)),
        MotiveExpr.of((SBProduct(c22, (2,)), 0), (TATE, 2), (TATE, 2)),
    ]


def _check_poincare_homomorphism(max_n: int) -> list[str]:
    failures = []
    exprs = _sample_expressions()
    for a in exprs:
        for b in exprs:
            if (a + b).split_poincare() != a.split_poincare() + b.split_poincare():
                failures.append(f"poincare(sum) mismatch for {a!r} + {b!r}")
        for t in (0, 2, 5):
            if a.twist(t).split_poincare() != a.split_poincare().shift(t):
                failures.append(f"poincare(twist {t}) mismatch for {a!r}")
    c21 = DivisionContext(2, 1)
    factors = [
        MotiveExpr.tate(1),
        MotiveExpr.of((SBProduct(c21, (1,)), 0)),
        MotiveExpr.of((SBProduct(c21, (1,)), 2), (TATE, 0)),
    ]
    for a in factors:
        for b in factors:
            if (a * b).split_poincare() != a.split_poincare() * b.split_poincare():
                failures.append(f"poincare(product) mismatch for {a!r} * {b!r}")
    return failures


def _check_ks_equality(max_n: int) -> list[str]:
    failures = []
    c21 = DivisionContext(2, 1)
    pairs = [
        (MotiveExpr.of((TATE, 0), (TATE, 4)), MotiveExpr.of((TATE, 4), (TATE, 0)), True),
        (MotiveExpr.of((TATE, 0)), MotiveExpr.of((TATE, 0), (TATE, 0)), False),
        (MotiveExpr.of((SBProduct(c21, (0, 0)), 1)), MotiveExpr.of((TATE, 1)), True),
    ]
    for a, b, expected in pairs:
        if a.krull_schmidt_equal(b) is not expected:
            failures.append(f"krull_schmidt_equal({a!r}, {b!r}) != {expected}")
        if expected and not a.is_zero and a.split_poincare() != b.split_poincare():
            failures.append(f"equal expressions with different polynomials: {a!r}")
    return failures


def _check_vandermonde_conservation(max_n: int) -> list[str]:
    failures = []
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            variety = SBVariety(DivisionContext(2, n), k)
            split = function_field_decomposition(variety).split_poincare()
            if split != gaussian_binomial(2**n, 2**k):
                failures.append(f"conservation fails at (n={n}, k={k})")
    return failures


def _check_upper_lower_endpoints(max_n: int) -> list[str]:
    failures = []
    for n in range(2, max_n + 1):
        for k in range(1, n):
            context = DivisionContext(2, n)
            expr = function_field_decomposition(SBVariety(context, k))
            located = expr.identify_upper_lower()
            upper, lower = function_field_endpoints(context, k)
            half = DivisionContext(2, n - 1)
            expected_obj = Term(SBProduct(half, (2**k,)), 0).obj
            if located.upper != Term(expected_obj, 0):
                failures.append(f"upper term mismatch at (n={n}, k={k})")
            if located.lower != Term(expected_obj, 2 ** (n + k - 1)):
                failures.append(f"lower term mismatch at (n={n}, k={k})")
            if lower.twist != 2 ** (n + k - 1) or upper.twist != 0:
                failures.append(f"endpoint twist mismatch at (n={n}, k={k})")
    return failures


def _check_mu_duality(max_n: int) -> list[str]:
    failures = []
    for p in (2, 3):
        for n in range(0, min(3, max_n) + 1):
            context = DivisionContext(p, n)
            degree = context.degree
            for k in range(n + 1):
                reduced = p**k
                capacity = reduced * (degree - reduced)
                poly = gaussian_binomial(degree, reduced)
                for i in range(0, degree + capacity + 2):
                    target = degree + capacity - i
                    expected = poly.coefficient(target) if target >= 0 else 0
                    if mu(context, k, i) != expected:
                        failures.append(f"mu duality fails at (p={p}, n={n}, k={k}, i={i})")
    return failures


def _check_chow_degenerate(max_n: int) -> list[str]:
    failures = []
    variety = SBVariety(DivisionContext(2, 1), 0)
    expected = {0: 0, 1: 1, 2: 1}
    for i, exponent in expected.items():
        report = rational_chow_order(variety, i)
        if report.order_exponent != exponent or report.group_order() != 2**exponent:
            failures.append(f"chow order at i={i}: exponent {report.order_exponent}")
        if report.literal_order != report.summand_count * 2:
            failures.append(f"literal order not preserved at i={i}")
    zero_exponents = [
        i
        for i in range(0, 3)
        if rational_chow_order(variety, i).order_exponent == 0
    ]
    if zero_exponents != [0]:
        failures.append("exponent-zero locus disagrees with the out-of-box sizes")
    return failures


def _squarefree(k: int) -> bool:
    d = 2
    while d * d <= k:
        if k % (d * d) == 0:
            return False
        d += 1
    return True


def _check_classifier_known_cases(max_n: int) -> list[str]:
    failures = []
    for k in range(1, 31):
        expected = _squarefree(k) or (k % 4 == 0 and k % 8 != 0 and _squarefree(k // 4) and (k // 4) % 2 == 1)
        got = classify_reduced_dimension(k)
        if got.covered is not expected:
            failures.append(f"classifier disagrees with factorization at k={k}")
        if not got.covered and got.blocking_factor is None:
            failures.append(f"open case without blocking factor at k={k}")
    return failures


def _check_dimension_obstruction(max_n: int) -> list[str]:
    failures = []
    limit = max(10, max_n)
    for n in range(1, limit + 1):
        for k in range(1, n + 1):
            result = dimension_obstruction(n, k)
            lhs = 2 ** (n + k - 1) - 2 ** (2 * k - 1)
            rhs = 2 ** (n + k - 1) - 2 ** (2 * k - 2)
            if result != (lhs, rhs, True):
                failures.append(f"obstruction fails at (n={n}, k={k})")
    return failures


def _check_type_bound_table(max_n: int) -> list[str]:
    failures = []
    for p in (2, 3, 5):
        for n in range(0, max_n + 1):
            for k in range(n + 1):
                derived = type_bound(SBVariety(DivisionContext(p, n), k))
                expected = max(k - 2, -1) if (p == 2 and k >= 1) else k - 1
                if derived.bound != expected:
                    failures.append(f"type bound (p={p}, n={n}, k={k}) = {derived.bound}")
                if not -1 <= derived.bound <= k - 1 and k >= 0:
                    failures.append(f"bound outside [-1, k-1] at (p={p}, n={n}, k={k})")
    return failures


def _check_indecomposability_level_one(max_n: int) -> list[str]:
    failures = []
    for n in range(1, max_n + 1):
        judgment = indecomposability_judgment(SBVariety(DivisionContext(2, n), 1))
        if judgment.status is not IndecomposabilityStatus.INDECOMPOSABLE:
            failures.append(f"level-1 variety not judged indecomposable at n={n}")
    return failures


def _check_trace_replay(max_n: int) -> list[str]:
    failures = []
    for p in (2, 3, 5):
        for n in range(0, max_n + 1):
            for k in range(n + 1):
                variety = SBVariety(DivisionContext(p, n), k)
                for trace in (
                    type_bound(variety).trace,
                    indecomposability_judgment(variety).trace,
                    rigidity_judgment(variety).trace,
                ):
                    if not trace.replay():
                        failures.append(f"trace replay fails at (p={p}, n={n}, k={k})")
    return failures


def _check_rigidity_classifier_agreement(max_n: int) -> list[str]:
    failures = []
    cases = [(p, level) for p in (2, 3, 5) for level in (0, 1)] + [(2, 2)]
    for p, level in cases:
        for n in range(max(level, 1), max(level, 1) + 2):
            judgment = rigidity_judgment(SBVariety(DivisionContext(p, n), level))
            if judgment.status is not RigidityStatus.CONJECTURE_HOLDS:
                failures.append(f"rigidity unknown at (p={p}, n={n}, level={level})")
    return failures


_REGISTRY: tuple[tuple[str, Callable[[int], list[str]]], ...] = (
    ("qpoly/gaussian-brute-force", _check_gaussian_brute_force),
    ("qpoly/gaussian-symmetry", _check_gaussian_symmetry),
    ("qpoly/gaussian-total-rank", _check_gaussian_total_rank),
    ("qpoly/box-count-duality", _check_box_count_duality),
    ("qpoly/box-count-oracle", _check_box_count_oracle),
    ("qpoly/rank-homomorphism", _check_rank_homomorphism),
    ("motive/poincare-homomorphism", _check_poincare_homomorphism),
    ("motive/krull-schmidt-equality", _check_ks_equality),
    ("severi-brauer/vandermonde-conservation", _check_vandermonde_conservation),
    ("severi-brauer/upper-lower-endpoints", _check_upper_lower_endpoints),
    ("severi-brauer/mu-duality", _check_mu_duality),
    ("severi-brauer/chow-order-degenerate", _check_chow_degenerate),
    ("severi-brauer/classifier-known-cases", _check_classifier_known_cases),
    ("type-calculus/dimension-obstruction", _check_dimension_obstruction),
    ("type-calculus/type-bound-table", _check_type_bound_table),
    ("type-calculus/indecomposability-level-one", _check_indecomposability_level_one),
    ("type-calculus/trace-replay", _check_trace_replay),
    ("type-calculus/rigidity-classifier-agreement", _check_rigidity_classifier_agreement),
)


def run_identity_suite(max_n: int = 5) -> SuiteReport:
    """Run every identity over the requested range and report per-identity."""
    if not isinstance(max_n, int) or max_n < 1:
        raise ValueError(f"max_n must be a positive integer, got {max_n!r}")
    results = []
    for identity, check in _REGISTRY:
        failures = tuple(check(max_n))
        results.append(IdentityResult(identity, not failures, failures))
    return SuiteReport(max_n=max_n, results=tuple(results))
