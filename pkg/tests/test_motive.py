import pytest
from hypothesis import given, strategies as st

from sbmotives import (
    TATE,
    DivisionContext,
    DomainError,
    GradedRankPoly,
    MotiveExpr,
    SBProduct,
    Term,
    UnsupportedOperationError,
    UpperMotive,
    dim_upper_motive,
    gaussian_binomial,
    normalize_object,
)

C21 = DivisionContext(2, 1)
C22 = DivisionContext(2, 2)
C31 = DivisionContext(3, 1)


class TestDivisionContext:
    def test_degree(self):
        assert C22.degree == 4
        assert DivisionContext(3, 2).degree == 9
        assert DivisionContext(5, 0).degree == 1

    @pytest.mark.parametrize("p", [0, 1, 4, 6, 9, -3])
    def test_rejects_non_primes(self, p):
        with pytest.raises(DomainError):
            DivisionContext(p, 1)

    def test_rejects_negative_exponent(self):
        with pytest.raises(DomainError):
            DivisionContext(2, -1)


class TestNormalization:
    def test_point_factors_drop(self):
        assert normalize_object(SBProduct(C22, (0, 2))) == SBProduct(C22, (2,))
        assert normalize_object(SBProduct(C22, (2, 0))) == SBProduct(C22, (2,))
        assert normalize_object(SBProduct(C22, (0, 4))) == TATE
        assert normalize_object(SBProduct(C22, ())) == TATE

    def test_upper_endpoint_levels(self):
        assert normalize_object(UpperMotive(C22, 2)) == TATE
        assert normalize_object(UpperMotive(C22, 0)) == SBProduct(C22, (1,))
        assert normalize_object(UpperMotive(C22, 1)) == UpperMotive(C22, 1)
        assert normalize_object(UpperMotive(DivisionContext(2, 0), 0)) == TATE

    def test_validation(self):
        with pytest.raises(DomainError):
            UpperMotive(C22, 3)
        with pytest.raises(DomainError):
            SBProduct(C22, (5,))
        with pytest.raises(DomainError):
            Term(TATE, -1)


class TestExprAlgebra:
    def test_sum_is_multiset_union(self):
        a = MotiveExpr.tate(0)
        assert (a + a).term_items() == ((Term(TATE, 0), 2),)

    def test_twist_distributes(self):
        e = MotiveExpr.of((TATE, 0))
        assert e.twist(4) == MotiveExpr.of((TATE, 4))
        assert MotiveExpr.zero().twist(3) == MotiveExpr.zero()

    def test_product_concatenates_factor_lists(self):
        a = MotiveExpr.of((SBProduct(C22, (1,)), 0))
        assert a * a == MotiveExpr.of((SBProduct(C22, (1, 1)), 0))

    def test_tate_is_the_unit_and_twists_add(self):
        a = MotiveExpr.of((TATE, 2))
        b = MotiveExpr.of((SBProduct(C22, (2,)), 1))
        assert a * b == MotiveExpr.of((SBProduct(C22, (2,)), 3))

    def test_zero_annihilates(self):
        b = MotiveExpr.of((SBProduct(C22, (2,)), 1))
        assert MotiveExpr.zero() * b == MotiveExpr.zero()

    def test_product_rejects_opaque_upper(self):
        a = MotiveExpr.of((UpperMotive(C22, 1), 0))
        with pytest.raises(UnsupportedOperationError):
            a * a

    def test_product_rejects_mixed_contexts(self):
        a = MotiveExpr.of((SBProduct(C21, (1,)), 0))
        b = MotiveExpr.of((SBProduct(C22, (1,)), 0))
        with pytest.raises(DomainError):
            a * b


class TestKrullSchmidtEquality:
    def test_order_insensitive(self):
        a = MotiveExpr.of((TATE, 0), (TATE, 4))
        b = MotiveExpr.of((TATE, 4), (TATE, 0))
        assert a.krull_schmidt_equal(b)

    def test_multiplicity_sensitive(self):
        a = MotiveExpr.of((TATE, 0))
        b = MotiveExpr.of((TATE, 0), (TATE, 0))
        assert not a.krull_schmidt_equal(b)

    def test_point_products_are_tate(self):
        a = MotiveExpr.of((SBProduct(C21, (0, 0)), 1))
        assert a.krull_schmidt_equal(MotiveExpr.of((TATE, 1)))

    def test_equivalence_respects_poincare(self):
        a = MotiveExpr.of((SBProduct(C22, (0, 2)), 1))
        b = MotiveExpr.of((SBProduct(C22, (2, 0)), 1))
        assert a == b
        assert a.split_poincare() == b.split_poincare()


class TestSplitPoincare:
    def test_grassmannian_term(self):
        e = MotiveExpr.of((SBProduct(C22, (2,)), 0))
        assert e.split_poincare() == gaussian_binomial(4, 2)

    def test_tate_terms(self):
        e = MotiveExpr.of((TATE, 0), (TATE, 4))
        assert e.split_poincare() == GradedRankPoly({0: 1, 4: 1})

    def test_level_zero_upper_is_a_conic(self):
        e = MotiveExpr.of((UpperMotive(C21, 0), 1))
        assert e.split_poincare() == GradedRankPoly({1: 1, 2: 1})

    def test_opaque_upper_rejected_by_name(self):
        e = MotiveExpr.of((UpperMotive(C22, 1), 0))
        with pytest.raises(UnsupportedOperationError) as excinfo:
            e.split_poincare()
        assert "Upper(p=2, n=2, level=1)" in str(excinfo.value)

    def test_zero_expression(self):
        assert MotiveExpr.zero().split_poincare() == GradedRankPoly.zero()


class TestIdentifyUpperLower:
    def test_single_term_is_both(self):
        e = MotiveExpr.of((TATE, 0))
        located = e.identify_upper_lower()
        assert located.upper == located.lower == Term(TATE, 0)
        assert located.upper_multiplicity == located.lower_multiplicity == 1

    def test_tie_reports_multiplicity(self):
        e = MotiveExpr.of((TATE, 1), (TATE, 1))
        located = e.identify_upper_lower()
        assert located.upper is None and located.upper_multiplicity == 2
        assert located.lower is None and located.lower_multiplicity == 2

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            MotiveExpr.zero().identify_upper_lower()

    def test_distinct_objects_at_extremes(self):
        e = MotiveExpr.of((TATE, 0), (SBProduct(C21, (1,)), 2))
        located = e.identify_upper_lower()
        assert located.upper == Term(TATE, 0)
        assert located.lower == Term(SBProduct(C21, (1,)), 2)


class TestProductRank:
    def test_sbproduct_rank_is_product_of_binomials(self):
        import math

        for context in (C21, C22, C31, DivisionContext(3, 2)):
            degree = context.degree
            for dims in [(1,), (1, 1), (degree - 1, 1), (1, 2, 1)]:
                if any(d > degree for d in dims):
                    continue
                e = MotiveExpr.of((SBProduct(context, dims), 0))
                expected = math.prod(math.comb(degree, d) for d in dims)
                assert e.split_poincare().rank() == expected, (context, dims)


class TestDimUpperMotive:
    def test_examples(self):
        assert dim_upper_motive(C22, 1) == 4
        assert dim_upper_motive(DivisionContext(3, 2), 0) == 8
        assert dim_upper_motive(DivisionContext(2, 3), 3) == 0

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            dim_upper_motive(C22, 3)


class TestJson:
    def test_round_trip_and_canonical_bytes(self):
        e = MotiveExpr.of(
            (SBProduct(C21, (1, 1)), 1),
            (TATE, 4),
            (TATE, 0),
            (UpperMotive(C22, 1), 2),
        )
        encoded = e.to_json_obj()
        assert MotiveExpr.from_json_obj(encoded) == e
        # canonical order: tate terms, then upper, then products
        kinds = [entry["object"]["kind"] for entry in encoded]
        assert kinds == ["tate", "tate", "upper", "product"]
        import json

        assert json.dumps(encoded) == json.dumps(e.to_json_obj())

    def test_malformed_rejected(self):
        with pytest.raises(DomainError):
            MotiveExpr.from_json_obj([{"object": {"kind": "mystery"}, "twist": "0", "multiplicity": "1"}])


# -- property tests ---------------------------------------------------------

objects = st.sampled_from(
    [
        TATE,
        SBProduct(C21, (1,)),
        SBProduct(C21, (1, 1)),
        SBProduct(C22, (2,)),
        SBProduct(C22, (1, 3)),
        SBProduct(C31, (1, 2)),
    ]
)
terms = st.tuples(objects, st.integers(0, 4))
exprs = st.lists(terms, max_size=4).map(MotiveExpr)


@given(exprs, exprs)
def test_poincare_additive(a, b):
    assert (a + b).split_poincare() == a.split_poincare() + b.split_poincare()


@given(exprs, st.integers(0, 5))
def test_poincare_twist_shifts(a, t):
    assert a.twist(t).split_poincare() == a.split_poincare().shift(t)


same_context_exprs = st.lists(
    st.tuples(st.sampled_from([TATE, SBProduct(C21, (1,))]), st.integers(0, 3)),
    max_size=3,
).map(MotiveExpr)


@given(same_context_exprs, same_context_exprs)
def test_poincare_multiplicative(a, b):
    assert (a * b).split_poincare() == a.split_poincare() * b.split_poincare()


@given(exprs, exprs)
def test_equality_is_symmetric_and_respects_hash(a, b):
    assert a.krull_schmidt_equal(a)
    if a.krull_schmidt_equal(b):
        assert b.krull_schmidt_equal(a)
        assert hash(a) == hash(b)
        assert a.split_poincare() == b.split_poincare()


@given(terms)
def test_single_term_is_its_own_extremes(term):
    obj, twist = term
    e = MotiveExpr.of((obj, twist))
    located = e.identify_upper_lower()
    assert located.upper == located.lower == Term(obj, twist)
