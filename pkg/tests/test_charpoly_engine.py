from fractions import Fraction

import networkx as nx
import pytest

from chain_graph import build_chain, laplacian
from charpoly_engine import (
    CharPoly,
    audit_deleted_minors,
    charpoly,
    deleted_minor_case,
    deleted_minor_formula,
    det_tridiagonal,
    determinant,
    even_minor_sum,
    inverse,
    leading_principal_minors,
    principal_minor_sums_bruteforce,
    schur_determinant,
)
from closed_forms import a5n
from errors import DomainError, ResourceGuardError
from exact_arith import QuadExt
from exact_matrix import ExactMatrix
from hepta_config import HeptaConfig
from oracles import OracleGraph
from symmetry_decomposition import decompose, extract_blocks, integerize_even_block, published_odd_block


class TestDeterminant:
    def test_small_integer(self):
        assert determinant(ExactMatrix([[2, 1], [1, 2]])) == 3
        assert determinant(ExactMatrix([[0, 1], [1, 0]])) == -1
        assert determinant(ExactMatrix([[1, 2], [2, 4]])) == 0

    def test_rational(self):
        m = ExactMatrix([[Fraction(1, 2), 1], [1, 4]])
        assert determinant(m) == 1

    def test_quadratic_field(self):
        r = QuadExt.sqrt(2)
        m = ExactMatrix([[2, r], [r, 3]])
        assert determinant(m) == 4

    def test_grounded_complete_graph(self):
        grounded = OracleGraph(nx.complete_graph(4)).grounded_laplacian()
        assert determinant(grounded) == 16

    def test_tridiagonal(self):
        assert det_tridiagonal([3, 2, 3, 2, 3], [-1] * 4) == 45
        assert det_tridiagonal([], []) == 1

    def test_inverse(self):
        m = ExactMatrix([[2, 1], [1, 1]])
        assert inverse(m) == ExactMatrix([[1, -1], [-1, 2]])
        with pytest.raises(DomainError):
            inverse(ExactMatrix([[1, 2], [2, 4]]))

    def test_schur_matches_direct(self, pair2):
        matrix = integerize_even_block(pair2)
        assert schur_determinant(matrix, 2) == determinant(matrix)
        assert determinant(matrix) == 0


class TestLeadingMinors:
    def test_published_m_sequence(self):
        assert leading_principal_minors(published_odd_block(2)) == [3, 5, 12, 19, 45, 71, 168, 265, 627]

    def test_graph_odd_block(self, pair2):
        assert leading_principal_minors(pair2.odd) == [3, 5, 12, 19, 64, 109, 263, 417, 988]

    def test_dense_path_matches_direct(self):
        m = ExactMatrix([[2, -1, -1], [-1, 3, 0], [-1, 0, 4]])
        assert leading_principal_minors(m) == [2, 5, 17]

    def test_zero_pivot_fallback(self):
        m = ExactMatrix([[0, 1, 0], [1, 0, 1], [1, 1, 1]])
        assert leading_principal_minors(m) == [0, -1, determinant(m)]


class TestCharPoly:
    def test_monic_required(self):
        with pytest.raises(ValueError):
            CharPoly(coefficients=(2, 1))

    def test_str_and_minor_sums(self):
        poly = CharPoly(coefficients=(1, -3, 2))
        assert str(poly) == "x^2 - 3*x + 2"
        assert poly.minor_sum(1) == 3
        assert poly.minor_sum(2) == 2
        assert poly.evaluate(1) == 0
        with pytest.raises(DomainError):
            poly.minor_sum(3)

    def test_product(self):
        p = CharPoly(coefficients=(1, -1))
        q = CharPoly(coefficients=(1, -2))
        assert p * q == CharPoly(coefficients=(1, -3, 2))

    def test_published_odd_block_n1(self):
        poly = charpoly(published_odd_block(1))
        assert poly.degree == 5
        assert poly.coefficients[-1] == -45
        assert poly.minor_sum(4) == 135
        assert poly.minor_sum(1) == 13

    def test_even_block_n1(self, pair1):
        assert even_minor_sum(pair1, 6) == 0
        assert even_minor_sum(pair1, 5) == 11
        assert even_minor_sum(pair1, 4) == 51
        assert even_minor_sum(pair1, 1) == pair1.even.trace()

    def test_even_block_n2(self, pair2):
        assert even_minor_sum(pair2, 10) == 40

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 16))
    def test_even_block_determinant_part_matches_closed_form(self, n):
        pair = decompose(extract_blocks(build_chain(n)))
        assert even_minor_sum(pair, 5 * n) == a5n(n)

    def test_even_minor_sum_range(self, pair1):
        with pytest.raises(DomainError):
            even_minor_sum(pair1, 7)

    def test_quadratic_entries_give_rational_charpoly(self):
        small = ExactMatrix([[2, QuadExt.sqrt(2)], [QuadExt.sqrt(2), 3]])
        assert charpoly(small) == CharPoly(coefficients=(1, -5, 4))

    def test_laplacian_constant_term_vanishes(self):
        poly = charpoly(laplacian(build_chain(1)))
        assert poly.coefficients[-1] == 0
        assert poly.minor_sum(1) == 24
        assert poly.is_integral()

    @pytest.mark.parametrize("n", [1, 2])
    def test_factorization(self, n):
        pair = decompose(extract_blocks(build_chain(n)))
        whole = charpoly(laplacian(build_chain(n)))
        assert whole == charpoly(integerize_even_block(pair)) * charpoly(pair.odd)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_factorization_slow(self, n):
        pair = decompose(extract_blocks(build_chain(n)))
        whole = charpoly(laplacian(build_chain(n)))
        assert whole == charpoly(integerize_even_block(pair)) * charpoly(pair.odd)

    def test_bruteforce_guard(self):
        with pytest.raises(ResourceGuardError):
            principal_minor_sums_bruteforce(ExactMatrix.identity(8))

    def test_bruteforce_small(self):
        assert principal_minor_sums_bruteforce(ExactMatrix([[2, 1], [1, 2]])) == [1, 4, 3]


class TestDeletedMinors:
    def test_cases(self):
        assert deleted_minor_case(2, 1) == "single_bar"
        assert deleted_minor_case(2, 3) == "single_top"
        assert deleted_minor_case(2, 1, 2) == "pair_bars"
        assert deleted_minor_case(2, 2, 7) == "pair_bar_top"
        assert deleted_minor_case(2, 3, 5) == "pair_first_top"
        assert deleted_minor_case(2, 4, 11) == "pair_last_top"
        assert deleted_minor_case(2, 4, 8) == "pair_inner_tops"
        assert deleted_minor_case(2, 3, 11) == "uncovered"

    def test_bad_indices(self):
        with pytest.raises(DomainError):
            deleted_minor_case(2, 0)
        with pytest.raises(DomainError):
            deleted_minor_case(2, 5, 5)
        with pytest.raises(DomainError):
            deleted_minor_formula(2, 3, 11)

    def test_formula_values(self):
        assert deleted_minor_formula(2, 1) == 2
        assert deleted_minor_formula(2, 3) == 4
        assert deleted_minor_formula(2, 1, 2) == 6

    @pytest.mark.parametrize("n", [1, 2])
    def test_audit_flags_only_first_top_pairs(self, n):
        pair = decompose(extract_blocks(build_chain(n)))
        audits = audit_deleted_minors(pair, HeptaConfig())
        size = 5 * n + 1
        assert len(audits) == size + size * (size - 1) // 2
        assert all(a.match for a in audits if len(a.deleted) == 1)
        mismatched = {a.case for a in audits if not a.match and a.case != "uncovered"}
        assert mismatched == {"pair_first_top"}
        uncovered = [a for a in audits if a.case == "uncovered"]
        assert len(uncovered) == 1
        assert uncovered[0].exact_value == str(4 * n * 2 ** n)
        assert uncovered[0].formula_value is None

    def test_sampled_audit_is_deterministic(self):
        pair = decompose(extract_blocks(build_chain(5)))
        config = HeptaConfig(minor_audit_samples=6)
        first = audit_deleted_minors(pair, config)
        second = audit_deleted_minors(pair, config)
        assert len(first) == 6
        assert [a.deleted for a in first] == [a.deleted for a in second]
