from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from chain_graph import build_chain, laplacian
from errors import DomainError, ResourceGuardError
from exact_matrix import ExactMatrix
from models import top
from oracles import (
    OracleGraph,
    foster_sum,
    kirchhoff_decomposed_exact,
    kirchhoff_decomposed_numeric,
    kirchhoff_resistance,
    kirchhoff_spectral,
    numeric_spectrum,
    resistance_table,
    spanning_trees_enumerate,
    spanning_trees_matrix_tree,
    spanning_trees_spectral,
    spectrum_union_gap,
)
from symmetry_decomposition import decompose, extract_blocks


class TestOracleGraph:
    def test_chain_ground_is_first_top(self, h1):
        oracle = OracleGraph(h1)
        assert oracle.ground == top(1)
        assert oracle.order == 11
        assert oracle.n == 1
        assert oracle.laplacian() == laplacian(h1)
        assert oracle.grounded_laplacian().size == 10

    @pytest.mark.parametrize("graph", [nx.DiGraph([(0, 1)]), nx.MultiGraph([(0, 1)])])
    def test_rejects_non_simple(self, graph):
        with pytest.raises(DomainError):
            OracleGraph(graph)

    def test_rejects_self_loops(self):
        with pytest.raises(DomainError):
            OracleGraph(nx.Graph([(0, 0), (0, 1)]))

    def test_rejects_other_inputs(self):
        with pytest.raises(DomainError):
            OracleGraph([[0, 1]])

    def test_disconnected(self):
        graph = nx.Graph([(0, 1), (2, 3)])
        with pytest.raises(DomainError):
            kirchhoff_resistance(graph)
        with pytest.raises(DomainError):
            spanning_trees_matrix_tree(graph)


class TestResistance:
    def test_complete_graph(self):
        table = resistance_table(nx.complete_graph(4))
        assert table.resistance(0, 3) == Fraction(1, 2)
        assert table.kirchhoff_index() == 3

    def test_cycle_and_path(self):
        assert kirchhoff_resistance(nx.cycle_graph(4)) == 5
        assert kirchhoff_resistance(nx.path_graph(3)) == 4

    def test_single_vertex(self):
        graph = nx.Graph()
        graph.add_node(0)
        assert kirchhoff_resistance(graph) == 0

    def test_h1_exact(self, h1):
        assert kirchhoff_resistance(h1) == 84

    def test_h1_bar_edge(self, h1):
        table = resistance_table(h1)
        assert 0 < table.resistance("bar:1", "top:3") < 1
        assert table.resistance("top:1", "top:1") == 0
        assert table.resistance("top:1", "bot:5") == table.resistance("bot:1", "top:5")

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_foster(self, n):
        assert foster_sum(build_chain(n)) == 9 * n + 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(4, 11))
    def test_foster_slow(self, n):
        assert foster_sum(build_chain(n)) == 9 * n + 1

    def test_csv(self):
        text = resistance_table(nx.path_graph(3)).to_csv()
        assert text == "u,v,resistance\n0,1,1\n0,2,2\n1,2,1\n"


class TestSpanningTrees:
    def test_known_graphs(self):
        assert spanning_trees_matrix_tree(nx.complete_graph(5)) == 125
        assert spanning_trees_matrix_tree(nx.cycle_graph(6)) == 6
        assert spanning_trees_matrix_tree(nx.path_graph(4)) == 1

    def test_h1_and_h2(self, h1, h2):
        assert spanning_trees_matrix_tree(h1) == 45
        assert spanning_trees_matrix_tree(h2) == 1976

    def test_enumeration_triangle(self, h1, h2):
        assert spanning_trees_enumerate(h1) == 45
        assert spanning_trees_enumerate(h2) == spanning_trees_matrix_tree(h2)

    def test_enumeration_guard(self):
        with pytest.raises(ResourceGuardError):
            spanning_trees_enumerate(build_chain(3))

    def test_spectral(self, h1):
        assert spanning_trees_spectral(nx.complete_graph(5)) == pytest.approx(125, rel=1e-9)
        assert spanning_trees_spectral(h1) == pytest.approx(45, rel=1e-9)


class TestSpectra:
    def test_numeric_spectrum_of_path(self):
        summary = numeric_spectrum(ExactMatrix([[1, -1], [-1, 1]]))
        assert summary.eigenvalues == pytest.approx([0.0, 2.0], abs=1e-12)
        assert summary.zero_count == 1
        assert summary.reciprocal_sum_nonzero == pytest.approx(0.5)
        assert summary.max_residual < 1e-12

    def test_numeric_spectrum_rejects_asymmetric(self):
        with pytest.raises(DomainError):
            numeric_spectrum(ExactMatrix([[1, 2], [0, 1]]))

    def test_kirchhoff_spectral(self, h1):
        assert kirchhoff_spectral(h1) == pytest.approx(84, rel=1e-9)
        assert kirchhoff_spectral(nx.complete_graph(4)) == pytest.approx(3, rel=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_decomposed_forms_agree_with_resistance(self, n):
        chain = build_chain(n)
        pair = decompose(extract_blocks(chain))
        exact = kirchhoff_resistance(chain)
        assert kirchhoff_decomposed_exact(pair) == exact
        assert kirchhoff_decomposed_numeric(pair) == pytest.approx(float(exact), rel=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_spectrum_union(self, n):
        self._assert_union(n)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 21))
    def test_spectrum_union_range(self, n):
        self._assert_union(n)

    @staticmethod
    def _assert_union(n):
        chain = build_chain(n)
        pair = decompose(extract_blocks(chain))
        ok, gap = spectrum_union_gap(
            numeric_spectrum(laplacian(chain)).eigenvalues,
            numeric_spectrum(pair.even).eigenvalues,
            numeric_spectrum(pair.odd).eigenvalues,
        )
        assert ok
        assert gap < 1e-8

    def test_spectrum_union_detects_size_mismatch(self):
        ok, gap = spectrum_union_gap([0.0, 1.0], [0.0])
        assert not ok
        assert gap == float("inf")

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(1, 21))
    def test_cross_oracle(self, n):
        chain = build_chain(n)
        exact = kirchhoff_resistance(chain)
        assert abs(kirchhoff_spectral(chain) - float(exact)) / float(exact) < 1e-9
        assert np.isfinite(float(exact))
