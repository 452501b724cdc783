import pytest
from hypothesis import given, settings, strategies as st

from rlscycle.cycle import (
    Arc,
    CycleGraph,
    closed_neighborhood,
    find_dense_arc,
    is_dominating,
    is_minimal_dominating,
    movability,
    private_neighborhood,
    redundant_vertices,
    to_dot,
    uncovered_count,
)


def brute_minimal(g, s):
    """Subset-minimality by trying every single-vertex removal (domination is
    monotone, so one-vertex removals suffice)."""
    return is_dominating(g, s) and not any(is_dominating(g, s - {v}) for v in s)


@st.composite
def cycle_and_set(draw, min_n=3, max_n=16, nonempty=True):
    n = draw(st.integers(min_n, max_n))
    s = draw(st.sets(st.integers(0, n - 1), min_size=1 if nonempty else 0))
    return CycleGraph(n), frozenset(s)


@st.composite
def cycle_and_dominating(draw, min_n=3, max_n=14):
    n = draw(st.integers(min_n, max_n))
    # start from a guaranteed dominating skeleton and thin randomly
    s = set(range(n))
    for v in draw(st.lists(st.integers(0, max_n - 1), max_size=2 * max_n)):
        cand = s - {v % n}
        if is_dominating(CycleGraph(n), cand):
            s = cand
    extra = draw(st.sets(st.integers(0, n - 1), max_size=n))
    return CycleGraph(n), frozenset(s | extra)


class TestBasics:
    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            CycleGraph(2)

    def test_closed_neighborhood_wraps(self):
        g = CycleGraph(6)
        assert closed_neighborhood(g, 0) == {5, 0, 1}
        assert closed_neighborhood(g, 5) == {4, 5, 0}

    def test_uncovered_examples(self):
        g = CycleGraph(6)
        assert uncovered_count(g, {0, 3}) == 0
        assert uncovered_count(g, {0}) == 3
        assert uncovered_count(g, set()) == 6

    def test_vertex_out_of_range(self):
        g = CycleGraph(5)
        with pytest.raises(ValueError):
            uncovered_count(g, {5})

    def test_dot_export_mentions_every_vertex(self):
        text = to_dot(CycleGraph(4), {1})
        assert "1 [style=filled" in text and "3 -- 0" in text


class TestPrivateNeighborhood:
    def test_example(self):
        g = CycleGraph(6)
        assert private_neighborhood(g, {0, 2, 4}, 0) == {0}

    def test_requires_membership(self):
        g = CycleGraph(6)
        with pytest.raises(ValueError):
            private_neighborhood(g, {0, 2, 4}, 1)

    def test_redundant_example(self):
        g = CycleGraph(8)
        assert redundant_vertices(g, {1, 2, 4, 7}) == {1, 2}

    @given(cycle_and_set())
    def test_pn_is_subset_of_neighborhood(self, gs):
        g, s = gs
        for v in s:
            assert private_neighborhood(g, s, v) <= closed_neighborhood(g, v)


class TestMinimality:
    @given(cycle_and_dominating())
    @settings(max_examples=150)
    def test_minimal_iff_irredundant(self, gs):
        g, s = gs
        assert is_minimal_dominating(g, s) == brute_minimal(g, s)
        assert is_minimal_dominating(g, s) == (not redundant_vertices(g, s))

    def test_raises_on_non_dominating(self):
        with pytest.raises(ValueError):
            is_minimal_dominating(CycleGraph(9), {0})

    def test_large_sets_never_minimal(self):
        # any dominating set bigger than floor(n/2) has a redundant vertex
        for n in range(3, 13):
            g = CycleGraph(n)
            for s in _all_dominating(g):
                if len(s) > n // 2:
                    assert redundant_vertices(g, s)

    def test_superhereditary(self):
        # redundancy survives adding vertices
        g = CycleGraph(10)
        base = frozenset({0, 1, 3, 6, 8})
        assert redundant_vertices(g, base)
        for v in range(10):
            assert redundant_vertices(g, base | {v})


def _all_dominating(g):
    n = g.n
    for mask in range(1, 1 << n):
        s = frozenset(v for v in range(n) if mask >> v & 1)
        if is_dominating(g, s):
            yield s


class TestDenseArc:
    def test_frozen_examples(self):
        assert find_dense_arc(CycleGraph(8), {1, 2, 4}) == Arc(1, 3, 8)
        assert find_dense_arc(CycleGraph(5), {0, 1, 2}) == Arc(0, 2, 5)
        assert find_dense_arc(CycleGraph(6), {0, 2, 4}) is None

    def test_arc_validation(self):
        with pytest.raises(ValueError):
            Arc(0, 0, 5)
        with pytest.raises(ValueError):
            Arc(0, 5, 5)
        assert Arc(3, 2, 5).vertices() == (3, 4, 0)

    def test_agrees_with_redundancy_from_4(self):
        for n in range(4, 13):
            g = CycleGraph(n)
            for s in _all_dominating(g):
                present = find_dense_arc(g, s) is not None
                assert present == bool(redundant_vertices(g, s)), (n, sorted(s))

    def test_n3_boundary_counterexample(self):
        # On C_3 the pair {0,1} dominates and vertex 0 is redundant, yet no
        # induced path of C_3 can contain three vertices, so the arc
        # criterion is genuinely blind here.  Documented boundary case.
        g = CycleGraph(3)
        assert redundant_vertices(g, {0, 1})
        assert find_dense_arc(g, {0, 1}) is None

    @given(cycle_and_set(min_n=4, max_n=16))
    def test_returned_arc_is_dense(self, gs):
        g, s = gs
        arc = find_dense_arc(g, s)
        if arc is not None:
            assert arc.length <= 3
            assert sum(1 for v in arc.vertices() if v in s) >= 3


class TestMovability:
    def test_symmetric_gaps_example(self):
        m = movability(CycleGraph(9), {0, 3, 6}, 0)
        assert (m.clockwise, m.counterclockwise, m.free) == (False, False, False)

    def test_asymmetric_example(self):
        # gap of 2 ahead (to 4), gap of 3 behind (to 5): only the move that
        # leaves the short gap behind keeps domination
        m = movability(CycleGraph(6), {2, 4, 5}, 2)
        assert (m.clockwise, m.counterclockwise) == (False, True)

    def test_free_example(self):
        m = movability(CycleGraph(8), {1, 2, 4, 7}, 1)
        assert m.free and m.clockwise and m.counterclockwise

    def test_membership_required(self):
        with pytest.raises(ValueError):
            movability(CycleGraph(6), {0, 3}, 1)

    @given(cycle_and_dominating(min_n=4, max_n=12))
    @settings(max_examples=120)
    def test_flags_match_simulated_moves(self, gs):
        g, d = gs
        for v in d:
            m = movability(g, d, v)
            cw_target = (v + 1) % g.n
            ccw_target = (v - 1) % g.n
            if cw_target not in d:
                moved = (d - {v}) | {cw_target}
                assert m.clockwise == is_dominating(g, moved), (g.n, sorted(d), v)
            if ccw_target not in d:
                moved = (d - {v}) | {ccw_target}
                assert m.counterclockwise == is_dominating(g, moved)

    @given(cycle_and_dominating(min_n=4, max_n=12))
    @settings(max_examples=120)
    def test_free_iff_redundant(self, gs):
        g, d = gs
        red = redundant_vertices(g, d)
        for v in d:
            assert movability(g, d, v).free == (v in red)
