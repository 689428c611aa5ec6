import itertools

import pytest

from rspin.degeneration import (DegenerationError, NodeFamilyDatum, SemistableFibre,
                                chain_degrees, chain_length, divisor_degree, family_from_json,
                                limit_from_divisor, limit_spin_type, normalize_chain,
                                reduce_nonexceptional, render_local)
from rspin.graphs import StableGraph, enumerate_spin_types
from rspin.local import extract_sigma, is_good_cokernel

LOOP = StableGraph.build([1], [(0, 0)], 2)
SEPARATING = StableGraph.build([1, 1], [(0, 1)], 2)


def second_difference_degrees(coeffs):
    """Degree on E_i is e_{i-1} - 2 e_i + e_{i+1} with zero boundary values."""
    e = [0, *coeffs, 0]
    return tuple(e[i - 1] - 2 * e[i] + e[i + 1] for i in range(1, len(e) - 1))


def test_chain_length():
    assert chain_length(1, 2) == 1
    assert chain_length(2, 3) == 5
    assert chain_length(1, 1) == 0
    with pytest.raises(DegenerationError):
        chain_length(0, 2)


def test_divisor_degree_examples():
    path = {("C", 1): 1, (1, "D"): 1}
    assert divisor_degree({"C": 0, 1: -1, "D": 0}, path, 1) == 2
    assert all(divisor_degree({"C": 5, 1: 5, "D": 5}, path, j) == 0 for j in ("C", 1, "D"))
    far = {("A", "B"): 1, ("B", "C"): 1}
    assert divisor_degree({"A": 0, "B": 0, "C": 3}, far, "A") == 0


def test_divisor_degree_accepts_either_orientation():
    assert divisor_degree({"a": 1, "b": 0}, {("b", "a"): 2}, "b") == 2
    with pytest.raises(DegenerationError, match="symmetric"):
        divisor_degree({"a": 1, "b": 0}, {("a", "b"): 1, ("b", "a"): 2}, "a")


def test_divisor_degree_missing_coefficient():
    with pytest.raises(DegenerationError, match="missing"):
        divisor_degree({"C": 0}, {("C", 1): 1}, "C")


def test_fibre_degrees_sum_to_zero():
    fibre = SemistableFibre.from_graph(StableGraph.build([1, 1], [(0, 1), (0, 1)], 3),
                                       orders={0: 2, 1: 1})
    delta = fibre.adjacency()
    a = {c: (i * 7) % 5 - 2 for i, c in enumerate(fibre.components)}
    assert sum(divisor_degree(a, delta, c) for c in fibre.components) == 0


# -- reduction -----------------------------------------------------------------


def _fibre_a(graph, values):
    fibre = SemistableFibre.from_graph(graph)
    return fibre, dict(zip([("v", 0), ("e", 0, 1), ("v", 1)], values))


def test_reduce_examples():
    fibre, a = _fibre_a(SEPARATING, (0, 1, 2))
    red = reduce_nonexceptional(fibre, a)
    assert red.c == 0 and red.residues == {0: 1}
    assert red.coefficients[("v", 1)] == 0

    # on the loop omega has even degree, so multiples of r are admissible
    fibre = SemistableFibre.from_graph(LOOP)
    red = reduce_nonexceptional(fibre, {("v", 0): 4, ("e", 0, 1): 2})
    assert red.c == 0 and red.residues == {0: 0}


def test_reduce_rejects_incongruent():
    fibre, a = _fibre_a(SEPARATING, (0, 1, 1))
    with pytest.raises(DegenerationError, match="not congruent"):
        reduce_nonexceptional(fibre, a)


def test_reduce_rejects_bad_degree():
    fibre = SemistableFibre.from_graph(StableGraph.build([1, 1], [(0, 1)], 2), orders={0: 2})
    # chain of 3 curves; omega has degree 1 on each vertex
    a = {("v", 0): 0, ("e", 0, 1): 0, ("e", 0, 2): 0, ("e", 0, 3): 0, ("v", 1): 0}
    with pytest.raises(DegenerationError, match="degree"):
        reduce_nonexceptional(fibre, a)


def test_reduce_missing_coefficient():
    fibre = SemistableFibre.from_graph(SEPARATING)
    with pytest.raises(DegenerationError, match="missing"):
        reduce_nonexceptional(fibre, {("v", 0): 0})


# -- chains --------------------------------------------------------------------


def test_normalize_chain_examples():
    s = normalize_chain(1, 1, 2)
    assert (s.coeffs, s.m, s.degrees) == ((-1,), 1, (2,))
    s = normalize_chain(1, 1, 4)
    assert (s.coeffs, s.m, s.degrees) == ((-3, -2, -1), 1, (4, 0, 0))
    s = normalize_chain(2, 2, 3)
    assert (s.coeffs, s.m, s.degrees) == ((-1, -2, -3, -4, -2), 4, (0, 0, 0, 3, 0))


def test_normalize_chain_residue_zero_is_free():
    s = normalize_chain(0, 3, 4)
    assert s.coeffs == (0,) * 11 and s.m is None and s.twist is None


def test_normalize_chain_rejects_bad_residue():
    with pytest.raises(DegenerationError):
        normalize_chain(4, 1, 4)


def test_displayed_single_offset_formula_diverges():
    """Adding a flat +r after the kink breaks the degree condition once i - m >= 2."""
    r, n, s0 = 4, 1, 1
    e1 = s0 - r
    m = n * (r + e1)
    literal = tuple(i * e1 + (r if i > m else 0) for i in range(1, n * r))
    assert literal == (-3, -2, -5)
    assert chain_degrees(literal)[1] == -4
    assert normalize_chain(s0, n, r).coeffs == (-3, -2, -1)


@pytest.mark.parametrize("r", range(1, 9))
def test_chain_properties(r):
    for n in range(1, 5):
        for s0 in range(r):
            sol = normalize_chain(s0, n, r)
            assert len(sol.coeffs) == n * r - 1
            assert all(e <= 0 for e in sol.coeffs)
            expected = tuple(r if i == sol.m else 0 for i in range(1, n * r))
            assert sol.degrees == expected
            assert second_difference_degrees(sol.coeffs) == expected
            for i, e in enumerate(sol.coeffs, start=1):
                assert (e - i * sol.e1) % r == 0


def test_normalized_chain_is_unique():
    """Among nonpositive chains with e_1 fixed and degrees in {0, r}, only one exists."""
    r, n = 3, 1
    for s0 in range(1, r):
        e1 = s0 - r
        hits = []
        for rest in itertools.product(range(-3 * r, 1), repeat=n * r - 2):
            coeffs = (e1, *rest)
            degs = chain_degrees(coeffs)
            if all(d in (0, r) for d in degs) and sum(d == r for d in degs) <= 1:
                hits.append(coeffs)
        assert hits == [normalize_chain(s0, n, r).coeffs]


# -- limits --------------------------------------------------------------------


def test_limit_examples():
    t = limit_spin_type(LOOP, [NodeFamilyDatum(0, 1, 1)])
    assert t.twists == {0: (1, 1)}
    assert limit_spin_type(LOOP, [NodeFamilyDatum(0, 1, 0)]).twists == {}
    (only,) = enumerate_spin_types(SEPARATING)
    assert limit_spin_type(SEPARATING, [NodeFamilyDatum(0, 1, 1)]) == only


def test_limit_orientation_follows_start_vertex():
    g = StableGraph.build([1, 3], [(0, 1)], 3)
    assert limit_spin_type(g, [NodeFamilyDatum(0, 1, 2)]).twists == {0: (1, 2)}
    assert limit_spin_type(g, [NodeFamilyDatum(0, 1, 1, start=1)]).twists == {0: (1, 2)}


def test_limit_errors():
    with pytest.raises(DegenerationError, match="inconsistent"):
        limit_spin_type(SEPARATING, [NodeFamilyDatum(0, 1, 0)])
    with pytest.raises(DegenerationError, match="node data"):
        limit_spin_type(SEPARATING, [])
    with pytest.raises(DegenerationError, match="endpoint"):
        limit_spin_type(SEPARATING, [NodeFamilyDatum(0, 1, 1, start=5)])


def test_limit_from_divisor_pipeline():
    fibre, a = _fibre_a(SEPARATING, (0, 1, 2))
    assert limit_from_divisor(fibre, a).twists == {0: (1, 1)}


def test_limit_from_divisor_on_longer_chain():
    g = StableGraph.build([1, 3], [(0, 1)], 3)
    fibre = SemistableFibre.from_graph(g, orders={0: 2})
    sol = normalize_chain(2, 2, 3)
    a = {("v", 0): 3, ("v", 1): 0}
    a.update({("e", 0, i): e + 3 * (i % 2) for i, e in enumerate(sol.coeffs, start=1)})
    red = reduce_nonexceptional(fibre, a)
    assert red.residues == {0: 2}
    assert limit_from_divisor(fibre, a).twists == {0: (1, 2)}


def test_render_local():
    b = render_local(1, 2)
    assert is_good_cokernel(b, 3)
    assert extract_sigma(b).classification == "spin"


def test_family_from_json():
    data = {"r": 2, "graph": SEPARATING.to_json(), "nodes": [{"edge": 0, "residue": 1}]}
    graph, nodes = family_from_json(data)
    assert graph == SEPARATING and nodes == [NodeFamilyDatum(0, 1, 1)]
    with pytest.raises(DegenerationError):
        family_from_json({**data, "r": 3})
