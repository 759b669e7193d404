import itertools

import pytest

from annealc import (CnfFormula, DimensionError, InstanceError, ParseError,
                     PseudoBooleanFunction, TreeMulticutInstance,
                     count_satisfied, cut_is_valid, decode_cut,
                     encode_maxsat, encode_tree_multicut, parse_dimacs,
                     parse_tree_instance)


def test_parse_dimacs_basics():
    f = parse_dimacs("c header comment\np cnf 3 2\n1 -2 0\n3 0\n")
    assert f.num_vars == 3
    assert f.num_clauses == 2
    assert f.clauses == ((1, -2), (3,))


def test_parse_dimacs_clause_spanning_lines():
    f = parse_dimacs("p cnf 4 2\n1 2\n3 0 -4\n0\n")
    assert f.clauses == ((1, 2, 3), (-4,))


@pytest.mark.parametrize("text,line", [
    ("1 2 0\np cnf 2 1\n", 1),          # clause before header
    ("p cnf 2 1\np cnf 2 1\n1 0\n", 2),  # duplicate header
    ("p dimacs 2 1\n1 0\n", 1),
    ("p cnf 2 1\n1 x 0\n", 2),
    ("p cnf 2 1\n3 0\n", 2),             # literal out of range
])
def test_parse_dimacs_errors_with_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        parse_dimacs(text)
    assert err.value.line == line


def test_parse_dimacs_structural_errors():
    with pytest.raises(ParseError):
        parse_dimacs("c nothing here\n")
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 1\n1 2\n")  # unterminated clause
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 2\n1 0\n")  # declared count mismatch


def test_penalty_counts_falsified_clauses(maxsat_formula, maxsat_poly):
    # the multilinear penalty is determined by its values, so checking every
    # assignment pins the whole expansion
    n = maxsat_formula.num_vars
    for x in itertools.product((0, 1), repeat=n):
        expected = maxsat_formula.num_clauses - count_satisfied(maxsat_formula, x)
        assert maxsat_poly.evaluate(x) == pytest.approx(expected)


def test_penalty_small_example_terms():
    # single clause (x1 or not x2): falsified iff x1=0, x2=1
    f = CnfFormula(2, ((1, -2),))
    assert encode_maxsat(f) == PseudoBooleanFunction(
        [(1.0, (2,)), (-1.0, (1, 2))], num_vars=2)


def test_tautology_contributes_nothing():
    f = CnfFormula(2, ((1, -1), (2,)))
    poly = encode_maxsat(f)
    assert poly == PseudoBooleanFunction([(1.0, ()), (-1.0, (2,))], num_vars=2)
    assert count_satisfied(f, (0, 1)) == 2


def test_repeated_literal_collapses():
    f = CnfFormula(1, ((1, 1),))
    poly = encode_maxsat(f)
    assert poly.evaluate((0,)) == 1.0
    assert poly.evaluate((1,)) == 0.0


def test_count_satisfied_checks_length(maxsat_formula):
    with pytest.raises(DimensionError):
        count_satisfied(maxsat_formula, (0, 1))
    best = (0, 0, 1, 1, 1, 1, 1, 1, 1)
    assert count_satisfied(maxsat_formula, best) == maxsat_formula.num_clauses


def test_parse_tree_instance(multicut_instance):
    assert multicut_instance.num_vertices == 20
    assert len(multicut_instance.edges) == 19
    assert len(multicut_instance.pairs) == 10


def test_parse_tree_small():
    inst = parse_tree_instance("# toy\ntree 3\ne 1 2\ne 2 3\npair 1 3\n")
    assert inst.edges == ((1, 2), (2, 3))
    assert inst.pairs == ((1, 3),)


@pytest.mark.parametrize("text", [
    "tree 3\ne 1 2\ne 2 4\n",        # vertex out of range
    "tree 3\ne 1 2\ne 3 3\n",        # self-loop
    "tree 3\ne 1 2\ne 2 1\n",        # duplicate edge
    "tree 3\ne 1 2\n",               # wrong edge count
    "tree 4\ne 1 2\ne 2 3\ne 1 3\n",  # right count, but a cycle strands vertex 4
    "tree 3\ne 1 2\ne 2 3\npair 1 9\n",
    "tree 3\ne 1 2\ne 2 3\npair 2 2\n",
])
def test_tree_instance_errors(text):
    with pytest.raises(InstanceError):
        parse_tree_instance(text)


def test_tree_parse_errors():
    with pytest.raises(ParseError) as err:
        parse_tree_instance("tree 2\nedge 1 2\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_tree_instance("e 1 2\ntree 2\n")
    with pytest.raises(ParseError):
        parse_tree_instance("tree two\n")
    with pytest.raises(ParseError):
        parse_tree_instance("")


def test_encode_path_graph_by_hand():
    # path 1-2-3-4, pairs (1,3) and (2,4): every edge lies on a path
    inst = TreeMulticutInstance(4, ((1, 2), (2, 3), (3, 4)), ((1, 3), (2, 4)))
    poly, enc = encode_tree_multicut(inst)
    assert enc.variable_edges == ((1, 2), (2, 3), (3, 4))
    assert enc.paths == ((1, 2), (2, 3))
    assert enc.penalty_weight == 2.0
    expected = PseudoBooleanFunction(
        [(3.0, ()), (-1.0, (1,)), (-1.0, (2,)), (-1.0, (3,)),
         (2.0, (1, 2)), (2.0, (2, 3))], num_vars=3)
    assert poly == expected
    # sole optimal cut: remove the middle edge
    assert poly.evaluate((1, 0, 1)) == 1.0
    assert decode_cut(enc, (1, 0, 1)) == ((2, 3),)
    assert cut_is_valid(inst, [(2, 3)])
    assert not cut_is_valid(inst, [(1, 2)])


def test_edges_off_every_path_get_no_variable():
    inst = TreeMulticutInstance(4, ((1, 2), (1, 3), (1, 4)), ((2, 3),))
    poly, enc = encode_tree_multicut(inst)
    assert enc.variable_edges == ((1, 2), (1, 3))
    assert poly.num_vars == 2
    assert enc.paths == ((1, 2),)


def test_encoding_guards():
    inst = TreeMulticutInstance(2, ((1, 2),), ())
    with pytest.raises(InstanceError):
        encode_tree_multicut(inst)
    paired = TreeMulticutInstance(2, ((1, 2),), ((1, 2),))
    with pytest.raises(InstanceError):
        encode_tree_multicut(paired, penalty_weight=0.0)
    poly, enc = encode_tree_multicut(paired, penalty_weight=7.5)
    assert enc.penalty_weight == 7.5
    assert poly.evaluate((1,)) == 7.5
    assert poly.evaluate((0,)) == 1.0


def test_corpus_encoding_shape(multicut_instance, multicut_encoded):
    poly, enc = multicut_encoded
    assert poly.num_vars == 14
    assert enc.penalty_weight == 10.0
    # keeping everything pays every pair's penalty; cutting everything pays
    # one unit per variable edge
    assert poly.evaluate((1,) * 14) == 100.0
    assert poly.evaluate((0,) * 14) == 14.0
    assert decode_cut(enc, (0,) * 14) == enc.variable_edges
    assert cut_is_valid(multicut_instance, enc.variable_edges)
    with pytest.raises(DimensionError):
        decode_cut(enc, (1,) * 13)
