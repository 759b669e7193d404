import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from annealc import (ContractViolation, FREEDMAN, ISHIKAWA, Monomial,
                     PseudoBooleanFunction, freedman_reduce, ishikawa_reduce,
                     parse_aux_map, qubo_from_pbf, reduce_to_quadratic,
                     render_aux_map)
from oracles import best_aux_completion, pbf_value, random_pbf_terms


def minimize_over_aux(g, n_orig, n_total, x):
    """Brute-force minimum of g over the auxiliary block at fixed x."""
    best = math.inf
    for aux in itertools.product((0, 1), repeat=n_total - n_orig):
        best = min(best, g.evaluate(tuple(x) + aux))
    return best


@pytest.mark.parametrize("degree", [3, 4, 5, 6])
def test_freedman_gadget_is_exact(degree):
    # negative monomial: one auxiliary, quadratic, same minimum at every x
    term = Monomial(-2.5, tuple(range(1, degree + 1)))
    g = freedman_reduce(term, aux_index=degree + 1)
    assert g.degree() <= 2
    for x in itertools.product((0, 1), repeat=degree):
        want = term.coefficient * math.prod(x)
        assert minimize_over_aux(g, degree, degree + 1, x) == pytest.approx(want)


@pytest.mark.parametrize("degree", [3, 4, 5, 6])
def test_ishikawa_gadget_is_exact(degree):
    term = Monomial(1.75, tuple(range(1, degree + 1)))
    k = (degree - 1) // 2
    g = ishikawa_reduce(term, first_aux_index=degree + 1)
    assert g.degree() <= 2
    assert g.num_vars == degree + k
    for x in itertools.product((0, 1), repeat=degree):
        want = term.coefficient * math.prod(x)
        assert minimize_over_aux(g, degree, degree + k, x) == pytest.approx(want)


def test_gadget_contracts():
    with pytest.raises(ContractViolation):
        freedman_reduce(Monomial(1.0, (1, 2, 3)))   # positive coefficient
    with pytest.raises(ContractViolation):
        freedman_reduce(Monomial(-1.0, (1, 2)))     # already quadratic
    with pytest.raises(ContractViolation):
        ishikawa_reduce(Monomial(-1.0, (1, 2, 3)))  # negative coefficient
    with pytest.raises(ContractViolation):
        ishikawa_reduce(Monomial(1.0, (1,)))


def test_no_auxiliary_auxiliary_couplings(maxsat_poly):
    record = reduce_to_quadratic(maxsat_poly)
    q = qubo_from_pbf(record.result)
    for x in itertools.product((0, 1), repeat=3):
        # best_aux_completion raises on any aux-aux coupling
        best_aux_completion(q, record.original_vars, x + (0,) * 6)
        break


def test_low_degree_input_passes_through():
    f = PseudoBooleanFunction([(1.0, (1, 2)), (-3.0, (2,)), (0.5, ())])
    record = reduce_to_quadratic(f)
    assert record.result == f
    assert record.auxiliary_vars == ()
    assert record.total_vars == f.num_vars


def test_aux_numbering_and_sources():
    # canonical term order: (1,2,3) before (2,3,4,5,6); one aux then two
    f = PseudoBooleanFunction([(2.0, (2, 3, 4, 5, 6)), (-1.0, (1, 2, 3))], num_vars=6)
    record = reduce_to_quadratic(f)
    kinds = [(a.index, a.gadget, a.source) for a in record.auxiliary_vars]
    assert kinds == [(7, FREEDMAN, (1, 2, 3)),
                     (8, ISHIKAWA, (2, 3, 4, 5, 6)),
                     (9, ISHIKAWA, (2, 3, 4, 5, 6))]
    assert record.total_vars == 9


def test_aux_count_law(maxsat_poly, multicut_encoded):
    # negatives of degree >= 3 contribute 1, positives floor((d-1)/2)
    for poly in (maxsat_poly, multicut_encoded[0]):
        expected = 0
        for t in poly.terms:
            if t.degree < 3:
                continue
            expected += 1 if t.coefficient < 0 else (t.degree - 1) // 2
        record = reduce_to_quadratic(poly)
        assert len(record.auxiliary_vars) == expected


@given(st.integers(0, 200))
@settings(max_examples=40, deadline=None)
def test_reduction_is_exact_for_every_assignment(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    terms = random_pbf_terms(rng, n, max_degree=min(5, n), num_terms=rng.randint(2, 7))
    f = PseudoBooleanFunction(terms, num_vars=n)
    record = reduce_to_quadratic(f)
    assert record.result.degree() <= 2
    q = qubo_from_pbf(record.result)
    for x in itertools.product((0, 1), repeat=n):
        padded = x + (0,) * (record.total_vars - n)
        got = best_aux_completion(q, n, padded)
        assert math.isclose(got, pbf_value(terms, x), abs_tol=1e-9)


def test_aux_map_roundtrip(multicut_reduction):
    text = render_aux_map(multicut_reduction)
    assert parse_aux_map(text) == list(multicut_reduction.auxiliary_vars)
    first = text.splitlines()[0].split()
    assert first[0] == "aux" and first[2] in (FREEDMAN, ISHIKAWA)
