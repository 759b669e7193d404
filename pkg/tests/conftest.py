import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from annealc import (encode_maxsat, encode_tree_multicut, parse_dimacs,
                     parse_tree_instance, qubo_from_pbf, reduce_to_quadratic)

DATA = Path(__file__).parent.parent / "data"


@pytest.fixture(scope="session")
def maxsat_formula():
    return parse_dimacs((DATA / "maxsat39.cnf").read_text())


@pytest.fixture(scope="session")
def maxsat_poly(maxsat_formula):
    return encode_maxsat(maxsat_formula)


@pytest.fixture(scope="session")
def maxsat_reduction(maxsat_poly):
    return reduce_to_quadratic(maxsat_poly)


@pytest.fixture(scope="session")
def maxsat_qubo(maxsat_reduction):
    return qubo_from_pbf(maxsat_reduction.result)


@pytest.fixture(scope="session")
def multicut_instance():
    return parse_tree_instance((DATA / "multicut_tree20.txt").read_text())


@pytest.fixture(scope="session")
def multicut_encoded(multicut_instance):
    return encode_tree_multicut(multicut_instance)


@pytest.fixture(scope="session")
def multicut_reduction(multicut_encoded):
    return reduce_to_quadratic(multicut_encoded[0])


@pytest.fixture(scope="session")
def multicut_qubo(multicut_reduction):
    return qubo_from_pbf(multicut_reduction.result)
