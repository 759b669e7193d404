"""Problem frontends.

Two input formats are understood: DIMACS CNF for maximum satisfiability and a
small text format for multicut on trees.  Both encode into a pseudo-Boolean
penalty polynomial whose minimum counts constraint violations.
"""

from dataclasses import dataclass

import networkx as nx

from .errors import DimensionError, InstanceError, ParseError
from .pbf import PseudoBooleanFunction


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple  # tuples of nonzero literals; sign = polarity

    @property
    def num_clauses(self):
        return len(self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    """Read DIMACS CNF: 'c' comments, one 'p cnf <vars> <clauses>' header,
    0-terminated clauses (which may span lines)."""
    num_vars = None
    declared = None
    clauses = []
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise ParseError("duplicate problem line", line=lineno)
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError("malformed problem line %r" % line, line=lineno)
            try:
                num_vars, declared = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError("malformed problem line %r" % line, line=lineno)
            if num_vars < 0 or declared < 0:
                raise ParseError("negative size in problem line", line=lineno)
            continue
        if num_vars is None:
            raise ParseError("clause before problem line", line=lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError("bad literal %r" % token, line=lineno)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError("literal %d out of range (%d variables)"
                                     % (lit, num_vars), line=lineno)
                pending.append(lit)
    if num_vars is None:
        raise ParseError("missing problem line")
    if pending:
        raise ParseError("last clause not terminated by 0")
    if declared != len(clauses):
        raise ParseError("problem line declares %d clauses, found %d"
                         % (declared, len(clauses)))
    return CnfFormula(num_vars, tuple(clauses))


def _clause_penalty(clause):
    """Multilinear expansion of the product of per-literal 'falsified' factors.

    A positive literal contributes (1 - x_i), a negative one x_i; the product
    is 1 exactly on assignments falsifying the clause.  Repeated variables
    collapse idempotently, so tautological clauses expand to zero.
    """
    terms = {(): 1.0}
    for lit in clause:
        v = abs(lit)
        grown = {}
        for variables, coeff in terms.items():
            with_v = tuple(sorted(set(variables) | {v}))
            if lit > 0:
                grown[variables] = grown.get(variables, 0.0) + coeff
                grown[with_v] = grown.get(with_v, 0.0) - coeff
            else:
                grown[with_v] = grown.get(with_v, 0.0) + coeff
        terms = grown
    return terms


def encode_maxsat(formula: CnfFormula) -> PseudoBooleanFunction:
    """Penalty polynomial counting falsified clauses.

    Minimizing it over {0,1}^n maximizes the number of satisfied clauses;
    the minimum value is the number of clauses that cannot be satisfied
    simultaneously.
    """
    total = {}
    for clause in formula.clauses:
        for variables, coeff in _clause_penalty(clause).items():
            total[variables] = total.get(variables, 0.0) + coeff
    return PseudoBooleanFunction(
        [(coeff, variables) for variables, coeff in total.items()],
        num_vars=formula.num_vars)


def count_satisfied(formula: CnfFormula, assignment) -> int:
    """Number of clauses the 0/1 ``assignment`` satisfies."""
    if len(assignment) < formula.num_vars:
        raise DimensionError("assignment has %d entries, formula has %d variables"
                             % (len(assignment), formula.num_vars))
    satisfied = 0
    for clause in formula.clauses:
        for lit in clause:
            value = assignment[abs(lit) - 1]
            if (lit > 0 and value) or (lit < 0 and not value):
                satisfied += 1
                break
    return satisfied


@dataclass(frozen=True)
class TreeMulticutInstance:
    num_vertices: int
    edges: tuple   # (u, v) in file order
    pairs: tuple   # (s, t) terminal pairs


def parse_tree_instance(text: str) -> TreeMulticutInstance:
    """Read a tree multicut instance: '# ' comments, 'tree <n>' header, then
    'e <u> <v>' edges and 'pair <s> <t>' terminal pairs."""
    num_vertices = None
    edges = []
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "tree":
            if num_vertices is not None:
                raise ParseError("duplicate header", line=lineno)
            if len(fields) != 2:
                raise ParseError("malformed header %r" % line, line=lineno)
            try:
                num_vertices = int(fields[1])
            except ValueError:
                raise ParseError("bad vertex count %r" % fields[1], line=lineno)
            if num_vertices < 1:
                raise ParseError("vertex count must be positive", line=lineno)
        elif fields[0] in ("e", "pair"):
            if num_vertices is None:
                raise ParseError("%r before header" % fields[0], line=lineno)
            if len(fields) != 3:
                raise ParseError("expected two vertices in %r" % line, line=lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("bad vertex in %r" % line, line=lineno)
            (edges if fields[0] == "e" else pairs).append((u, v))
        else:
            raise ParseError("unrecognized line %r" % line, line=lineno)
    if num_vertices is None:
        raise ParseError("missing header")
    instance = TreeMulticutInstance(num_vertices, tuple(edges), tuple(pairs))
    _validate_instance(instance)
    return instance


def _validate_instance(instance):
    n = instance.num_vertices
    seen = set()
    for u, v in instance.edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise InstanceError("edge (%d, %d) leaves the vertex range 1..%d" % (u, v, n))
        if u == v:
            raise InstanceError("self-loop at vertex %d" % u)
        key = frozenset((u, v))
        if key in seen:
            raise InstanceError("duplicate edge (%d, %d)" % (u, v))
        seen.add(key)
    if len(instance.edges) != n - 1:
        raise InstanceError("a tree on %d vertices needs %d edges, got %d"
                            % (n, n - 1, len(instance.edges)))
    graph = _tree_graph(instance)
    if n > 1 and not nx.is_connected(graph):
        raise InstanceError("edge set does not connect all %d vertices" % n)
    for s, t in instance.pairs:
        if not (1 <= s <= n and 1 <= t <= n):
            raise InstanceError("pair (%d, %d) leaves the vertex range 1..%d" % (s, t, n))
        if s == t:
            raise InstanceError("pair (%d, %d) has identical endpoints" % (s, t))


def _tree_graph(instance):
    graph = nx.Graph()
    graph.add_nodes_from(range(1, instance.num_vertices + 1))
    graph.add_edges_from(instance.edges)
    return graph


@dataclass(frozen=True)
class MulticutEncoding:
    """Mapping between a multicut instance and its penalty polynomial.

    Variable p+1 decides edge ``variable_edges[p]``: 1 keeps it, 0 cuts it.
    Only edges lying on some terminal path get variables; the rest are never
    worth cutting.  ``paths`` lists each pair's path as variable indices.
    """

    instance: TreeMulticutInstance
    variable_edges: tuple
    paths: tuple
    penalty_weight: float


def encode_tree_multicut(instance: TreeMulticutInstance, penalty_weight=None):
    """Penalty polynomial for multicut on a tree.

    Cutting an edge costs 1; leaving a terminal pair connected costs
    ``penalty_weight`` (default: the number of pairs, enough to make any
    separating cut beat any non-separating one).  Returns the polynomial and
    the :class:`MulticutEncoding` to interpret its minimizers.
    """
    if not instance.pairs:
        raise InstanceError("instance has no terminal pairs")
    if penalty_weight is None:
        penalty_weight = float(len(instance.pairs))
    if penalty_weight <= 0:
        raise InstanceError("penalty weight must be positive, got %r" % penalty_weight)
    graph = _tree_graph(instance)
    path_edges = []
    for s, t in instance.pairs:
        vertices = nx.shortest_path(graph, s, t)
        path_edges.append([frozenset(pair) for pair in zip(vertices, vertices[1:])])
    on_path = set().union(*path_edges)
    variable_edges = tuple(e for e in instance.edges if frozenset(e) in on_path)
    index = {frozenset(e): p + 1 for p, e in enumerate(variable_edges)}
    terms = []
    for e in variable_edges:
        terms.append((1.0, ()))
        terms.append((-1.0, (index[frozenset(e)],)))
    paths = []
    for path in path_edges:
        variables = tuple(sorted(index[e] for e in path))
        paths.append(variables)
        terms.append((float(penalty_weight), variables))
    polynomial = PseudoBooleanFunction(terms, num_vars=len(variable_edges))
    return polynomial, MulticutEncoding(instance, variable_edges, tuple(paths),
                                        float(penalty_weight))


def decode_cut(encoding: MulticutEncoding, assignment):
    """Edges the 0/1 ``assignment`` cuts, in variable order."""
    if len(assignment) < len(encoding.variable_edges):
        raise DimensionError("assignment has %d entries, encoding has %d variables"
                             % (len(assignment), len(encoding.variable_edges)))
    return tuple(e for p, e in enumerate(encoding.variable_edges)
                 if not assignment[p])


def cut_is_valid(instance: TreeMulticutInstance, cut_edges) -> bool:
    """Does removing ``cut_edges`` disconnect every terminal pair?"""
    graph = _tree_graph(instance)
    graph.remove_edges_from(cut_edges)
    return all(not nx.has_path(graph, s, t) for s, t in instance.pairs)
