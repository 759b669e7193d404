"""Quadratic models over binary (QUBO) and spin (Ising) variables.

The two forms are related by the substitution x = (1 + s) / 2.  The constant
produced by that substitution is tracked explicitly as ``offset`` so that

    qubo_value(x) == ising_energy(s) + offset      for s = 2x - 1

holds pointwise.  Sample energies everywhere in this package are raw Ising
energies with the offset attached as metadata, so either scale can be
reconstructed.

File format: header ``qubo <n>`` or ``ising <n>``, then ``offset <r>``,
``lin <i> <r>`` and ``quad <i> <j> <r>`` lines; ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractViolation, DimensionError, DomainError, ParseError
from .pbf import PseudoBooleanFunction, format_coefficient


def _canonical_pairs(quadratic):
    out = {}
    for (i, j), value in quadratic.items():
        if i == j:
            raise DomainError("quadratic key (%d, %d) must have two distinct variables" % (i, j))
        key = (i, j) if i < j else (j, i)
        out[key] = out.get(key, 0.0) + float(value)
    return {k: v for k, v in out.items() if v != 0.0}


def _infer_num_vars(linear, pairs, declared):
    highest = 0
    if linear:
        highest = max(highest, max(linear))
    if pairs:
        highest = max(highest, max(j for _, j in pairs))
    return max(int(declared), highest)


@dataclass
class Qubo:
    """Quadratic objective over 0/1 variables: constant + sum u_i x_i + sum e_ij x_i x_j."""

    linear: dict = field(default_factory=dict)
    quadratic: dict = field(default_factory=dict)
    constant: float = 0.0
    num_vars: int = 0

    def __post_init__(self):
        self.linear = {int(i): float(v) for i, v in self.linear.items() if v != 0.0}
        self.quadratic = _canonical_pairs(self.quadratic)
        self.constant = float(self.constant)
        self.num_vars = _infer_num_vars(self.linear, self.quadratic, self.num_vars)


@dataclass
class IsingModel:
    """Spin objective: sum h_i s_i + sum J_ij s_i s_j, with a tracked offset."""

    fields: dict = field(default_factory=dict)
    couplers: dict = field(default_factory=dict)
    offset: float = 0.0
    num_vars: int = 0

    def __post_init__(self):
        self.fields = {int(i): float(v) for i, v in self.fields.items() if v != 0.0}
        self.couplers = _canonical_pairs(self.couplers)
        self.offset = float(self.offset)
        self.num_vars = _infer_num_vars(self.fields, self.couplers, self.num_vars)


def qubo_from_pbf(f: PseudoBooleanFunction) -> Qubo:
    """Split a degree-<=2 polynomial into constant / linear / quadratic parts."""
    if f.degree() > 2:
        raise ContractViolation(
            "polynomial has degree %d; reduce_to_quadratic must be applied first"
            % f.degree()
        )
    constant = 0.0
    linear = {}
    quadratic = {}
    for t in f.terms:
        if t.degree == 0:
            constant += t.coefficient
        elif t.degree == 1:
            linear[t.variables[0]] = t.coefficient
        else:
            quadratic[t.variables] = t.coefficient
    return Qubo(linear, quadratic, constant, num_vars=f.num_vars)


def pbf_from_qubo(q: Qubo) -> PseudoBooleanFunction:
    terms = [(q.constant, ())]
    terms.extend((v, (i,)) for i, v in q.linear.items())
    terms.extend((v, pair) for pair, v in q.quadratic.items())
    return PseudoBooleanFunction(terms, num_vars=q.num_vars)


def qubo_to_ising(q: Qubo) -> IsingModel:
    """Substitute x = (1 + s)/2; the offset absorbs every constant produced."""
    h = {}
    J = {}
    offset = q.constant
    for i, u in q.linear.items():
        h[i] = h.get(i, 0.0) + u / 2.0
        offset += u / 2.0
    for (i, j), e in q.quadratic.items():
        J[(i, j)] = e / 4.0
        h[i] = h.get(i, 0.0) + e / 4.0
        h[j] = h.get(j, 0.0) + e / 4.0
        offset += e / 4.0
    return IsingModel(h, J, offset, num_vars=q.num_vars)


def ising_to_qubo(m: IsingModel) -> Qubo:
    """Substitute s = 2x - 1 (exact inverse of qubo_to_ising up to round-off)."""
    linear = {}
    quadratic = {}
    constant = m.offset
    for i, hi in m.fields.items():
        linear[i] = linear.get(i, 0.0) + 2.0 * hi
        constant -= hi
    for (i, j), Jij in m.couplers.items():
        quadratic[(i, j)] = 4.0 * Jij
        linear[i] = linear.get(i, 0.0) - 2.0 * Jij
        linear[j] = linear.get(j, 0.0) - 2.0 * Jij
        constant += Jij
    return Qubo(linear, quadratic, constant, num_vars=m.num_vars)


def qubo_energy(q: Qubo, x) -> float:
    """Objective value at a binary assignment (constant included)."""
    if len(x) < q.num_vars:
        raise DimensionError(
            "assignment has %d entries but the model uses %d variables" % (len(x), q.num_vars)
        )
    for value in x[: q.num_vars]:
        if value not in (0, 1):
            raise DomainError("binary entries must be 0 or 1, got %r" % value)
    total = q.constant
    for i, u in q.linear.items():
        total += u * x[i - 1]
    for (i, j), e in q.quadratic.items():
        total += e * x[i - 1] * x[j - 1]
    return total


def ising_energy(m: IsingModel, s) -> float:
    """Raw spin energy (the offset is reported separately, never added here)."""
    if len(s) < m.num_vars:
        raise DimensionError(
            "assignment has %d entries but the model uses %d variables" % (len(s), m.num_vars)
        )
    for value in s[: m.num_vars]:
        if value not in (-1, 1):
            raise DomainError("spin entries must be -1 or +1, got %r" % value)
    total = 0.0
    for i, hi in m.fields.items():
        total += hi * s[i - 1]
    for (i, j), Jij in m.couplers.items():
        total += Jij * s[i - 1] * s[j - 1]
    return total


def gauge_transform(m: IsingModel, a) -> IsingModel:
    """Relabel spins s_i -> a_i s_i: h_i -> a_i h_i, J_ij -> a_i a_j J_ij."""
    for i in range(1, m.num_vars + 1):
        if i not in a:
            raise DomainError("gauge vector is missing variable %d" % i)
        if a[i] not in (-1, 1):
            raise DomainError("gauge entries must be -1 or +1, got %r" % a[i])
    h = {i: a[i] * hi for i, hi in m.fields.items()}
    J = {(i, j): a[i] * a[j] * Jij for (i, j), Jij in m.couplers.items()}
    return IsingModel(h, J, m.offset, num_vars=m.num_vars)


def apply_gauge(a, s):
    """Map a sampled configuration of the gauged model back to the original."""
    return tuple(a[i] * s[i - 1] for i in range(1, len(s) + 1))


def format_model(model) -> str:
    if isinstance(model, Qubo):
        kind, lin, quad, off = "qubo", model.linear, model.quadratic, model.constant
    elif isinstance(model, IsingModel):
        kind, lin, quad, off = "ising", model.fields, model.couplers, model.offset
    else:
        raise DomainError("expected a Qubo or IsingModel, got %r" % type(model).__name__)
    lines = ["%s %d" % (kind, model.num_vars)]
    if off != 0.0:
        lines.append("offset %s" % format_coefficient(off))
    for i in sorted(lin):
        lines.append("lin %d %s" % (i, format_coefficient(lin[i])))
    for i, j in sorted(quad):
        lines.append("quad %d %d %s" % (i, j, format_coefficient(quad[(i, j)])))
    return "\n".join(lines) + "\n"


def parse_model(text: str):
    """Parse the model file format; returns a Qubo or an IsingModel per header."""
    kind = None
    declared = 0
    offset = 0.0
    linear = {}
    quadratic = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        tag = tokens[0]
        try:
            if kind is None:
                if tag not in ("qubo", "ising") or len(tokens) != 2:
                    raise ParseError("expected header 'qubo <n>' or 'ising <n>'", line=lineno)
                kind = tag
                declared = int(tokens[1])
                if declared < 0:
                    raise ParseError("negative variable count", line=lineno)
            elif tag == "offset" and len(tokens) == 2:
                offset = float(tokens[1])
            elif tag == "lin" and len(tokens) == 3:
                i = int(tokens[1])
                if not 1 <= i <= declared:
                    raise ParseError("variable %d outside 1..%d" % (i, declared),
                                     line=lineno)
                linear[i] = linear.get(i, 0.0) + float(tokens[2])
            elif tag == "quad" and len(tokens) == 4:
                i, j = int(tokens[1]), int(tokens[2])
                if not (1 <= i <= declared and 1 <= j <= declared):
                    raise ParseError("variable pair (%d, %d) outside 1..%d"
                                     % (i, j, declared), line=lineno)
                if i == j:
                    raise ParseError("quadratic entry needs two distinct variables", line=lineno)
                key = (i, j) if i < j else (j, i)
                quadratic[key] = quadratic.get(key, 0.0) + float(tokens[3])
            else:
                raise ParseError("unrecognized line %r" % line, line=lineno)
        except ParseError:
            raise
        except ValueError:
            raise ParseError("bad numeric field in %r" % line, line=lineno)
    if kind is None:
        raise ParseError("empty model file: missing 'qubo <n>' or 'ising <n>' header")
    if kind == "qubo":
        return Qubo(linear, quadratic, offset, num_vars=declared)
    return IsingModel(linear, quadratic, offset, num_vars=declared)
