"""Degree reduction: rewrite any multilinear polynomial as a quadratic one.

Each monomial of degree >= 3 is replaced independently by a quadratic gadget
over the original variables plus fresh auxiliary variables, such that
minimizing the gadget over its auxiliaries reproduces the monomial's value at
every binary assignment.  Negative terms use the single-auxiliary gadget

    alpha * prod_j x_j  ->  |alpha| * w * ((d-1) - sum_j x_j),

and positive terms use the Ishikawa gadget with k = floor((d-1)/2) auxiliaries

    alpha * (S2 + W2 - 2*W1*S1 [+ w_k*(S1 - d + 1) when d is odd]),

where S1 = sum_j x_j, S2 = sum_{i<j} x_i x_j, W1 = sum_i w_i and
W2 = sum_i (4i - 1) w_i.  Neither gadget couples two auxiliaries, so for a
fixed assignment of the original variables each auxiliary can be optimized
independently (its optimal contribution is min(0, linear + couplings)).

Auxiliary variables are numbered n+1, n+2, ... following the canonical order
of the monomials they replace, which makes reductions deterministic and
byte-comparable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation, ParseError
from .pbf import Monomial, PseudoBooleanFunction

FREEDMAN = "freedman"
ISHIKAWA = "ishikawa"


@dataclass(frozen=True)
class AuxVariable:
    """One auxiliary: its index, which gadget created it, and the source term."""

    index: int
    gadget: str
    source: tuple[int, ...]


@dataclass
class ReductionRecord:
    """Outcome of a reduction: the quadratic result plus auxiliary bookkeeping."""

    original_vars: int
    auxiliary_vars: tuple
    result: PseudoBooleanFunction

    @property
    def total_vars(self) -> int:
        return self.original_vars + len(self.auxiliary_vars)


def freedman_reduce(term: Monomial, aux_index: int | None = None) -> PseudoBooleanFunction:
    """Quadratic gadget for a negative monomial of degree >= 3 (one auxiliary)."""
    if term.coefficient >= 0:
        raise ContractViolation(
            "negative-term gadget needs a negative coefficient, got %r" % term.coefficient
        )
    if term.degree < 3:
        raise ContractViolation("degree must be >= 3, got %d" % term.degree)
    if aux_index is None:
        aux_index = term.variables[-1] + 1
    mag = -term.coefficient
    d = term.degree
    terms = [(mag * (d - 1), (aux_index,))]
    for j in term.variables:
        terms.append((-mag, (j, aux_index)))
    return PseudoBooleanFunction(terms, num_vars=aux_index)


def ishikawa_reduce(term: Monomial, first_aux_index: int | None = None) -> PseudoBooleanFunction:
    """Quadratic gadget for a positive monomial of degree >= 3.

    Uses k = floor((d-1)/2) auxiliaries numbered consecutively from
    ``first_aux_index``.
    """
    if term.coefficient <= 0:
        raise ContractViolation(
            "positive-term gadget needs a positive coefficient, got %r" % term.coefficient
        )
    if term.degree < 3:
        raise ContractViolation("degree must be >= 3, got %d" % term.degree)
    if first_aux_index is None:
        first_aux_index = term.variables[-1] + 1
    alpha = term.coefficient
    d = term.degree
    k = (d - 1) // 2
    aux = tuple(range(first_aux_index, first_aux_index + k))
    terms = []
    # S2: all pairs of original variables
    for a in range(d):
        for b in range(a + 1, d):
            terms.append((alpha, (term.variables[a], term.variables[b])))
    for i, w in enumerate(aux, start=1):
        terms.append((alpha * (4 * i - 1), (w,)))  # W2
        for j in term.variables:  # -2*W1*S1
            terms.append((-2.0 * alpha, (j, w)))
    if d % 2 == 1:
        w_k = aux[-1]
        terms.append((alpha * (1 - d), (w_k,)))
        for j in term.variables:
            terms.append((alpha, (j, w_k)))
    return PseudoBooleanFunction(terms, num_vars=aux[-1] if aux else term.variables[-1])


def reduce_to_quadratic(f: PseudoBooleanFunction) -> ReductionRecord:
    """Reduce every degree->=3 term, passing quadratic-and-below terms through.

    Each high-degree monomial gets fresh auxiliaries; nothing is shared, so the
    minimum over the extended variables equals the minimum of the input.
    """
    n = f.num_vars
    next_aux = n + 1
    aux_records = []
    pieces = []
    passthrough = []
    for term in f.terms:
        if term.degree <= 2:
            passthrough.append((term.coefficient, term.variables))
            continue
        if term.coefficient < 0:
            pieces.append(freedman_reduce(term, next_aux))
            aux_records.append(AuxVariable(next_aux, FREEDMAN, term.variables))
            next_aux += 1
        else:
            k = (term.degree - 1) // 2
            pieces.append(ishikawa_reduce(term, next_aux))
            for i in range(k):
                aux_records.append(AuxVariable(next_aux + i, ISHIKAWA, term.variables))
            next_aux += k
    combined = []
    combined.extend(passthrough)
    for piece in pieces:
        combined.extend((t.coefficient, t.variables) for t in piece.terms)
    result = PseudoBooleanFunction(combined, num_vars=next_aux - 1)
    return ReductionRecord(original_vars=n, auxiliary_vars=tuple(aux_records),
                           result=result)


def render_aux_map(record: ReductionRecord) -> str:
    """Sidecar text: one ``aux <new-idx> <kind> <source variables>`` line each."""
    lines = []
    for aux in record.auxiliary_vars:
        lines.append(
            "aux %d %s %s" % (aux.index, aux.gadget, " ".join(str(v) for v in aux.source))
        )
    return "\n".join(lines) + ("\n" if lines else "")


def parse_aux_map(text: str) -> list:
    """Inverse of render_aux_map."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "aux" or len(tokens) < 4:
            raise ParseError("expected 'aux <idx> <kind> <vars...>'", line=lineno)
        if tokens[2] not in (FREEDMAN, ISHIKAWA):
            raise ParseError("unknown gadget kind %r" % tokens[2], line=lineno)
        try:
            idx = int(tokens[1])
            source = tuple(int(t) for t in tokens[3:])
        except ValueError:
            raise ParseError("indices must be integers", line=lineno)
        out.append(AuxVariable(idx, tokens[2], source))
    return out
