"""Multilinear polynomials over binary variables.

A pseudo-Boolean function is stored as a normalized list of monomials:
repeated indices inside a term are collapsed (x*x = x), terms with identical
variable sets are merged by adding coefficients, zero terms are dropped, and
the surviving terms are kept in canonical order (lexicographic by the sorted
index tuple, constant first).  Variable indices are 1-based and dense; the
parser records the largest index seen as the variable count.

Text format: UTF-8, one term per line, ``#`` starts a comment, and a line is
a coefficient followed by variable indices (no indices = constant term).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError


@dataclass(frozen=True)
class Monomial:
    """One term: a coefficient times a product of distinct variables."""

    coefficient: float
    variables: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.variables)


def _normalize_terms(terms):
    merged = {}
    for coeff, variables in terms:
        key = tuple(sorted(set(variables)))
        if key and key[0] < 1:
            raise ValueError("variable indices must be >= 1, got %d" % key[0])
        merged[key] = merged.get(key, 0.0) + float(coeff)
    out = []
    for key in sorted(merged):
        if merged[key] != 0.0:
            out.append(Monomial(merged[key], key))
    return tuple(out)


class PseudoBooleanFunction:
    """A normalized multilinear polynomial over 0/1 variables."""

    def __init__(self, terms: Iterable = (), num_vars: int = 0):
        pairs = []
        for t in terms:
            if isinstance(t, Monomial):
                pairs.append((t.coefficient, t.variables))
            else:
                coeff, variables = t
                pairs.append((coeff, tuple(variables)))
        self.terms = _normalize_terms(pairs)
        highest = max((t.variables[-1] for t in self.terms if t.variables), default=0)
        self.num_vars = max(int(num_vars), highest)

    def degree(self) -> int:
        """Largest number of distinct variables in any term (0 for constants)."""
        return max((t.degree for t in self.terms), default=0)

    def size(self) -> int:
        """Total count of variable occurrences across all terms."""
        return sum(t.degree for t in self.terms)

    def constant(self) -> float:
        for t in self.terms:
            if not t.variables:
                return t.coefficient
        return 0.0

    def coefficient(self, variables: Iterable[int]) -> float:
        key = tuple(sorted(set(variables)))
        for t in self.terms:
            if t.variables == key:
                return t.coefficient
        return 0.0

    def evaluate(self, x: Sequence[float]) -> float:
        """Value at an assignment; x[i-1] is the value of variable i."""
        if len(x) < self.num_vars:
            raise DimensionError(
                "assignment has %d entries but the function uses %d variables"
                % (len(x), self.num_vars)
            )
        total = 0.0
        for t in self.terms:
            value = t.coefficient
            for j in t.variables:
                value *= x[j - 1]
                if value == 0.0:
                    break
            total += value
        return total

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = PseudoBooleanFunction([(other, ())])
        return PseudoBooleanFunction(
            list(self.terms) + list(other.terms),
            num_vars=max(self.num_vars, other.num_vars),
        )

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return PseudoBooleanFunction(
                [(t.coefficient * other, t.variables) for t in self.terms],
                num_vars=self.num_vars,
            )
        # multilinear product: index sets union, x*x = x handled by normalization
        cross = []
        for a in self.terms:
            for b in other.terms:
                cross.append((a.coefficient * b.coefficient, a.variables + b.variables))
        return PseudoBooleanFunction(cross, num_vars=max(self.num_vars, other.num_vars))

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + (other * -1 if isinstance(other, PseudoBooleanFunction) else -other)

    def __eq__(self, other):
        return (
            isinstance(other, PseudoBooleanFunction)
            and self.terms == other.terms
            and self.num_vars == other.num_vars
        )

    def __hash__(self):
        return hash((self.terms, self.num_vars))

    def __repr__(self):
        return "PseudoBooleanFunction(%d terms, %d vars, degree %d)" % (
            len(self.terms),
            self.num_vars,
            self.degree(),
        )


def format_coefficient(value: float) -> str:
    """Shortest decimal that round-trips; integral values print without '.0'."""
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(float(value))


def parse_pbf(text: str) -> PseudoBooleanFunction:
    """Parse the one-term-per-line polynomial format."""
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            coeff = float(tokens[0])
        except ValueError:
            raise ParseError("expected a coefficient, got %r" % tokens[0], line=lineno)
        variables = []
        for tok in tokens[1:]:
            try:
                idx = int(tok)
            except ValueError:
                raise ParseError("expected a variable index, got %r" % tok, line=lineno)
            if idx < 1:
                raise ParseError("variable index must be >= 1, got %d" % idx, line=lineno)
            variables.append(idx)
        terms.append((coeff, tuple(variables)))
    return PseudoBooleanFunction(terms)


def render_pbf(f: PseudoBooleanFunction) -> str:
    """Canonical text form: terms in canonical order, one per line."""
    lines = []
    for t in f.terms:
        parts = [format_coefficient(t.coefficient)]
        parts.extend(str(j) for j in t.variables)
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")
