"""Samplers and exact enumeration.

Every solver returns a :class:`SampleSet`: frequencies aggregated per distinct
configuration, sorted by energy.  Energies are always recomputed exactly from
the input model with plain numpy, never trusted from an inner loop.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import sa_sample, sqa_sample
from .chimera import EmbeddedIsing, unembed
from .errors import ContractViolation, ScheduleError, SizeError
from .pbf import PseudoBooleanFunction
from .quadratic import IsingModel, Qubo, qubo_from_pbf, qubo_to_ising

BRUTE_FORCE_LIMIT = 25


@dataclass(frozen=True)
class SampleEntry:
    """One energy level: a representative configuration and how often the
    level was observed."""

    config: tuple
    energy: float
    frequency: int


class SampleSet:
    """Aggregated solver output.

    ``entries`` are sorted by ascending energy (ties by configuration) and
    their frequencies sum to ``readouts``.  ``offset`` is the constant left
    behind by a binary-to-spin conversion; spin energies do not include it.
    ``info`` holds solver-specific extras and is ignored by equality.
    """

    __slots__ = ("entries", "offset", "readouts", "vartype", "info")

    def __init__(self, entries, offset, readouts, vartype, info=None):
        entries = tuple(entries)
        if vartype not in ("spin", "binary"):
            raise ContractViolation("vartype must be 'spin' or 'binary', got %r" % vartype)
        total = sum(e.frequency for e in entries)
        if total != readouts:
            raise ContractViolation(
                "frequencies sum to %d but readouts is %d" % (total, readouts))
        for a, b in zip(entries, entries[1:]):
            if (a.energy, a.config) > (b.energy, b.config):
                raise ContractViolation("entries must be sorted by (energy, config)")
        self.entries = entries
        self.offset = float(offset)
        self.readouts = int(readouts)
        self.vartype = vartype
        self.info = dict(info or {})

    @property
    def min_energy(self):
        return self.entries[0].energy

    @property
    def best(self):
        return self.entries[0].config

    def frequency_at(self, energy, atol=1e-9):
        """Total observations within ``atol`` of ``energy``."""
        return sum(e.frequency for e in self.entries if abs(e.energy - energy) <= atol)

    def configs_at(self, energy, atol=1e-9):
        return [e.config for e in self.entries if abs(e.energy - energy) <= atol]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, SampleSet):
            return NotImplemented
        return (self.entries == other.entries and self.offset == other.offset
                and self.readouts == other.readouts and self.vartype == other.vartype)

    def __repr__(self):
        return "SampleSet(%d levels, %d readouts, min=%r, vartype=%r)" % (
            len(self.entries), self.readouts,
            self.entries[0].energy if self.entries else None, self.vartype)


@dataclass(frozen=True)
class SaSchedule:
    """Geometric cooling: temperature starts at ``start_temp`` and is
    multiplied by ``cooling`` after every ``sweeps_per_temp`` full sweeps,
    ``steps`` times."""

    start_temp: float = 10.0
    cooling: float = 0.96
    sweeps_per_temp: int = 2
    steps: int = 120

    def validate(self):
        if not self.start_temp > 0:
            raise ScheduleError("start_temp must be positive, got %r" % self.start_temp)
        if not 0 < self.cooling < 1:
            raise ScheduleError("cooling must lie in (0, 1), got %r" % self.cooling)
        if self.sweeps_per_temp < 1 or self.steps < 1:
            raise ScheduleError("sweeps_per_temp and steps must be at least 1")

    @property
    def total_sweeps(self):
        return self.sweeps_per_temp * self.steps


@dataclass(frozen=True)
class SqaSchedule:
    """Transverse-field ramp for path-integral annealing.

    The field falls linearly from ``gamma0`` to ``gamma_final`` while the
    problem Hamiltonian ramps in, over ``sweeps`` sweeps of ``slices``
    coupled replicas held at ``temperature``.
    """

    slices: int = 20
    gamma0: float = 3.0
    gamma_final: float = 0.05
    temperature: float = 0.3
    sweeps: int = 200

    def validate(self):
        if self.slices < 2:
            raise ScheduleError("need at least 2 replicas, got %d" % self.slices)
        if not (self.gamma0 > self.gamma_final > 0):
            raise ScheduleError(
                "transverse field must decrease toward a positive floor; got "
                "gamma0=%r, gamma_final=%r" % (self.gamma0, self.gamma_final))
        if not self.temperature > 0:
            raise ScheduleError("temperature must be positive, got %r" % self.temperature)
        if self.sweeps < 1:
            raise ScheduleError("sweeps must be at least 1")
        # the replica coupling is (P*T/2) ln tanh(gamma / (P*T)); once tanh
        # underflows the log is -inf and the dynamics are no longer defined
        if math.tanh(self.gamma_final / (self.slices * self.temperature)) == 0.0:
            raise ScheduleError(
                "gamma_final=%r underflows tanh at %d slices and temperature %r"
                % (self.gamma_final, self.slices, self.temperature))


def replica_coupling(gamma, slices, temperature):
    """Coupling between neighboring replicas at transverse field ``gamma``.

    Negative (ferromagnetic in the +J*s*s convention used here), diverging to
    -inf as the field vanishes and approaching 0 as it dominates.
    """
    pt = slices * temperature
    return 0.5 * pt * math.log(math.tanh(gamma / pt))


def _coerce(model):
    """Normalize solver input to (ising, qubo-or-None)."""
    if isinstance(model, PseudoBooleanFunction):
        model = qubo_from_pbf(model)
    if isinstance(model, Qubo):
        return qubo_to_ising(model), model
    if isinstance(model, IsingModel):
        return model, None
    raise TypeError("cannot sample a %s" % type(model).__name__)


def _csr(m):
    n = m.num_vars
    h = np.zeros(n)
    for i, v in m.fields.items():
        h[i - 1] = v
    degree = np.zeros(n, np.int64)
    for i, j in m.couplers:
        degree[i - 1] += 1
        degree[j - 1] += 1
    ptr = np.zeros(n + 1, np.int64)
    np.cumsum(degree, out=ptr[1:])
    idx = np.zeros(ptr[-1], np.int32)
    val = np.zeros(ptr[-1])
    cursor = ptr[:-1].copy()
    for (i, j), coupling in sorted(m.couplers.items()):
        a, b = i - 1, j - 1
        idx[cursor[a]], val[cursor[a]] = b, coupling
        cursor[a] += 1
        idx[cursor[b]], val[cursor[b]] = a, coupling
        cursor[b] += 1
    return h, ptr, idx, val


def _ising_row_energies(m, rows):
    e = np.zeros(rows.shape[0])
    for i, h in sorted(m.fields.items()):
        e += h * rows[:, i - 1]
    for (i, j), coupling in sorted(m.couplers.items()):
        e += coupling * (rows[:, i - 1] * rows[:, j - 1])
    return e


def _qubo_row_energies(q, rows):
    e = np.full(rows.shape[0], float(q.constant))
    for i, u in sorted(q.linear.items()):
        e += u * rows[:, i - 1]
    for (i, j), w in sorted(q.quadratic.items()):
        e += w * (rows[:, i - 1] * rows[:, j - 1])
    return e


def _aggregate(rows, row_energies, offset, vartype, readouts, info):
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    energies = row_energies(uniq)
    order = np.argsort(energies, kind="stable")  # unique() already sorted rows
    entries = [SampleEntry(tuple(int(s) for s in uniq[k]), float(energies[k]),
                           int(counts[k]))
               for k in order]
    return SampleSet(entries, offset, readouts, vartype, info)


def _finish(raw_spins, ising, qubo, readouts, info):
    if qubo is not None:
        bits = ((raw_spins + 1) // 2).astype(np.int8)
        return _aggregate(bits, lambda r: _qubo_row_energies(qubo, r),
                          0.0, "binary", readouts, info)
    return _aggregate(raw_spins, lambda r: _ising_row_energies(ising, r),
                      ising.offset, "spin", readouts, info)


def _check_sampling_args(ising, readouts):
    if ising.num_vars < 1:
        raise ContractViolation("model has no variables")
    if readouts < 1:
        raise ContractViolation("readouts must be at least 1, got %r" % readouts)


def simulated_annealing(model, schedule=None, readouts=1000, seed=1):
    """Sample ``model`` by independently restarted single-flip annealing.

    Each readout starts from a fresh uniform random configuration and walks
    the full cooling schedule; identical arguments reproduce identical
    results.  ``info`` reports how many energy-raising moves were proposed
    and accepted.
    """
    schedule = schedule if schedule is not None else SaSchedule()
    schedule.validate()
    ising, qubo = _coerce(model)
    _check_sampling_args(ising, readouts)
    h, ptr, idx, val = _csr(ising)
    out = np.empty((readouts, ising.num_vars), np.int8)
    uphill = np.zeros(2, np.int64)
    sa_sample(h, ptr, idx, val, schedule.start_temp, schedule.cooling,
              schedule.sweeps_per_temp, schedule.steps, readouts, seed, out, uphill)
    info = {"uphill_proposed": int(uphill[0]), "uphill_accepted": int(uphill[1]),
            "seed": seed}
    return _finish(out, ising, qubo, readouts, info)


def simulated_quantum_annealing(model, schedule=None, readouts=100, seed=1):
    """Sample ``model`` with replica-coupled (path-integral) annealing.

    Each readout anneals ``schedule.slices`` replicas from a dominant
    transverse field to ``gamma_final`` and keeps the replica with the lowest
    problem energy.
    """
    schedule = schedule if schedule is not None else SqaSchedule()
    schedule.validate()
    ising, qubo = _coerce(model)
    _check_sampling_args(ising, readouts)
    h, ptr, idx, val = _csr(ising)
    out = np.empty((readouts, ising.num_vars), np.int8)
    sqa_sample(h, ptr, idx, val, schedule.slices, schedule.gamma0,
               schedule.gamma_final, schedule.temperature, schedule.sweeps,
               readouts, seed, out)
    info = {"slices": schedule.slices, "seed": seed}
    return _finish(out, ising, qubo, readouts, info)


def _binary_energies(n, terms):
    """Energy of every binary configuration 0..2^n-1 (bit i-1 = variable i)."""
    size = 1 << n
    index = np.arange(size, dtype=np.int64 if n > 31 else np.int32)
    energies = np.zeros(size)
    for coeff, variables in terms:
        if not variables:
            energies += coeff
            continue
        mask = ((index >> (variables[0] - 1)) & 1).astype(bool)
        for v in variables[1:]:
            mask &= ((index >> (v - 1)) & 1).astype(bool)
        energies[mask] += coeff
    return energies


def _spin_energies(m):
    size = 1 << m.num_vars
    index = np.arange(size, dtype=np.int32)
    energies = np.zeros(size)
    for i, h in sorted(m.fields.items()):
        energies += h * (((index >> (i - 1)) & 1) * 2 - 1)
    for (i, j), coupling in sorted(m.couplers.items()):
        si = ((index >> (i - 1)) & 1) * 2 - 1
        sj = ((index >> (j - 1)) & 1) * 2 - 1
        energies += coupling * (si * sj)
    return energies


def _enumerate(model):
    """(energies over all configurations, vartype, offset)."""
    if isinstance(model, PseudoBooleanFunction):
        n = model.num_vars
        spec = [(t.coefficient, t.variables) for t in model.terms]
        kind, offset = "binary", 0.0
    elif isinstance(model, Qubo):
        n = model.num_vars
        spec = [(model.constant, ())]
        spec += [(u, (i,)) for i, u in sorted(model.linear.items())]
        spec += [(w, ij) for ij, w in sorted(model.quadratic.items())]
        kind, offset = "binary", 0.0
    elif isinstance(model, IsingModel):
        n = model.num_vars
        kind, offset = "spin", model.offset
    else:
        raise TypeError("cannot enumerate a %s" % type(model).__name__)
    if n > BRUTE_FORCE_LIMIT:
        raise SizeError("%d variables exceed the exhaustive limit of %d"
                        % (n, BRUTE_FORCE_LIMIT))
    if kind == "binary":
        return _binary_energies(n, spec), n, kind, offset
    return _spin_energies(model), n, kind, offset


def _decode(index, n, kind):
    bits = [(index >> (i - 1)) & 1 for i in range(1, n + 1)]
    if kind == "spin":
        return tuple(2 * b - 1 for b in bits)
    return tuple(bits)


def brute_force(model, levels=None):
    """Enumerate every configuration exactly.

    Frequencies are level degeneracies; each level's configuration is the
    lowest-index representative.  ``levels`` keeps only that many lowest
    energy levels.  Refuses models beyond ``BRUTE_FORCE_LIMIT`` variables.
    """
    energies, n, kind, offset = _enumerate(model)
    values, first, counts = np.unique(energies, return_index=True, return_counts=True)
    if levels is not None:
        if levels < 1:
            raise ContractViolation("levels must be at least 1, got %r" % levels)
        values, first, counts = values[:levels], first[:levels], counts[:levels]
    entries = [SampleEntry(_decode(int(first[k]), n, kind), float(values[k]),
                           int(counts[k]))
               for k in range(len(values))]
    return SampleSet(entries, offset, int(counts.sum()), kind,
                     {"space": 1 << n, "exhaustive": True})


def ground_states(model, atol=0.0):
    """All configurations attaining the minimum (within ``atol``)."""
    energies, n, kind, _ = _enumerate(model)
    lowest = energies.min()
    hits = np.flatnonzero(energies <= lowest + atol)
    return [_decode(int(k), n, kind) for k in hits]


@dataclass(frozen=True)
class EmbeddedResult:
    """Logical-space view of a run on embedded hardware weights."""

    samples: SampleSet
    chain_break_rate: float
    broken_readouts: int = 0
    physical_readouts: int = field(default=0, repr=False)


def solve_embedded(em: EmbeddedIsing, solver="sa", schedule=None,
                   readouts=1000, seed=1):
    """Sample the physical model of ``em`` and map every readout back to
    logical variables (majority vote per chain).

    Energies in the returned set are recomputed on the logical model, so
    readouts with broken chains are scored by what the vote produced, not
    by the physical energy.  ``solver`` is ``'sa'``, ``'sqa'`` or ``'bf'``;
    brute force enumerates the physical ground states and unembeds those.
    """
    phys = em.physical
    if solver == "bf":
        rows = np.array(ground_states(phys), dtype=np.int8)
    elif solver in ("sa", "sqa"):
        schedule_cls = SaSchedule if solver == "sa" else SqaSchedule
        schedule = schedule if schedule is not None else schedule_cls()
        schedule.validate()
        _check_sampling_args(phys, readouts)
        h, ptr, idx, val = _csr(phys)
        rows = np.empty((readouts, phys.num_vars), np.int8)
        if solver == "sa":
            uphill = np.zeros(2, np.int64)
            sa_sample(h, ptr, idx, val, schedule.start_temp, schedule.cooling,
                      schedule.sweeps_per_temp, schedule.steps, readouts, seed,
                      rows, uphill)
        else:
            sqa_sample(h, ptr, idx, val, schedule.slices, schedule.gamma0,
                       schedule.gamma_final, schedule.temperature,
                       schedule.sweeps, readouts, seed, rows)
    else:
        raise ValueError("unknown solver %r" % solver)

    logical_rows = np.empty((rows.shape[0], em.logical.num_vars), np.int8)
    broken_count = 0
    for r in range(rows.shape[0]):
        sample = {em.qubits[p]: int(rows[r, p]) for p in range(rows.shape[1])}
        spins, broken = unembed(sample, em.embedding)
        logical_rows[r] = spins
        broken_count += any(broken)

    total = rows.shape[0]
    rate = broken_count / total if total else 0.0
    info = {"solver": solver, "chain_break_rate": rate,
            "chain_strength": em.chain_strength}
    samples = _aggregate(logical_rows,
                         lambda r: _ising_row_energies(em.logical, r),
                         em.logical.offset, "spin", total, info)
    return EmbeddedResult(samples, rate, broken_count, total)
