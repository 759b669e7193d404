"""Run analysis: repetition counts, device-time accounting, energy histograms
and gauge averaging."""

import math
import random
from dataclasses import dataclass

from .errors import ContractViolation, DomainError
from .pbf import format_coefficient
from .quadratic import apply_gauge, gauge_transform, ising_energy
from .solvers import SampleEntry, SampleSet


@dataclass(frozen=True)
class TtsReport:
    """How long repeated annealing needs to hit a ground state.

    ``repetitions`` is the smallest run count whose success probability
    reaches ``target`` (inf when no hit was ever observed), and
    ``total_time`` is that many anneals.
    """

    ground_hits: float
    readouts: int
    success_probability: float
    target: float
    repetitions: float
    anneal_time: float
    total_time: float


def repetitions_to_target(success_probability, target=0.99):
    """Smallest R with 1 - (1 - p)^R >= target; inf for p = 0."""
    p = success_probability
    if not 0.0 <= p <= 1.0:
        raise DomainError("success probability must lie in [0, 1], got %r" % p)
    if not 0.0 < target < 1.0:
        raise DomainError("target confidence must lie in (0, 1), got %r" % target)
    if p == 0.0:
        return math.inf
    if p == 1.0:
        return 1
    reps = max(1, math.ceil(math.log1p(-target) / math.log1p(-p)))
    # ceil() of the float ratio can be off by one at the boundary; settle it
    # against the defining inequality directly
    while reps > 1 and 1.0 - math.pow(1.0 - p, reps - 1) >= target:
        reps -= 1
    while 1.0 - math.pow(1.0 - p, reps) < target:
        reps += 1
    return reps


def time_to_solution(ground_hits, readouts, anneal_time, target=0.99):
    """Estimate total annealing time from an observed hit rate.

    ``ground_hits`` may be fractional (e.g. a gauge-averaged count).  A run
    that never hit the ground state yields an infinite estimate rather than
    an error.
    """
    if readouts < 1:
        raise ContractViolation("readouts must be at least 1, got %r" % readouts)
    if not 0 <= ground_hits <= readouts:
        raise ContractViolation("ground_hits %r outside 0..%r" % (ground_hits, readouts))
    if anneal_time <= 0:
        raise DomainError("anneal time must be positive, got %r" % anneal_time)
    p = ground_hits / readouts
    reps = repetitions_to_target(p, target)
    return TtsReport(float(ground_hits), int(readouts), p, float(target), reps,
                     float(anneal_time), reps * anneal_time)


@dataclass(frozen=True)
class TimeModel:
    """Wall-clock model of one programming cycle followed by N anneal/readout
    repetitions."""

    programming_time: float
    anneal_time: float
    readout_time: float

    def __post_init__(self):
        for name in ("programming_time", "anneal_time", "readout_time"):
            if getattr(self, name) < 0:
                raise DomainError("%s must be nonnegative" % name)

    def total_time(self, readouts):
        if readouts < 0:
            raise DomainError("readouts must be nonnegative, got %r" % readouts)
        return self.programming_time + readouts * (self.anneal_time + self.readout_time)


def machine_time(programming_time, anneal_time, readout_time, readouts):
    return TimeModel(programming_time, anneal_time, readout_time).total_time(readouts)


def histogram(samples: SampleSet, atol=1e-9):
    """Collapse a sample set into (energy, adjusted energy, frequency) rows.

    Rows ascend in energy; entries closer than ``atol`` merge into one level.
    The adjusted column adds the set's offset, i.e. the energy in the
    original (pre-conversion) problem scale.
    """
    rows = []
    for entry in samples.entries:
        if rows and abs(rows[-1][0] - entry.energy) <= atol:
            energy, adjusted, freq = rows[-1]
            rows[-1] = (energy, adjusted, freq + entry.frequency)
        else:
            rows.append((entry.energy, entry.energy + samples.offset, entry.frequency))
    return tuple(rows)


def render_histogram(rows) -> str:
    table = [("energy", "adjusted_energy", "frequency")]
    for energy, adjusted, freq in rows:
        table.append((format_coefficient(energy), format_coefficient(adjusted),
                      format_coefficient(freq)))
    widths = [max(len(row[col]) for row in table) for col in range(3)]
    lines = ["  ".join(cell.rjust(widths[col]) for col, cell in enumerate(row))
             for row in table]
    return "\n".join(lines) + "\n"


def render_histogram_csv(rows) -> str:
    lines = ["energy,adjusted_energy,frequency"]
    for energy, adjusted, freq in rows:
        lines.append("%s,%s,%s" % (format_coefficient(energy),
                                   format_coefficient(adjusted),
                                   format_coefficient(freq)))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GaugeAverage:
    """Sampling statistics averaged over random spin-reversal transforms."""

    levels: tuple      # (energy, mean frequency per gauge), ascending
    per_gauge: tuple   # un-gauged SampleSet for each transform
    gauges: int
    readouts: int      # per gauge

    def mean_frequency_at(self, energy, atol=1e-9):
        return sum(f for e, f in self.levels if abs(e - energy) <= atol)


def gauge_average(model, sampler, gauges=10, seed=1, atol=1e-9):
    """Run ``sampler`` under ``gauges`` random spin reversals of ``model``.

    ``sampler(model, seed)`` must return a spin SampleSet.  Each gauge flips
    a random subset of spins (fields h -> a*h, couplers J -> a*a*J), samples
    the transformed model with its own derived seed, and maps configurations
    back; energies are recomputed on the original model.  Averaging over
    gauges cancels sampler bias tied to the sign pattern of the weights.
    """
    if gauges < 1:
        raise ContractViolation("need at least one gauge, got %r" % gauges)
    n = model.num_vars
    per_gauge = []
    for g in range(gauges):
        rng = random.Random(seed * 1_000_003 + g)
        gauge = {i: rng.choice((1, -1)) for i in range(1, n + 1)}
        transformed = gauge_transform(model, gauge)
        raw = sampler(transformed, seed * 9176 + g)
        if raw.vartype != "spin":
            raise ContractViolation("gauge averaging needs a spin sampler")
        entries = [SampleEntry(apply_gauge(gauge, e.config),
                               ising_energy(model, apply_gauge(gauge, e.config)),
                               e.frequency)
                   for e in raw.entries]
        entries.sort(key=lambda e: (e.energy, e.config))
        per_gauge.append(SampleSet(entries, model.offset, raw.readouts, "spin",
                                   {"gauge": tuple(gauge[i] for i in range(1, n + 1))}))
    readouts = per_gauge[0].readouts
    if any(s.readouts != readouts for s in per_gauge):
        raise ContractViolation("sampler returned unequal readout counts across gauges")
    pooled = sorted((e.energy, e.frequency) for s in per_gauge for e in s.entries)
    levels = []
    for energy, freq in pooled:
        if levels and abs(levels[-1][0] - energy) <= atol:
            levels[-1][1] += freq
        else:
            levels.append([energy, freq])
    return GaugeAverage(tuple((e, f / gauges) for e, f in levels),
                        tuple(per_gauge), gauges, readouts)
