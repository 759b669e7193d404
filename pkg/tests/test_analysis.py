import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from annealc import (ContractViolation, DomainError, IsingModel, SampleEntry,
                     SampleSet, TimeModel, gauge_average, histogram,
                     ising_energy, machine_time, render_histogram,
                     render_histogram_csv, repetitions_to_target,
                     simulated_annealing, time_to_solution)
from oracles import ising_value, random_ising, repetitions_reference


@given(st.floats(0.001, 0.999), st.sampled_from([0.5, 0.9, 0.99, 0.999]))
@settings(max_examples=150)
def test_repetitions_against_counting_oracle(p, target):
    assert repetitions_to_target(p, target) == repetitions_reference(p, target)


@given(st.floats(0.0001, 1.0))
@settings(max_examples=100)
def test_repetitions_defining_inequality(p):
    reps = repetitions_to_target(p, 0.99)
    assert 1.0 - (1.0 - p) ** reps >= 0.99
    if reps > 1:
        assert 1.0 - (1.0 - p) ** (reps - 1) < 0.99


def test_repetitions_edge_cases():
    assert repetitions_to_target(0.0) == math.inf
    assert repetitions_to_target(1.0) == 1
    assert repetitions_to_target(0.99) == 1
    assert repetitions_to_target(0.5, target=0.999) == 10
    with pytest.raises(DomainError):
        repetitions_to_target(-0.1)
    with pytest.raises(DomainError):
        repetitions_to_target(1.5)
    with pytest.raises(DomainError):
        repetitions_to_target(0.5, target=1.0)
    with pytest.raises(DomainError):
        repetitions_to_target(0.5, target=0.0)


def test_time_to_solution_known_values():
    report = time_to_solution(5.69, 1e5, 700e-6)
    assert report.success_probability == pytest.approx(5.69e-5)
    assert report.repetitions == 80933
    assert report.total_time == pytest.approx(56.653, abs=0.01)

    report = time_to_solution(91, 1e5, 700e-6)
    assert report.repetitions == 5059
    assert report.total_time == pytest.approx(3.5413, abs=0.01)


def test_time_to_solution_no_hits_is_infinite():
    report = time_to_solution(0, 100, 1e-3)
    assert report.repetitions == math.inf
    assert report.total_time == math.inf
    assert report.success_probability == 0.0


def test_time_to_solution_guards():
    with pytest.raises(ContractViolation):
        time_to_solution(1, 0, 1e-3)
    with pytest.raises(ContractViolation):
        time_to_solution(101, 100, 1e-3)
    with pytest.raises(ContractViolation):
        time_to_solution(-1, 100, 1e-3)
    with pytest.raises(DomainError):
        time_to_solution(1, 100, 0.0)


def test_machine_time():
    assert machine_time(9e-3, 2e-5, 1.2e-4, 1000) == pytest.approx(0.149, abs=1e-12)
    model = TimeModel(1.0, 0.5, 0.25)
    assert model.total_time(0) == 1.0
    assert model.total_time(4) == 4.0
    with pytest.raises(DomainError):
        TimeModel(-1.0, 0.5, 0.25)
    with pytest.raises(DomainError):
        model.total_time(-1)


def sample_set(entries, offset=0.0, vartype="spin"):
    total = sum(f for _, _, f in entries)
    return SampleSet([SampleEntry(c, e, f) for c, e, f in entries],
                     offset, total, vartype)


def test_histogram_rows_and_offset():
    s = sample_set([((1, 1), -2.0, 30), ((-1, 1), 0.5, 50), ((1, -1), 0.5, 20)],
                   offset=10.0)
    rows = histogram(s)
    assert rows == ((-2.0, 8.0, 30), (0.5, 10.5, 70))


def test_histogram_merges_within_tolerance():
    s = sample_set([((1,), 1.0, 5), ((-1,), 1.0 + 1e-12, 7)])
    assert histogram(s) == ((1.0, 1.0, 12),)
    assert histogram(s, atol=0.0) == ((1.0, 1.0, 5), (1.0 + 1e-12, 1.0 + 1e-12, 7))


def test_render_histogram_alignment():
    rows = ((-102.5, -90.25, 9000), (3.0, 15.25, 12))
    assert render_histogram(rows) == (
        "energy  adjusted_energy  frequency\n"
        "-102.5           -90.25       9000\n"
        "     3            15.25         12\n"
    )
    assert render_histogram_csv(rows) == (
        "energy,adjusted_energy,frequency\n"
        "-102.5,-90.25,9000\n"
        "3,15.25,12\n"
    )


def test_gauge_average_recovers_original_energies():
    rng = random.Random(31)
    m = random_ising(rng, 6, offset=2.5)

    def sampler(model, seed):
        return simulated_annealing(model, readouts=50, seed=seed)

    result = gauge_average(m, sampler, gauges=5, seed=3)
    assert result.gauges == 5
    assert result.readouts == 50
    assert len(result.per_gauge) == 5
    for gauged in result.per_gauge:
        assert gauged.readouts == 50
        assert gauged.offset == m.offset
        for entry in gauged:
            # configurations are reported in the original frame
            assert entry.energy == pytest.approx(ising_value(m, entry.config),
                                                 abs=1e-12)
    total = sum(f for _, f in result.levels)
    assert total == pytest.approx(50.0)
    # per-gauge seeds differ, so the transforms genuinely vary
    patterns = {s.info["gauge"] for s in result.per_gauge}
    assert len(patterns) > 1


def test_gauge_average_is_unbiased_for_ground_hits():
    # pooled ground-state frequency should agree with direct sampling within
    # binomial noise (z well under 2.576 for these sizes)
    rng = random.Random(77)
    m = random_ising(rng, 6)
    ground = min(ising_value(m, s) for s in itertools.product((-1, 1), repeat=6))

    def sampler(model, seed):
        return simulated_annealing(model, readouts=200, seed=seed)

    averaged = gauge_average(m, sampler, gauges=8, seed=5)
    p_avg = averaged.mean_frequency_at(ground) / averaged.readouts
    direct = simulated_annealing(m, readouts=1600, seed=11)
    p_direct = direct.frequency_at(ground) / direct.readouts
    spread = math.sqrt(max(p_direct * (1 - p_direct), 1e-6) / 1600)
    assert abs(p_avg - p_direct) < 2.576 * 2 * spread + 0.02


def test_gauge_average_guards():
    m = IsingModel({1: 1.0}, {}, 0.0)
    with pytest.raises(ContractViolation):
        gauge_average(m, lambda model, seed: None, gauges=0)

    def binary_sampler(model, seed):
        return SampleSet([SampleEntry((0,), 0.0, 1)], 0.0, 1, "binary")

    with pytest.raises(ContractViolation):
        gauge_average(m, binary_sampler, gauges=2)
