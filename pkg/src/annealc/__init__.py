"""Compile discrete optimization problems to quadratic spin models and
sample them.

The pipeline: a pseudo-Boolean polynomial (written directly or encoded from
max-SAT / tree multicut) is reduced to quadratic with auxiliary variables,
converted between 0/1 and spin form, optionally minor-embedded into a
Chimera-style hardware graph, and handed to an exact or annealing sampler.
Analysis helpers turn sample sets into histograms, repetition counts and
device-time estimates.
"""

from .analysis import (GaugeAverage, TimeModel, TtsReport, gauge_average,
                       histogram, machine_time, render_histogram,
                       render_histogram_csv, repetitions_to_target,
                       time_to_solution)
from .chimera import (ChimeraGraph, Embedding, EmbeddedIsing, LogicalGraph,
                      build_chimera, chain_statistics, default_chain_strength,
                      embed_weights, find_embedding, format_embedding,
                      logical_graph, parse_embedding, unembed,
                      validate_embedding)
from .errors import (AnnealcError, ContractViolation, DimensionError,
                     DomainError, EmbeddingNotFound, InstanceError,
                     ParseError, ScheduleError, SizeError)
from .frontends import (CnfFormula, MulticutEncoding, TreeMulticutInstance,
                        count_satisfied, cut_is_valid, decode_cut,
                        encode_maxsat, encode_tree_multicut, parse_dimacs,
                        parse_tree_instance)
from .pbf import (Monomial, PseudoBooleanFunction, format_coefficient,
                  parse_pbf, render_pbf)
from .quadratic import (IsingModel, Qubo, apply_gauge, format_model,
                        gauge_transform, ising_energy, ising_to_qubo,
                        parse_model, pbf_from_qubo, qubo_energy,
                        qubo_from_pbf, qubo_to_ising)
from .reduce import (AuxVariable, FREEDMAN, ISHIKAWA, ReductionRecord,
                     freedman_reduce, ishikawa_reduce, parse_aux_map,
                     reduce_to_quadratic, render_aux_map)
from .solvers import (BRUTE_FORCE_LIMIT, EmbeddedResult, SampleEntry,
                      SampleSet, SaSchedule, SqaSchedule, brute_force,
                      ground_states, replica_coupling, simulated_annealing,
                      simulated_quantum_annealing, solve_embedded)

__version__ = "0.1.0"

__all__ = [
    "AnnealcError", "AuxVariable", "BRUTE_FORCE_LIMIT", "ChimeraGraph",
    "CnfFormula",
    "ContractViolation", "DimensionError", "DomainError", "EmbeddedIsing",
    "EmbeddedResult", "Embedding", "EmbeddingNotFound", "FREEDMAN",
    "GaugeAverage", "ISHIKAWA", "InstanceError", "IsingModel", "LogicalGraph",
    "Monomial", "MulticutEncoding", "ParseError", "PseudoBooleanFunction",
    "Qubo", "ReductionRecord", "SaSchedule", "SampleEntry", "SampleSet",
    "ScheduleError", "SizeError", "SqaSchedule", "TimeModel",
    "TreeMulticutInstance", "TtsReport", "apply_gauge", "brute_force",
    "build_chimera", "chain_statistics", "count_satisfied", "cut_is_valid",
    "decode_cut", "default_chain_strength", "embed_weights", "encode_maxsat",
    "encode_tree_multicut", "find_embedding", "format_coefficient",
    "format_embedding", "format_model", "freedman_reduce", "gauge_average",
    "gauge_transform", "ground_states", "histogram", "ishikawa_reduce",
    "ising_energy", "ising_to_qubo", "logical_graph", "machine_time",
    "parse_aux_map", "parse_dimacs", "parse_embedding", "parse_model",
    "parse_pbf", "parse_tree_instance", "pbf_from_qubo", "qubo_energy",
    "qubo_from_pbf", "qubo_to_ising", "reduce_to_quadratic",
    "render_aux_map", "render_histogram", "render_histogram_csv",
    "render_pbf", "repetitions_to_target", "replica_coupling",
    "simulated_annealing", "simulated_quantum_annealing", "solve_embedded",
    "time_to_solution", "unembed", "validate_embedding",
]
