"""Command line interface.

Pipeline commands (``reduce``, ``to-ising``, ``embed``) write machine-readable
text to stdout and keep status chatter on stderr, so they compose with shell
pipes.  Problem commands (``solve``, ``maxsat``, ``mmc``) print a result block
plus an optional histogram.

Exit codes: 0 success, 2 unreadable/unparsable input, 3 contract or domain
violation, 4 bad solver schedule, 5 no embedding found, 6 invalid problem
instance.
"""

import argparse
import sys
from pathlib import Path

from .analysis import histogram, render_histogram, render_histogram_csv, time_to_solution
from .chimera import (build_chimera, chain_statistics, default_chain_strength,
                      embed_weights, find_embedding, format_embedding,
                      logical_graph)
from .errors import (ContractViolation, DimensionError, DomainError,
                     EmbeddingNotFound, InstanceError, ParseError,
                     ScheduleError, SizeError)
from .frontends import (count_satisfied, cut_is_valid, decode_cut,
                        encode_maxsat, encode_tree_multicut, parse_dimacs,
                        parse_tree_instance)
from .pbf import format_coefficient, parse_pbf, render_pbf
from .quadratic import IsingModel, Qubo, format_model, parse_model, qubo_from_pbf, qubo_to_ising
from .reduce import reduce_to_quadratic, render_aux_map
from .solvers import (SaSchedule, SqaSchedule, brute_force,
                      simulated_annealing, simulated_quantum_annealing,
                      solve_embedded)


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc.strerror or exc))


def _write_output(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _status(message):
    print(message, file=sys.stderr)


def _load_problem(text):
    """A model file starts with 'qubo <n>' or 'ising <n>'; anything else is
    read as a polynomial."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.split()[0] in ("qubo", "ising"):
            return parse_model(text)
        break
    return parse_pbf(text)


def _as_ising(problem):
    if isinstance(problem, IsingModel):
        return problem
    if isinstance(problem, Qubo):
        return qubo_to_ising(problem)
    return qubo_to_ising(qubo_from_pbf(problem))


def _schedule(args):
    if args.solver == "sa":
        return SaSchedule(args.start_temp, args.cooling, args.sweeps_per_temp,
                          args.steps)
    if args.solver == "sqa":
        return SqaSchedule(args.trotter, args.gamma0, args.gamma_final,
                           args.temperature, args.sweeps)
    return None


def _run_solver(problem, args):
    if args.solver == "bf":
        return brute_force(problem, levels=args.levels)
    if args.solver == "sa":
        return simulated_annealing(problem, _schedule(args),
                                   readouts=args.readouts, seed=args.seed)
    return simulated_quantum_annealing(problem, _schedule(args),
                                       readouts=args.readouts, seed=args.seed)


def _print_histogram(samples, args):
    rows = histogram(samples)
    if args.levels is not None:
        rows = rows[:args.levels]
    render = render_histogram_csv if args.csv else render_histogram
    sys.stdout.write(render(rows))


def _print_tts(samples, args):
    hits = samples.frequency_at(samples.min_energy)
    report = time_to_solution(hits, samples.readouts, args.anneal_time,
                              target=args.target)
    print("ground readouts: %s of %d" % (format_coefficient(report.ground_hits),
                                         report.readouts))
    print("success probability: %.6g" % report.success_probability)
    if report.repetitions == float("inf"):
        print("repetitions to %.2g confidence: inf" % report.target)
        print("time to solution: inf")
    else:
        print("repetitions to %.2g confidence: %d" % (report.target,
                                                      report.repetitions))
        print("time to solution: %.6g s" % report.total_time)


def cmd_reduce(args):
    record = reduce_to_quadratic(parse_pbf(_read(args.file)))
    _status("variables: %d -> %d (%d auxiliary)"
            % (record.original_vars, record.total_vars, len(record.auxiliary_vars)))
    if args.aux_map:
        Path(args.aux_map).write_text(render_aux_map(record))
    _write_output(render_pbf(record.result), args.output)
    return 0


def cmd_to_ising(args):
    ising = _as_ising(_load_problem(_read(args.file)))
    _write_output(format_model(ising), args.output)
    return 0


def _parse_inoperable(spec):
    if not spec:
        return ()
    try:
        return tuple(int(q) for q in spec.replace(",", " ").split())
    except ValueError:
        raise DomainError("bad qubit list %r" % spec)


def _embed_model(ising, args):
    target = build_chimera(args.M, args.N, args.L,
                           inoperable=_parse_inoperable(args.inoperable))
    embedding = find_embedding(logical_graph(ising), target, seed=args.seed,
                               max_tries=args.tries)
    em = embed_weights(ising, embedding, target,
                       chain_strength=args.chain_strength)
    return target, embedding, em


def cmd_embed(args):
    ising = _as_ising(_load_problem(_read(args.file)))
    target, embedding, em = _embed_model(ising, args)
    stats = chain_statistics(embedding)
    _status("target: %dx%d cells, shore %d (%d operable qubits)"
            % (args.M, args.N, args.L, len(target.qubits())))
    _status("logical variables: %d" % ising.num_vars)
    _status("qubits used: %d" % stats["qubits"])
    _status("longest chain: %d (mean %.2f)" % (stats["max_chain"], stats["mean_chain"]))
    _status("chain strength: %s" % format_coefficient(em.chain_strength))
    if args.physical:
        Path(args.physical).write_text(format_model(em.physical))
    _write_output(format_embedding(embedding), args.output)
    return 0


def cmd_solve(args):
    problem = _load_problem(_read(args.file))
    if args.embed:
        ising = _as_ising(problem)
        target, embedding, em = _embed_model(ising, args)
        stats = chain_statistics(embedding)
        result = solve_embedded(em, solver=args.solver, schedule=_schedule(args),
                                readouts=args.readouts, seed=args.seed)
        print("qubits used: %d (of %d)" % (stats["qubits"], len(target.qubits())))
        print("longest chain: %d" % stats["max_chain"])
        print("chain strength: %s" % format_coefficient(em.chain_strength))
        print("chain break rate: %.6g" % result.chain_break_rate)
        samples = result.samples
    else:
        samples = _run_solver(problem, args)
    print("minimum energy: %s" % format_coefficient(samples.min_energy))
    if samples.offset:
        print("adjusted minimum: %s"
              % format_coefficient(samples.min_energy + samples.offset))
    print("best configuration: %s" % " ".join(str(v) for v in samples.best))
    if args.tts:
        _print_tts(samples, args)
    _print_histogram(samples, args)
    return 0


def _solve_encoded(polynomial, args):
    """Sample an encoded problem, reducing it first when the sampler needs a
    quadratic; configurations are reported on the original variables."""
    if args.solver != "bf" and polynomial.degree() > 2:
        record = reduce_to_quadratic(polynomial)
        _status("reduced for sampling: %d -> %d variables"
                % (record.original_vars, record.total_vars))
        samples = _run_solver(record.result, args)
    else:
        samples = _run_solver(polynomial, args)
    return samples


def cmd_maxsat(args):
    formula = parse_dimacs(_read(args.file))
    polynomial = encode_maxsat(formula)
    _status("%d variables, %d clauses" % (formula.num_vars, formula.num_clauses))
    samples = _solve_encoded(polynomial, args)
    assignment = samples.best[:formula.num_vars]
    satisfied = count_satisfied(formula, assignment)
    print("clauses satisfied: %d of %d" % (satisfied, formula.num_clauses))
    print("assignment: %s" % "".join(str(v) for v in assignment))
    print("falsified at minimum energy: %s" % format_coefficient(samples.min_energy))
    if args.tts:
        _print_tts(samples, args)
    if args.histogram:
        _print_histogram(samples, args)
    return 0


def cmd_mmc(args):
    instance = parse_tree_instance(_read(args.file))
    polynomial, encoding = encode_tree_multicut(instance,
                                                penalty_weight=args.penalty_weight)
    _status("%d vertices, %d terminal pairs, %d edges on terminal paths"
            % (instance.num_vertices, len(instance.pairs),
               len(encoding.variable_edges)))
    _status("penalty weight: %s" % format_coefficient(encoding.penalty_weight))
    samples = _solve_encoded(polynomial, args)
    minimum = samples.min_energy
    best_cut = None
    num_edges = len(encoding.variable_edges)
    configs = samples.configs_at(minimum)
    for config in configs:
        cut = decode_cut(encoding, config[:num_edges])
        if best_cut is None and cut_is_valid(instance, cut):
            best_cut = cut
    if samples.info.get("exhaustive"):
        # exhaustive frequencies are degeneracies: they count optima even
        # though only one representative per energy level is stored
        optima = samples.frequency_at(minimum)
    else:
        # sampled configs include auxiliary variables, which can be
        # degenerate at the optimum: count distinct edge assignments
        optima = len({config[:num_edges] for config in configs})
    print("minimum energy: %s" % format_coefficient(minimum))
    print("configurations at minimum: %d" % optima)
    if best_cut is None:
        print("cut: none of the minima separates every pair")
    else:
        print("cut size: %d" % len(best_cut))
        print("cut: %s" % " ".join("(%d,%d)" % e for e in best_cut))
    if args.tts:
        _print_tts(samples, args)
    if args.histogram:
        _print_histogram(samples, args)
    return 0


def _solver_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("solver")
    g.add_argument("--solver", choices=("bf", "sa", "sqa"), default="bf",
                   help="brute force, simulated annealing, or replica-coupled "
                        "annealing (default: bf)")
    g.add_argument("--readouts", type=int, default=1000,
                   help="independent anneals (ignored by bf; default: 1000)")
    g.add_argument("--seed", type=int, default=1, help="RNG seed (default: 1)")
    g.add_argument("--levels", type=int, default=None,
                   help="report only this many lowest energy levels")
    g.add_argument("--csv", action="store_true",
                   help="histogram as CSV instead of an aligned table")
    sa = p.add_argument_group("simulated annealing")
    sa.add_argument("--start-temp", type=float, default=10.0,
                    help="initial temperature (default: 10)")
    sa.add_argument("--cooling", type=float, default=0.96,
                    help="geometric cooling factor in (0,1) (default: 0.96)")
    sa.add_argument("--sweeps-per-temp", type=int, default=2,
                    help="sweeps at each temperature (default: 2)")
    sa.add_argument("--steps", type=int, default=120,
                    help="temperature steps (default: 120)")
    sqa = p.add_argument_group("replica-coupled annealing")
    sqa.add_argument("--trotter", type=int, default=20,
                     help="replica count (default: 20)")
    sqa.add_argument("--gamma0", type=float, default=3.0,
                     help="initial transverse field (default: 3)")
    sqa.add_argument("--gamma-final", type=float, default=0.05,
                     help="final transverse field (default: 0.05)")
    sqa.add_argument("--temperature", type=float, default=0.3,
                     help="replica temperature (default: 0.3)")
    sqa.add_argument("--sweeps", type=int, default=200,
                     help="sweeps over the ramp (default: 200)")
    tts = p.add_argument_group("time to solution")
    tts.add_argument("--tts", action="store_true",
                     help="report repetitions and time to reach the target "
                          "confidence from the observed hit rate")
    tts.add_argument("--anneal-time", type=float, default=700e-6,
                     help="seconds per anneal (default: 700e-6)")
    tts.add_argument("--target", type=float, default=0.99,
                     help="target confidence (default: 0.99)")
    return p


def _embed_parent(defaults=True):
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("target hardware graph")
    g.add_argument("-M", type=int, default=4, help="cell rows (default: 4)")
    g.add_argument("-N", type=int, default=4, help="cell columns (default: 4)")
    g.add_argument("-L", type=int, default=4, help="shore size (default: 4)")
    g.add_argument("--inoperable", default="",
                   help="comma-separated qubit ids to exclude")
    g.add_argument("--tries", type=int, default=256,
                   help="embedding restarts before giving up (default: 256)")
    g.add_argument("--chain-strength", type=float, default=None,
                   help="intra-chain coupling magnitude (default: derived "
                        "from the model)")
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="annealc",
        description="Compile pseudo-Boolean optimization problems to "
                    "quadratic spin models and sample them.")
    sub = parser.add_subparsers(dest="command", required=True)
    solver = _solver_parent()
    embed = _embed_parent()

    p = sub.add_parser("reduce", help="rewrite a polynomial as a quadratic "
                                      "one with auxiliary variables")
    p.add_argument("file", help="polynomial file: one '<coeff> <vars...>' per line")
    p.add_argument("-o", "--output", default=None, help="write result here "
                                                        "instead of stdout")
    p.add_argument("--aux-map", default=None,
                   help="also write the auxiliary-variable table to this file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("to-ising", help="convert a polynomial or qubo model "
                                        "to spin variables")
    p.add_argument("file", help="polynomial or model file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_to_ising)

    p = sub.add_parser("embed", parents=[embed],
                       help="minor-embed a model into a hardware graph")
    p.add_argument("file", help="model or quadratic polynomial file")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("-o", "--output", default=None, help="write the embedding "
                                                        "here instead of stdout")
    p.add_argument("--physical", default=None,
                   help="also write the embedded physical model to this file")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("solve", parents=[solver, embed],
                       help="sample a polynomial or model file")
    p.add_argument("file")
    p.add_argument("--embed", action="store_true",
                   help="route through a hardware embedding and vote chains "
                        "back to logical variables")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("maxsat", parents=[solver],
                       help="maximize satisfied clauses of a DIMACS CNF file")
    p.add_argument("file")
    p.add_argument("--histogram", action="store_true",
                   help="print the energy histogram as well")
    p.set_defaults(func=cmd_maxsat)

    p = sub.add_parser("mmc", parents=[solver],
                       help="minimum multicut on a tree instance file")
    p.add_argument("file")
    p.add_argument("--penalty-weight", type=float, default=None,
                   help="cost of leaving a terminal pair connected "
                        "(default: number of pairs)")
    p.add_argument("--histogram", action="store_true")
    p.set_defaults(func=cmd_mmc)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _status("error: %s" % exc)
        return 2
    except (ContractViolation, DimensionError, DomainError, SizeError) as exc:
        _status("error: %s" % exc)
        return 3
    except ScheduleError as exc:
        _status("error: %s" % exc)
        return 4
    except EmbeddingNotFound as exc:
        _status("error: %s" % exc)
        return 5
    except InstanceError as exc:
        _status("error: %s" % exc)
        return 6


if __name__ == "__main__":
    sys.exit(main())
