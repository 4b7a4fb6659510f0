"""
Command-line front end for the Genetic Equality Solver
"""
import json
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Any, Dict, Iterator, Optional

import typer
from loguru import logger
from pydantic import ValidationError

from app.core.config import EXAMPLE_SCRIPT, settings
from app.core.errors import ConfigError, DomainTooLarge, GaError, RunAborted, ScriptParseError
from app.core.logging import setup_logging
from app.models.schemas import Chromosome, RunResult, RunSpec, format_chromosome
from app.services.engine_service import engine_service
from app.services.objective_service import LinearEqualityObjective, evaluate_linear
from app.services.oracle_service import oracle_service
from app.services.rng_service import build_source, load_script
from app.services.sweep_service import sweep_service
from app.services.trace_service import trace_service

# Exit-code contract
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

app = typer.Typer(
    help="Genetic algorithm solver for integer linear equalities",
    no_args_is_help=True,
    add_completion=False,
)

ConfigOpt = Annotated[Optional[Path], typer.Option("--config", help="Flat JSON config file; flags override it")]
CoeffsOpt = Annotated[Optional[str], typer.Option("--coeffs", help="Comma-separated coefficients, e.g. 1,2,3,4")]
TargetOpt = Annotated[Optional[int], typer.Option("--target", help="Right-hand side of the equality")]
BoundsOpt = Annotated[Optional[str], typer.Option("--bounds", help="Gene bounds as lo:hi, e.g. 0:30")]
PopOpt = Annotated[Optional[int], typer.Option("--pop", help="Population size N")]
GensOpt = Annotated[Optional[int], typer.Option("--gens", help="Number of generations G")]
CrossoverOpt = Annotated[Optional[float], typer.Option("--crossover-rate", help="Crossover rate in [0,1]")]
MutationOpt = Annotated[Optional[float], typer.Option("--mutation-rate", help="Mutation rate in [0,1]")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", help="64-bit seed for the PCG64 source")]
ScriptOpt = Annotated[Optional[Path], typer.Option("--script", help="Draw script to replay instead of a seed")]
TraceOpt = Annotated[Optional[Path], typer.Option("--trace", help="Write a JSON-lines trace here")]
StopOpt = Annotated[Optional[bool], typer.Option("--stop-on-zero/--no-stop-on-zero", help="Stop once cost 0 is found")]
ElitismOpt = Annotated[Optional[bool], typer.Option("--elitism/--no-elitism", help="Keep the best chromosome alive")]


@app.callback()
def main(
    log_level: Annotated[str, typer.Option("--log-level", help="Log level for stderr")] = settings.log_level,
    log_file: Annotated[Optional[str], typer.Option("--log-file", help="Also log to this file")] = settings.log_file,
):
    """Solve, replay, sweep and verify integer equality instances"""
    setup_logging(log_level, log_file)


def _settings_defaults() -> Dict[str, Any]:
    return {
        "coefficients": list(settings.coefficients),
        "target": settings.target,
        "bounds": settings.bounds_text,
        "population_size": settings.population_size,
        "generations": settings.generations,
        "crossover_rate": settings.crossover_rate,
        "mutation_rate": settings.mutation_rate,
        "stop_on_zero": settings.stop_on_zero,
        "elitism": settings.elitism,
        "tolerance": settings.replay_tolerance,
        "workers": settings.sweep_workers,
    }


def _load_config_file(path: Path) -> Dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config file {path}: {e}")
    if not isinstance(data, dict) or any(isinstance(value, dict) for value in data.values()):
        raise ConfigError(f"config file {path} must be a flat JSON object")
    return data


def build_run_spec(command: str, config_path: Optional[Path] = None,
                   command_defaults: Optional[Dict[str, Any]] = None, **flags: Any) -> RunSpec:
    """Merge, lowest precedence first: settings, command defaults, config file, flags"""
    values = _settings_defaults()
    values.update(command_defaults or {})
    if config_path is not None:
        file_values = _load_config_file(config_path)
        # A seed in the file replaces the command's default script
        if "seed" in file_values:
            values.pop("script", None)
        values.update(file_values)
    values.update({key: value for key, value in flags.items() if value is not None})
    values["command"] = command
    return RunSpec.model_validate(values)


def _fail(message: str, code: int):
    typer.echo(message, err=True)
    raise typer.Exit(code)


@contextmanager
def _cli_errors() -> Iterator[None]:
    """Translate solver errors into the exit-code contract"""
    try:
        yield
    except typer.Exit:
        raise
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or 'spec'}: {err['msg']}" for err in e.errors()
        )
        _fail(f"Invalid parameters: {problems}", EXIT_USAGE)
    except DomainTooLarge as e:
        _fail(f"{e}. Use --cap to bound stored solutions or narrow --bounds.", EXIT_USAGE)
    except (ConfigError, ScriptParseError, ValueError) as e:
        _fail(f"Error: {e}", EXIT_USAGE)
    except RunAborted as e:
        _fail(f"Run aborted: {e}", EXIT_RUNTIME)
    except (GaError, OSError) as e:
        logger.error(f"Command failed: {e}")
        _fail(f"Error: {e}", EXIT_RUNTIME)


def _print_summary(objective: LinearEqualityObjective, result: RunResult):
    typer.echo(f"Problem:           {objective.describe()}")
    typer.echo(f"Best chromosome:   {format_chromosome(result.best_chromosome)}")
    typer.echo(f"Best cost:         {result.best_cost}")
    typer.echo(f"Generation found:  {result.generation_found}")
    typer.echo(f"Generations run:   {result.generations_run}")
    typer.echo(f"Satisfied:         {'yes' if result.best_cost == 0 else 'no'}")


@app.command()
def solve(
    config: ConfigOpt = None,
    coeffs: CoeffsOpt = None,
    target: TargetOpt = None,
    bounds: BoundsOpt = None,
    pop: PopOpt = None,
    gens: GensOpt = None,
    crossover_rate: CrossoverOpt = None,
    mutation_rate: MutationOpt = None,
    seed: SeedOpt = None,
    script: ScriptOpt = None,
    trace: TraceOpt = None,
    stop_on_zero: StopOpt = None,
    elitism: ElitismOpt = None,
):
    """Run the GA on an instance and print the best chromosome found"""
    with _cli_errors():
        spec = build_run_spec(
            "solve", config, coefficients=coeffs, target=target, bounds=bounds, population_size=pop,
            generations=gens, crossover_rate=crossover_rate, mutation_rate=mutation_rate, seed=seed,
            script=script, trace=trace, stop_on_zero=stop_on_zero, elitism=elitism,
        )
        objective = LinearEqualityObjective(coefficients=spec.coefficients, target=spec.target)
        ga_config = spec.to_ga_config()
        logger.info(f"Solving {objective.describe()} with {ga_config.rng_mode}")

        result = engine_service.run(ga_config, objective, build_source(ga_config.rng_mode),
                                    keep_traces=spec.trace is not None)
        _print_summary(objective, result)
        if spec.trace is not None:
            trace_service.write_trace(spec.trace, result)
    raise typer.Exit(EXIT_OK)


@app.command()
def replay(
    config: ConfigOpt = None,
    coeffs: CoeffsOpt = None,
    target: TargetOpt = None,
    bounds: BoundsOpt = None,
    pop: PopOpt = None,
    gens: GensOpt = None,
    crossover_rate: CrossoverOpt = None,
    mutation_rate: MutationOpt = None,
    script: ScriptOpt = None,
    trace: TraceOpt = None,
    expect: Annotated[Optional[Path], typer.Option("--expect", help="Expected JSON-lines trace to compare")] = None,
    tolerance: Annotated[Optional[float], typer.Option("--tolerance", help="Float tolerance")] = None,
):
    """Replay a scripted run (default: the shipped worked example) and check it against an expected trace"""
    with _cli_errors():
        spec = build_run_spec(
            "replay", config, command_defaults={"generations": 1, "script": str(EXAMPLE_SCRIPT)},
            coefficients=coeffs, target=target, bounds=bounds, population_size=pop, generations=gens,
            crossover_rate=crossover_rate, mutation_rate=mutation_rate, script=script, trace=trace,
            expect=expect, tolerance=tolerance,
        )
        if spec.script is None:
            _fail("replay needs a draw script (--script)", EXIT_USAGE)

        objective = LinearEqualityObjective(coefficients=spec.coefficients, target=spec.target)
        ga_config = spec.to_ga_config()
        source = load_script(spec.script)
        logger.info(f"Replaying {spec.script} ({source.remaining} draws) for {ga_config.generations} generation(s)")

        result = engine_service.run(ga_config, objective, source, keep_traces=True)
        for generation_trace in result.traces:
            typer.echo(trace_service.format_trace(generation_trace))
        _print_summary(objective, result)
        if source.remaining:
            logger.warning(f"Script has {source.remaining} unused draws")
        if spec.trace is not None:
            trace_service.write_trace(spec.trace, result)

        if spec.expect is not None:
            expected = trace_service.read_records(spec.expect)
            mismatch = trace_service.compare(result.traces, expected, spec.tolerance)
            if mismatch is not None:
                logger.warning(f"Trace mismatch: {mismatch}")
                _fail(f"MISMATCH: {mismatch}", EXIT_NEGATIVE)
            typer.echo(f"Trace matches {spec.expect}")
    raise typer.Exit(EXIT_OK)


@app.command()
def sweep(
    config: ConfigOpt = None,
    coeffs: CoeffsOpt = None,
    target: TargetOpt = None,
    bounds: BoundsOpt = None,
    pop: PopOpt = None,
    gens: GensOpt = None,
    crossover_rates: Annotated[Optional[str], typer.Option("--crossover-rates", help="Comma list")] = None,
    mutation_rates: Annotated[Optional[str], typer.Option("--mutation-rates", help="Comma list")] = None,
    seeds: Annotated[Optional[str], typer.Option("--seeds", help="a:b half-open range or comma list")] = None,
    out: Annotated[Optional[Path], typer.Option("--out", help="CSV report path (stdout if omitted)")] = None,
    workers: Annotated[Optional[int], typer.Option("--workers", help="Parallel worker processes")] = None,
    stop_on_zero: StopOpt = None,
    elitism: ElitismOpt = None,
):
    """Run every (crossover rate, mutation rate, seed) combination and report success rates"""
    with _cli_errors():
        spec = build_run_spec(
            "sweep", config, command_defaults={"seeds": settings.sweep_seeds},
            coefficients=coeffs, target=target, bounds=bounds, population_size=pop, generations=gens,
            crossover_rates=crossover_rates, mutation_rates=mutation_rates, seeds=seeds, output=out,
            workers=workers, stop_on_zero=stop_on_zero, elitism=elitism,
        )
        if spec.script is not None:
            _fail("sweep runs seeded sources only; drop --script", EXIT_USAGE)

        objective = LinearEqualityObjective(coefficients=spec.coefficients, target=spec.target)
        frame = sweep_service.run_sweep(
            spec.to_ga_config(),
            objective,
            spec.crossover_rates or [spec.crossover_rate],
            spec.mutation_rates or [spec.mutation_rate],
            spec.seeds,
            workers=spec.workers,
        )
        rates = sweep_service.success_rates(frame)

        if spec.output is not None:
            sweep_service.write_report(frame, spec.output)
            typer.echo(rates.to_string(index=False))
        else:
            typer.echo(frame.to_csv(index=False), nl=False)
            typer.echo(rates.to_string(index=False), err=True)
    raise typer.Exit(EXIT_OK)


@app.command()
def verify(
    genes: Annotated[str, typer.Argument(help="Comma-separated genes, e.g. 7,5,3,1")],
    config: ConfigOpt = None,
    coeffs: CoeffsOpt = None,
    target: TargetOpt = None,
):
    """Print a chromosome's cost and whether it satisfies the equality"""
    with _cli_errors():
        spec = build_run_spec("verify", config, coefficients=coeffs, target=target)
        objective = LinearEqualityObjective(coefficients=spec.coefficients, target=spec.target)
        chromosome = Chromosome(genes=[int(g) for g in genes.split(",") if g.strip()])

        cost = evaluate_linear(objective, chromosome)
        satisfied = oracle_service.verify_solution(objective, chromosome)
        typer.echo(f"cost {cost}, {'satisfied' if satisfied else 'not satisfied'}")
    raise typer.Exit(EXIT_OK if satisfied else EXIT_NEGATIVE)


@app.command(name="enumerate")
def enumerate_command(
    config: ConfigOpt = None,
    coeffs: CoeffsOpt = None,
    target: TargetOpt = None,
    bounds: BoundsOpt = None,
    cap: Annotated[Optional[int], typer.Option("--cap", min=0, help="Store at most this many solutions")] = None,
    as_json: Annotated[bool, typer.Option("--json", help="Also print the solutions as JSON")] = False,
):
    """Exhaustively count the solutions inside the gene bounds"""
    with _cli_errors():
        spec = build_run_spec("enumerate", config, coefficients=coeffs, target=target, bounds=bounds)
        objective = LinearEqualityObjective(coefficients=spec.coefficients, target=spec.target)
        solutions = oracle_service.enumerate_solutions(objective, spec.bounds, spec.chromosome_length, cap=cap)
        typer.echo(f"count {solutions.count}")
        if as_json:
            typer.echo(json.dumps([list(s.genes) for s in solutions.solutions]))
    raise typer.Exit(EXIT_OK)


if __name__ == "__main__":
    app()
