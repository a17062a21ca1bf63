"""parklaw CLI - exact laws and limit harnesses for parking functions.

Every command writes one record set (CSV or JSON) to stdout or --out;
diagnostics go to stderr. Exit codes: 0 success, 2 invalid arguments,
1 size-guard violation, infeasible method or self-test failure.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Annotated, Any

import typer
from pydantic import ValidationError

from parklaw import __version__
from parklaw.cli import runners
from parklaw.cli.output import RecordWriter
from parklaw.cli.runners import RecordSet
from parklaw.cli.schemas import OutputFormat, RunConfig
from parklaw.exceptions import InvalidInputError, ParklawError
from parklaw.stats.schemas import Method
from parklaw.utils.logging import (
    clear_correlation_context,
    configure_logging,
    get_logger,
    set_correlation_context,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

app = typer.Typer(
    name="parklaw",
    help="Exact laws and limit theorems for the first places of parking functions",
    add_completion=False,
    pretty_exceptions_show_locals=False,
)

logger = get_logger(__name__)

# =============================================================================
# Shared options
# =============================================================================

NOption = Annotated[int, typer.Option("--n", min=1, help="Parking function size")]
KOption = Annotated[
    int | None, typer.Option("--k", min=1, help="Number of leading places")
]
AOption = Annotated[
    int | None, typer.Option("--a", min=0, help="Gap below n (places <= n - a)")
]
SeedOption = Annotated[
    int, typer.Option("--seed", min=0, help="Base seed (64-bit unsigned)")
]
SamplesOption = Annotated[
    int | None, typer.Option("--samples", min=1, help="Monte-Carlo sample count")
]
MethodOption = Annotated[
    Method, typer.Option("--method", help="Computation method")
]
FormatOption = Annotated[
    OutputFormat, typer.Option("--format", help="Record encoding")
]
OutOption = Annotated[
    Path | None, typer.Option("--out", help="Write records here instead of stdout")
]
ThreadsOption = Annotated[
    int, typer.Option("--threads", min=1, help="Worker threads (output unaffected)")
]


def _dispatch(runner: Callable[[RunConfig], RecordSet], **fields: Any) -> None:
    """Validate flags, run a command and write its records."""
    try:
        config = RunConfig(**fields)
    except ValidationError as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(EXIT_USAGE) from None

    set_correlation_context(command=config.command, seed=config.seed)
    logger.info("Command started", config=config.model_dump(mode="json"))
    try:
        record_set = runner(config)
    except (InvalidInputError, ValidationError) as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(EXIT_USAGE) from None
    except ParklawError as exc:
        logger.warning("Command refused", error=str(exc))
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(EXIT_FAILURE) from None
    finally:
        clear_correlation_context()

    RecordWriter(config).write(record_set.records, record_set.columns)
    if not record_set.ok:
        raise typer.Exit(EXIT_FAILURE)


# =============================================================================
# Commands
# =============================================================================


@app.command()
def sample(
    n: NOption,
    samples: SamplesOption = None,
    seed: SeedOption = 0,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
    threads: ThreadsOption = 1,
) -> None:
    """Draw uniform parking functions of size n."""
    _dispatch(
        runners.run_sample,
        command="sample",
        n=n,
        samples=samples,
        seed=seed,
        format=fmt,
        out=out,
        threads=threads,
    )


@app.command("enumerate")
def enumerate_command(
    n: NOption,
    count_only: Annotated[
        bool, typer.Option("--count-only", help="Print only the number of functions")
    ] = False,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
) -> None:
    """List every parking function of size n (n <= 8)."""
    _dispatch(
        runners.run_enumerate,
        command="enumerate",
        n=n,
        count_only=count_only,
        format=fmt,
        out=out,
    )


@app.command()
def pmf(
    n: NOption,
    k: KOption = None,
    method: MethodOption = Method.AUTO,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
) -> None:
    """Exact joint law of the first k places."""
    _dispatch(
        runners.run_pmf, command="pmf", n=n, k=k, method=method, format=fmt, out=out
    )


@app.command()
def cdf(
    n: NOption,
    k: KOption = None,
    a: AOption = None,
    method: MethodOption = Method.AUTO,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
) -> None:
    """Exact probability that the first k places are all <= n - a."""
    _dispatch(
        runners.run_cdf,
        command="cdf",
        n=n,
        k=k,
        a=a,
        method=method,
        format=fmt,
        out=out,
    )


@app.command()
def tv(
    n: NOption,
    k: KOption = None,
    method: MethodOption = Method.AUTO,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
) -> None:
    """Summed absolute pmf deviation from k iid uniforms."""
    _dispatch(
        runners.run_tv, command="tv", n=n, k=k, method=method, format=fmt, out=out
    )


@app.command()
def kolmogorov(
    n: NOption,
    k: KOption = None,
    method: MethodOption = Method.AUTO,
    samples: SamplesOption = None,
    seed: SeedOption = 0,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
    threads: ThreadsOption = 1,
) -> None:
    """Maximum CDF deviation from k iid uniforms."""
    _dispatch(
        runners.run_kolmogorov,
        command="kolmogorov",
        n=n,
        k=k,
        method=method,
        samples=samples,
        seed=seed,
        format=fmt,
        out=out,
        threads=threads,
    )


@app.command("limit-sum")
def limit_sum(
    n: NOption,
    k: Annotated[int, typer.Option("--k", min=1, help="Number of leading places")],
    samples: SamplesOption = None,
    seed: SeedOption = 0,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
    threads: ThreadsOption = 1,
) -> None:
    """KS distance of the normalised sum of the first k places to N(0, 1)."""
    _dispatch(
        runners.run_limit_sum,
        command="limit-sum",
        n=n,
        k=k,
        samples=samples,
        seed=seed,
        format=fmt,
        out=out,
        threads=threads,
    )


@app.command("limit-max")
def limit_max(
    n: NOption,
    k: Annotated[int, typer.Option("--k", min=1, help="Number of leading places")],
    samples: SamplesOption = None,
    seed: SeedOption = 0,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
    threads: ThreadsOption = 1,
) -> None:
    """KS distance of k (1 - max/n) over the first k places to Exp(1)."""
    _dispatch(
        runners.run_limit_max,
        command="limit-max",
        n=n,
        k=k,
        samples=samples,
        seed=seed,
        format=fmt,
        out=out,
        threads=threads,
    )


@app.command()
def tail(
    n: NOption,
    c: Annotated[float, typer.Option("--c", help="Fraction of cars, in (0, 1]")],
    a: Annotated[int, typer.Option("--a", min=0, help="Gap below n (a <= 20)")],
    samples: SamplesOption = None,
    seed: SeedOption = 0,
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
    threads: ThreadsOption = 1,
) -> None:
    """Parking-side vs walk-side tail of the largest of round(cn) places."""
    _dispatch(
        runners.run_tail,
        command="tail",
        n=n,
        c=c,
        a=a,
        samples=samples,
        seed=seed,
        format=fmt,
        out=out,
        threads=threads,
    )


@app.command()
def selftest(
    fmt: FormatOption = OutputFormat.CSV,
    out: OutOption = None,
) -> None:
    """Run the exact-oracle suites; exits 1 if any fails."""
    _dispatch(runners.run_selftest_suites, command="selftest", format=fmt, out=out)


@app.callback(invoke_without_command=True)
def main(ctx: typer.Context) -> None:
    """Exact laws and limit theorems for the first places of parking functions."""
    configure_logging()
    if ctx.invoked_subcommand is None:
        typer.echo(f"parklaw {__version__}")
        typer.echo(ctx.get_help())


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI on ``argv`` and return the exit code instead of exiting.

    Usage errors (unknown flag, missing parameter, bad value) return 2.
    """
    command = typer.main.get_command(app)
    try:
        command.main(
            args=list(argv) if argv is not None else None,
            prog_name="parklaw",
            standalone_mode=True,
        )
    except SystemExit as exc:
        return _exit_code(exc.code)
    return EXIT_OK


def _exit_code(code: str | int | None) -> int:
    """Map a SystemExit payload to a process exit code."""
    if code is None:
        return EXIT_OK
    if isinstance(code, int):
        return code
    typer.echo(code, err=True)
    return EXIT_FAILURE


if __name__ == "__main__":  # pragma: no cover
    app()
