"""Command implementations behind the CLI.

Each runner takes a validated RunConfig and returns the records to write,
keeping typer plumbing out of the computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from parklaw.cli.output import Record
from parklaw.cli.schemas import RunConfig
from parklaw.cli.selftest import run_selftest
from parklaw.exceptions import InvalidInputError, MethodError
from parklaw.parking.constants import ORACLE_MAX_N
from parklaw.parking.enumeration import (
    count_parking,
    enumerate_parking,
    oracle_joint_pmf,
)
from parklaw.stats.distances import cumulative, kolmogorov_distance, tv_distance
from parklaw.stats.limits import max_exponential_test, sum_clt_test, tail_comparison
from parklaw.stats.replicates import sample_prefixes
from parklaw.stats.schemas import Method
from parklaw.utils.logging import get_logger
from parklaw.walks.constants import EXACT_DP_MAX_N, PMF_TABLE_MAX_CELLS
from parklaw.walks.laws import cdf_symmetric, joint_pmf_table

logger = get_logger(__name__)

DEFAULT_LIMIT_SAMPLES = 2000


@dataclass(frozen=True)
class RecordSet:
    """Records of one command plus the CSV column order."""

    columns: tuple[str, ...]
    records: list[Record] = field(default_factory=list)
    ok: bool = True


def _require(value: int | float | None, flag: str) -> int | float:
    if value is None:
        raise InvalidInputError(f"{flag} is required for this command")
    return value


def _places_text(places: npt.NDArray[np.int64] | tuple[int, ...]) -> str:
    return " ".join(str(int(p)) for p in places)


def run_sample(config: RunConfig) -> RecordSet:
    """Draw uniform parking functions of size n."""
    n = int(_require(config.n, "--n"))
    samples = config.samples or 1
    drawn = sample_prefixes(
        n, n, samples=samples, seed=config.seed, threads=config.threads
    )
    records: list[Record] = [
        {"index": index, "n": n, "places": _places_text(row)}
        for index, row in enumerate(drawn)
    ]
    return RecordSet(columns=("index", "n", "places"), records=records)


def run_enumerate(config: RunConfig) -> RecordSet:
    """List (or count) every parking function of size n."""
    n = int(_require(config.n, "--n"))
    if config.count_only:
        record: Record = {"n": n, "count": count_parking(n)}
        return RecordSet(columns=("n", "count"), records=[record])
    records: list[Record] = [
        {"index": index, "n": n, "places": _places_text(p.places)}
        for index, p in enumerate(enumerate_parking(n))
    ]
    return RecordSet(columns=("index", "n", "places"), records=records)


def _exact_method(n: int, k: int, method: Method | None) -> Method:
    """Pick the exact method for pmf and cdf tables."""
    if method is None or method is Method.AUTO:
        if n <= EXACT_DP_MAX_N and (k <= 2 or n**k <= PMF_TABLE_MAX_CELLS):
            return Method.EXACT_DP
        if n <= ORACLE_MAX_N:
            return Method.EXACT_ENUMERATION
        raise MethodError("no exact method covers this size", n=n, k=k)
    if method is Method.MONTE_CARLO:
        raise MethodError("exact laws have no Monte-Carlo method", n=n, k=k)
    return method


def _pmf_table(n: int, k: int, method: Method) -> npt.NDArray[np.float64]:
    if method is Method.EXACT_DP:
        return joint_pmf_table(n, k)
    return oracle_joint_pmf(n, k).to_array()


def run_pmf(config: RunConfig) -> RecordSet:
    """Emit ℙ(π(1..k) = i) for every i in [1, n]^k."""
    n = int(_require(config.n, "--n"))
    k = config.k or 1
    if k > n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    method = _exact_method(n, k, config.method)
    table = _pmf_table(n, k, method)
    columns = tuple(f"i{axis + 1}" for axis in range(k))
    records: list[Record] = []
    for index in np.ndindex(table.shape):
        record: Record = {
            column: i + 1 for column, i in zip(columns, index, strict=True)
        }
        record["probability"] = float(table[index])
        records.append(record)
    return RecordSet(columns=(*columns, "probability"), records=records)


def run_cdf(config: RunConfig) -> RecordSet:
    """Emit ℙ(π(1..k) ≤ n - a) for one a or every a in [0, n-1]."""
    n = int(_require(config.n, "--n"))
    k = config.k or 1
    if k > n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    gaps = [config.a] if config.a is not None else list(range(n))
    for a in gaps:
        if a > n - 1:
            raise InvalidInputError("a must lie in [0, n-1]", a=a, n=n)
    # One height-law pass covers any k, so only n limits exact-dp here
    method = _exact_method(n, 1, config.method)

    if method is Method.EXACT_DP:
        values = [cdf_symmetric(n, k, a) for a in gaps]
    else:
        cdf = cumulative(oracle_joint_pmf(n, k).to_array())
        values = [float(cdf[(n - a - 1,) * k]) for a in gaps]
    records: list[Record] = [
        {"n": n, "k": k, "a": a, "bound": n - a, "probability": value}
        for a, value in zip(gaps, values, strict=True)
    ]
    return RecordSet(columns=("n", "k", "a", "bound", "probability"), records=records)


def run_tv(config: RunConfig) -> RecordSet:
    """Emit d_TV(k, n) with the √n-rescaled value for scaling plots."""
    n = int(_require(config.n, "--n"))
    k = config.k or 1
    report = tv_distance(n, k, config.method or Method.AUTO)
    record: Record = {
        "n": n,
        "k": k,
        "method": str(report.method),
        "value": report.value,
        "sqrt_n_times_value": math.sqrt(n) * report.value,
    }
    return RecordSet(columns=tuple(record), records=[record])


def run_kolmogorov(config: RunConfig) -> RecordSet:
    """Emit d_K(k, n)."""
    n = int(_require(config.n, "--n"))
    k = config.k or 1
    report = kolmogorov_distance(
        n,
        k,
        config.method or Method.AUTO,
        samples=config.samples,
        seed=config.seed,
        threads=config.threads,
    )
    record: Record = report.model_dump(mode="json")
    return RecordSet(
        columns=("n", "k", "method", "samples", "value", "stderr", "lower_bound"),
        records=[record],
    )


def _run_limit(config: RunConfig, *, use_sum: bool) -> RecordSet:
    n = int(_require(config.n, "--n"))
    k = int(_require(config.k, "--k"))
    samples = config.samples or DEFAULT_LIMIT_SAMPLES
    harness = sum_clt_test if use_sum else max_exponential_test
    report = harness(n, k, samples, seed=config.seed, threads=config.threads)
    record: Record = report.model_dump(mode="json", by_alias=True)
    return RecordSet(
        columns=("statistic", "n", "k", "samples", "ks_distance", "threshold", "pass"),
        records=[record],
    )


def run_limit_sum(config: RunConfig) -> RecordSet:
    """KS test of the normalised sum against N(0, 1)."""
    return _run_limit(config, use_sum=True)


def run_limit_max(config: RunConfig) -> RecordSet:
    """KS test of the normalised maximum gap against Exp(1)."""
    return _run_limit(config, use_sum=False)


def run_tail(config: RunConfig) -> RecordSet:
    """Compare both sides of the tail limit of the largest place."""
    n = int(_require(config.n, "--n"))
    c = float(_require(config.c, "--c"))
    a = int(_require(config.a, "--a"))
    samples = config.samples or DEFAULT_LIMIT_SAMPLES
    report = tail_comparison(n, c, a, samples, seed=config.seed, threads=config.threads)
    record: Record = report.model_dump(mode="json")
    return RecordSet(columns=tuple(record), records=[record])


def run_selftest_suites(config: RunConfig) -> RecordSet:
    """Run the exact-oracle suites; ``ok`` is False if any fails."""
    _ = config
    results = run_selftest()
    records: list[Record] = [
        {"suite": r.suite, "passed": r.passed, "detail": r.detail} for r in results
    ]
    return RecordSet(
        columns=("suite", "passed", "detail"),
        records=records,
        ok=all(r.passed for r in results),
    )
