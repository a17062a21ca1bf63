"""Reproducible replicate fan-out for Monte-Carlo harnesses.

Samples are cut into fixed-size batches. Batch r draws from the stream
``SeedSequence(seed, spawn_key=(stream, salt, r))``, so the concatenated
output depends only on (seed, samples) and never on the worker count.
"""

from __future__ import annotations

import asyncio
from collections.abc import Callable
from typing import Any

import numpy as np
import numpy.typing as npt

from parklaw.cayley.sampler import sample_tree_prefixes
from parklaw.exceptions import InvalidInputError
from parklaw.stats.constants import REPLICATE_SIZE, TREE_SAMPLER_MAX_N, Stream
from parklaw.utils.logging import correlation_scope, get_logger
from parklaw.walks.excursions import sample_excursion_heights, sample_walk_prefixes

logger = get_logger(__name__)

Batch = npt.NDArray[Any]
Draw = Callable[[int, np.random.Generator], Batch]
PrefixStatistic = Callable[[npt.NDArray[np.int64]], npt.NDArray[np.float64]]


def replicate_sizes(samples: int) -> list[int]:
    """Split ``samples`` into REPLICATE_SIZE batches plus a final remainder."""
    if samples < 1:
        raise InvalidInputError("samples must be >= 1", samples=samples)
    full, rest = divmod(samples, REPLICATE_SIZE)
    return [REPLICATE_SIZE] * full + ([rest] if rest else [])


def replicate_rng(
    seed: int, stream: int, replicate: int, salt: int = 0
) -> np.random.Generator:
    """Return the generator owned by one replicate batch."""
    if seed < 0:
        raise InvalidInputError("seed must be a nonnegative integer", seed=seed)
    sequence = np.random.SeedSequence(seed, spawn_key=(int(stream), salt, replicate))
    return np.random.default_rng(sequence)


def _run_batch(
    draw: Draw, size: int, seed: int, stream: int, replicate: int, salt: int
) -> Batch:
    with correlation_scope(replicate=replicate):
        batch = draw(size, replicate_rng(seed, stream, replicate, salt))
        logger.debug("Replicate finished", size=size)
    return batch


async def _fan_out(
    draw: Draw, sizes: list[int], seed: int, stream: int, salt: int, threads: int
) -> list[Batch]:
    semaphore = asyncio.Semaphore(threads)

    async def worker(replicate: int, size: int) -> Batch:
        async with semaphore:
            return await asyncio.to_thread(
                _run_batch, draw, size, seed, stream, replicate, salt
            )

    async with asyncio.TaskGroup() as tg:
        tasks = [tg.create_task(worker(r, size)) for r, size in enumerate(sizes)]
    return [task.result() for task in tasks]


def run_replicates(
    draw: Draw,
    *,
    samples: int,
    seed: int,
    stream: Stream,
    threads: int = 1,
    salt: int = 0,
) -> Batch:
    """Run ``draw(size, rng)`` over every replicate batch and concatenate.

    Args:
        draw: Produces ``size`` draws (leading axis) from a generator.
        samples: Total number of draws.
        seed: Base seed of the run.
        stream: Stream tag separating unrelated draws of one run.
        threads: Worker count; has no effect on the returned values.
        salt: Extra spawn-key entry (e.g. an excursion horizon).

    Returns:
        The batches concatenated in replicate order.
    """
    if threads < 1:
        raise InvalidInputError("threads must be >= 1", threads=threads)
    sizes = replicate_sizes(samples)
    logger.info(
        "Running replicates",
        samples=samples,
        batches=len(sizes),
        threads=threads,
        stream=stream.name,
    )
    if threads == 1 or len(sizes) == 1:
        batches = [
            _run_batch(draw, size, seed, stream, r, salt)
            for r, size in enumerate(sizes)
        ]
    else:
        batches = asyncio.run(_fan_out(draw, sizes, seed, stream, salt, threads))
    return np.concatenate(batches)


def sample_prefixes(
    n: int, k: int, *, samples: int, seed: int, threads: int = 1
) -> npt.NDArray[np.int64]:
    """Draw ``samples`` prefixes (π(1), ..., π(k)) of uniform parking functions.

    The Prüfer tree sampler is used up to TREE_SAMPLER_MAX_N and the
    excursion sampler beyond; both are exact.

    Returns:
        Integer array of shape (samples, k).
    """
    return _run_prefix_draws(n, k, None, samples, seed, threads)


def sample_prefix_statistics(
    n: int,
    k: int,
    statistic: PrefixStatistic,
    *,
    samples: int,
    seed: int,
    threads: int = 1,
) -> npt.NDArray[np.float64]:
    """Draw prefixes as ``sample_prefixes`` does and keep one value per row.

    ``statistic`` maps a (size, k) batch to shape (size,) inside the worker,
    so memory stays O(samples + REPLICATE_SIZE * k). For the same seed the
    result equals ``statistic(sample_prefixes(...))``.
    """
    return _run_prefix_draws(n, k, statistic, samples, seed, threads)


def _run_prefix_draws(
    n: int,
    k: int,
    statistic: PrefixStatistic | None,
    samples: int,
    seed: int,
    threads: int,
) -> Batch:
    if not 1 <= k <= n:
        raise InvalidInputError("k must lie in [1, n]", n=n, k=k)
    sampler = sample_tree_prefixes if n <= TREE_SAMPLER_MAX_N else sample_walk_prefixes

    def draw(size: int, rng: np.random.Generator) -> Batch:
        prefixes = sampler(n, k, size, rng)
        return prefixes if statistic is None else statistic(prefixes)

    return run_replicates(
        draw, samples=samples, seed=seed, stream=Stream.PREFIX, threads=threads
    )


def sample_heights(
    n: int, t: int, *, samples: int, seed: int, threads: int = 1
) -> npt.NDArray[np.int64]:
    """Draw ``samples`` values of S_t under the walk conditioned on τ₋₁ = n+1."""

    def draw(size: int, rng: np.random.Generator) -> npt.NDArray[np.int64]:
        return sample_excursion_heights(n, t, size, rng)

    return run_replicates(
        draw,
        samples=samples,
        seed=seed,
        stream=Stream.EXCURSION,
        threads=threads,
        salt=n,
    )
