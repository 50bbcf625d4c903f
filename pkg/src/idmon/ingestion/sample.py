"""Period-restricted random sampling of ingested documents."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from ..errors import InsufficientPopulationError
from ..schema import Document


def sample_period(
    docs: Sequence[Document],
    n: int,
    seed: int,
    year: Optional[int] = None,
) -> list[Document]:
    """Draw ``n`` documents uniformly without replacement.

    When ``year`` is given, only documents whose publication date falls in
    that year are eligible; documents without a date are excluded. The draw
    is deterministic for a given (population, n, seed) triple: the pool is
    sorted by document id before shuffling.
    """
    if n < 0:
        raise ValueError("sample size must be non-negative")
    pool = [
        d for d in docs
        if year is None or (d.publication_date is not None and d.publication_date.year == year)
    ]
    if len(pool) < n:
        raise InsufficientPopulationError(
            f"cannot sample {n} documents from a population of {len(pool)}",
            details={"requested": n, "population": len(pool)},
        )
    pool.sort(key=lambda d: d.id)
    rng = random.Random(seed)
    rng.shuffle(pool)
    return sorted(pool[:n], key=lambda d: d.id)
