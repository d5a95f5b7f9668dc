"""Ordered compositions of an integer, with zero parts allowed."""

from typing import Generator, Tuple


def compositions(total: int, parts: int) -> Generator[Tuple[int, ...], None, None]:
    """Enumerates all tuples of `parts` nonnegative integers summing to `total` (order matters).

    A negative total has no compositions, so the generator is empty; this is how sums over
    "partitions of a negative number" contribute zero.
    """
    if total < 0 or parts < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
    elif parts == 1:
        yield (total,)
    else:
        for i in range(0, total + 1):
            for rest in compositions(total - i, parts - 1):
                yield (i,) + rest


def block_structures(n_max: int, m_max: int, n_min: int = 2) -> Generator[Tuple[int, ...], None, None]:
    """All ordered tuples of positive block sizes with n_min <= sum <= n_max and length <= m_max."""
    for n in range(n_min, n_max + 1):
        for m in range(1, min(m_max, n) + 1):
            for shifted in compositions(n - m, m):
                yield tuple(s + 1 for s in shifted)
