"""
Set partitions of the argument positions with their Moebius weights.

A sum over pairwise distinct indices j_1 != ... != j_m equals the signed sum, over all set
partitions of {1..m}, of the products of block-wise diagonal sums:

    sum_{distinct} prod_l a^(l)_{j_l} = sum_P w(P) prod_{B in P} sum_j prod_{l in B} a^(l)_j,

with w(P) = prod_B (-1)^(|B|-1) (|B|-1)!.
"""
import functools
import math
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from uvstat.exceptions import OrderTooLargeError

MAX_PARTITION_ORDER = 6

Block = Tuple[int, ...]


@dataclass(frozen=True)
class PartitionTerm:
    blocks: Tuple[Block, ...]
    weight: int

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


def mobius_weight(blocks: Tuple[Block, ...]) -> int:
    weight = 1
    for block in blocks:
        size = len(block)
        weight *= (-1) ** (size - 1) * math.factorial(size - 1)
    return weight


def _restricted_growth(m: int) -> Iterator[List[int]]:
    # a_0 = 0, a_i <= 1 + max(a_0..a_{i-1})
    word = [0] * m

    def extend(position: int, highest: int):
        if position == m:
            yield list(word)
            return
        for label in range(highest + 2):
            word[position] = label
            yield from extend(position + 1, max(highest, label))

    if m == 0:
        yield []
        return
    yield from extend(1, 0)


@functools.lru_cache()
def enumerate_partitions(m: int) -> Tuple[PartitionTerm, ...]:
    """
    all Bell(m) partitions of positions 0..m-1, finest first
    """
    if m > MAX_PARTITION_ORDER:
        raise OrderTooLargeError(f"partitions are enumerated for m <= {MAX_PARTITION_ORDER}, got {m}")
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    terms = []
    for word in _restricted_growth(m):
        blocks = tuple(
            tuple(pos for pos, label in enumerate(word) if label == block)
            for block in range(max(word) + 1)
        )
        terms.append(PartitionTerm(blocks=blocks, weight=mobius_weight(blocks)))
    return tuple(sorted(terms, key=lambda t: (-len(t.blocks), t.blocks)))


@functools.lru_cache()
def bell_number(m: int) -> int:
    # Bell triangle
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]
