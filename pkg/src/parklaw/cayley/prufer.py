"""Largest-leaf Prüfer codec for trees rooted at 0.

Encoding repeatedly deletes the leaf with the biggest label and records its
parent until two vertices remain. The last surviving non-root vertex always
hangs from the root, so that implicit terminal 0 is not stored: a tree on
n+1 vertices has a code of length n-1 with entries in [0, n].
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence

from pydantic import BaseModel, Field

from parklaw.cayley.tree import CayleyTree, find_tree_defect
from parklaw.exceptions import InvalidCodeError, InvalidTreeError


class PruferCode(BaseModel, frozen=True):
    """Largest-leaf Prüfer code of a tree on n+1 vertices.

    Attributes:
        code: (p_1, ..., p_{n-1}), each entry in [0, n].
    """

    code: tuple[int, ...] = Field(default=())

    @property
    def vertex_count(self) -> int:
        """Return the vertex count of the encoded tree."""
        return len(self.code) + 2

    def with_terminal(self) -> tuple[int, ...]:
        """Return the full parent record (p_1, ..., p_{n-1}, 0)."""
        return (*self.code, 0)


def encode_parents(parents: Sequence[int]) -> list[int]:
    """Encode a parent map (assumed valid) into its largest-leaf code."""
    n = len(parents)
    remaining = [0] * (n + 1)
    for parent in parents:
        remaining[parent] += 1
    leaves = [-v for v in range(1, n + 1) if remaining[v] == 0]
    heapq.heapify(leaves)

    code: list[int] = []
    for _ in range(n - 1):
        leaf = -heapq.heappop(leaves)
        parent = parents[leaf - 1]
        code.append(parent)
        remaining[parent] -= 1
        if remaining[parent] == 0 and parent != 0:
            heapq.heappush(leaves, -parent)
    return code


def decode_parents(code: Sequence[int]) -> list[int]:
    """Decode a largest-leaf code (assumed in range) into a parent map.

    Uses a max-heap of current leaves and the number of children each vertex
    still has to lose, so decoding costs O(n log n).
    """
    n = len(code) + 1
    remaining = [0] * (n + 1)
    for entry in code:
        remaining[entry] += 1
    leaves = [-v for v in range(1, n + 1) if remaining[v] == 0]
    heapq.heapify(leaves)

    parents = [0] * n
    for entry in code:
        leaf = -heapq.heappop(leaves)
        parents[leaf - 1] = entry
        remaining[entry] -= 1
        if remaining[entry] == 0 and entry != 0:
            heapq.heappush(leaves, -entry)
    last = -heapq.heappop(leaves)
    parents[last - 1] = 0
    return parents


def prufer_encode(t: CayleyTree) -> PruferCode:
    """Encode a tree by repeatedly removing its largest-labeled leaf.

    Args:
        t: Tree on at least two vertices.

    Returns:
        PruferCode of length (vertex count - 2).

    Raises:
        InvalidTreeError: If the parent map has a cycle or an orphan vertex.
    """
    defect = find_tree_defect(t.parents)
    if defect is not None:
        raise InvalidTreeError(f"cannot encode malformed tree: {defect}")
    return PruferCode(code=tuple(encode_parents(t.parents)))


def prufer_decode(code: PruferCode | Sequence[int]) -> CayleyTree:
    """Decode a largest-leaf Prüfer code into its unique tree.

    Args:
        code: PruferCode or raw entries (p_1, ..., p_{n-1}) with entries in [0, n].

    Returns:
        The tree whose largest-leaf encoding is ``code``.

    Raises:
        InvalidCodeError: If an entry lies outside [0, n].
    """
    entries = code.code if isinstance(code, PruferCode) else tuple(code)
    n = len(entries) + 1
    for position, entry in enumerate(entries, start=1):
        if not 0 <= entry <= n:
            raise InvalidCodeError(
                "code entry outside label range", position=position, entry=entry, n=n
            )
    return CayleyTree.trusted(decode_parents(entries))
