"""Cayley trees rooted at 0 and their breadth-first ranks.

A tree on vertices {0, ..., n} is stored as the parent of each vertex
1..n. Children are visited in increasing label order, which turns the tree
into a plane tree and fixes the breadth-first ranks r(i, t).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Sequence
from itertools import product
from typing import Self

from pydantic import BaseModel, Field, model_validator

from parklaw.exceptions import InvalidTreeError, SizeLimitError
from parklaw.parking.functions import ParkingFunction

# Exhaustive tree generation tries n^n parent maps
TREE_ENUMERATION_MAX_VERTICES: int = 7


def find_tree_defect(parents: Sequence[int]) -> str | None:
    """Describe why a parent map is not a tree rooted at 0, or return None.

    Args:
        parents: parents[i-1] is the parent label of vertex i.
    """
    n = len(parents)
    state = [0] * (n + 1)  # 0 unseen, 1 on current walk, 2 reaches root
    state[0] = 2
    for start in range(1, n + 1):
        walk: list[int] = []
        vertex = start
        while state[vertex] == 0:
            state[vertex] = 1
            walk.append(vertex)
            parent = parents[vertex - 1]
            if not 0 <= parent <= n:
                return f"vertex {vertex} has parent {parent} outside [0, {n}]"
            vertex = parent
        if state[vertex] == 1:
            return f"cycle through vertex {vertex}"
        for visited in walk:
            state[visited] = 2
    return None


class CayleyTree(BaseModel, frozen=True):
    """A labeled tree on {0, ..., n} rooted at vertex 0.

    Attributes:
        parents: parents[i-1] is the parent label of vertex i, in [0, n].
    """

    parents: tuple[int, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _check_tree(self) -> Self:
        defect = find_tree_defect(self.parents)
        if defect is not None:
            raise ValueError(f"not a tree rooted at 0: {defect}")
        return self

    @property
    def n(self) -> int:
        """Return the number of non-root vertices."""
        return len(self.parents)

    @property
    def n_plus_1(self) -> int:
        """Return the vertex count."""
        return len(self.parents) + 1

    def parent(self, vertex: int) -> int:
        """Return the parent label of a non-root vertex."""
        if not 1 <= vertex <= self.n:
            raise InvalidTreeError("vertex has no parent", vertex=vertex, n=self.n)
        return self.parents[vertex - 1]

    @classmethod
    def from_parent_map(cls, parent: dict[int, int]) -> Self:
        """Create a tree from a {vertex: parent} map covering 1..n."""
        n = len(parent)
        if sorted(parent) != list(range(1, n + 1)):
            raise InvalidTreeError("parent map must cover vertices 1..n", n=n)
        return cls(parents=tuple(parent[v] for v in range(1, n + 1)))

    @classmethod
    def star(cls, n: int) -> Self:
        """Return the tree where every vertex 1..n is a child of the root."""
        return cls(parents=(0,) * n)

    @classmethod
    def trusted(cls, parents: Sequence[int]) -> Self:
        """Wrap a parent map known to be a tree (e.g. decoder output)."""
        return cls.model_construct(parents=tuple(parents))


class BfsRanks(BaseModel, frozen=True):
    """Breadth-first ranks of a Cayley tree.

    Attributes:
        rank: rank[v] is the 1-based breadth-first rank of vertex v; rank[0] = 1.
        parent_rank: parent_rank[i-1] = r(i, t), the rank of the parent of i.
    """

    rank: tuple[int, ...]
    parent_rank: tuple[int, ...]

    def rank_of(self, vertex: int) -> int:
        """Return the rank of a vertex."""
        return self.rank[vertex]

    def parent_rank_of(self, vertex: int) -> int:
        """Return r(vertex, t)."""
        return self.parent_rank[vertex - 1]


def _children(parents: Sequence[int]) -> list[list[int]]:
    children: list[list[int]] = [[] for _ in range(len(parents) + 1)]
    for vertex, parent in enumerate(parents, start=1):
        children[parent].append(vertex)  # increasing label order
    return children


def rank_list(parents: Sequence[int]) -> list[int]:
    """Return breadth-first ranks indexed by label, root first."""
    children = _children(parents)
    rank = [0] * (len(parents) + 1)
    queue = deque([0])
    next_rank = 1
    while queue:
        vertex = queue.popleft()
        rank[vertex] = next_rank
        next_rank += 1
        queue.extend(children[vertex])
    return rank


def parent_rank_list(parents: Sequence[int]) -> list[int]:
    """Return (r(1, t), ..., r(n, t)) for a parent map."""
    rank = rank_list(parents)
    return [rank[parent] for parent in parents]


def bfs_ranks(t: CayleyTree) -> BfsRanks:
    """Rank the vertices of t by breadth-first search, children by label.

    Args:
        t: A valid Cayley tree.

    Returns:
        BfsRanks with the root at rank 1.
    """
    rank = rank_list(t.parents)
    return BfsRanks(
        rank=tuple(rank),
        parent_rank=tuple(rank[parent] for parent in t.parents),
    )


def tree_to_parking(t: CayleyTree) -> ParkingFunction:
    """Map a tree to the parking function (r(1, t), ..., r(n, t)).

    The map is a bijection from trees on n+1 vertices onto parking
    functions of size n, so the result never needs re-validation.
    """
    return ParkingFunction.trusted(tuple(parent_rank_list(t.parents)))


def child_counts(t: CayleyTree) -> tuple[int, ...]:
    """Count, for each rank i in [1, n+1], the vertices j with r(j, t) = i.

    Entry i-1 is the number of children of the vertex of rank i; the
    entries sum to n.
    """
    counts = [0] * t.n_plus_1
    for parent_rank in parent_rank_list(t.parents):
        counts[parent_rank - 1] += 1
    return tuple(counts)


def iter_cayley_trees(vertex_count: int) -> Iterator[CayleyTree]:
    """Yield every tree on {0, ..., vertex_count-1} rooted at 0.

    Trees are produced by filtering all parent maps for acyclicity, which is
    independent of any Prüfer codec; there are vertex_count^(vertex_count-2).

    Raises:
        SizeLimitError: If vertex_count exceeds the exhaustive guard.
    """
    if vertex_count > TREE_ENUMERATION_MAX_VERTICES:
        raise SizeLimitError(
            "vertex count exceeds the tree enumeration guard",
            vertex_count=vertex_count,
            limit=TREE_ENUMERATION_MAX_VERTICES,
        )
    n = vertex_count - 1
    choices = [
        [p for p in range(n + 1) if p != vertex] for vertex in range(1, n + 1)
    ]
    for parents in product(*choices):
        if find_tree_defect(parents) is None:
            yield CayleyTree.trusted(parents)


# Ten-vertex worked example: Prüfer code (8,8,6,0,3,0,3,3), parking
# function (2,2,1,1,2,1,8,4,8)
EXAMPLE_TREE = CayleyTree(parents=(3, 3, 0, 0, 3, 0, 8, 6, 8))
