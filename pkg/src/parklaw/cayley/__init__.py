"""Cayley trees, the largest-leaf Prüfer codec and the tree-to-parking map.

Key Components:
    - CayleyTree / BfsRanks: rooted labeled trees and breadth-first ranks
    - prufer_encode / prufer_decode: largest-leaf codec (code length n-1)
    - tree_to_parking / child_counts: the rank map and per-rank child counts
    - sample_uniform_parking: exact uniform sampler (uniform code → tree → ranks)
"""

from parklaw.cayley.prufer import (
    PruferCode,
    decode_parents,
    encode_parents,
    prufer_decode,
    prufer_encode,
)
from parklaw.cayley.sampler import (
    sample_tree_prefixes,
    sample_uniform_parking,
    sample_uniform_tree,
)
from parklaw.cayley.tree import (
    EXAMPLE_TREE,
    BfsRanks,
    CayleyTree,
    bfs_ranks,
    child_counts,
    find_tree_defect,
    iter_cayley_trees,
    parent_rank_list,
    tree_to_parking,
)

__all__ = [
    "EXAMPLE_TREE",
    "BfsRanks",
    "CayleyTree",
    "PruferCode",
    "bfs_ranks",
    "child_counts",
    "decode_parents",
    "encode_parents",
    "find_tree_defect",
    "iter_cayley_trees",
    "parent_rank_list",
    "prufer_decode",
    "prufer_encode",
    "sample_tree_prefixes",
    "sample_uniform_parking",
    "sample_uniform_tree",
    "tree_to_parking",
]
