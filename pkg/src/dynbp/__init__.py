"""Dynamic succinct ordinal trees over balanced parentheses."""

from .bp_kernel import BitBlock, ChunkTable, WeightFn
from .config import DEFAULT_CONFIG, TreeConfig
from .minmax_tree import MinMaxTree
from .oracle import BaseOracle, OracleTree
from .partial_sums import (
    RangeAddArray,
    SearchableSignedSums,
    SmallNonNegSums,
    SmallSignedPrefixSums,
)
from .tree_interface import DynamicTree, HeavyDegreeIndex, parse_bp

__all__ = [
    "BaseOracle",
    "BitBlock",
    "ChunkTable",
    "DEFAULT_CONFIG",
    "DynamicTree",
    "HeavyDegreeIndex",
    "MinMaxTree",
    "OracleTree",
    "RangeAddArray",
    "SearchableSignedSums",
    "SmallNonNegSums",
    "SmallSignedPrefixSums",
    "TreeConfig",
    "WeightFn",
    "parse_bp",
]
