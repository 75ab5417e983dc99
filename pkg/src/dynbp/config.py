"""Configuration for the dynamic balanced-parentheses tree."""

from dataclasses import dataclass


def _ceil_log2(x: int) -> int:
    if x < 2:
        return 0
    return (x - 1).bit_length()


@dataclass(frozen=True)
class TreeConfig:
    """Sizing knobs for the block tree and the heavy-degree index.

    ``leaf_bits`` is the maximum number of bits stored in one leaf block;
    non-root leaves hold at least ``leaf_bits // 2``.  ``arity_min`` and
    ``arity_max`` bound the number of children of internal nodes (root
    excepted).  ``capacity`` is the nominal maximum node count; it only
    fixes the heavy-degree threshold and is not enforced as a hard limit.
    """

    leaf_bits: int = 512
    arity_min: int = 4
    arity_max: int = 16
    chunk_bits: int = 8
    capacity: int = 2**32

    def __post_init__(self):
        if self.leaf_bits < 16:
            raise ValueError("leaf_bits must be at least 16")
        if self.arity_min < 2:
            raise ValueError("arity_min must be at least 2")
        if self.arity_max < 2 * self.arity_min - 1:
            raise ValueError("arity_max must be at least 2*arity_min - 1")
        if self.chunk_bits not in (8, 16):
            raise ValueError("chunk_bits must be 8 or 16")
        if self.capacity < 2:
            raise ValueError("capacity must be at least 2")

    @property
    def heavy_threshold(self) -> int:
        """Degree at or above which a node's degree is stored explicitly."""
        return _ceil_log2(self.capacity) ** 2

    @property
    def leaf_min_bits(self) -> int:
        return self.leaf_bits // 2


DEFAULT_CONFIG = TreeConfig()
