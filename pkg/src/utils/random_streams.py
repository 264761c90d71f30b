"""
RANDOM SUBSTREAMS
=================

Every Monte-Carlo operation draws from its own generator derived from
(master seed, operation id). Two estimates never share a stream, and the
order in which sweep points run cannot change any number.
"""

import zlib
from typing import Union

import numpy as np

SeedLike = Union[int, np.random.Generator, None]


def substream(seed: int, *tags: object) -> np.random.Generator:
    """
    Generator for the operation identified by `tags` under `seed`.

    Tags are hashed with CRC32 (stable across processes, unlike hash()).

    Example:
        >>> rng = substream(42, "tv_distance_nd", "pair-7")
    """
    keys = [int(seed) & 0xFFFFFFFF]
    for tag in tags:
        keys.append(zlib.crc32(str(tag).encode("utf-8")))
    return np.random.default_rng(np.random.SeedSequence(keys))


def as_generator(seed: SeedLike) -> np.random.Generator:
    """Accept an int seed or an existing Generator (returned as-is)."""
    return np.random.default_rng(seed)
