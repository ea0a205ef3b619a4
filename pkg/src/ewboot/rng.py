"""Deterministic random substreams.

Every stochastic routine in the package takes either an explicit
``numpy.random.Generator`` or an integer root seed plus a label path.
Substreams are derived with ``SeedSequence(seed, spawn_key=...)`` where the
path elements are integers or strings; strings are hashed to 32-bit words so
that ``substream(7, "mc", 3)`` is stable across processes, platforms and
thread schedules.  Two distinct paths give statistically independent streams.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["substream", "child_seed"]


def _key_element(part) -> int:
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError(f"substream path integers must be >= 0, got {part}")
        return int(part)
    if isinstance(part, str):
        digest = hashlib.blake2s(part.encode("utf-8"), digest_size=4).digest()
        return int.from_bytes(digest, "little")
    raise TypeError(f"substream path elements must be int or str, got {type(part)!r}")


def substream(seed: int, *path) -> np.random.Generator:
    """Return the generator for the substream identified by ``path``.

    Parameters
    ----------
    seed : int
        Root seed of the whole run.
    *path : int or str
        Hierarchical labels, e.g. ``substream(seed, "replicate", b)``.

    Returns
    -------
    numpy.random.Generator
        A fresh PCG64 generator; calling twice with the same arguments
        returns identically-seeded (bit-reproducible) generators.
    """
    key = tuple(_key_element(p) for p in path)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def child_seed(seed: int, *path) -> int:
    """Derive a 63-bit integer seed for a nested component.

    Used when a sub-run (e.g. one Monte Carlo replication that itself runs a
    bootstrap) needs its own root seed.  Distinct paths give distinct seeds;
    the derivation is pure.
    """
    key = tuple(_key_element(p) for p in path)
    ss = np.random.SeedSequence(seed, spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))
