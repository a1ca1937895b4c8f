"""Small shared helpers: canonical JSON, stable hashing, path-level RNG."""

from __future__ import annotations

import hashlib
import json

import numpy as np


def canonical_json(obj):
    """Deterministic JSON: sorted keys, compact separators, repr-floats."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      allow_nan=False, default=_coerce)


def _coerce(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not JSON-serialisable: {type(x)!r}")


def stable_hash(obj):
    """sha256 hex digest of the canonical JSON form of ``obj``."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def path_rng(master_seed, path_index, stream=0):
    """Independent deterministic generator for one path (and sub-stream).

    The stream id separates draw purposes inside one path so that, e.g.,
    enlarging a series horizon extends the arrival sequence without
    shifting the position/sign/noise draws of the shared prefix.
    """
    return np.random.default_rng([int(master_seed) & 0xFFFFFFFFFFFFFFFF,
                                  int(path_index), int(stream)])
