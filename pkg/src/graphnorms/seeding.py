"""Counter-based seed derivation.

Every random quantity in the package is keyed by a master seed plus a
few integer/str counters, so results are independent of iteration order
and identical across serial and parallel execution.
"""

from __future__ import annotations

import hashlib


def derive_seed(*parts: object) -> int:
    """64-bit integer derived from the given key parts."""
    key = "/".join(str(p) for p in parts)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def counter_uniform(*parts: object) -> float:
    """Uniform float in [0, 1) keyed by the given parts."""
    return derive_seed(*parts) / 2.0**64
