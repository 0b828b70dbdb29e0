"""Deterministic sub-seed derivation.

Every randomized routine draws its generator from (seed, purpose name)
via a hash, never from a shared stream, so results do not depend on call
order or on how work is split across processes.
"""

import hashlib


def derive_seed(seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
