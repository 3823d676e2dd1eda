"""
Counter-based random substreams
===============================

Every replication gets its own numpy ``Generator`` over a Philox bit
generator. The Philox key is hashed from ``(seed, scenario identity)`` and
the replication index is written into the high word of the 256-bit counter,
so replication ``i`` draws the same variates whichever thread runs it and
whatever else has been drawn before.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import hashlib

import numpy as np

#: Seeds are 64-bit unsigned integers
MAX_SEED = 2 ** 64 - 1


def scenario_id(*identity):
    """
    Stable 63-bit integer for a scenario identity tuple. Floats are rendered
    with ``repr`` so that 0.3 and 0.30000000000000004 stay distinct.
    """
    text = "|".join(repr(part) for part in identity)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def scenario_key(seed, scenario):
    """
    :returns: 128-bit Philox key as two uint64 words
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(scenario,))
    return sequence.generate_state(2, dtype=np.uint64)


def replication_stream(key, index):
    counter = np.array([0, 0, 0, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(counter=counter, key=key))
