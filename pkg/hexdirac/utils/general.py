"""
General helper functions.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import hashlib
import json
import math

import numpy as np


def round_up_to_multiple(value, multiple):
    """Smallest multiple of `multiple` that is >= value."""
    return int(multiple * math.ceil(float(value) / multiple))


def canonical_json(obj):
    """Deterministic JSON text (sorted keys, no whitespace variation)."""
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), default=to_builtin)


def config_hash(obj):
    """SHA-256 of the canonical JSON form of a configuration dictionary."""
    return hashlib.sha256(canonical_json(obj).encode('utf-8')).hexdigest()


def complex_pair(z):
    """Split a complex scalar into a JSON friendly [re, im] pair."""
    z = complex(z)
    return [z.real, z.imag]


def seeded_rng(seed):
    return np.random.default_rng(seed)


def to_builtin(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_pair(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError("Object of type {} is not JSON serializable".format(type(obj).__name__))
