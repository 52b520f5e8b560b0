"""Small shared numerics: guarded ceilings and seed derivation."""

import math

# floats within this distance of an integer are treated as that integer
# before applying a ceiling, so e.g. 32768**(1/3) -> 32, not 33
INT_GUARD = 1e-9


def ceil_guarded(x):
    r = round(x)
    if abs(x - r) <= INT_GUARD:
        return int(r)
    return int(math.ceil(x))


def ceil_log2_guarded(x):
    if x <= 0:
        raise ValueError("log2 needs a positive argument")
    return ceil_guarded(math.log2(x))


_MASK = (1 << 64) - 1


def derive_seed(base_seed, run_index):
    """Per-run seed from (base seed, run index), splitmix64-style.

    The map is a bijection of the 64-bit index space for a fixed base, so
    distinct run indices never collide.
    """
    z = (base_seed + (run_index + 1) * 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)
