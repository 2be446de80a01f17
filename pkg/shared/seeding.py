"""
Seed derivation shared by the whole audit.

Every random stream is ``numpy.random.default_rng(mix64(...))`` where the parts identify the stream,
e.g. ``mix64(trial_seed, method_id, instance_index, replicate_index)``. The mixing function folds each
part into a splitmix64 state and applies the splitmix64 finaliser, so results are stable across
platforms and Python versions.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULTIPLIER_1 = 0xBF58476D1CE4E5B9
MIX_MULTIPLIER_2 = 0x94D049BB133111EB


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX_MULTIPLIER_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MULTIPLIER_2) & MASK64
    return z ^ (z >> 31)


def mix64(*parts: int) -> int:
    state = 0
    for part in parts:
        state = _finalize((state + GOLDEN_GAMMA + (int(part) & MASK64)) & MASK64)
    return state
