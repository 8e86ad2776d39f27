"""Deterministic 64-bit random stream shared by both walk implementations.

xoshiro256++ seeded through splitmix64.  The kernel re-implements the same
update in nopython code over a uint64 state vector; the class here is the
reference used by the pure-Python walker and by the equivalence tests.
Acceptance decisions consume uniforms lazily (only when the log-acceptance
is negative) so the two implementations must agree branch for branch.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_INV53 = 1.0 / (1 << 53)


def splitmix64_next(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, (z ^ (z >> 31)) & _MASK


def seed_state(seed: int) -> tuple[int, int, int, int]:
    """Expand a 64-bit seed into a nonzero xoshiro256++ state vector."""
    s = seed & _MASK
    out = []
    for _ in range(4):
        s, z = splitmix64_next(s)
        out.append(z)
    return tuple(out)


def derive_seed(base: int, index: int) -> int:
    """Per-walk seed for walk `index` of a grid sharing one base seed."""
    s = (base ^ ((index + 1) * 0xD1B54A32D192ED03)) & _MASK
    return splitmix64_next(s)[1]


class Xoshiro256PP:
    """Pure-Python xoshiro256++ with the exact word-level semantics of the kernel."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        self.s0, self.s1, self.s2, self.s3 = seed_state(seed)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        tmp = (s0 + s3) & _MASK
        result = ((((tmp << 23) | (tmp >> 41)) & _MASK) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def uniform(self) -> float:
        """Uniform on [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * _INV53

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via the same float path as the kernel."""
        return int(self.uniform() * n)
