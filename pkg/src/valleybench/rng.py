"""Seeded deterministic random stream.

A self-contained SplitMix64 generator backs every stochastic draw in a
world so that trajectories replay bit-exactly across runs, platforms and
Python versions.  The full generator state is a single integer, which keeps
world snapshots trivially serializable.
"""

from __future__ import annotations

from dataclasses import dataclass

_MASK = (1 << 64) - 1


@dataclass(slots=True)
class Rng:
    state: int

    @classmethod
    def from_seed(cls, seed: int) -> "Rng":
        return cls(state=(seed ^ 0x9E3779B97F4A7C15) & _MASK)

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def choice(self, seq):
        if not seq:
            raise ValueError("empty sequence")
        return seq[self.randint(0, len(seq) - 1)]

    def weighted_choice(self, pairs: list[tuple[str, float]]) -> str:
        """Pick a key from (key, weight) pairs; weights need not sum to 1."""
        total = sum(w for _, w in pairs)
        mark = self.random() * total
        acc = 0.0
        for key, weight in pairs:
            acc += weight
            if mark < acc:
                return key
        return pairs[-1][0]
