"""Seeded random program generation.

Randomness comes from numpy's Philox generator, which is counter-based, so a
profile (including its seed) reproduces the same program on any platform.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from typing import Iterator

import numpy as np

from .core import Program

BIASES = ("uniform", "tight", "quasi", "negative-heavy")


@dataclass(frozen=True)
class GenProfile:
    n_atoms: int
    n_rules: int
    max_pbody: int = 2
    max_nbody: int = 2
    bias: str = "uniform"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_atoms < 1:
            raise ValueError("n_atoms must be at least 1")
        if self.n_rules < 0 or self.max_pbody < 0 or self.max_nbody < 0:
            raise ValueError("rule counts and body sizes must be non-negative")
        if self.bias not in BIASES:
            raise ValueError(f"bias must be one of {BIASES}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def derive(self, index: int) -> "GenProfile":
        """The profile of trial ``index`` in a run seeded by this profile."""
        return replace(self, seed=derive_seed(self.seed, index))

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def parse(cls, text: str) -> "GenProfile":
        """Read ``key=value,...`` pairs or a JSON object."""
        text = text.strip()
        if text.startswith("{"):
            return cls(**json.loads(text))
        fields: dict[str, object] = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, value = part.partition("=")
            key = key.strip().replace("-", "_")
            fields[key] = value.strip() if key == "bias" else int(value)
        return cls(**fields)  # type: ignore[arg-type]


def derive_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def gen_program(profile: GenProfile) -> Program:
    """A random program over atoms ``x0 .. x{n-1}`` (unused atoms do not appear).

    ``tight`` draws a random rank per atom and keeps positive bodies strictly
    below the head's rank, so the positive dependency graph is acyclic.
    ``quasi`` emits empty positive bodies. ``negative-heavy`` uses at most one
    positive and at least one negated atom per rule.
    """
    p = profile
    rng = _rng(p.seed)
    n = p.n_atoms
    names = [f"x{i}" for i in range(n)]
    rank = rng.permutation(n)
    rules = []
    for _ in range(p.n_rules):
        head = int(rng.integers(n))
        if p.bias == "negative-heavy":
            kp = int(rng.integers(0, min(1, p.max_pbody) + 1))
            kn = int(rng.integers(min(1, p.max_nbody), p.max_nbody + 1))
        else:
            kp = int(rng.integers(0, p.max_pbody + 1))
            kn = int(rng.integers(0, p.max_nbody + 1))
        if p.bias == "quasi":
            kp = 0
        pool = np.arange(n)
        if p.bias == "tight":
            pool = pool[rank < rank[head]]
        kp = min(kp, len(pool))
        kn = min(kn, n)
        pos = rng.choice(pool, size=kp, replace=False) if kp else []
        neg = rng.choice(n, size=kn, replace=False) if kn else []
        rules.append((names[head], [names[i] for i in pos], [names[i] for i in neg]))
    return Program.from_rules(rules)


def mixed_corpus(count: int, seed: int = 0, max_atoms: int = 8) -> Iterator[tuple[GenProfile, Program]]:
    """A reproducible corpus cycling through all biases and sizes ``1..max_atoms``."""
    for i in range(count):
        rng = _rng(derive_seed(seed, i))
        n = 1 + i % max_atoms
        profile = GenProfile(
            n_atoms=n,
            n_rules=int(rng.integers(n, 2 * n + 3)),
            max_pbody=int(rng.integers(1, 4)),
            max_nbody=int(rng.integers(1, 4)),
            bias=BIASES[(i // max_atoms) % len(BIASES)],
            seed=derive_seed(seed ^ 0x5EED, i),
        )
        yield profile, gen_program(profile)
