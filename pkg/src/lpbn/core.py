"""Atoms, rules, programs and 2-/3-valued interpretations.

Atoms are interned to dense ids in order of first occurrence. A 2-valued
interpretation is a bitset over those ids (bit ``i`` set means atom ``i`` is
true). A 3-valued interpretation is a tuple of :class:`TV` values; internally
the enumeration code works on ``(mask, val)`` bit pairs where ``mask`` marks
the defined atoms and ``val`` the true ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple, Sequence

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class DomainMismatch(ValueError):
    """Two objects are defined over different atom tables."""


class TooLarge(RuntimeError):
    """An enumeration would exceed a configured limit."""


@dataclass(frozen=True)
class Limits:
    """Enumeration limits; exceeding one raises :class:`TooLarge`."""

    max_atoms_2v: int = 20
    max_atoms_3v: int = 12
    max_cycles: int = 10**6

    def check_2v(self, n: int, what: str = "state space") -> None:
        if n > self.max_atoms_2v:
            raise TooLarge(f"{what}: 2^{n} states exceeds limit 2^{self.max_atoms_2v}")

    def check_3v(self, n: int, what: str = "interpretation space") -> None:
        if n > self.max_atoms_3v:
            raise TooLarge(f"{what}: 3^{n} interpretations exceeds limit 3^{self.max_atoms_3v}")


DEFAULT_LIMITS = Limits()


class TV(IntEnum):
    """Truth values, numbered along the truth order f < u < t."""

    F = 0
    U = 1
    T = 2

    def __invert__(self) -> "TV":  # type: ignore[override]
        return TV(2 - self.value)

    @property
    def char(self) -> str:
        return "fut"[self.value]

    @classmethod
    def parse(cls, s: str) -> "TV":
        try:
            return {"t": cls.T, "f": cls.F, "u": cls.U, "1": cls.T, "0": cls.F, "*": cls.U}[s]
        except KeyError:
            raise ValueError(f"not a truth value: {s!r}") from None


# canonical output order is t < f < u per atom
_CANON_RANK = {TV.T: 0, TV.F: 1, TV.U: 2}


class Atom(NamedTuple):
    id: int
    name: str


@dataclass(frozen=True)
class Rule:
    """A ground normal rule ``head :- pbody, not nbody``, over atom ids."""

    head: int
    pbody: frozenset[int] = frozenset()
    nbody: frozenset[int] = frozenset()

    @property
    def is_fact(self) -> bool:
        return not self.pbody and not self.nbody

    def atom_ids(self) -> frozenset[int]:
        return self.pbody | self.nbody | {self.head}


@dataclass(frozen=True, eq=False)
class Program:
    """A finite ground normal logic program.

    ``atoms`` is the atom table (names indexed by id); ``rules`` keeps source
    order but is duplicate-free. Equality ignores rule order and atom ids and
    compares the named rule sets and atom name sets.

    Programs built by the parser have no orphan atoms. Programs built by
    :func:`lpbn.lfp.lfp` keep the atom table of their source program, so an
    atom may survive without occurring in any rule.
    """

    atoms: tuple[str, ...]
    rules: tuple[Rule, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)
    _masks: tuple[tuple[int, int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index = {name: i for i, name in enumerate(self.atoms)}
        if len(index) != len(self.atoms):
            raise ValueError("duplicate atom names")
        seen: dict[Rule, None] = {}
        n = len(self.atoms)
        for r in self.rules:
            if any(a < 0 or a >= n for a in r.atom_ids()):
                raise ValueError(f"rule {r} references an atom outside the table")
            seen.setdefault(r)
        object.__setattr__(self, "rules", tuple(seen))
        object.__setattr__(self, "_index", index)
        object.__setattr__(
            self,
            "_masks",
            tuple((r.head, bits_of(r.pbody), bits_of(r.nbody)) for r in self.rules),
        )

    @classmethod
    def from_rules(
        cls,
        rules: Iterable[tuple[str, Sequence[str], Sequence[str]]],
        atoms: Sequence[str] | None = None,
    ) -> "Program":
        """Build from ``(head, pbody names, nbody names)`` triples.

        Atoms are interned in order of first occurrence unless an explicit
        ``atoms`` table is given (it may contain atoms no rule mentions).
        """
        rules = list(rules)
        table: dict[str, int] = {}
        for name in atoms or ():
            table.setdefault(name, len(table))
        for head, pos, neg in rules:
            for name in (head, *pos, *neg):
                if not ATOM_RE.match(name):
                    raise ValueError(f"invalid atom name {name!r}")
                if atoms is not None and name not in table:
                    raise ValueError(f"atom {name!r} missing from explicit table")
                table.setdefault(name, len(table))
        built = [
            Rule(table[h], frozenset(table[a] for a in pos), frozenset(table[a] for a in neg))
            for h, pos, neg in rules
        ]
        return cls(tuple(table), tuple(built))

    @property
    def n(self) -> int:
        return len(self.atoms)

    def atom(self, key: int | str) -> Atom:
        if isinstance(key, str):
            return Atom(self._index[key], key)
        return Atom(key, self.atoms[key])

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DomainMismatch(f"unknown atom {name!r}") from None

    def named_rules(self) -> frozenset[tuple[str, frozenset[str], frozenset[str]]]:
        a = self.atoms
        return frozenset(
            (a[r.head], frozenset(a[i] for i in r.pbody), frozenset(a[i] for i in r.nbody))
            for r in self.rules
        )

    def rules_for(self, head: int) -> list[Rule]:
        return [r for r in self.rules if r.head == head]

    @property
    def rule_masks(self) -> tuple[tuple[int, int, int], ...]:
        """``(head, pbody bits, nbody bits)`` per rule."""
        return self._masks

    def is_positive(self) -> bool:
        return all(not r.nbody for r in self.rules)

    def is_quasi(self) -> bool:
        return all(not r.pbody for r in self.rules)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return set(self.atoms) == set(other.atoms) and self.named_rules() == other.named_rules()

    def __hash__(self) -> int:
        return hash((frozenset(self.atoms), self.named_rules()))

    def __len__(self) -> int:
        return len(self.rules)

    def __str__(self) -> str:
        from .parser import serialize_program

        return serialize_program(self)


def bits_of(ids: Iterable[int]) -> int:
    out = 0
    for i in ids:
        out |= 1 << i
    return out


def ids_of(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class Interp2:
    """A total 2-valued interpretation; ``bits`` has bit ``i`` set iff atom ``i`` is true."""

    atoms: tuple[str, ...]
    bits: int

    @classmethod
    def from_true(cls, atoms: Sequence[str], true: Iterable[str]) -> "Interp2":
        atoms = tuple(atoms)
        idx = {a: i for i, a in enumerate(atoms)}
        try:
            return cls(atoms, bits_of(idx[a] for a in true))
        except KeyError as e:
            raise DomainMismatch(f"unknown atom {e.args[0]!r}") from None

    def __getitem__(self, key: int | str) -> bool:
        i = self.atoms.index(key) if isinstance(key, str) else key
        return bool(self.bits >> i & 1)

    @property
    def true_atoms(self) -> frozenset[str]:
        return frozenset(self.atoms[i] for i in ids_of(self.bits))

    def to_json(self) -> list[str]:
        return sorted(self.true_atoms)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(0 if self.bits >> i & 1 else 1 for i in range(len(self.atoms)))

    def to_interp3(self) -> "Interp3":
        return Interp3.from_masks(self.atoms, (1 << len(self.atoms)) - 1, self.bits)

    def __str__(self) -> str:
        names = [self.atoms[i] for i in ids_of(self.bits)]
        return "{" + ", ".join(names) + "}" if names else "∅"


@dataclass(frozen=True)
class Interp3:
    """A total 3-valued interpretation; doubles as a Boolean-network sub-space (u = ⋆)."""

    atoms: tuple[str, ...]
    vals: tuple[TV, ...]

    def __post_init__(self) -> None:
        if len(self.atoms) != len(self.vals):
            raise DomainMismatch("value vector length differs from atom table")

    @classmethod
    def from_dict(cls, atoms: Sequence[str], values: dict[str, str | TV]) -> "Interp3":
        atoms = tuple(atoms)
        if set(values) != set(atoms):
            raise DomainMismatch(f"interpretation keys {sorted(values)} != atoms {sorted(atoms)}")
        return cls(atoms, tuple(v if isinstance(v, TV) else TV.parse(v) for v in (values[a] for a in atoms)))

    @classmethod
    def from_string(cls, atoms: Sequence[str], s: str) -> "Interp3":
        """Parse a positional string like ``"tfu"`` or ``"10*"``."""
        atoms = tuple(atoms)
        if len(s) != len(atoms):
            raise DomainMismatch(f"{s!r} has {len(s)} positions for {len(atoms)} atoms")
        return cls(atoms, tuple(TV.parse(c) for c in s))

    @classmethod
    def all_u(cls, atoms: Sequence[str]) -> "Interp3":
        return cls(tuple(atoms), (TV.U,) * len(atoms))

    @classmethod
    def from_masks(cls, atoms: Sequence[str], mask: int, val: int) -> "Interp3":
        vals = tuple(
            (TV.T if val >> i & 1 else TV.F) if mask >> i & 1 else TV.U for i in range(len(atoms))
        )
        return cls(tuple(atoms), vals)

    @property
    def masks(self) -> tuple[int, int]:
        """``(defined atoms bits, true atoms bits)``."""
        mask = val = 0
        for i, v in enumerate(self.vals):
            if v is not TV.U:
                mask |= 1 << i
                if v is TV.T:
                    val |= 1 << i
        return mask, val

    def __getitem__(self, key: int | str) -> TV:
        i = self.atoms.index(key) if isinstance(key, str) else key
        return self.vals[i]

    def is_two_valued(self) -> bool:
        return TV.U not in self.vals

    def n_undefined(self) -> int:
        return sum(v is TV.U for v in self.vals)

    def to_interp2(self) -> Interp2:
        if not self.is_two_valued():
            raise ValueError("interpretation has undefined atoms")
        return Interp2(self.atoms, self.masks[1])

    def to_json(self) -> dict[str, str]:
        return {a: v.char for a, v in zip(self.atoms, self.vals)}

    def subspace_str(self) -> str:
        """Positional sub-space notation, e.g. ``10*``."""
        return "".join({TV.T: "1", TV.F: "0", TV.U: "*"}[v] for v in self.vals)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(_CANON_RANK[v] for v in self.vals)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{a}={v.char}" for a, v in zip(self.atoms, self.vals)) + "}"


def _same_domain(a: Interp3, b: Interp3) -> None:
    if a.atoms != b.atoms:
        raise DomainMismatch(f"atom tables differ: {a.atoms} vs {b.atoms}")


def leq_t(a: Interp3, b: Interp3) -> bool:
    """Pointwise truth order f < u < t."""
    _same_domain(a, b)
    return all(x <= y for x, y in zip(a.vals, b.vals))


def leq_s(a: Interp3, b: Interp3) -> bool:
    """Pointwise subset order: f and t are both below u."""
    _same_domain(a, b)
    return all(x == y or y is TV.U for x, y in zip(a.vals, b.vals))


def leq_s_masks(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """``leq_s`` on ``(mask, val)`` pairs: ``b``'s defined atoms are defined identically in ``a``."""
    return a[0] & b[0] == b[0] and a[1] & b[0] == b[1]


def gamma_bits(mask: int, val: int, n: int) -> Iterator[int]:
    """All states agreeing with the sub-space ``(mask, val)``, ascending."""
    free = ((1 << n) - 1) & ~mask
    sub = 0
    while True:
        yield val | sub
        # next submask of `free` in increasing order
        sub = (sub - free) & free
        if sub == 0:
            return


def gamma(interp: Interp3, limits: Limits = DEFAULT_LIMITS) -> list[Interp2]:
    """The 2-valued interpretations agreeing with ``interp`` on its defined atoms."""
    limits.check_2v(interp.n_undefined(), "gamma")
    mask, val = interp.masks
    return [Interp2(interp.atoms, s) for s in gamma_bits(mask, val, len(interp.atoms))]


def all_interp3_masks(n: int) -> Iterator[tuple[int, int]]:
    """Every ``(mask, val)`` pair over ``n`` atoms (3^n of them)."""
    full = (1 << n) - 1
    for mask in range(full + 1):
        for val in _submasks(mask):
            yield mask, val


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def canonical(interps: Iterable[Interp3]) -> list[Interp3]:
    return sorted(set(interps), key=Interp3.sort_key)


def minimal_s(interps: Iterable[Interp3]) -> list[Interp3]:
    """The ≤s-minimal elements, by pairwise comparison, in canonical order."""
    items = [(i, i.masks) for i in set(interps)]
    out = [
        i
        for i, m in items
        if not any(m2 != m and leq_s_masks(m2, m) for _, m2 in items)
    ]
    return canonical(out)
