"""Random octahedral gluings, their dual graphs, and the words read off cycles.

Slots are numbered globally as ``4 * vertex + local`` with ``local`` in 0..3.
Leaving through ``exit`` after entering through ``entry`` is read as the
direction ``entry XOR exit``: 1 -> S, 2 -> R, 3 -> L.  The three XOR classes
are the three perfect matchings of the four slots, so every entry slot sees
each direction exactly once and the reading is symmetric in (entry, exit).
A reversed traversal therefore produces exactly ``star`` of the forward word
(up to rotation).  Edge twists are read the same in both directions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .exactalg import Letter, Word
from .words import WordClass, bracelet_key, twist_residues

DIRECTION_OF_XOR = {1: "S", 2: "R", 3: "L"}

SeedLike = Union[int, np.random.Generator, None]


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial; depends only on (master seed, index)."""
    return np.random.default_rng([int(master_seed), int(trial)])


@dataclass(frozen=True, eq=False)
class Gluing:
    """Perfect matching of the 4n face slots plus a twist in {0, 1, 2} per pair.

    ``pairs`` is canonical: each row sorted, rows sorted by first slot.
    """

    n: int
    pairs: np.ndarray   # (2n, 2) global slot ids
    twists: np.ndarray  # (2n,)

    def __post_init__(self):
        if self.pairs.shape != (2 * self.n, 2) or self.twists.shape != (2 * self.n,):
            raise ValueError("pairs/twists do not match n")
        flat = self.pairs.reshape(-1)
        if flat.min() < 0 or flat.max() >= 4 * self.n or \
                not np.all(np.bincount(flat, minlength=4 * self.n) == 1):
            raise ValueError("matching must use every slot exactly once")

    def __eq__(self, other):
        return (isinstance(other, Gluing) and self.n == other.n
                and np.array_equal(self.pairs, other.pairs)
                and np.array_equal(self.twists, other.twists))

    @classmethod
    def from_pairs(cls, n: int, pairs, twists) -> "Gluing":
        raw = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        lo, hi = np.minimum(raw[:, 0], raw[:, 1]), np.maximum(raw[:, 0], raw[:, 1])
        twists = np.asarray(twists, dtype=np.int64).reshape(-1) % 3
        # slots are distinct, so scattering by the low slot sorts the rows
        row_at = np.full(4 * n, -1, dtype=np.int64)
        row_at[lo] = np.arange(len(lo))
        order = row_at[row_at >= 0]
        return cls(n, np.stack([lo[order], hi[order]], axis=1), twists[order])

    @cached_property
    def partner(self) -> np.ndarray:
        p = np.empty(4 * self.n, dtype=np.int64)
        p[self.pairs[:, 0]] = self.pairs[:, 1]
        p[self.pairs[:, 1]] = self.pairs[:, 0]
        return p

    @cached_property
    def slot_twist(self) -> np.ndarray:
        t = np.empty(4 * self.n, dtype=np.int64)
        t[self.pairs[:, 0]] = self.twists
        t[self.pairs[:, 1]] = self.twists
        return t

    def dual_graph(self) -> "DualGraph":
        return DualGraph(self.n, self.partner)

    def to_dict(self) -> dict:
        return {
            "n": int(self.n),
            "matching": [{"a": [int(x) // 4, int(x) % 4], "b": [int(y) // 4, int(y) % 4]}
                         for x, y in self.pairs],
            "twists": [int(t) for t in self.twists],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Gluing":
        pairs = [(4 * r["a"][0] + r["a"][1], 4 * r["b"][0] + r["b"][1]) for r in data["matching"]]
        return cls.from_pairs(int(data["n"]), pairs, data["twists"])

    @classmethod
    def from_json(cls, text: str) -> "Gluing":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class DualGraph:
    """Multigraph on n vertices with up to four slots each; ``partner[s] = -1`` marks an unused slot."""

    n: int
    partner: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "DualGraph":
        partner = np.full(4 * n, -1, dtype=np.int64)
        used = [0] * n
        for u, v in edges:
            if used[u] >= 4 or used[v] >= 4 or (u == v and used[u] >= 3):
                raise ValueError("vertex degree exceeds 4")
            su = 4 * u + used[u]
            used[u] += 1
            sv = 4 * v + used[v]
            used[v] += 1
            partner[su], partner[sv] = sv, su
        return cls(n, partner)

    def edges(self) -> np.ndarray:
        s = np.arange(4 * self.n)
        mask = (self.partner > s)
        return np.stack([s[mask] // 4, self.partner[mask] // 4], axis=1)

    def degrees(self) -> np.ndarray:
        return (self.partner.reshape(self.n, 4) >= 0).sum(axis=1)

    def relabeled(self, perm: Sequence[int]) -> "DualGraph":
        """Isomorphic copy with vertex v renamed perm[v] (slots move with their vertex)."""
        perm = np.asarray(perm, dtype=np.int64)
        slots = np.arange(4 * self.n)
        new_slot = 4 * perm[slots // 4] + slots % 4
        partner = np.full(4 * self.n, -1, dtype=np.int64)
        used = self.partner >= 0
        partner[new_slot[used]] = new_slot[self.partner[used]]
        return DualGraph(self.n, partner)


def _draw(n: int, rng: np.random.Generator):
    # consecutive entries of a uniform permutation form a uniform perfect matching
    pairs = rng.permutation(4 * n).reshape(2 * n, 2)
    twists = rng.integers(0, 3, size=2 * n)
    return pairs, twists


def _partner_of(n: int, pairs: np.ndarray) -> np.ndarray:
    p = np.empty(4 * n, dtype=np.int64)
    p[pairs[:, 0]] = pairs[:, 1]
    p[pairs[:, 1]] = pairs[:, 0]
    return p


def sample_gluing(n: int, seed: SeedLike = None) -> Gluing:
    """Uniform element of the (4n-1)!! * 3**(2n) gluings."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pairs, twists = _draw(n, _rng(seed))
    return Gluing.from_pairs(n, pairs, twists)


def is_simple(g: Union[DualGraph, Gluing]) -> bool:
    """No loops and no parallel edges."""
    return kernels.is_simple_partner(g.partner)


def sample_simple_gluing(n: int, seed: SeedLike = None, max_attempts: Optional[int] = None):
    """Rejection-sample until the dual graph is simple.  Returns (gluing, attempts)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    attempts = 0
    while True:
        pairs, twists = _draw(n, rng)
        attempts += 1
        if kernels.is_simple_partner(_partner_of(n, pairs)):
            return Gluing.from_pairs(n, pairs, twists), attempts
        if max_attempts is not None and attempts >= max_attempts:
            raise RuntimeError(f"no simple dual graph in {attempts} attempts")


@dataclass(frozen=True)
class Cycle:
    """Closed simple path; ``steps[i] = (vertex, entry_local, exit_local)``."""

    steps: tuple

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def vertices(self) -> tuple:
        return tuple(s[0] for s in self.steps)

    def exit_slots(self) -> list[int]:
        return [4 * v + x for v, _, x in self.steps]


def _cycle_from_exits(exits: Sequence[int], partner: np.ndarray) -> Cycle:
    k = len(exits)
    steps = []
    for i in range(k):
        x = int(exits[i])
        e = int(partner[int(exits[i - 1])])
        steps.append((x // 4, e % 4, x % 4))
    return Cycle(tuple(steps))


def enumerate_cycles(g: Union[DualGraph, Gluing], max_len: int, cap: int = 1_000_000) -> list[Cycle]:
    """Every simple cycle of length 3..max_len, once each (max_len <= 16)."""
    if max_len > 16:
        from .errors import ResourceError
        raise ResourceError("max_len is capped at 16")
    partner = g.partner
    return [_cycle_from_exits(c, partner) for c in kernels.find_cycles(partner, max_len, cap)]


def cycle_word(g: Gluing, c: Cycle, start: int = 0, direction: int = 1) -> Word:
    """Letters met walking ``c`` from step ``start`` forwards (+1) or backwards (-1)."""
    k = len(c)
    tw = g.slot_twist
    letters = []
    for j in range(k):
        i = (start + direction * j) % k
        v, e, x = c.steps[i]
        d = DIRECTION_OF_XOR[e ^ x]
        # forwards the twist is that of the edge leaving through x; backwards, through e
        slot = 4 * v + (x if direction > 0 else e)
        letters.append(Letter(d, int(tw[slot])))
    return tuple(letters)


def cycle_class_key(g: Gluing, c: Cycle) -> tuple:
    """Dihedral-minimal twist residues: equal iff the cycle words are equivalent."""
    return bracelet_key(twist_residues(cycle_word(g, c)))


def class_key(wc: Union[WordClass, Sequence]) -> tuple:
    word = wc.canonical if isinstance(wc, WordClass) else wc
    return bracelet_key(twist_residues(word))


def class_counts(g: Gluing, classes: Sequence[WordClass], max_len: int) -> dict:
    """Number of cycles of ``g`` labelled by each class in ``classes``."""
    if not classes:
        return {}
    keys = {}
    for wc in classes:
        keys.setdefault((wc.length, class_key(wc)), wc)
    counts = {wc.canonical: 0 for wc in classes}
    for c in enumerate_cycles(g, max_len):
        wc = keys.get((len(c), cycle_class_key(g, c)))
        if wc is not None:
            counts[wc.canonical] += 1
    return counts


def is_tangle_free(g: Union[DualGraph, Gluing], radius: int) -> bool:
    """Every radius-``radius`` ball induces a subgraph with at most one cycle."""
    partner = g.partner
    n = partner.shape[0] // 4
    nbr = np.where(partner >= 0, partner // 4, -1).reshape(n, 4)
    nbr_list = nbr.tolist()
    part = partner.tolist()
    for v in range(n):
        ball = {v}
        frontier = [v]
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for w in nbr_list[u]:
                    if w >= 0 and w not in ball:
                        ball.add(w)
                        nxt.append(w)
            frontier = nxt
        half_edges = 0
        for u in ball:
            for j in range(4):
                y = part[4 * u + j]
                if y >= 0 and y // 4 in ball:
                    half_edges += 1
        edges = half_edges // 2
        if edges - len(ball) + 1 > 1:
            return False
    return True
