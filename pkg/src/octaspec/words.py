"""Equivalence calculus on words and enumeration of spectral classes.

Two kinds of moves generate the equivalence relation on words:

* a coordinate change at a site (``a_transform``), which advances the
  direction there along the cycle R -> S -> L -> R and multiplies the twists
  on both sides of the site by theta;
* a change of starting point (cyclic rotation) or of direction (``star``).

The coordinate changes commute and act freely, so a word of length k is
determined up to coordinate changes by its *twist residues*
``u_j = t_j - d_j - d_{j+1} (mod 3)`` (directions coded R=0, S=1, L=2).
Rotation and ``star`` act on the residues as the dihedral group, hence

    |[w]| = 3**k * |dihedral orbit of u|.

``orbit`` still computes the closure by brute force; it is the oracle the
fast path is tested against.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .exactalg import (
    DIRECTIONS,
    GaussInt,
    Letter,
    Word,
    as_word,
    format_word,
    translation_length,
    word_matrix,
)
from .errors import ResourceError

# direction -> position on the cycle R -> S -> L used by coordinate changes
_CYC = {"R": 0, "S": 1, "L": 2}
_CYC_DIR = ("R", "S", "L")
# cycle code -> rank in the canonical letter order S < R < L
_CYC_RANK = np.array([DIRECTIONS.index(d) for d in _CYC_DIR], dtype=np.int8)

DEFAULT_CEILING = 6.0
LENGTH_TOL = 1e-9


@dataclass(frozen=True)
class WordClass:
    canonical: Word
    orbit_size: int
    length: int
    trace: GaussInt
    translation_length: float

    @property
    def name(self) -> str:
        return format_word(self.canonical)


@dataclass(frozen=True)
class SpectralLine:
    word_class: WordClass
    intensity: float


# -- moves -----------------------------------------------------------------

def a_transform(word: Sequence, site: int) -> Word:
    """Change the coordinate cyclic order in the octahedron at ``site`` (0-based).

    The word is cyclic: site 0's predecessor is the last letter.  For a
    one-letter word both twist changes land on the same letter.
    """
    w = list(as_word(word))
    k = len(w)
    if not 0 <= site < k:
        raise IndexError(f"site {site} out of range for word of length {k}")
    d, t = w[site]
    w[site] = Letter(_CYC_DIR[(_CYC[d] + 1) % 3], (t + 1) % 3)
    pd, pt = w[site - 1]
    w[site - 1] = Letter(pd, (pt + 1) % 3)
    return tuple(w)


def rotate(word: Sequence, shift: int = 1) -> Word:
    w = as_word(word)
    shift %= len(w)
    return w[shift:] + w[:shift]


def star(word: Sequence) -> Word:
    """Read the word backwards; each letter takes the twist of its predecessor."""
    w = as_word(word)
    k = len(w)
    return tuple(Letter(w[k - 1 - j].direction, w[(k - 2 - j) % k].twist) for j in range(k))


def orbit(word: Sequence) -> set:
    """Closure of ``{word}`` under coordinate changes, rotation and ``star``."""
    start = as_word(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        nbrs = [a_transform(w, i) for i in range(len(w))]
        nbrs.append(rotate(w, 1))
        nbrs.append(star(w))
        for v in nbrs:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


# -- residues and canonical forms ---------------------------------------------

def twist_residues(word: Sequence) -> tuple:
    w = as_word(word)
    k = len(w)
    return tuple((w[j].twist - _CYC[w[j].direction] - _CYC[w[(j + 1) % k].direction]) % 3
                 for j in range(k))


def residue_word(u: Sequence[int]) -> Word:
    """The all-R representative with twist residues ``u``."""
    return tuple(Letter("R", int(x) % 3) for x in u)


def _least_rotation(s: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(s)
    ss = list(s) * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = ss[j]
        i = f[j - k - 1]
        while i != -1 and sj != ss[k + i + 1]:
            if sj < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != ss[k + i + 1]:
            if sj < ss[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def bracelet_key(u: Sequence[int]) -> tuple:
    """Least element of the dihedral orbit of ``u``."""
    u = tuple(u)
    r = u[::-1]
    i, j = _least_rotation(u), _least_rotation(r)
    return min(u[i:] + u[:i], r[j:] + r[:j])


def dihedral_orbit_size(u: Sequence[int]) -> int:
    u = tuple(u)
    k = len(u)
    images = {u[i:] + u[:i] for i in range(k)}
    r = u[::-1]
    images.update(r[i:] + r[:i] for i in range(k))
    return len(images)


def _rotations(u: np.ndarray) -> np.ndarray:
    k = len(u)
    idx = (np.arange(k)[:, None] + np.arange(k)[None, :]) % k
    return np.concatenate([u[idx], u[::-1][idx]])


def _greedy_keys(images: np.ndarray) -> np.ndarray:
    """Letter codes of the lexicographically least word over each residue row.

    First letter is S with twist 0; every later twist except the last is
    zeroed, which forces the next direction: d_{j+1} = -u_j - d_j.
    """
    m, k = images.shape
    d = np.empty((m, k), dtype=np.int64)
    d[:, 0] = _CYC["S"]
    for j in range(k - 1):
        d[:, j + 1] = (-images[:, j] - d[:, j]) % 3
    twists = np.zeros((m, k), dtype=np.int64)
    twists[:, -1] = (images[:, -1] + d[:, -1] + d[:, 0]) % 3
    return (3 * _CYC_RANK[d] + twists).astype(np.int8)


def canonical_from_residues(u: Sequence[int]) -> Word:
    keys = _greedy_keys(_rotations(np.asarray(u, dtype=np.int64) % 3))
    best = min(row.tobytes() for row in keys)
    return tuple(Letter(DIRECTIONS[c // 3], c % 3) for c in best)


def canonical(word: Sequence) -> Word:
    """Lexicographic minimum of ``orbit(word)`` in the order S < R < L, 0 < 1 < 2."""
    return canonical_from_residues(twist_residues(word))


def orbit_size(word: Sequence) -> int:
    u = twist_residues(word)
    return 3 ** len(u) * dihedral_orbit_size(u)


def class_of(word: Sequence) -> WordClass:
    w = as_word(word)
    can = canonical(w)
    m = word_matrix(can)
    tl = translation_length(m.trace())
    # members must agree on length; cheap spot check on the input and its reversal
    for member in (w, star(w)):
        other = translation_length(word_matrix(member).trace())
        if not math.isclose(other, tl, rel_tol=1e-9, abs_tol=1e-9):
            raise ArithmeticError(f"length not constant on class of {format_word(w)}")
    return WordClass(canonical=can, orbit_size=orbit_size(w), length=len(w),
                     trace=m.trace(), translation_length=tl)


def class_intensity_from_size(orbit_size: int, length: int) -> float:
    return orbit_size / (2 * length * 3 ** length)


# -- enumeration ------------------------------------------------------------

# R theta^t as (a.re, a.im, b.re, b.im, c.re, c.im, d.re, d.im)
_R_TWISTS = (
    (-1, 0, 0, 1, -1, 1, 0, 1),
    (1, 0, 0, 0, 1, 0, 1, 0),
    (0, 0, 0, 1, 0, 1, 1, 1),
)


def _mul(m, n):
    ar, ai, br, bi, cr, ci, dr, di = m
    er, ei, fr, fi, gr, gi_, hr, hi = n
    return (ar * er - ai * ei + br * gr - bi * gi_, ar * ei + ai * er + br * gi_ + bi * gr,
            ar * fr - ai * fi + br * hr - bi * hi, ar * fi + ai * fr + br * hi + bi * hr,
            cr * er - ci * ei + dr * gr - di * gi_, cr * ei + ci * er + dr * gi_ + di * gr,
            cr * fr - ci * fi + dr * hr - di * hi, cr * fi + ci * fr + dr * hi + di * hr)


def plane_offset(m) -> int:
    """``Re(a conj(d) + b conj(c))``; the plane distance is arccosh of its modulus."""
    ar, ai, br, bi, cr, ci, dr, di = m
    return ar * dr + ai * di + br * cr + bi * ci


def max_word_length(b: float) -> int:
    from .hypgeo import r_of_j
    if b <= 0:
        return 0
    return int(math.floor(r_of_j(b) + 1e-9))


def enumerate_classes(a: float, b: float, *, max_word_len: Optional[int] = None,
                      strict_trace: bool = False, ceiling: float = DEFAULT_CEILING,
                      min_word_len: int = 3) -> list[SpectralLine]:
    """All classes with ``|w| >= min_word_len``, positive length in ``[a, b]``.

    Depth-first over all-R representatives (three branches per letter).  A
    branch is cut once the plane distance of the prefix exceeds ``b``; word
    length is capped at ``floor(r_of_j(b))`` unless ``max_word_len`` is given.
    ``strict_trace`` additionally requires ``|trace| > 2``.
    """
    if not (0 <= a <= b) or not math.isfinite(b):
        raise ValueError(f"need 0 <= a <= b < inf, got [{a}, {b}]")
    if b > ceiling:
        raise ResourceError(f"b = {b} exceeds the feasibility ceiling {ceiling}")
    cap = max_word_length(b) if max_word_len is None else int(max_word_len)
    if cap < min_word_len:
        return []
    x_limit = math.cosh(b + LENGTH_TOL)
    found = []
    # stack of (matrix, residues)
    stack = [((1, 0, 0, 0, 0, 0, 1, 0), ())]
    while stack:
        m, u = stack.pop()
        k = len(u)
        if k >= min_word_len:
            tr = complex(m[0] + m[6], m[1] + m[7])
            tl = translation_length(tr)
            ok = tl > 0.0 and a - LENGTH_TOL <= tl <= b + LENGTH_TOL
            if ok and strict_trace:
                ok = abs(tr) > 2
            if ok and bracelet_key(u) == u:
                found.append((u, tl))
        if k >= cap:
            continue
        for t in (2, 1, 0):
            n = _mul(m, _R_TWISTS[t])
            if abs(plane_offset(n)) > x_limit:
                continue
            stack.append((n, u + (t,)))
    lines = []
    for u, tl in found:
        can = canonical_from_residues(u)
        k = len(u)
        size = 3 ** k * dihedral_orbit_size(u)
        wc = WordClass(canonical=can, orbit_size=size, length=k,
                       trace=word_matrix(can).trace(), translation_length=tl)
        lines.append(SpectralLine(wc, class_intensity_from_size(size, k)))
    lines.sort(key=lambda ln: (ln.word_class.translation_length,
                               [x.code for x in ln.word_class.canonical]))
    return lines


def trace_filter_disagreements(lines: Iterable[SpectralLine]) -> list[SpectralLine]:
    """Lines of positive length whose trace nonetheless has modulus <= 2."""
    return [ln for ln in lines if abs(complex(ln.word_class.trace)) <= 2]


def all_words(length: int) -> Iterable[Word]:
    """Every word of the given length, in canonical letter order."""
    from itertools import product
    from .exactalg import LETTERS
    return product(LETTERS, repeat=length)
