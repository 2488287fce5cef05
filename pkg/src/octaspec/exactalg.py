"""Exact arithmetic for the nine face-pairing isometries.

Matrices live in SL(2, Z[i]); every entry is a Gaussian integer with Python
``int`` components, so products never round.  Words are composed left to
right: the matrix of ``w1 w2 ... wk`` is ``M(w1) @ M(w2) @ ... @ M(wk)``.
"""
from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union


@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)


def gi(z: Union[int, complex, GaussInt]) -> GaussInt:
    """Coerce an int, an integral complex or a GaussInt to GaussInt."""
    if isinstance(z, GaussInt):
        return z
    if isinstance(z, complex):
        if z.real != int(z.real) or z.imag != int(z.imag):
            raise ValueError(f"{z!r} is not a Gaussian integer")
        return GaussInt(int(z.real), int(z.imag))
    return GaussInt(int(z), 0)


@dataclass(frozen=True, slots=True)
class Mat2:
    """Row-major 2x2 matrix ``[[a, b], [c, d]]`` over Z[i]."""

    a: GaussInt
    b: GaussInt
    c: GaussInt
    d: GaussInt

    @classmethod
    def of(cls, rows: Sequence[Sequence[Union[int, complex]]]) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(gi(a), gi(b), gi(c), gi(d))

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def det(self) -> GaussInt:
        return self.a * self.d - self.b * self.c

    def trace(self) -> GaussInt:
        return self.a + self.d

    def inverse(self) -> "Mat2":
        """Inverse of a determinant-1 matrix."""
        if self.det() != ONE:
            raise ValueError("inverse() requires determinant 1")
        return Mat2(self.d, -self.b, -self.c, self.a)

    def to_complex(self) -> tuple[complex, complex, complex, complex]:
        return complex(self.a), complex(self.b), complex(self.c), complex(self.d)

    def max_component(self) -> int:
        return max(abs(x) for z in (self.a, self.b, self.c, self.d) for x in (z.re, z.im))

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


IDENTITY = Mat2(ONE, ZERO, ZERO, ONE)

DIRECTIONS = ("S", "R", "L")  # also the canonical letter order


class Letter(NamedTuple):
    direction: str
    twist: int  # exponent of theta

    @property
    def code(self) -> int:
        """Index 0..8 in the order S, Sθ, Sθ², R, ..., Lθ²."""
        return 3 * DIRECTIONS.index(self.direction) + self.twist

    def __str__(self) -> str:
        return self.direction + (str(self.twist) if self.twist else "")


Word = tuple  # tuple[Letter, ...]

LETTERS: tuple[Letter, ...] = tuple(Letter(d, t) for d in DIRECTIONS for t in range(3))

THETA = Mat2.of([[0, 1j], [1j, 1]])

# Representatives in SL(2, Z[i]).  Lθ is L @ θ; the other eight are fixed
# representatives (some differ from the raw product by a sign).
_LETTER_MATRICES = {
    Letter("S", 0): Mat2.of([[1, 1], [0, 1]]),
    Letter("S", 1): Mat2.of([[1j, 1j + 1], [1j, 1]]),
    Letter("S", 2): Mat2.of([[1j - 1, 1j], [1j, 0]]),
    Letter("R", 0): Mat2.of([[-1, 1j], [1j - 1, 1j]]),
    Letter("R", 1): Mat2.of([[1, 0], [1, 1]]),
    Letter("R", 2): Mat2.of([[0, 1j], [1j, 1j + 1]]),
    Letter("L", 0): Mat2.of([[1j, 1j], [1j + 1, 1]]),
    Letter("L", 1): Mat2.of([[-1, 1j - 1], [1j, 1j]]),
    Letter("L", 2): Mat2.of([[1j + 1, 1], [1, 1 - 1j]]),
}


def letter_matrix(letter: Letter) -> Mat2:
    return _LETTER_MATRICES[Letter(*letter)]


def word_matrix(word: Iterable[Letter]) -> Mat2:
    m = None
    for letter in word:
        lm = letter_matrix(letter)
        m = lm if m is None else m @ lm
    if m is None:
        raise ValueError("empty word")
    return m


def trace(m: Mat2) -> GaussInt:
    return m.trace()


def translation_length(t: Union[complex, GaussInt, int, float]) -> float:
    """Translation length ``2 |Re arccosh(t / 2)|`` of an isometry with trace ``t``.

    Exactly 0 for real traces in [-2, 2].  The absolute value makes the
    result independent of the sign ambiguity of PSL(2, C).
    """
    t = complex(t)
    if t.imag == 0.0 and -2.0 <= t.real <= 2.0:
        return 0.0
    return 2.0 * abs(cmath.acosh(t / 2).real)


def classify_isometry(m: Mat2) -> str:
    """One of ``identity``, ``parabolic``, ``elliptic``, ``loxodromic``.

    ``elliptic`` (real trace strictly inside (-2, 2)) does not occur for the
    generators but is reported rather than folded into another kind.
    """
    if m == IDENTITY or m == -IDENTITY:
        return "identity"
    t = m.trace()
    if t.im == 0 and abs(t.re) == 2:
        return "parabolic"
    if t.im == 0 and abs(t.re) < 2:
        return "elliptic"
    return "loxodromic"


_LETTER_RE = re.compile(r"([SRL])([012]?)")


def parse_word(text: str) -> Word:
    """Parse ``"SR1"``, ``"S R1"``, ``"S.R1"`` or ``"Sθ Rθ2"`` style words."""
    cleaned = text.replace("θ²", "2").replace("θ", "1").replace("^", "")
    cleaned = re.sub(r"[\s.·*]", "", cleaned)
    pos, letters = 0, []
    while pos < len(cleaned):
        m = _LETTER_RE.match(cleaned, pos)
        if m is None:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        letters.append(Letter(m.group(1), int(m.group(2) or 0)))
        pos = m.end()
    if not letters:
        raise ValueError("empty word")
    return tuple(letters)


def format_word(word: Iterable[Letter]) -> str:
    return "".join(str(Letter(*x)) for x in word)


def as_word(w: Union[str, Sequence]) -> Word:
    if isinstance(w, str):
        return parse_word(w)
    return tuple(Letter(*x) for x in w)


def word_codes(word: Iterable[Letter]) -> list[int]:
    return [Letter(*x).code for x in word]


def word_from_codes(codes: Iterable[int]) -> Word:
    return tuple(LETTERS[int(c)] for c in codes)
