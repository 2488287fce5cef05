"""Geodesic planes in the upper half-space and the word-length bound J(r).

A plane is stored by its boundary (a circle or a line in C).  Distances
use the inversive product of the boundaries written as Hermitian forms
``H11 |z|^2 + 2 Re(H21 z) + H22``; Möbius maps act on these forms by
``H -> M^{-*} H M^{-1}``, which keeps word computations exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactalg import GaussInt, Mat2, as_word, word_matrix

INF = math.inf
ACOSH3 = math.acosh(3.0)

Point = Union[complex, float]  # float only for INF


def is_inf(z) -> bool:
    return isinstance(z, float) and math.isinf(z)


@dataclass(frozen=True)
class IdealTriple:
    p: Point
    q: Point
    r: Point

    def __post_init__(self):
        pts = list(self)
        for i in range(3):
            for j in range(i + 1, 3):
                if is_inf(pts[i]) and is_inf(pts[j]):
                    raise ValueError("repeated point at infinity")
                if not is_inf(pts[i]) and not is_inf(pts[j]) and pts[i] == pts[j]:
                    raise ValueError("ideal triple points must be distinct")

    def __iter__(self):
        return iter((self.p, self.q, self.r))


STANDARD_TRIPLE = IdealTriple(0j, 1j, INF)


@dataclass(frozen=True)
class Plane:
    """Geodesic plane with boundary circle ``|z - center| = radius`` or the line
    through ``point`` with unit ``direction``."""

    center: Optional[complex] = None
    radius: Optional[float] = None
    point: Optional[complex] = None
    direction: Optional[complex] = None

    @property
    def is_line(self) -> bool:
        return self.center is None

    def hermitian(self) -> tuple[float, complex, float]:
        """``(H11, H21, H22)`` with ``H11 |z|^2 + 2 Re(H21 z) + H22 = 0`` on the boundary."""
        if self.is_line:
            n = 1j * self.direction
            return 0.0, n.conjugate() / 2, -(n.conjugate() * self.point).real
        c = self.center
        return 1.0, -c.conjugate(), abs(c) ** 2 - self.radius ** 2


P0 = Plane(point=0j, direction=1j)  # spanned by (0, i, inf)


# -- Möbius images ------------------------------------------------------------

def _qdiv(num: GaussInt, den: GaussInt) -> complex:
    """Exact quotient in Q(i), rounded once to complex."""
    n2 = den.norm()
    q = num * den.conj()
    return complex(float(Fraction(q.re, n2)), float(Fraction(q.im, n2)))


def mobius_image(m: Mat2, z: Union[GaussInt, None]) -> Point:
    """Image of a Gaussian-integer point (``None`` for infinity) under ``m``."""
    if z is None:
        num, den = m.a, m.c
    else:
        num, den = m.a * z + m.b, m.c * z + m.d
    if den.norm() == 0:
        return INF
    return _qdiv(num, den)


def image_triple(word) -> IdealTriple:
    m = word_matrix(as_word(word))
    return IdealTriple(mobius_image(m, GaussInt(0, 0)), mobius_image(m, GaussInt(0, 1)),
                       mobius_image(m, None))


def plane_through(t: IdealTriple, tol: float = 1e-12) -> Plane:
    pts = list(t)
    finite = [p for p in pts if not is_inf(p)]
    if len(finite) == 2:
        p, q = finite
        v = q - p
        if abs(v) <= tol:
            raise ValueError("coincident boundary points")
        return Plane(point=p, direction=v / abs(v))
    p, q, r = finite
    scale = max(abs(q - p), abs(r - p), abs(r - q))
    if min(abs(q - p), abs(r - p), abs(r - q)) <= tol * max(1.0, scale):
        raise ValueError("coincident boundary points")
    b, c = q - p, r - p
    cross = b.real * c.imag - b.imag * c.real
    if abs(cross) <= tol * scale * scale:
        return Plane(point=p, direction=b / abs(b))
    b2, c2 = abs(b) ** 2, abs(c) ** 2
    ux = (c.imag * b2 - b.imag * c2) / (2 * cross)
    uy = (b.real * c2 - c.real * b2) / (2 * cross)
    center = p + complex(ux, uy)
    return Plane(center=center, radius=abs(complex(ux, uy)))


# -- distances ---------------------------------------------------------------

def inversive_product(p1: Plane, p2: Plane) -> float:
    a1, h1, d1 = p1.hermitian()
    a2, h2, d2 = p2.hermitian()
    det1 = a1 * d1 - abs(h1) ** 2
    det2 = a2 * d2 - abs(h2) ** 2
    num = a1 * d2 + a2 * d1 - 2 * (h1.conjugate() * h2).real
    return num / (2 * math.sqrt(det1 * det2))


def _distance_from_product(delta: float) -> float:
    x = abs(delta)
    return math.acosh(x) if x > 1.0 else 0.0


def plane_distance(p1: Plane, p2: Plane) -> float:
    """Hyperbolic distance between two geodesic planes (0 if they meet, also at infinity)."""
    return _distance_from_product(inversive_product(p1, p2))


def plane_offset_exact(m: Mat2) -> int:
    """``Re(a conj(d) + b conj(c))``: inversive product of P0 and ``m(P0)`` up to sign."""
    return m.a.re * m.d.re + m.a.im * m.d.im + m.b.re * m.c.re + m.b.im * m.c.im


def word_plane_distance(word) -> float:
    """d(w): distance from P0 to its image under the word, from exact integers."""
    x = abs(plane_offset_exact(word_matrix(as_word(word))))
    return math.acosh(x) if x > 1 else 0.0


def word_plane_distance_float(word) -> float:
    """Same quantity through ``image_triple`` and ``plane_through`` in floating point."""
    return plane_distance(P0, plane_through(image_triple(word)))


def halfspace_nested(word) -> bool:
    """Whether the word maps the half-space {Re z > 0} into itself.

    The image region is ``{q < 0}`` for the Hermitian form
    ``[[2Re(c d̄), -(a d̄ + b c̄)], [., 2Re(a b̄)]]``; the test is exact.
    """
    m = word_matrix(as_word(word))
    a, b, c, d = m.a, m.b, m.c, m.d
    h11 = 2 * (c.re * d.re + c.im * d.im)
    x = a * d.conj() + b * c.conj()
    h22 = 2 * (a.re * b.re + a.im * b.im)
    if h11 > 0:
        # disc centred at x / h11 with radius^2 = (|x|^2 - h11 h22) / h11^2
        return x.re >= 0 and x.im * x.im <= h11 * h22
    if h11 < 0:
        return False
    # half-plane 2 Re(h21 z) + h22 < 0 with h21 = -conj(x)
    return x.im == 0 and x.re > 0 and h22 >= 0


# -- J(r) ----------------------------------------------------------------------

def _implicit(j: float) -> float:
    return (math.cosh(j) - 1.0) * (2.0 * j + ACOSH3)


def r_of_j(j: float) -> float:
    """Inverse of J: ``(cosh j - 1)(2j + arccosh 3) / (2 arccosh 3)``."""
    if j <= 0:
        raise ValueError("j must be positive")
    return _implicit(j) / (2.0 * ACOSH3)


def j_residual(r: float, j: float) -> float:
    """Relative residual of the implicit equation at ``j``."""
    rhs = 2.0 * ACOSH3 * r
    return abs(_implicit(j) - rhs) / rhs


def j_of_r(r: float, tol: float = 1e-15) -> float:
    """Unique J > 0 with ``(cosh J - 1)(2J + arccosh 3) = 2 arccosh(3) r``.

    Bisection on a log bracket until Newton steps stay inside it.
    """
    if not r > 0:
        raise ValueError("r must be positive")
    rhs = 2.0 * ACOSH3 * r
    lo = max(0.0, math.log(2 * r) - 2.0)
    hi = max(math.log(2 * r) + 2.0, 1e-3)
    while _implicit(lo) > rhs:
        lo /= 2.0
    while _implicit(hi) < rhs:
        hi *= 2.0
    j = 0.5 * (lo + hi)
    for _ in range(200):
        f = _implicit(j) - rhs
        if f == 0.0:
            return j
        if f > 0:
            hi = j
        else:
            lo = j
        fp = math.sinh(j) * (2.0 * j + ACOSH3) + 2.0 * (math.cosh(j) - 1.0)
        step = j - f / fp
        j = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, j) or abs(f) <= 1e-16 * rhs:
            break
    return j
