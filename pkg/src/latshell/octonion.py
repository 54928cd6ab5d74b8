"""Octonions over Q and the Coxeter-Dickson integral basis.

Multiplication convention: Cayley-Dickson doubling of the quaternions,

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),

where an octonion with coordinates (x0, ..., x7) over (1, e1, ..., e7) is
the pair a = x0 + x1 i + x2 j + x3 k, b = x4 + x5 i + x6 j + x7 k, i.e.
e4 is the doubling unit and e4+m = e_m e4 for m = 1, 2, 3. With i, j, k
mapped to e1, e2, e3 this gives e1 e2 = e3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import linalg


def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def _qconj(a):
    return (a[0], -a[1], -a[2], -a[3])


@dataclass(frozen=True)
class Octonion:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 8:
            raise ValueError("an octonion has 8 coordinates")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def unit(cls, i: int) -> "Octonion":
        return cls(tuple(int(k == i) for k in range(8)))

    @classmethod
    def from_iter(cls, values: Iterable) -> "Octonion":
        return cls(tuple(values))

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-x for x in self.coords))

    def scale(self, f) -> "Octonion":
        return Octonion(tuple(f * x for x in self.coords))

    def __mul__(self, other: "Octonion") -> "Octonion":
        return oct_mul(self, other)

    def conj(self) -> "Octonion":
        return Octonion((self.coords[0],) + tuple(-x for x in self.coords[1:]))

    @property
    def re(self) -> Fraction:
        return self.coords[0]

    def norm(self) -> Fraction:
        return sum(x * x for x in self.coords)


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    a, b = x.coords[:4], x.coords[4:]
    c, d = y.coords[:4], y.coords[4:]
    left = tuple(p - q for p, q in zip(_qmul(a, c), _qmul(_qconj(d), b)))
    right = tuple(p + q for p, q in zip(_qmul(d, a), _qmul(b, _qconj(c))))
    return Octonion(left + right)


def inner(x: Octonion, y: Octonion) -> Fraction:
    """<x, y> = 2 Re(x conj(y)), so <x, x> = 2 N(x)."""
    return 2 * (x * y.conj()).re


@dataclass(frozen=True)
class BasisSystem:
    vectors: tuple[Octonion, ...]
    gram: tuple[tuple[int, ...], ...]


def coxeter_dickson_vectors() -> tuple[Octonion, ...]:
    e = [Octonion.unit(i) for i in range(8)]
    half = Fraction(1, 2)
    h = (e[1] + e[2] + e[3] + e[4]).scale(half)
    return (e[0], e[1], e[2], e[3], h, e[1] * h, e[2] * h, e[3] * h)


def gram_of(vectors) -> list[list[Fraction]]:
    return [[inner(x, y) for y in vectors] for x in vectors]


def coxeter_dickson_basis() -> BasisSystem:
    """The basis 1, e1, e2, e3, h, e1 h, e2 h, e3 h with h = (e1+e2+e3+e4)/2.

    Raises ``ValueError`` if the resulting Gram is not even unimodular,
    which would mean the multiplication convention is broken.
    """
    vectors = coxeter_dickson_vectors()
    raw = gram_of(vectors)
    if any(x.denominator != 1 for row in raw for x in row):
        raise ValueError("Coxeter-Dickson Gram is not integral")
    gram = tuple(tuple(int(x) for x in row) for row in raw)
    if any(gram[i][i] % 2 for i in range(8)):
        raise ValueError("Coxeter-Dickson Gram is not even")
    if linalg.det(gram) != 1 or not linalg.is_positive_definite(gram):
        raise ValueError("Coxeter-Dickson Gram is not unimodular positive definite")
    return BasisSystem(vectors, gram)
