"""Independent reference computations; nothing here imports the enumerator."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import isqrt

import numpy as np
import sympy


def box_bounds(gram, target):
    """|x_i| <= sqrt(target * (G^-1)_ii) for every x with x^T G x <= target."""
    inv = sympy.Matrix(gram).inv()
    return [isqrt(int(sympy.floor(target * inv[i, i]))) for i in range(len(gram))]


def brute_force_shell(gram, target):
    """Sorted x with x^T G x == target, by scanning the full bounding box."""
    bounds = box_bounds(gram, target)
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(gram))
    g = np.array(gram, dtype=np.int64)
    vals = np.einsum("ij,jk,ik->i", pts, g, pts)
    hits = pts[vals == target]
    return sorted(tuple(int(c) for c in row) for row in hits)


def box_volume(gram, target):
    out = 1
    for b in box_bounds(gram, target):
        out *= 2 * b + 1
    return out


def random_gram(rng: random.Random, rank: int, spread: int = 2):
    while True:
        b = [[rng.randint(-spread, spread) for _ in range(rank)] for _ in range(rank)]
        if sympy.Matrix(b).det() != 0:
            m = sympy.Matrix(b)
            return [[int(x) for x in row] for row in (m.T * m).tolist()]


def sympy_det(a):
    return int(sympy.Matrix(a).det())


def sum_of_squares_count(norm, dim):
    """Direct enumeration of integer dim-tuples with squared length ``norm``."""
    r = isqrt(norm)
    return sum(1 for v in itertools.product(range(-r, r + 1), repeat=dim)
               if sum(c * c for c in v) == norm)


def random_octonion(rng: random.Random):
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(8))
