"""Exact enumeration of lattice norm shells and theta-series prefixes.

The enumerator is a depth-first Fincke-Pohst search on the exact LDL^T
decomposition of the Gram matrix.  Writing

    x^T G x = sum_j d_j (x_j + sum_{i>j} L_ij x_i)^2,

every level is rescaled by a single common denominator so that the search
loop only ever compares Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt, lcm
from typing import Iterator, Sequence

from . import linalg
from .lattice import GramLattice, LatticeError

Vector = tuple[int, ...]


class _IntegerForm:
    """Integer-scaled data of one LDL^T decomposition."""

    def __init__(self, gram):
        low, d = linalg.ldlt(gram)
        n = len(gram)
        self.n = n
        self.den = []   # den[j]: common denominator of column j of L below the diagonal
        self.coef = []  # coef[j][i] = L[i][j] * den[j], for i > j
        for j in range(n):
            dj = lcm(1, *(low[i][j].denominator for i in range(j + 1, n)))
            self.den.append(dj)
            self.coef.append({i: int(low[i][j] * dj) for i in range(j + 1, n) if low[i][j]})
        self.scale = lcm(*(d[j].denominator * self.den[j] ** 2 for j in range(n)))
        # scaled term at level j is weight[j] * (den[j] x_j + C_j)^2
        self.weight = [int(d[j] * self.scale / self.den[j] ** 2) for j in range(n)]

    def search(self, bound: int, exact: bool) -> Iterator[tuple[list[int], int]]:
        """Yield (x, x^T G x) for all x with x^T G x <= bound (== bound if exact)."""
        n = self.n
        total = bound * self.scale
        x = [0] * n
        den, coef, weight = self.den, self.coef, self.weight

        def centre(j):
            return sum(c * x[i] for i, c in coef[j].items())

        def walk(j, remaining):
            c = centre(j)
            dj, wj = den[j], weight[j]
            if j == 0 and exact:
                sq, rem = divmod(remaining, wj)
                if rem:
                    return
                r = isqrt(sq)
                if r * r != sq:
                    return
                for s in ((-r, r) if r else (0,)):
                    t = s - c
                    if t % dj == 0:
                        x[0] = t // dj
                        yield x, bound
                return
            m = isqrt(remaining // wj)
            lo = -((m + c) // dj)
            hi = (m - c) // dj
            for v in range(lo, hi + 1):
                s = dj * v + c
                left = remaining - wj * s * s
                x[j] = v
                if j == 0:
                    yield x, (total - left) // self.scale
                else:
                    yield from walk(j - 1, left)
            x[j] = 0

        yield from walk(n - 1, total)


@dataclass(frozen=True)
class Shell:
    lattice: GramLattice
    norm: int
    vectors: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    @cached_property
    def members(self) -> frozenset[Vector]:
        return frozenset(self.vectors)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.members

    def representatives(self) -> tuple[Vector, ...]:
        """One vector per antipodal pair: the one whose first nonzero entry is positive."""
        return tuple(v for v in self.vectors if _positive(v))

    def reinterpret(self, lattice: GramLattice) -> "Shell":
        """The same coordinate set seen in ``lattice``, whose Gram must be proportional.

        E.g. S_{4k}(L_Ok) reinterpreted in M (Gram divided by 4) is S_k(M).
        """
        if lattice.rank != self.lattice.rank:
            raise LatticeError("rank mismatch")
        ratio = None
        for a, b in zip(_flat(self.lattice.gram), _flat(lattice.gram)):
            if (a == 0) != (b == 0):
                raise LatticeError("Gram matrices are not proportional")
            if a:
                r = Fraction(a, b)
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    raise LatticeError("Gram matrices are not proportional")
        new_norm = Fraction(self.norm) / ratio
        if new_norm.denominator != 1:
            raise LatticeError("norm does not rescale to an integer")
        return Shell(lattice, int(new_norm), self.vectors)


def _flat(m):
    return [x for row in m for x in row]


def _positive(v: Sequence[int]) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


_FORMS: dict = {}


def _form(lattice: GramLattice) -> _IntegerForm:
    f = _FORMS.get(lattice.gram)
    if f is None:
        f = _FORMS[lattice.gram] = _IntegerForm(lattice.gram)
    return f


def enumerate_shell(lattice: GramLattice, norm: int) -> Shell:
    """All x with x^T G x = 2N, sorted lexicographically."""
    if norm <= 0:
        raise ValueError(f"shell norm must be positive, got {norm}")
    target = lattice.norm_scale * norm
    found = sorted(tuple(x) for x, _ in _form(lattice).search(target, exact=True))
    return Shell(lattice, norm, tuple(found))


def enumerate_ball(lattice: GramLattice, max_norm: int) -> dict[int, list[Vector]]:
    """All nonzero vectors with N(x) <= max_norm, grouped by norm (unsorted)."""
    out: dict[int, list[Vector]] = {n: [] for n in range(1, max_norm + 1)}
    scale = lattice.norm_scale
    for x, q in _form(lattice).search(scale * max_norm, exact=False):
        if q and q % scale == 0:
            out[q // scale].append(tuple(x))
    return out


def shells_up_to(lattice: GramLattice, max_norm: int) -> dict[int, Shell]:
    ball = enumerate_ball(lattice, max_norm)
    return {n: Shell(lattice, n, tuple(sorted(v))) for n, v in ball.items()}


@dataclass(frozen=True)
class ThetaPrefix:
    lattice: GramLattice
    max_norm: int
    coefficients: tuple[int, ...] = field(default=())

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]


def theta_prefix(lattice: GramLattice, max_norm: int) -> ThetaPrefix:
    """Coefficients #S_0 .. #S_max_norm (with #S_0 = 1 for the zero vector)."""
    if max_norm < 0:
        raise ValueError("max_norm must be nonnegative")
    counts = [1] + [0] * max_norm
    if max_norm:
        scale = lattice.norm_scale
        for _, q in _form(lattice).search(scale * max_norm, exact=False):
            if q and q % scale == 0:
                counts[q // scale] += 1
    return ThetaPrefix(lattice, max_norm, tuple(counts))
