"""Shell-level certificates: antipodality, rank, centroid, second moment, divisibility."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import linalg
from .lattice import GramLattice
from .shells import Shell


def vector_rank(vectors) -> int:
    """Rank over Q, by incremental fraction-free echelon reduction."""
    basis: list[tuple[int, list[int]]] = []  # (pivot column, row)
    for v in vectors:
        w = list(v)
        for col, row in basis:
            if w[col]:
                a, b = row[col], w[col]
                w = [a * x - b * y for x, y in zip(w, row)]
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is not None:
            g = linalg.content(w)
            basis.append((piv, [x // g for x in w]))
            if len(basis) == len(w):
                break
    return len(basis)


def is_antipodal(shell: Shell) -> bool:
    return all(tuple(-c for c in v) in shell.members for v in shell.vectors)


def centroid_sum(shell: Shell) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*shell.vectors))


def second_moment(shell: Shell) -> list[list[int]]:
    """sum over the shell of x x^T."""
    n = shell.lattice.rank
    m = [[0] * n for _ in range(n)]
    for v in shell.vectors:
        for i, vi in enumerate(v):
            if vi:
                row = m[i]
                for j, vj in enumerate(v):
                    row[j] += vi * vj
    return m


def design2_constant(shell: Shell) -> Fraction | None:
    """λ if (sum x x^T)·G = λ I exactly, else None.

    Equivalent to sum (Gx)(Gx)^T = λ G; taking traces forces
    λ = 2N |S| / rank.
    """
    n = shell.lattice.rank
    mg = linalg.matmul(second_moment(shell), shell.lattice.gram)
    lam = Fraction(shell.lattice.norm_scale * shell.norm * len(shell), n)
    for i in range(n):
        for j in range(n):
            if mg[i][j] != (lam if i == j else 0):
                return None
    return lam


@dataclass(frozen=True)
class ShellReport:
    lattice: str
    norm: int
    size: int
    is_antipodal: bool
    rank: int
    centroid_zero: bool
    design2: Fraction | None
    full_rank: int

    @property
    def passes(self) -> dict[str, bool]:
        return {
            "antipodal": self.is_antipodal,
            "full_rank": self.rank == self.full_rank,
            "centered": self.centroid_zero,
            "design2": self.design2 is not None,
        }

    def as_record(self) -> dict:
        return {
            "lattice": self.lattice,
            "norm": self.norm,
            "size": self.size,
            "antipodal": self.is_antipodal,
            "rank": self.rank,
            "centroid_zero": self.centroid_zero,
            "design2": None if self.design2 is None else str(self.design2),
            "design2_test": "sum x x^T G == lambda I, lambda = 2N|S|/rank",
        }


def analyze(shell: Shell) -> ShellReport:
    if not len(shell):
        raise ValueError(f"S_{shell.norm}({shell.lattice.name}) is empty")
    return ShellReport(
        lattice=shell.lattice.name,
        norm=shell.norm,
        size=len(shell),
        is_antipodal=is_antipodal(shell),
        rank=vector_rank(shell.vectors),
        centroid_zero=not any(centroid_sum(shell)),
        design2=design2_constant(shell),
        full_rank=shell.lattice.rank,
    )


def norm_divisibility(lat: GramLattice) -> Fraction | int:
    """Generator m of the ideal spanned by the values N(x) = x^T G x / 2.

    N(x) = sum g_ii/2 x_i^2 + sum_{i<j} g_ij x_i x_j, so m is the gcd of the
    halved diagonal and the off-diagonal entries.  An int for even lattices.
    """
    terms = [Fraction(lat.gram[i][i], lat.norm_scale) for i in range(lat.rank)]
    terms += [Fraction(lat.gram[i][j] * 2, lat.norm_scale)
              for i in range(lat.rank) for j in range(i)]
    num = 0
    den = 1
    for t in terms:
        num = gcd(num, t.numerator)
        den = lcm(den, t.denominator)
    m = Fraction(num, den)
    return int(m) if m.denominator == 1 else m


class RepresentativeError(ValueError):
    pass


def gram_of_representatives(shell: Shell) -> list[list[int]]:
    """Gram of one vector per antipodal pair (first nonzero coordinate positive)."""
    if not is_antipodal(shell):
        raise RepresentativeError("shell is not antipodal")
    if len(shell) != 2 * shell.lattice.rank:
        raise RepresentativeError(
            f"expected {2 * shell.lattice.rank} vectors, got {len(shell)}")
    reps = shell.representatives()
    return [[shell.lattice.inner(a, b) for b in reps] for a in reps]
