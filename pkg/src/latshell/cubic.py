"""The isometry M ≅ √2·Z^n and signed-permutation orbits of cubic shells."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial, isqrt, prod

from . import linalg
from .lattice import GramLattice
from .shells import Shell, Vector, enumerate_shell


class CubicIsometryError(ValueError):
    pass


class OrbitCountMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class CubicIsometry:
    lattice: GramLattice
    basis_w: tuple[Vector, ...]                      # w_i in lattice coordinates
    change_of_basis: tuple[tuple[int, ...], ...]     # lattice coords -> cubic coords

    def to_cubic(self, x) -> Vector:
        return tuple(linalg.matvec(self.change_of_basis, x))

    def gram_w(self) -> list[list[int]]:
        return [[self.lattice.inner(a, b) for b in self.basis_w] for a in self.basis_w]


def build_cubic_isometry(lat: GramLattice) -> CubicIsometry:
    """Use the norm-1 shell as an orthogonal basis w_1..w_n with <w_i,w_j> = 2δ_ij.

    Representatives (first nonzero coordinate positive) are taken in
    descending lexicographic order, so an already cubic Gram 2I gives the
    identity change of basis.
    """
    n = lat.rank
    shell = enumerate_shell(lat, 1)
    if len(shell) != 2 * n:
        raise CubicIsometryError(
            f"S_1({lat.name}) has {len(shell)} vectors, a scaled orthoplex needs {2 * n}")
    reps = tuple(sorted(shell.representatives(), reverse=True))
    iso_gram = [[lat.inner(a, b) for b in reps] for a in reps]
    if iso_gram != linalg.diag([2] * n):
        raise CubicIsometryError("norm-1 representatives are not pairwise orthogonal")
    w = linalg.transpose(reps)  # columns are the w_i
    if abs(linalg.det(w)) != 1:
        raise CubicIsometryError("norm-1 representatives do not generate the lattice")
    inv = linalg.integer_inverse(w)
    return CubicIsometry(lat, reps, tuple(tuple(r) for r in inv))


def signature(y) -> tuple[int, ...]:
    return tuple(sorted((abs(c) for c in y), reverse=True))


def orbit_size(sig) -> int:
    """Signed-permutation orbit size: 2^#nonzero times the placement multinomial."""
    n = len(sig)
    nonzero = sum(1 for c in sig if c)
    return 2 ** nonzero * factorial(n) // prod(factorial(m) for m in Counter(sig).values())


@dataclass(frozen=True)
class OrbitDecomposition:
    lattice: str
    norm: int
    parts: tuple[tuple[tuple[int, ...], int], ...]   # (signature, count), signatures descending

    @property
    def total(self) -> int:
        return sum(c for _, c in self.parts)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.parts)

    def as_record(self) -> dict:
        return {
            "lattice": self.lattice,
            "norm": self.norm,
            "orbits": [{"signature": list(s), "count": c, "closed_form": orbit_size(s)}
                       for s, c in self.parts],
            "total": self.total,
        }


def orbit_decompose(shell: Shell, iso: CubicIsometry) -> OrbitDecomposition:
    if shell.lattice.gram != iso.lattice.gram:
        raise ValueError("shell does not live in the isometry's lattice; reinterpret it first")
    groups: Counter = Counter()
    for v in shell.vectors:
        y = iso.to_cubic(v)
        if sum(c * c for c in y) != shell.norm:
            raise OrbitCountMismatch(f"{v} -> {y} has the wrong cubic norm")
        groups[signature(y)] += 1
    for sig, count in groups.items():
        if count != orbit_size(sig):
            raise OrbitCountMismatch(f"signature {sig}: {count} vectors, orbit has {orbit_size(sig)}")
    parts = tuple(sorted(groups.items(), reverse=True))
    return OrbitDecomposition(shell.lattice.name, shell.norm, parts)


def signatures_of_norm(norm: int, dim: int = 8) -> list[tuple[int, ...]]:
    """All descending absolute-value patterns of length ``dim`` with squared sum ``norm``."""
    out = []

    def rec(prefix, remaining, cap):
        if len(prefix) == dim:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for c in range(min(cap, isqrt(remaining)), -1, -1):
            rec(prefix + [c], remaining - c * c, c)

    rec([], norm, norm)
    return out


def closed_form_count(norm: int, dim: int = 8) -> int:
    return sum(orbit_size(s) for s in signatures_of_norm(norm, dim))


def r8_oracle(norm: int, dim: int = 8) -> int:
    """Representations of ``norm`` as a sum of ``dim`` squares, by convolution."""
    if norm < 0:
        raise ValueError("norm must be nonnegative")
    one = [0] * (norm + 1)
    one[0] = 1
    k = 1
    while k * k <= norm:
        one[k * k] = 2
        k += 1
    acc = [1] + [0] * norm
    for _ in range(dim):
        acc = [sum(acc[i] * one[m - i] for i in range(m + 1)) for m in range(norm + 1)]
    return acc[norm]
