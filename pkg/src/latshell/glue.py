"""Discriminant groups, isotropic gluing of embeddings, and glue codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Sequence

from . import linalg
from .cubic import CubicIsometry
from .lattice import Embedding, GramLattice

RatVector = tuple[Fraction, ...]


class GlueError(ValueError):
    pass


def qvalue_pair(gram, a, b) -> Fraction:
    return sum(x * g * y for x, row in zip(a, gram) for g, y in zip(row, b))


def qvalue(gram, v) -> Fraction:
    """<v, v> for a rational coordinate vector."""
    return qvalue_pair(gram, v, v)


def mod2(q: Fraction) -> Fraction:
    return q - 2 * (q.numerator // (2 * q.denominator))


def _frac_part(v) -> RatVector:
    return tuple(x - (x.numerator // x.denominator) for x in v)


def _nontrivial(snf: linalg.SnfResult) -> list[tuple[int, int]]:
    return [(i, d) for i, d in enumerate(snf.invariant_factors) if d != 1]


def _group_elements(gens: Sequence[RatVector], orders: Sequence[int], n: int) -> list[RatVector]:
    """All sums sum c_i g_i (0 <= c_i < order_i), reduced mod Z^n, in a fixed order."""
    out = []
    for coeffs in itertools.product(*(range(d) for d in orders)):
        v = [Fraction(0)] * n
        for c, g in zip(coeffs, gens):
            if c:
                v = [a + c * b for a, b in zip(v, g)]
        out.append(_frac_part(v))
    return out


# -- discriminant groups --------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantGroup:
    lattice: str
    invariant_factors: tuple[int, ...]   # nontrivial factors only
    generators: tuple[RatVector, ...]    # dual vectors in lattice coordinates
    qvalues: tuple[Fraction, ...]        # <g, g> mod 2

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_elementary_2(self) -> bool:
        return all(d == 2 for d in self.invariant_factors)


def discriminant(lat: GramLattice) -> DiscriminantGroup:
    """L*/L with its quadratic form values mod 2 (L must be even)."""
    if not lat.is_even:
        raise GlueError(f"{lat.name} is odd; q is not defined mod 2")
    snf = linalg.smith_normal_form(lat.gram)
    u_inv = linalg.integer_inverse(snf.U)
    g_inv = linalg.rational_inverse(lat.gram)
    factors, gens, qs = [], [], []
    for i, d in _nontrivial(snf):
        y = [row[i] for row in u_inv]
        g = _frac_part(linalg.matvec(g_inv, y))
        factors.append(d)
        gens.append(g)
        qs.append(mod2(qvalue(lat.gram, g)))
    return DiscriminantGroup(lat.name, tuple(factors), tuple(gens), tuple(qs))


# -- embeddings -------------------------------------------------------------------

def quotient(emb: Embedding) -> tuple[int, ...]:
    """Invariant factors of sup/sub, i.e. of coker(B)."""
    return linalg.invariant_factors(emb.basis_map)


@dataclass(frozen=True)
class GlueResult:
    sub: str
    sup: str
    quotient_factors: tuple[int, ...]
    glue_generators: tuple[RatVector, ...]   # sub coordinates
    glue_order: int
    isotropic: bool
    maximal: bool
    overlattice: GramLattice
    overlattice_basis: tuple[RatVector, ...]

    def as_record(self) -> dict:
        return {
            "sub": self.sub,
            "sup": self.sup,
            "quotient_factors": list(self.quotient_factors),
            "glue_order": self.glue_order,
            "glue_generators": [[str(x) for x in g] for g in self.glue_generators],
            "isotropic": self.isotropic,
            "maximal": self.maximal,
            "overlattice_det": self.overlattice.det,
            "overlattice_even": self.overlattice.is_even,
            "overlattice_gram": [list(r) for r in self.overlattice.gram],
        }


def glue_generators(emb: Embedding) -> tuple[list[RatVector], list[int]]:
    """Coset generators of sup/sub written in sub's (rational) coordinates, with orders."""
    snf = linalg.smith_normal_form(emb.basis_map)
    u_inv = linalg.integer_inverse(snf.U)
    b_inv = linalg.rational_inverse(emb.basis_map)
    gens, orders = [], []
    for i, d in _nontrivial(snf):
        y = [row[i] for row in u_inv]
        gens.append(_frac_part(linalg.matvec(b_inv, y)))
        orders.append(d)
    return gens, orders


def verify_isotropic_glue(emb: Embedding) -> GlueResult:
    sub, sup = emb.sub, emb.sup
    if not (sub.is_even and sup.is_even):
        raise GlueError("gluing needs even lattices")
    gens, orders = glue_generators(emb)
    elements = _group_elements(gens, orders, sub.rank)
    if len(set(elements)) != len(elements):
        raise GlueError("glue generators do not give distinct cosets")
    for v in elements:
        q = mod2(qvalue(sub.gram, v))
        if q:
            raise GlueError(f"coset {v} has q = {q} mod 2; not isotropic")
    order = len(elements)
    if order != emb.index:
        raise GlueError(f"glue order {order} differs from the index {emb.index}")
    if order * order * sup.det != sub.det:
        raise GlueError("|glue|^2 det(sup) != det(sub)")
    basis = overlattice_basis(sub, gens)
    over = _gram_from_basis(sub, basis, f"{sub.name}+glue")
    if over.det * order * order != sub.det:
        raise GlueError("overlattice determinant identity fails")
    return GlueResult(
        sub=sub.name,
        sup=sup.name,
        quotient_factors=quotient(emb),
        glue_generators=tuple(gens),
        glue_order=order,
        isotropic=True,
        maximal=over.det == 1,
        overlattice=over,
        overlattice_basis=tuple(basis),
    )


def overlattice_basis(lat: GramLattice, glue: Sequence[Sequence]) -> list[RatVector]:
    """HNF basis (rational, lat coordinates) of the Z-span of lat and the glue vectors."""
    n = lat.rank
    glue = [tuple(Fraction(x) for x in g) for g in glue]
    for g in glue:
        if len(g) != n:
            raise GlueError("glue vector has the wrong length")
        if any(x.denominator != 1 for x in linalg.matvec(lat.gram, g)):
            raise GlueError(f"{g} is not in the dual lattice")
    den = lcm(1, *(x.denominator for g in glue for x in g))
    rows = [[den * int(i == j) for j in range(n)] for i in range(n)]
    rows += [[int(den * x) for x in g] for g in glue]
    hnf = linalg.hermite_normal_form(rows)
    return [tuple(Fraction(x, den) for x in r) for r in hnf]


def _gram_from_basis(lat: GramLattice, basis, name: str) -> GramLattice:
    gram = [[qvalue_pair(lat.gram, a, b) for b in basis] for a in basis]
    if any(x.denominator != 1 for row in gram for x in row):
        raise GlueError("glued Gram is not integral")
    gram = [[int(x) for x in row] for row in gram]
    if any(gram[i][i] % 2 for i in range(len(gram))):
        raise GlueError("glued lattice is odd: glue is not isotropic")
    return GramLattice(name, gram)


def build_overlattice(lat: GramLattice, glue: Sequence[Sequence], name: str | None = None) -> GramLattice:
    """Even overlattice generated by ``lat`` and isotropic dual vectors ``glue``."""
    basis = overlattice_basis(lat, glue)
    return _gram_from_basis(lat, basis, name or f"{lat.name}+glue")


# -- glue codes ---------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryCode:
    words: tuple[tuple[int, ...], ...]
    length: int

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def dimension(self) -> int:
        k = self.size.bit_length() - 1
        if 1 << k != self.size:
            raise ValueError("code size is not a power of two")
        return k

    @property
    def min_weight(self) -> int:
        weights = [sum(w) for w in self.words if any(w)]
        return min(weights) if weights else 0

    def weight_enumerator(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.words:
            out[sum(w)] = out.get(sum(w), 0) + 1
        return dict(sorted(out.items()))

    def as_record(self) -> dict:
        return {
            "length": self.length,
            "dimension": self.dimension,
            "min_weight": self.min_weight,
            "weight_enumerator": {str(k): v for k, v in self.weight_enumerator().items()},
            "words": ["".join(map(str, w)) for w in self.words],
        }


def glue_code(emb: Embedding, iso: CubicIsometry) -> BinaryCode:
    """Binary words 2·(glue coset in cubic coordinates) mod 2."""
    if iso.lattice.gram != emb.sub.gram:
        raise GlueError("isometry is not for the embedded sublattice")
    factors = [d for d in quotient(emb) if d != 1]
    if any(d != 2 for d in factors):
        raise GlueError(f"quotient {factors} is not an elementary 2-group")
    gens, orders = glue_generators(emb)
    words = []
    for v in _group_elements(gens, orders, emb.sub.rank):
        c = linalg.matvec(iso.change_of_basis, v)
        twice = [2 * x for x in c]
        if any(x.denominator != 1 for x in twice):
            raise GlueError("glue coset is not half-integral in cubic coordinates")
        words.append(tuple(int(x) % 2 for x in twice))
    if len(set(words)) != len(words):
        raise GlueError("distinct cosets map to the same word")
    return BinaryCode(tuple(sorted(words)), emb.sub.rank)


def _span(basis: Sequence[int]) -> frozenset[int]:
    out = {0}
    for b in basis:
        out |= {x ^ b for x in out}
    return frozenset(out)


def maximal_isotropic_codes(length: int = 8) -> list[BinaryCode]:
    """All maximal subspaces of F_2^length on which q(c) = wt(c)/2 mod 2 vanishes.

    This is the discriminant form of √2·Z^length on (1/2)Z^length / Z^length,
    so the subspaces are the doubly-even codes of dimension length/2, each
    giving an even unimodular overlattice.
    """
    if length % 8:
        raise ValueError("doubly-even self-dual codes need length divisible by 8")
    doubly_even = [x for x in range(1, 1 << length) if bin(x).count("1") % 4 == 0]
    layer = {frozenset({0})}
    for _ in range(length // 2):
        nxt = set()
        for space in layer:
            for v in doubly_even:
                if v in space:
                    continue
                if all(bin(v & s).count("1") % 2 == 0 for s in space):
                    nxt.add(space | {v ^ s for s in space})
        layer = nxt
    codes = []
    for space in sorted(layer, key=sorted):
        words = sorted(tuple((x >> (length - 1 - i)) & 1 for i in range(length)) for x in space)
        codes.append(BinaryCode(tuple(words), length))
    return codes
