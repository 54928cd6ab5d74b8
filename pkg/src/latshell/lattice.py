"""Gram-matrix lattices, the builtin registry, embeddings and lattice-spec files.

Convention throughout: the algebraic norm of a coordinate vector x is
N(x) = x^T G x / 2, so the shell S_N is {x : x^T G x = 2N}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from . import linalg
from .octonion import coxeter_dickson_basis

# N(x) = (x^T G x) / NORM_SCALE
NORM_SCALE = 2

CONDUCTOR_DIAG = (2, 2, 2, 2, 4, 4, 4, 4)
HALF_CONDUCTOR_DIAG = (1, 1, 1, 1, 2, 2, 2, 2)


class LatticeError(ValueError):
    pass


def _freeze(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


@dataclass(frozen=True)
class GramLattice:
    name: str
    gram: tuple[tuple[int, ...], ...]
    norm_scale: int = field(default=NORM_SCALE, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gram", _freeze(self.gram))
        if not linalg.is_symmetric(self.gram):
            raise LatticeError(f"{self.name}: Gram matrix is not symmetric")
        if not linalg.is_positive_definite(self.gram):
            raise LatticeError(f"{self.name}: Gram matrix is not positive definite")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return linalg.det(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def norm(self, x: Sequence[int]) -> Fraction:
        return Fraction(linalg.quad(self.gram, x), self.norm_scale)

    def inner(self, x, y):
        return linalg.bilinear(self.gram, x, y)

    def renamed(self, name: str) -> "GramLattice":
        return GramLattice(name, self.gram)


@dataclass(frozen=True)
class Embedding:
    """sub ⊂ sup with sub's basis vectors as the columns of basis_map (sup coordinates)."""

    sub: GramLattice
    sup: GramLattice
    basis_map: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "basis_map", _freeze(self.basis_map))
        b = self.basis_map
        pulled = linalg.matmul(linalg.matmul(linalg.transpose(b), self.sup.gram), b)
        if _freeze(pulled) != self.sub.gram:
            raise LatticeError("basis map does not pull the sup Gram back to the sub Gram")
        if self.index == 0:
            raise LatticeError("basis map is singular")

    @property
    def index(self) -> int:
        return abs(linalg.det(self.basis_map))


# -- constructions -----------------------------------------------------------

def direct_sum(a: GramLattice, b: GramLattice, name: str | None = None) -> GramLattice:
    n, m = a.rank, b.rank
    gram = [list(row) + [0] * m for row in a.gram] + [[0] * n + list(row) for row in b.gram]
    return GramLattice(name or f"{a.name}+{b.name}", gram)


def rescale_gram(lat: GramLattice, factor, name: str | None = None) -> GramLattice:
    """Multiply the Gram by ``factor``; the result must stay integral."""
    f = Fraction(factor)
    if f <= 0:
        raise LatticeError("rescale factor must be positive")
    scaled = [[f * x for x in row] for row in lat.gram]
    if any(x.denominator != 1 for row in scaled for x in row):
        raise LatticeError(f"rescaling {lat.name} by {f} is not integral")
    return GramLattice(name or f"({f}){lat.name}", [[int(x) for x in row] for row in scaled])


def conductor(base: GramLattice, diag: Sequence[int], name: str | None = None) -> Embedding:
    """Sublattice spanned by diag[i] * b_i inside ``base``."""
    diag = tuple(int(d) for d in diag)
    if len(diag) != base.rank:
        raise LatticeError(f"conductor needs {base.rank} entries, got {len(diag)}")
    if any(d <= 0 for d in diag):
        raise LatticeError("conductor entries must be positive")
    b = linalg.diag(diag)
    gram = linalg.matmul(linalg.matmul(b, base.gram), b)
    sub = GramLattice(name or f"D{diag}{base.name}", gram)
    return Embedding(sub, base, b)


def _root_a(n: int):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


_D4 = ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2))


@lru_cache(maxsize=None)
def _registry() -> dict[str, GramLattice]:
    a1 = GramLattice("A1", [[2]])
    a2 = GramLattice("A2", _root_a(2))
    d4 = GramLattice("D4", _D4)
    e8 = GramLattice("E8", coxeter_dickson_basis().gram)
    l_ok = conductor(e8, CONDUCTOR_DIAG, "L_Ok").sub
    a2x2 = direct_sum(a2, a2, "A2xA2")
    reg = {
        "A1": a1,
        "A2": a2,
        "square": GramLattice("square", linalg.diag([2] * 2)),
        "cubic4": GramLattice("cubic4", linalg.diag([2] * 4)),
        "A2xA2": a2x2,
        "D4": d4,
        "cubic8": GramLattice("cubic8", linalg.diag([2] * 8)),
        "A2^4": direct_sum(a2x2, a2x2, "A2^4"),
        "D4xD4": direct_sum(d4, d4, "D4xD4"),
        "E8": e8,
        "L_Ok": l_ok,
        "M": rescale_gram(l_ok, Fraction(1, 4), "M"),
        "sqrt2Z8": GramLattice("sqrt2Z8", linalg.diag([2] * 8)),
    }
    return reg


BUILTIN_NAMES = tuple(_registry())


def builtin(name: str) -> GramLattice:
    try:
        return _registry()[name]
    except KeyError:
        raise LatticeError(f"unknown lattice {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None


def builtin_embedding(sub: str, sup: str) -> Embedding:
    """The inclusions of the conductor chain L_Ok ⊂ M ⊂ E8 (plus identities)."""
    if sub == sup:
        lat = builtin(sub)
        return Embedding(lat, lat, linalg.identity(lat.rank))
    pairs = {
        ("L_Ok", "E8"): CONDUCTOR_DIAG,
        ("M", "E8"): HALF_CONDUCTOR_DIAG,
        ("L_Ok", "M"): (2,) * 8,
    }
    try:
        d = pairs[(sub, sup)]
    except KeyError:
        raise LatticeError(f"no builtin embedding {sub} ⊂ {sup}") from None
    return Embedding(builtin(sub), builtin(sup), linalg.diag(d))


# -- lattice-spec files ------------------------------------------------------
#
# A spec is a JSON object, one of
#   {"name": ..., "gram": [[...], ...]}
#   {"builtin": "E8"}
#   {"construct": "conductor", "base": <spec>, "diag": [...]}
#   {"construct": "direct_sum", "parts": [<spec>, <spec>, ...]}
#   {"construct": "rescale", "base": <spec>, "factor": "1/4"}
# Nested specs may also be plain builtin names.

def from_spec(spec) -> GramLattice:
    if isinstance(spec, str):
        return builtin(spec)
    if not isinstance(spec, dict):
        raise LatticeError(f"bad lattice spec: {spec!r}")
    if "gram" in spec:
        return GramLattice(spec.get("name", "custom"), spec["gram"])
    if "builtin" in spec:
        return builtin(spec["builtin"])
    kind = spec.get("construct")
    name = spec.get("name")
    if kind == "conductor":
        return conductor(from_spec(spec["base"]), spec["diag"], name).sub
    if kind == "direct_sum":
        parts = [from_spec(p) for p in spec["parts"]]
        if not parts:
            raise LatticeError("direct_sum needs at least one part")
        out = parts[0]
        for p in parts[1:]:
            out = direct_sum(out, p)
        return out.renamed(name) if name else out
    if kind == "rescale":
        return rescale_gram(from_spec(spec["base"]), Fraction(str(spec["factor"])), name)
    raise LatticeError(f"unknown construct {kind!r}")


def to_spec(lat: GramLattice) -> dict:
    return {"name": lat.name, "gram": [list(row) for row in lat.gram]}


def load_spec(path: str | Path) -> GramLattice:
    return from_spec(json.loads(Path(path).read_text(encoding="utf-8")))


def dump_spec(lat: GramLattice, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_spec(lat), indent=1) + "\n", encoding="utf-8")


def resolve(ref: str) -> GramLattice:
    """Resolve a CLI lattice reference: builtin name or ``@path/to/spec.json``."""
    if ref.startswith("@"):
        return load_spec(ref[1:])
    return builtin(ref)
