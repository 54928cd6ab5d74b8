"""Root-system certification of equal-norm shells (simply-laced only).

A shell is certified in stages; the first failing stage is reported:

    equal-norm  ->  base  ->  reflection closure  ->  Cartan shape  ->  orbit

Closure is checked before the Cartan shape because a non-root shell such as
S_3(M) has no well-defined base to build a Cartan matrix from; what fails
first and unambiguously is the integrality/membership of reflected vectors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .analysis import is_antipodal, vector_rank
from .shells import Shell, Vector

STAGE_EQUAL_NORM = "not-equal-norm"
STAGE_BASE = "no-valid-base"
STAGE_CLOSURE = "reflection-not-closed"
STAGE_CARTAN = "not-finite-simply-laced"
STAGE_ORBIT = "orbit-not-spanning"


class NotARootSystem(Exception):
    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


class NonIntegralCartanNumber(ValueError):
    pass


class NotFiniteSimplyLaced(ValueError):
    pass


@dataclass(frozen=True)
class RootCertificate:
    lattice: str
    norm: int
    scale: Fraction
    functional_base: int
    simple_roots: tuple[Vector, ...]
    cartan: tuple[tuple[int, ...], ...]
    dynkin_type: tuple[str, ...]
    orbit_size: int
    closure_witness: bool

    @property
    def type_label(self) -> str:
        return format_type(self.dynkin_type)

    def as_record(self) -> dict:
        return {
            "lattice": self.lattice,
            "norm": self.norm,
            "scale": str(self.scale),
            "functional_base": self.functional_base,
            "simple_roots": [list(r) for r in self.simple_roots],
            "cartan": [list(r) for r in self.cartan],
            "dynkin_type": self.type_label,
            "orbit_size": self.orbit_size,
            "closure_witness": self.closure_witness,
        }


# -- reflections --------------------------------------------------------------

def cartan_number(x, alpha, gram, scale: Fraction) -> int:
    """2<x,a>/<a,a>, given scale with scale * <a,a> = 2."""
    c = scale * _inner(gram, x, alpha)
    if c.denominator != 1:
        raise NonIntegralCartanNumber(f"2<x,a>/<a,a> = {c} for x={tuple(x)}, a={tuple(alpha)}")
    return int(c)


def reflect(x, alpha, gram, scale: Fraction) -> Vector:
    """s_alpha(x) = x - (2<x,alpha>/<alpha,alpha>) alpha."""
    if not any(alpha):
        raise ValueError("cannot reflect in the zero vector")
    c = cartan_number(x, alpha, gram, Fraction(scale))
    return tuple(xi - c * ai for xi, ai in zip(x, alpha))


def _inner(gram, x, y) -> int:
    return sum(xi * g * yj for xi, row in zip(x, gram) if xi for g, yj in zip(row, y))


# -- simple roots ---------------------------------------------------------------

def _functional(x, t: int) -> int:
    return sum(c * t ** i for i, c in enumerate(x))


def generic_functional_base(shell: Shell, start: int = 1) -> int:
    """Smallest integer t >= start with sum t^i x_i nonzero on every shell vector."""
    t = start
    while any(_functional(v, t) == 0 for v in shell.vectors):
        t += 1
    return t


def simple_roots(shell: Shell, t: int | None = None) -> tuple[Vector, ...]:
    """Indecomposable positive vectors for the functional f(x) = sum t^i x_i.

    Ordered by increasing f, ties broken lexicographically.
    """
    if t is None:
        t = generic_functional_base(shell)
    positive = [v for v in shell.vectors if _functional(v, t) > 0]
    if len(positive) * 2 != len(shell):
        raise ValueError(f"functional t={t} vanishes on the shell")
    pos_set = set(positive)
    simple = [x for x in positive
              if not any(tuple(a - b for a, b in zip(x, y)) in pos_set for y in positive)]
    simple.sort(key=lambda v: (_functional(v, t), v))
    return tuple(simple)


# -- Dynkin classification ------------------------------------------------------

def _components(adj: list[set[int]]) -> list[list[int]]:
    seen, comps = set(), []
    for s in range(len(adj)):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _arm_length(adj, centre: int, first: int) -> int:
    length, prev, cur = 1, centre, first
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def _classify_component(adj, comp: list[int]) -> str:
    n = len(comp)
    edges = sum(len(adj[u]) for u in comp) // 2
    if edges != n - 1:
        raise NotFiniteSimplyLaced("Dynkin graph has a cycle")
    degrees = sorted(len(adj[u]) for u in comp)
    if n == 1 or degrees[-1] <= 2:
        return f"A{n}"
    branch = [u for u in comp if len(adj[u]) >= 3]
    if len(branch) != 1 or len(adj[branch[0]]) != 3:
        raise NotFiniteSimplyLaced("Dynkin tree is not A, D or E shaped")
    c = branch[0]
    arms = tuple(sorted(_arm_length(adj, c, w) for w in adj[c]))
    if arms[:2] == (1, 1):
        return f"D{n}"
    if arms in {(1, 2, 2), (1, 2, 3), (1, 2, 4)}:
        return f"E{n}"
    raise NotFiniteSimplyLaced(f"Dynkin tree with arms {arms} is not finite type")


def classify_dynkin(cartan: Sequence[Sequence[int]]) -> tuple[str, ...]:
    """Irreducible labels (sorted) of a simply-laced Cartan matrix."""
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise NotFiniteSimplyLaced("diagonal entries must be 2")
        for j in range(n):
            if i != j and (cartan[i][j] not in (0, -1) or cartan[i][j] != cartan[j][i]):
                raise NotFiniteSimplyLaced(f"entry ({i},{j}) = {cartan[i][j]} is not simply laced")
    adj = [{j for j in range(n) if j != i and cartan[i][j]} for i in range(n)]
    labels = [_classify_component(adj, comp) for comp in _components(adj)]
    return tuple(sorted(labels, key=lambda s: (s[0], int(s[1:]))))


def format_type(labels: Sequence[str]) -> str:
    counts = Counter(labels)
    parts = []
    for lab in sorted(counts, key=lambda s: (s[0], int(s[1:]))):
        k = counts[lab]
        parts.append(lab if k == 1 else f"{lab}^{k}")
    return "+".join(parts)


def cartan_permutation(a, b) -> tuple[int, ...] | None:
    """A permutation p with a[p[i]][p[j]] == b[i][j] for all i, j, or None."""
    n = len(a)
    if len(b) != n:
        return None
    perm: list[int] = []
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for k in range(n):
            if used[k] or a[k][k] != b[i][i]:
                continue
            if all(a[k][perm[j]] == b[i][j] and a[perm[j]][k] == b[j][i] for j in range(i)):
                used[k] = True
                perm.append(k)
                if extend(i + 1):
                    return True
                perm.pop()
                used[k] = False
        return False

    return tuple(perm) if extend(0) else None


# -- certification --------------------------------------------------------------

def reflection_orbit(seeds, generators, gram, scale: Fraction) -> set[Vector]:
    orbit = set(seeds)
    frontier = list(orbit)
    while frontier:
        nxt = []
        for x in frontier:
            for a in generators:
                y = reflect(x, a, gram, scale)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return orbit


def certify_root_system(shell: Shell, t: int | None = None) -> RootCertificate:
    """Certify ``shell`` as a simply-laced root system or raise NotARootSystem."""
    lat = shell.lattice
    gram = lat.gram
    if not len(shell):
        raise NotARootSystem(STAGE_EQUAL_NORM, "shell is empty")
    norms = {_inner(gram, v, v) for v in shell.vectors}
    if len(norms) != 1:
        raise NotARootSystem(STAGE_EQUAL_NORM, f"shell has norms {sorted(norms)}")
    (sq,) = norms
    scale = Fraction(2, sq)

    if not is_antipodal(shell):
        raise NotARootSystem(STAGE_BASE, "shell is not antipodal")
    rank = vector_rank(shell.vectors)
    if t is None:
        t = generic_functional_base(shell)
    base = simple_roots(shell, t)
    if vector_rank(base) != rank:
        raise NotARootSystem(STAGE_BASE, "indecomposable vectors do not span the shell")
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            if abs(scale * _inner(gram, a, b)) > 2:
                raise NotARootSystem(STAGE_BASE, f"|<a,b>| exceeds the root bound for {a}, {b}")

    members = shell.members
    for a in base:
        for x in shell.vectors:
            try:
                y = reflect(x, a, gram, scale)
            except NonIntegralCartanNumber as exc:
                raise NotARootSystem(STAGE_CLOSURE, str(exc)) from None
            if y not in members:
                raise NotARootSystem(STAGE_CLOSURE, f"s_a(x) = {y} leaves the shell (a={a}, x={x})")

    if len(base) != rank:
        raise NotARootSystem(STAGE_CARTAN, f"{len(base)} simple roots for rank {rank}")
    cartan = tuple(tuple(cartan_number(a, b, gram, scale) for b in base) for a in base)
    try:
        dynkin = classify_dynkin(cartan)
    except NotFiniteSimplyLaced as exc:
        raise NotARootSystem(STAGE_CARTAN, str(exc)) from None

    orbit = reflection_orbit(base, base, gram, scale)
    if orbit != members:
        raise NotARootSystem(STAGE_ORBIT, f"orbit has {len(orbit)} of {len(shell)} vectors")

    return RootCertificate(
        lattice=lat.name,
        norm=shell.norm,
        scale=scale,
        functional_base=t,
        simple_roots=base,
        cartan=cartan,
        dynkin_type=dynkin,
        orbit_size=len(orbit),
        closure_witness=True,
    )
