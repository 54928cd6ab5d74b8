"""Certificate battery and table rendering.

Expected values live in ``data/expected.json`` (one entry per claim, each
with a citation string).  Computed values are always produced live; the
manifest is only the comparison column.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Callable, Mapping

from . import linalg
from .analysis import analyze, gram_of_representatives, norm_divisibility
from .cubic import build_cubic_isometry, closed_form_count, orbit_decompose, r8_oracle
from .glue import discriminant, glue_code, quotient, verify_isotropic_glue
from .lattice import (CONDUCTOR_DIAG, HALF_CONDUCTOR_DIAG, Embedding, GramLattice,
                      builtin, direct_sum)
from .roots import NotARootSystem, cartan_permutation, certify_root_system
from .shells import Shell, enumerate_shell, theta_prefix


def load_manifest() -> list[dict]:
    text = resources.files("latshell").joinpath("data/expected.json").read_text(encoding="utf-8")
    return json.loads(text)["claims"]


@dataclass(frozen=True)
class Certificate:
    claim_id: str
    inputs: dict
    computed: object
    expected: object
    citation: str
    verdict: str
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_record(self) -> dict:
        rec = {
            "claim_id": self.claim_id,
            "inputs": self.inputs,
            "computed": self.computed,
            "expected": self.expected,
            "citation": self.citation,
            "verdict": self.verdict,
        }
        if self.error is not None:
            rec["error"] = self.error
        return rec

    def to_json(self) -> str:
        return json.dumps(self.as_record(), sort_keys=True, separators=(",", ":"))


def _normalize(value):
    return json.loads(json.dumps(value))


class Context:
    """Lattice lookup plus memoized shells; ``overrides`` replaces registry entries."""

    def __init__(self, overrides: Mapping[str, GramLattice] | None = None):
        self.overrides = dict(overrides or {})
        self._shells: dict[tuple[str, int], Shell] = {}
        self._certs: dict[tuple[str, int], object] = {}

    def lat(self, name: str) -> GramLattice:
        if name in self.overrides:
            return self.overrides[name]
        return builtin(name)

    def shell(self, name: str, norm: int) -> Shell:
        key = (name, norm)
        if key not in self._shells:
            self._shells[key] = enumerate_shell(self.lat(name), norm)
        return self._shells[key]

    def cert(self, name: str, norm: int):
        key = (name, norm)
        if key not in self._certs:
            try:
                self._certs[key] = certify_root_system(self.shell(name, norm))
            except NotARootSystem as exc:
                self._certs[key] = exc
        return self._certs[key]

    def embedding(self, sub: str, sup: str) -> Embedding:
        diag = {("L_Ok", "E8"): CONDUCTOR_DIAG, ("M", "E8"): HALF_CONDUCTOR_DIAG}[(sub, sup)]
        return Embedding(self.lat(sub), self.lat(sup), linalg.diag(diag))

    @cached_property
    def iso(self):
        return build_cubic_isometry(self.lat("M"))

    @cached_property
    def glue(self):
        return verify_isotropic_glue(self.embedding("M", "E8"))


def _type_of(ctx: Context, lat: str, norm: int) -> str:
    c = ctx.cert(lat, norm)
    if isinstance(c, NotARootSystem):
        return f"refused:{c.stage}"
    return c.type_label


def _report(ctx: Context, lat: str, norm: int, keys) -> dict:
    r = analyze(ctx.shell(lat, norm))
    full = {"antipodal": r.is_antipodal, "rank": r.rank, "centroid_zero": r.centroid_zero,
            "design2": r.design2 is not None}
    return {k: full[k] for k in keys}


def _convolution_ok(ctx: Context, name: str, max_norm: int) -> bool:
    blocks = {"A2xA2": ("A2", "A2"), "A2^4": ("A2xA2", "A2xA2"), "D4xD4": ("D4", "D4")}[name]
    a, b = (theta_prefix(ctx.lat(x), max_norm).coefficients for x in blocks)
    summed = direct_sum(ctx.lat(blocks[0]), ctx.lat(blocks[1]))
    if summed.gram != ctx.lat(name).gram:
        return False
    direct = [len(ctx.shell(name, n)) for n in range(1, max_norm + 1)]
    conv = [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(1, max_norm + 1)]
    return direct == conv


def _cartan_in_reference_order(ctx: Context, expected) -> object:
    c = ctx.cert("L_Ok", 8)
    if isinstance(c, NotARootSystem):
        return f"refused:{c.stage}"
    perm = cartan_permutation(c.cartan, expected)
    if perm is None:
        return [list(r) for r in c.cartan]
    return [[c.cartan[perm[i]][perm[j]] for j in range(len(perm))] for i in range(len(perm))]


def _shell_identity(ctx: Context, max_k: int) -> bool:
    for k in range(1, max_k + 1):
        big = ctx.shell("L_Ok", 4 * k).reinterpret(ctx.lat("M"))
        if big.norm != k or big.vectors != ctx.shell("M", k).vectors:
            return False
    return True


def _theta_relation(ctx: Context, max_norm: int) -> bool:
    lok = theta_prefix(ctx.lat("L_Ok"), max_norm).coefficients
    m = theta_prefix(ctx.lat("M"), max_norm // 4).coefficients
    return all(lok[n] == (m[n // 4] if n % 4 == 0 else 0) for n in range(max_norm + 1))


def _r8_agreement(ctx: Context, max_norm: int) -> bool:
    theta = theta_prefix(ctx.lat("M"), max_norm).coefficients
    return all(theta[n] == r8_oracle(n) == closed_form_count(n) for n in range(max_norm + 1))


def _orbits(ctx: Context, lat: str, norm: int) -> dict:
    shell = ctx.shell(lat, norm)
    if lat != "M":
        shell = shell.reinterpret(ctx.lat("M"))
    dec = orbit_decompose(shell, ctx.iso)
    return {",".join(map(str, sig)): n for sig, n in dec.parts}


def _isometry(ctx: Context) -> dict:
    iso = ctx.iso
    w = linalg.transpose(iso.basis_w)
    return {"gram_w": iso.gram_w(), "det_abs": abs(linalg.det(w))}


def _overlattice(ctx: Context) -> dict:
    over = ctx.glue.overlattice
    shell = enumerate_shell(over, 1)
    try:
        typ = certify_root_system(shell).type_label
    except NotARootSystem as exc:
        typ = f"refused:{exc.stage}"
    return {"even": over.is_even, "det": over.det, "s1": len(shell), "type": typ}


def _gluecode(ctx: Context) -> dict:
    code = glue_code(ctx.embedding("M", "E8"), ctx.iso)
    return {"length": code.length, "dimension": code.dimension, "min_weight": code.min_weight}


def _weights(ctx: Context) -> dict:
    code = glue_code(ctx.embedding("M", "E8"), ctx.iso)
    return {str(k): v for k, v in code.weight_enumerator().items()}


def _m_refusal(ctx: Context, lat: str, norm: int) -> str:
    c = ctx.cert(lat, norm)
    return c.stage if isinstance(c, NotARootSystem) else f"certified:{c.type_label}"


Rule = Callable[[Context, dict, object], object]

# (pattern, computation); first match wins
RULES: list[tuple[str, Rule]] = [
    (r"classical\.\w+\.s1\.count", lambda c, i, e: len(c.shell(i["lattice"], 1))),
    (r"classical\.\w+\.s1\.type", lambda c, i, e: _type_of(c, i["lattice"], 1)),
    (r"classical\.\w+\.convolution", lambda c, i, e: _convolution_ok(c, i["lattice"], i["max_norm"])),
    (r"e8\.gram\.even", lambda c, i, e: c.lat("E8").is_even),
    (r"e8\.gram\.det", lambda c, i, e: c.lat("E8").det),
    (r"e8\.s1\.count", lambda c, i, e: len(c.shell("E8", 1))),
    (r"e8\.s1\.report", lambda c, i, e: _report(c, "E8", 1, e)),
    (r"e8\.s1\.type", lambda c, i, e: _type_of(c, "E8", 1)),
    (r"e8\.s1\.orbit", lambda c, i, e: getattr(c.cert("E8", 1), "orbit_size", None)),
    (r"(e8|m)\.theta", lambda c, i, e: list(theta_prefix(c.lat(i["lattice"]), i["max_norm"]).coefficients)),
    (r"(lok|m)\.index", lambda c, i, e: c.embedding(i["sub"], i["sup"]).index),
    (r"(lok|m)\.det", lambda c, i, e: c.lat(i["lattice"]).det),
    (r"lok\.gram\.div8", lambda c, i, e: all(x % 8 == 0 for r in c.lat("L_Ok").gram for x in r)),
    (r"lok\.norm_divisibility", lambda c, i, e: norm_divisibility(c.lat("L_Ok"))),
    (r"okubo\.N\d+\.count", lambda c, i, e: len(c.shell("L_Ok", i["norm"]))),
    (r"okubo\.N\d+\.rep_gram", lambda c, i, e: gram_of_representatives(c.shell("L_Ok", i["norm"]))),
    (r"okubo\.N\d+\.type", lambda c, i, e: _type_of(c, "L_Ok", i["norm"])),
    (r"okubo\.N8\.cartan", lambda c, i, e: _cartan_in_reference_order(c, e)),
    (r"okubo\.N\d+\.orbit", lambda c, i, e: getattr(c.cert("L_Ok", i["norm"]), "orbit_size", None)),
    (r"okubo\.N\d+\.report", lambda c, i, e: _report(c, "L_Ok", i["norm"], e)),
    (r"m\.lok_is_2m", lambda c, i, e: c.lat("L_Ok").gram == tuple(tuple(4 * x for x in r) for r in c.lat("M").gram)),
    (r"m\.shell_identity", lambda c, i, e: _shell_identity(c, i["max_k"])),
    (r"m\.s1\.count", lambda c, i, e: len(c.shell("M", 1))),
    (r"lok\.theta_relation", lambda c, i, e: _theta_relation(c, i["max_norm"])),
    (r"m\.s3\.refusal", lambda c, i, e: _m_refusal(c, "M", 3)),
    (r"m\.s2\.type", lambda c, i, e: _type_of(c, "M", 2)),
    (r"cubic\.isometry", lambda c, i, e: _isometry(c)),
    (r"cubic\.r8_agreement", lambda c, i, e: _r8_agreement(c, i["max_norm"])),
    (r"orbits\.\w+\.N\d+", lambda c, i, e: _orbits(c, i["lattice"], i["norm"])),
    (r"glue\.quotient", lambda c, i, e: list(quotient(c.embedding("M", "E8")))),
    (r"glue\.discriminant_order", lambda c, i, e: discriminant(c.lat("M")).order),
    (r"glue\.isotropic", lambda c, i, e: {"isotropic": c.glue.isotropic, "glue_order": c.glue.glue_order,
                                          "maximal": c.glue.glue_order ** 2 == c.lat("M").det // c.lat("E8").det}),
    (r"glue\.overlattice", lambda c, i, e: _overlattice(c)),
    (r"gluecode\.parameters", lambda c, i, e: _gluecode(c)),
    (r"gluecode\.weight_enumerator", lambda c, i, e: _weights(c)),
]


def _rule_for(claim_id: str) -> Rule | None:
    for pattern, rule in RULES:
        if re.fullmatch(pattern, claim_id):
            return rule
    return None


def run_claim(ctx: Context, entry: dict) -> Certificate:
    cid = entry["claim_id"]
    inputs = entry.get("inputs", {})
    expected = entry["expected"]
    rule = _rule_for(cid)
    computed, error = None, None
    if rule is None:
        error = "no computation registered for this claim"
    else:
        try:
            computed = _normalize(rule(ctx, inputs, expected))
        except Exception as exc:  # a crashing check is a failed certificate
            error = f"{type(exc).__name__}: {exc}"
    verdict = "pass" if error is None and computed == expected else "fail"
    return Certificate(cid, inputs, computed, expected, entry["citation"], verdict, error)


def audit_all(only: str | None = None,
              overrides: Mapping[str, GramLattice] | None = None,
              manifest: list[dict] | None = None) -> list[Certificate]:
    """Run every manifest claim (or those whose id starts with ``only``), in manifest order."""
    ctx = Context(overrides)
    entries = manifest if manifest is not None else load_manifest()
    return [run_claim(ctx, e) for e in entries if only is None or e["claim_id"].startswith(only)]


def certificate_stream(certs) -> str:
    return "".join(c.to_json() + "\n" for c in certs)


def render_certificates(certs) -> str:
    width = max((len(c.claim_id) for c in certs), default=10)
    lines = [f"{c.verdict.upper():4}  {c.claim_id:<{width}}  {_short(c.computed)}" for c in certs]
    passed = sum(c.passed for c in certs)
    lines.append(f"{passed}/{len(certs)} certificates pass")
    return "\n".join(lines) + "\n"


def _short(value, limit: int = 60) -> str:
    s = json.dumps(value, separators=(",", ":"))
    return s if len(s) <= limit else s[: limit - 3] + "..."


# -- tables -------------------------------------------------------------------------

CLASSICAL_ROWS = (
    ("Integers", "integers", "A1"),
    ("Eisenstein", "eisenstein", "A2"),
    ("Gaussian", "gaussian", "square"),
    ("Hamilton", "hamilton", "cubic4"),
    ("Hybrid", "hybrid", "A2xA2"),
    ("Hurwitz", "hurwitz", "D4"),
    ("Cayley-Graves", "cayley_graves", "cubic8"),
    ("Comp. Eisenstein", "comp_eisenstein", "A2^4"),
    ("Coupled Hurwitz", "coupled_hurwitz", "D4xD4"),
    ("Coxeter-Dickson", "coxeter_dickson", "E8"),
)

TABLES = ("classical", "okubo-shells", "lattice-chain", "shell-polytopes")


def _expected_lookup() -> dict:
    return {e["claim_id"]: e["expected"] for e in load_manifest()}


def _format(headers, rows) -> str:
    cols = list(zip(headers, *rows))
    widths = [max(len(str(x)) for x in col) for col in cols]
    out = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths)),
           "  ".join("-" * w for w in widths)]
    out += ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)) for r in rows]
    return "\n".join(out) + "\n"


def table_rows(which: str, ctx: Context | None = None) -> tuple[list[str], list[list]]:
    ctx = ctx or Context()
    exp = _expected_lookup()
    if which == "classical":
        headers = ["name", "lattice", "#S1", "expected", "first-shell type"]
        rows = []
        for name, key, lat in CLASSICAL_ROWS:
            rows.append([name, lat, len(ctx.shell(lat, 1)), exp[f"classical.{key}.s1.count"], _type_of(ctx, lat, 1)])
        return headers, rows
    if which == "okubo-shells":
        headers = ["N", "<x,x>", "#S_N(L_Ok)", "expected", "rank", "interpretation"]
        rows = []
        for n in range(1, 17):
            shell = ctx.shell("L_Ok", n)
            if len(shell):
                rank = analyze(shell).rank
                t = _type_of(ctx, "L_Ok", n)
                interp = t if not t.startswith("refused") else "unclassified (" + t.split(":")[1] + ")"
            else:
                rank, interp = 0, "empty"
            rows.append([n, 2 * n, len(shell), exp[f"okubo.N{n}.count"], rank, interp])
        return headers, rows
    if which == "lattice-chain":
        headers = ["lattice", "index in E8", "det", "first non-empty shell"]
        rows = []
        for name, idx in (("L_Ok", ctx.embedding("L_Ok", "E8").index),
                          ("M", ctx.embedding("M", "E8").index),
                          ("E8", 1)):
            lat = ctx.lat(name)
            theta = theta_prefix(lat, 4).coefficients
            first = next(n for n in range(1, 5) if theta[n])
            rows.append([name, idx, lat.det, f"{theta[first]} vectors at N={first}"])
        glued = ctx.glue.overlattice
        rows.append(["M+glue", 1, glued.det, f"{len(enumerate_shell(glued, 1))} vectors at N=1"])
        return headers, rows
    if which == "shell-polytopes":
        headers = ["lattice", "N", "vertices", "type", "orbits (cubic coordinates of M)"]
        rows = []
        for lat, n in (("E8", 1), ("L_Ok", 4), ("L_Ok", 8), ("L_Ok", 12), ("L_Ok", 16),
                       ("M", 1), ("M", 2), ("M", 3), ("M", 4)):
            shell = ctx.shell(lat, n)
            t = _type_of(ctx, lat, n)
            t = "-" if t.startswith("refused") else t
            orbits = "-" if lat == "E8" else " + ".join(
                f"({k})[{v}]" for k, v in _orbits(ctx, lat, n).items())
            rows.append([lat, n, len(shell), t, orbits])
        return headers, rows
    raise ValueError(f"unknown table {which!r}; choose from {', '.join(TABLES)}")


def emit_table(which: str, ctx: Context | None = None) -> str:
    headers, rows = table_rows(which, ctx)
    return _format(headers, rows)
