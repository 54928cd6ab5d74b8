"""Command-line front end: ``latshell <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import audit
from .analysis import analyze
from .cubic import build_cubic_isometry, orbit_decompose
from .glue import glue_code, verify_isotropic_glue
from .lattice import LatticeError, builtin_embedding, resolve
from .roots import NotARootSystem, certify_root_system
from .shells import enumerate_shell, theta_prefix


def _emit(record: dict, fmt: str, text: str | None = None) -> None:
    if fmt == "json" or text is None:
        print(json.dumps(record, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def cmd_audit(args) -> int:
    certs = audit.audit_all(only=args.only)
    stream = audit.certificate_stream(certs)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "certificates.jsonl").write_text(stream, encoding="utf-8")
        (out / "certificates.txt").write_text(audit.render_certificates(certs), encoding="utf-8")
    if args.format == "text":
        sys.stdout.write(audit.render_certificates(certs))
    else:
        sys.stdout.write(stream)
    return 0 if certs and all(c.passed for c in certs) else 1


def cmd_table(args) -> int:
    sys.stdout.write(audit.emit_table(args.which))
    return 0


def cmd_shell(args) -> int:
    lat = resolve(args.lattice)
    shell = enumerate_shell(lat, args.norm)
    rec = {"lattice": lat.name, "norm": shell.norm, "count": len(shell)}
    if args.count_only:
        _emit(rec, args.format, f"#S_{shell.norm}({lat.name}) = {len(shell)}")
        return 0
    rec["vectors"] = [list(v) for v in shell]
    lines = [f"#S_{shell.norm}({lat.name}) = {len(shell)}"]
    lines += [" ".join(f"{c:>3}" for c in v) for v in shell]
    _emit(rec, args.format, "\n".join(lines))
    return 0


def cmd_analyze(args) -> int:
    lat = resolve(args.lattice)
    report = analyze(enumerate_shell(lat, args.norm))
    _emit(report.as_record(), "json")
    return 0


def cmd_roots(args) -> int:
    lat = resolve(args.lattice)
    shell = enumerate_shell(lat, args.norm)
    try:
        cert = certify_root_system(shell)
    except NotARootSystem as exc:
        _emit({"lattice": lat.name, "norm": args.norm, "refused": exc.stage, "detail": exc.detail}, "json")
        return 1
    _emit(cert.as_record(), "json")
    return 0


def cmd_theta(args) -> int:
    lat = resolve(args.lattice)
    theta = theta_prefix(lat, args.max_norm)
    _emit({"lattice": lat.name, "max_norm": args.max_norm, "coefficients": list(theta.coefficients)},
          args.format, " ".join(map(str, theta.coefficients)))
    return 0


def cmd_orbits(args) -> int:
    lat = resolve(args.lattice)
    model = resolve(args.model)
    iso = build_cubic_isometry(model)
    shell = enumerate_shell(lat, args.norm)
    if lat.gram != model.gram:
        shell = shell.reinterpret(model)
    dec = orbit_decompose(shell, iso)
    rec = dec.as_record()
    rec["lattice"] = lat.name
    rec["norm"] = args.norm
    _emit(rec, "json")
    return 0


def cmd_glue(args) -> int:
    res = verify_isotropic_glue(builtin_embedding(args.sub, args.sup))
    _emit(res.as_record(), "json")
    return 0


def cmd_gluecode(args) -> int:
    emb = builtin_embedding(args.sub, args.sup)
    code = glue_code(emb, build_cubic_isometry(emb.sub))
    _emit(code.as_record(), "json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latshell", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("audit", help="run the certificate battery")
    a_sub = a.add_subparsers(dest="action", required=True)
    run = a_sub.add_parser("run")
    run.add_argument("--only", help="claim-id prefix filter")
    run.add_argument("--out", help="directory for certificates.jsonl / certificates.txt")
    run.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    run.set_defaults(func=cmd_audit)

    t = sub.add_parser("table", help="render a table from live computation")
    t.add_argument("which", choices=audit.TABLES)
    t.set_defaults(func=cmd_table)

    def lattice_norm(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--lattice", required=True, help="builtin name or @spec.json")
        sp.add_argument("--norm", type=int, required=True)
        sp.set_defaults(func=func)
        return sp

    s = lattice_norm("shell", cmd_shell, "enumerate S_N")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--format", choices=("text", "json"), default="text")
    lattice_norm("analyze", cmd_analyze, "antipodality / rank / centroid / design report")
    lattice_norm("roots", cmd_roots, "root-system certificate or refusal")
    o = lattice_norm("orbits", cmd_orbits, "signed-permutation orbit decomposition")
    o.add_argument("--model", default="M", help="lattice carrying the cubic isometry")

    th = sub.add_parser("theta", help="theta-series prefix")
    th.add_argument("--lattice", required=True)
    th.add_argument("--max-norm", type=int, required=True)
    th.add_argument("--format", choices=("text", "json"), default="text")
    th.set_defaults(func=cmd_theta)

    for name, func in (("glue", cmd_glue), ("gluecode", cmd_gluecode)):
        g = sub.add_parser(name)
        g.add_argument("--sub", required=True)
        g.add_argument("--sup", required=True)
        g.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LatticeError, ValueError) as exc:
        print(f"latshell: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
