"""Command-line entry point.

Every subcommand writes deterministic text.  Failures print
``error: <Category>: <message>`` on stderr and exit with the category's
code (see :mod:`weyljacobi.errors`).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import serialize
from .blocks import builtin_generators, phi_R
from .errors import JacobiError, NotApplicable, ParseError, ValidationFailed
from .jacobian import jacobian
from .rootsystems import all_types, catalog, catalog_record, verify_catalog
from .series import DEFAULT_MAX_TERMS, check_elliptic, check_group_invariance
from .structure import check_free_criterion, decompose, e8_pipeline, round_trip, verify_wirthmuller

CACHE_ENV = "WEYLJACOBI_CACHE"


@dataclass
class RunConfig:
    q_order: int = 2
    root_system: str | None = None
    rank: int | None = None
    out: str | None = None
    max_terms: int = DEFAULT_MAX_TERMS
    declared_M: int = 2
    cache_dir: str | None = None

    def __post_init__(self):
        if self.q_order < 1:
            raise ParseError("--q-order must be at least 1")
        if self.max_terms < 1:
            raise ParseError("--max-terms must be positive")

    @property
    def trunc24(self) -> int:
        return 24 * self.q_order

    def system(self):
        if not self.root_system:
            raise ParseError("--root-system is required")
        return catalog(self.root_system, self.rank)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cached(cfg: RunConfig, name: str, build):
    """Load ``name`` from the cache directory, or build and store it."""
    if not cfg.cache_dir:
        return build()
    path = Path(cfg.cache_dir) / name
    if path.exists():
        return serialize.load(path)
    obj = build()
    path.parent.mkdir(parents=True, exist_ok=True)
    serialize.dump(obj, path)
    return obj


def _builtins(cfg: RunConfig, R):
    t = cfg.trunc24
    if cfg.cache_dir:
        paths = sorted(Path(cfg.cache_dir).glob(f"gen_{R.name}_{t}_*.jac"))
        if len(paths) == R.rank + 1:
            return [serialize.load(p) for p in paths]
    try:
        forms = builtin_generators(R, t)
    except NotImplementedError as exc:
        raise NotApplicable(str(exc)) from None
    if cfg.cache_dir:
        Path(cfg.cache_dir).mkdir(parents=True, exist_ok=True)
        for j, f in enumerate(forms, start=1):
            serialize.dump(f, Path(cfg.cache_dir) / f"gen_{R.name}_{t}_{j}.jac")
    return forms


def cmd_catalog(cfg: RunConfig, args) -> int:
    systems = [cfg.system()] if cfg.root_system else [catalog(t) for t in all_types()]
    lines = []
    ok = True
    for R in systems:
        rep = verify_catalog(R)
        ok &= rep.passed
        lines.append(catalog_record(R))
        lines.extend("  " + s for s in rep.lines())
    _emit("\n".join(lines) + "\n", cfg.out)
    if not ok:
        raise ValidationFailed("catalog verification failed")
    return 0


def cmd_phi(cfg: RunConfig, args) -> int:
    R = cfg.system()
    form = _cached(cfg, f"phi_{R.name}_{cfg.trunc24}.jac", lambda: phi_R(R, cfg.trunc24, cfg.max_terms))
    _emit(serialize.dumps(form), cfg.out)
    return 0


def cmd_generators(cfg: RunConfig, args) -> int:
    R = cfg.system()
    forms = _builtins(cfg, R)
    if cfg.out:
        d = Path(cfg.out)
        d.mkdir(parents=True, exist_ok=True)
        for j, f in enumerate(forms, start=1):
            serialize.dump(f, d / f"{R.name}_X{j}.jac")
        sys.stdout.write("".join(f"{d / f'{R.name}_X{j}.jac'}\n" for j in range(1, len(forms) + 1)))
    else:
        sys.stdout.write("".join(serialize.dumps(f) for f in forms))
    return 0


def cmd_jacobian(cfg: RunConfig, args) -> int:
    forms = [serialize.load(p) for p in args.files]
    _emit(serialize.dumps(jacobian(forms, cfg.max_terms)), cfg.out)
    return 0


def cmd_verify_free(cfg: RunConfig, args) -> int:
    R = cfg.system()
    cands = [serialize.load(p) for p in args.files] if args.files else None
    if cands is None and R.name != "E8":
        cands = _builtins(cfg, R)
    cert = verify_wirthmuller(R, cands, cfg.trunc24, cfg.max_terms)
    _emit(cert.text(), cfg.out)
    return 0


def cmd_decompose(cfg: RunConfig, args) -> int:
    R = cfg.system()
    phi = serialize.load(args.form)
    gens = [serialize.load(p) for p in args.generators] if args.generators else _builtins(cfg, R)
    sysm = check_free_criterion(R, gens, allow_g=args.allow_g, declared_M=cfg.declared_M, max_terms=cfg.max_terms)
    res = decompose(phi, sysm, cfg.max_terms)
    lines = res.lines() + [f"round_trip {'ok' if round_trip(phi, res, sysm) else 'FAILED'}"]
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_check(cfg: RunConfig, args) -> int:
    form = serialize.load(args.form)
    group = cfg.system().weyl_generators if cfg.root_system else None
    reports = [check_elliptic(form), check_group_invariance(form, group)]
    lines = [f"form weight={form.weight} index={form.index} character={form.character} trunc24={form.trunc24}"]
    for r in reports:
        lines.extend(r.lines())
    _emit("\n".join(lines) + "\n", cfg.out)
    if not all(r.passed for r in reports):
        raise ValidationFailed("; ".join(r.check for r in reports if not r.passed) + " violated")
    return 0


def cmd_e8(cfg: RunConfig, args) -> int:
    forms = [serialize.load(p) for p in args.files]
    rep = e8_pipeline(forms, cfg.declared_M, cfg.max_terms)
    _emit("\n".join(rep.lines()) + "\n", cfg.out)
    return 0


COMMANDS = {
    "catalog": (cmd_catalog, "verify and list the root-system catalog"),
    "phi": (cmd_phi, "write the theta block of a root system"),
    "generators": (cmd_generators, "write the built-in generators (A1, B_l)"),
    "jacobian": (cmd_jacobian, "Jacobian of l+1 form files"),
    "verify-free": (cmd_verify_free, "free-generation certificate"),
    "decompose": (cmd_decompose, "express a form in the generators"),
    "check": (cmd_check, "elliptic and invariance report for a form file"),
    "e8": (cmd_e8, "obstruction pipeline for nine E8 form files"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--root-system", "-R", help="tag such as A1, B3, E8 (or a letter with --rank)")
    common.add_argument("--rank", type=int)
    common.add_argument("--q-order", type=int, default=2, help="number of q-powers kept (default 2)")
    common.add_argument("--out", "-o", help="output file (directory for 'generators')")
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS, help="cap on terms in any product")
    common.add_argument("--declared-M", type=int, default=2, help="minimal non-polynomial index (g-regime)")

    p = argparse.ArgumentParser(prog="weyljacobi", description="Weyl-invariant weak Jacobi forms")
    sub = p.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h) in COMMANDS.items()}
    parsers["jacobian"].add_argument("files", nargs="+")
    parsers["verify-free"].add_argument("files", nargs="*")
    parsers["decompose"].add_argument("form")
    parsers["decompose"].add_argument("--generators", nargs="+")
    parsers["decompose"].add_argument("--allow-g", action="store_true", help="accept a non-constant quotient")
    parsers["check"].add_argument("form")
    parsers["e8"].add_argument("files", nargs=9)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            q_order=args.q_order,
            root_system=args.root_system,
            rank=args.rank,
            out=args.out,
            max_terms=args.max_terms,
            declared_M=args.declared_M,
            cache_dir=os.environ.get(CACHE_ENV) or None,
        )
        return COMMANDS[args.command][0](cfg, args)
    except JacobiError as exc:
        sys.stderr.write(f"error: {exc.category}: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
