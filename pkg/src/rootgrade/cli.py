"""Command-line front end: ``rootgrade {validate,hf,build,verify,ucex,export}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import linalg as la
from .coords import CoordinateQuadruple, catalog, catalog_names, loads_quadruple, validate_quadruple
from .errors import NotInHF, NotUniform, QuadrupleFormatError, RootGradeError, UnknownName
from .extensions import universal_extension
from .graded import GradedAlgebra, check_structure
from .homology import BB, check_uniform
from .linalg import Subspace
from .structure import loads as loads_structure
from .symplectic import IndexData

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Malformed or missing input; reported with exit status 2."""


@dataclass
class RunConfig:
    command: str
    quadruple: Optional[str] = None
    n: Optional[int] = None
    ell: int = 4
    K: str = "zero"
    format: str = "text"
    structure: Optional[str] = None


class Report:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.items: List[Tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "pass" if value else "FAIL"
        self.items.append((key, str(value)))

    def render(self) -> str:
        sep = "=" if self.fmt == "machine" else ": "
        return "".join(f"{k}{sep}{v}\n" for k, v in self.items)


def threads() -> int:
    """ROOTGRADE_THREADS caps parallelism; all computations here run in one thread."""
    raw = os.environ.get("ROOTGRADE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"ROOTGRADE_THREADS must be an integer, got {raw!r}") from None


def load_quadruple(spec: Optional[str]) -> CoordinateQuadruple:
    if not spec:
        raise InputError("--quadruple is required")
    path = Path(spec)
    if path.is_file():
        try:
            return loads_quadruple(path.read_text(encoding="utf-8"), path.stem)
        except QuadrupleFormatError as exc:
            raise InputError(f"{path}: {exc}") from None
    try:
        return catalog(spec)
    except UnknownName:
        raise InputError(f"{spec!r} is neither a file nor one of: {', '.join(catalog_names())}") from None


def load_K(spec: str, bb: BB) -> Subspace:
    if spec == "zero":
        return la.zero_space(bb.dim)
    if spec == "hf":
        return bb.hf()
    path = Path(spec)
    if not path.is_file():
        raise InputError(f"--K must be 'zero', 'hf' or a basis file; {spec!r} not found")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        rows = data["basis"] if isinstance(data, dict) else data
        vecs = []
        for r, row in enumerate(rows):
            if len(row) != bb.dim:
                raise InputError(f"{path}: $.basis[{r}] has length {len(row)}, expected {bb.dim}")
            vecs.append(la.vec(row))
    except InputError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return la.span(vecs, bb.dim)


def _index(cfg: RunConfig) -> IndexData:
    if cfg.n is None:
        raise InputError("--n is required")
    if not (cfg.n >= cfg.ell >= 4):
        raise InputError("need n >= ell >= 4")
    return IndexData(cfg.n, cfg.ell)


def cmd_validate(cfg: RunConfig, rep: Report) -> int:
    q = load_quadruple(cfg.quadruple)
    bad = validate_quadruple(q)
    rep.add("kind", q.kind)
    rep.add("dim_a", q.a.dim)
    rep.add("dim_C", q.C.dim)
    rep.add("violations", len(bad))
    for k, v in enumerate(bad):
        rep.add(f"violation[{k}]", v)
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_hf(cfg: RunConfig, rep: Report) -> int:
    if cfg.ell < 1:
        raise InputError("ell must be positive")
    q = load_quadruple(cfg.quadruple)
    bb = BB(q, cfg.ell)
    hf = bb.hf()
    K = load_K(cfg.K, bb)
    rep.add("dim_b", bb.N)
    rep.add("dim_bxb", bb.N * bb.N)
    rep.add("dim_K", bb.K.rank)
    rep.add("dim_bb", bb.dim)
    rep.add("dim_HF", hf.rank)
    rep.add("HF_equals_bb", "yes" if hf.rank == bb.dim else "no")
    rep.add("dim_K_sub", K.rank)
    try:
        res = check_uniform(K, bb, hf)
    except NotInHF:
        rep.add("K_sub_in_HF", False)
        return EXIT_FAIL
    rep.add("K_sub_in_HF", True)
    rep.add("uniform", res.ok)
    if not res.ok:
        rep.add("uniform_witness", _vec_str(res.witness))
    return EXIT_OK if res.ok else EXIT_FAIL


def _vec_str(v) -> str:
    return " + ".join(f"{x}*{k}" for k, x in sorted(v.items())) or "0"


def _assemble(cfg: RunConfig, rep: Report) -> Optional[GradedAlgebra]:
    q = load_quadruple(cfg.quadruple)
    idx = _index(cfg)
    bad = validate_quadruple(q)
    if bad:
        rep.add("quadruple", f"invalid ({bad[0]})")
        return None
    bb = BB(q, idx.ell)
    K = load_K(cfg.K, bb)
    try:
        return GradedAlgebra(q, idx, K, bb=bb)
    except (NotUniform, NotInHF) as exc:
        rep.add("uniform", f"FAIL {exc}")
        return None


def cmd_build(cfg: RunConfig, rep: Report) -> int:
    alg = _assemble(cfg, rep)
    if alg is None:
        return EXIT_FAIL
    for name, d in alg.summand_dims().items():
        rep.add(f"dim_{name}", d)
    rep.add("dim", alg.dim)
    alg.lie
    rep.add("nonzero_brackets", sum(1 for _ in alg.lie.nonzero_pairs()))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, rep: Report) -> int:
    if cfg.structure:
        path = Path(cfg.structure)
        if not path.is_file():
            raise InputError(f"{path} not found")
        try:
            L = loads_structure(path.read_text(encoding="utf-8"))
        except QuadrupleFormatError as exc:
            raise InputError(f"{path}: {exc}") from None
    else:
        alg = _assemble(cfg, rep)
        if alg is None:
            return EXIT_FAIL
        L = alg.lie
    report = check_structure(L)
    rep.add("dim", L.dim)
    for c in report.checks:
        rep.add(c.name, c.ok if c.ok else f"FAIL witness={c.witness}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_ucex(cfg: RunConfig, rep: Report) -> int:
    q = load_quadruple(cfg.quadruple)
    idx = _index(cfg)
    bb = BB(q, idx.ell)
    K = load_K(cfg.K, bb)
    try:
        res = check_uniform(K, bb)
    except NotInHF:
        rep.add("K_sub_in_HF", False)
        return EXIT_FAIL
    if not res.ok:
        rep.add("uniform", False)
        return EXIT_FAIL
    u = universal_extension(q, idx, K, bb=bb)
    rep.add("dim_cover", u.cover.dim)
    rep.add("dim_base", u.base.dim)
    rep.add("dim_kernel", u.kernel.rank)
    rep.add("dim_center_cover", u.center_dim)
    for c in u.checks:
        rep.add(c.name, c.ok if c.ok else f"FAIL witness={c.witness}")
    return EXIT_OK if u.ok else EXIT_FAIL


def cmd_export(cfg: RunConfig, rep: Report) -> Optional[str]:
    alg = _assemble(cfg, rep)
    if alg is None:
        return None
    return alg.lie.dumps()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootgrade", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("validate", "hf", "build", "verify", "ucex", "export"):
        s = sub.add_parser(name)
        s.add_argument("--quadruple", help="catalog name or JSON file (file wins)")
        s.add_argument("--format", choices=("text", "machine"), default="text")
        if name != "validate":
            s.add_argument("--ell", type=int, default=4)
            s.add_argument("--K", default="zero", help="zero, hf, or a JSON basis file")
        if name in ("build", "verify", "ucex", "export"):
            s.add_argument("--n", type=int)
        if name == "verify":
            s.add_argument("--structure", help="re-ingest exported structure constants")
        if name == "export":
            s.add_argument("--output", "-o", help="write to a file instead of stdout")
    sub.add_parser("catalog")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    cfg = RunConfig(
        command=ns.command,
        quadruple=getattr(ns, "quadruple", None),
        n=getattr(ns, "n", None),
        ell=getattr(ns, "ell", 4),
        K=getattr(ns, "K", "zero"),
        format=getattr(ns, "format", "text"),
        structure=getattr(ns, "structure", None),
    )
    rep = Report(cfg.format)
    try:
        threads()
        if cfg.command == "catalog":
            sys.stdout.write("".join(f"{n}\n" for n in catalog_names()))
            return EXIT_OK
        if cfg.command == "export":
            text = cmd_export(cfg, rep)
            if text is None:
                sys.stdout.write(rep.render())
                return EXIT_FAIL
            if ns.output:
                Path(ns.output).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
            return EXIT_OK
        handler = {
            "validate": cmd_validate,
            "hf": cmd_hf,
            "build": cmd_build,
            "verify": cmd_verify,
            "ucex": cmd_ucex,
        }[cfg.command]
        status = handler(cfg, rep)
    except InputError as exc:
        sys.stdout.write(rep.render())
        sys.stderr.write(f"rootgrade: error: {exc}\n")
        return EXIT_INPUT
    except RootGradeError as exc:
        sys.stdout.write(rep.render())
        sys.stderr.write(f"rootgrade: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    sys.stdout.write(rep.render())
    return status


if __name__ == "__main__":
    sys.exit(main())
