"""Command line front end: parse a presentation, run one analysis, report.

Exit codes: 0 success (for ``condition-k``: the condition holds), 1 input
or validation error, 2 internal invariant violation, 3 the condition-k
analysis ran but the condition fails.  JSON goes to stdout and is byte
identical for identical input and flags; diagnostics go to stderr with
``origin:line:col`` prefixes where available.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .atoms import build_quiver, compute_atoms, export_dot
from .condition_k import ONE, condition_k
from .ideals import enumerate_admissible_pairs
from .ktheory import SelfCheckError, k_groups
from .model import Infinite, Ultragraph
from .parser import ParseError, SourceFile, parse_ultragraph

DEFAULT_ATOM_WARN = 20


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; that code is reserved
    # for internal invariant violations here, so route through exit 1
    def error(self, message: str):
        raise UsageError(message)


@dataclass
class Config:
    command: str
    path: str
    fmt: str
    output: str | None
    atom_warn: int
    hasse: bool
    verbose: bool


class Palette:
    """ANSI styling gated by ULTRA_COLOR (auto, always, never)."""

    def __init__(self, stream, mode: str):
        if mode == "always":
            self.on = True
        elif mode == "never":
            self.on = False
        else:
            self.on = bool(getattr(stream, "isatty", lambda: False)())

    def paint(self, text: str, code: str) -> str:
        return f"\x1b[{code}m{text}\x1b[0m" if self.on else text

    def good(self, text: str) -> str:
        return self.paint(text, "32")

    def bad(self, text: str) -> str:
        return self.paint(text, "31")

    def head(self, text: str) -> str:
        return self.paint(text, "1")


def build_parser() -> _ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="input .ug file, or - for stdin")
    common.add_argument("-f", "--format", dest="fmt",
                        choices=["human", "json", "dot"], default="human")
    common.add_argument("-o", "--output", metavar="PATH",
                        help="write the result to PATH instead of stdout")
    common.add_argument("--max-atoms", type=int, metavar="N",
                        default=DEFAULT_ATOM_WARN,
                        help="warn when the edge count exceeds N "
                             "(atom count is exponential in it)")
    common.add_argument("-v", "--verbose", action="store_true")

    top = _ArgumentParser(prog="ultra",
                          description="ultragraph algebra invariants")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("check", parents=[common],
                   help="parse and validate a presentation")
    sub.add_parser("info", parents=[common],
                   help="vertices, edges, regular set")
    sub.add_parser("atoms", parents=[common],
                   help="atom decomposition of the ranges")
    sub.add_parser("quiver", parents=[common],
                   help="the quiver over the spectrum (json or dot)")
    sub.add_parser("ktheory", parents=[common], help="K0 and K1")
    ideals = sub.add_parser("ideals", parents=[common],
                            help="admissible pairs of the ideal lattice")
    ideals.add_argument("--hasse", action="store_true",
                        help="emit the lattice as a DOT Hasse diagram")
    sub.add_parser("condition-k", parents=[common],
                   help="first-return path verdicts per vertex")
    return top


def _load(cfg: Config) -> Ultragraph:
    if cfg.path == "-":
        src = SourceFile(sys.stdin.read(), "<stdin>")
    else:
        src = SourceFile.load(cfg.path)
    g = parse_ultragraph(src)
    if cfg.verbose:
        print(
            f"parsed {src.origin}: {len(g.universe.named)} named, "
            f"{len(g.universe.blocks)} blocks, {len(g.edges)} edges",
            file=sys.stderr,
        )
    return g


def _emit(cfg: Config, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=2)


def _warn_atoms(cfg: Config, g: Ultragraph) -> None:
    n = len(g.edges)
    if n > cfg.atom_warn:
        print(
            f"warning: {n} edges can produce up to 2^{n} - 1 atoms; "
            "this may be slow",
            file=sys.stderr,
        )


def _mult_str(m) -> str:
    return "inf" if isinstance(m, Infinite) else str(m)


# -- command bodies: each returns (text, exit code) ---------------------------

def _cmd_check(cfg: Config, g: Ultragraph, pal: Palette):
    doc = {
        "ok": True,
        "name": g.name,
        "vertices": len(g.universe.named),
        "blocks": len(g.universe.blocks),
        "edges": len(g.edges),
    }
    if cfg.fmt == "json":
        return _json(doc), 0
    label = g.name or "(unnamed)"
    return (
        f"{pal.good('ok')}: {label}, {doc['vertices']} named vertices, "
        f"{doc['blocks']} blocks, {doc['edges']} edges",
        0,
    )


def _cmd_info(cfg: Config, g: Ultragraph, pal: Palette):
    key = g.universe.sort_key
    regular = sorted(g.regular_vertices(), key=key)
    doc = {
        "name": g.name,
        "vertices": list(g.universe.named),
        "blocks": list(g.universe.blocks),
        "edges": [
            {
                "id": e.id,
                "source": str(e.source),
                "range": e.range.to_json(),
                "multiplicity": "inf" if isinstance(e.multiplicity, Infinite)
                else e.multiplicity,
            }
            for e in g.edges
        ],
        "regular": [str(v) for v in regular],
    }
    if cfg.fmt == "json":
        return _json(doc), 0
    lines = [pal.head(f"ultragraph {g.name}".rstrip())]
    lines.append("vertices: " + (", ".join(g.universe.named) or "(none)"))
    if g.universe.blocks:
        lines.append("blocks: " + ", ".join(g.universe.blocks))
    lines.append("edges:")
    for e in g.edges:
        mult = "" if e.multiplicity == 1 else f"[{_mult_str(e.multiplicity)}]"
        lines.append(f"  {e.id}{mult}: {e.source} -> {e.range}")
    lines.append("regular: " + (", ".join(str(v) for v in regular) or "(none)"))
    return "\n".join(lines), 0


def _cmd_atoms(cfg: Config, g: Ultragraph, pal: Palette):
    _warn_atoms(cfg, g)
    table = compute_atoms(g)
    if cfg.fmt == "json":
        return _json(table.to_json()), 0
    lines = [pal.head(f"atoms over {table.n} edges:")]
    for w in table.sorted_omegas():
        flag = "infinite" if table.is_infinite(w) else "finite"
        lines.append(
            "  [{}] {}  ({})".format(
                "".join(map(str, w)), table.atoms[w], flag
            )
        )
    lines.append(
        "delta: " + (", ".join("".join(map(str, w)) for w in table.delta) or "(none)")
    )
    return "\n".join(lines), 0


def _cmd_quiver(cfg: Config, g: Ultragraph, pal: Palette):
    _warn_atoms(cfg, g)
    q = build_quiver(g)
    if cfg.fmt == "dot":
        return export_dot(q), 0
    if cfg.fmt == "json":
        return _json(q.to_json()), 0
    key = g.universe.sort_key
    lines = [pal.head("quiver over the spectrum")]
    lines.append(f"discrete part: {q.discrete}")
    for c in q.atom_components:
        lines.append(
            "  atom [{}]: {} plus boundary point".format(
                "".join(map(str, c.omega)), c.vertices
            )
        )
    lines.append("edge fibers:")
    for c in q.edge_components:
        mult = "" if c.multiplicity == 1 else f" x{_mult_str(c.multiplicity)}"
        boundary = ", ".join(sorted("".join(map(str, w)) for w in c.boundary))
        tail = f" + boundary {{{boundary}}}" if boundary else ""
        lines.append(f"  {c.edge_id}{mult}: {c.source} -> {c.vertices}{tail}")
    lines.append(
        "regular: "
        + (", ".join(str(v) for v in sorted(q.regular, key=key)) or "(none)")
    )
    return "\n".join(lines), 0


def _cmd_ktheory(cfg: Config, g: Ultragraph, pal: Palette):
    _warn_atoms(cfg, g)
    kg = k_groups(g)
    if cfg.fmt == "json":
        return _json(kg.to_json()), 0
    return str(kg), 0


def _cmd_ideals(cfg: Config, g: Ultragraph, pal: Palette):
    _warn_atoms(cfg, g)
    lattice = enumerate_admissible_pairs(g)
    if cfg.hasse or cfg.fmt == "dot":
        return lattice.export_hasse_dot(), 0
    if cfg.fmt == "json":
        return _json(lattice.to_json()), 0
    key = g.universe.sort_key
    lines = [pal.head(f"admissible pairs ({lattice.label}):")]
    for i, p in enumerate(lattice.pairs):
        vs = ", ".join(str(v) for v in sorted(p.v, key=key))
        lines.append(f"  {i}: {p.ideal} V={{{vs}}}")
    return "\n".join(lines), 0


def _cmd_condition_k(cfg: Config, g: Ultragraph, pal: Palette):
    report = condition_k(g)
    code = 0 if report.overall else 3
    if cfg.fmt == "json":
        return _json(report.to_json()), code
    lines = [pal.head("first-return paths:")]
    for item in report.verdicts:
        word = pal.bad(item.verdict) if item.verdict == ONE else item.verdict
        parts = ["  {}: {}".format(item.vertex, word)]
        if item.witnesses:
            parts.append(
                "  (" + "; ".join(" ".join(w) for w in item.witnesses) + ")"
            )
        if item.cycle:
            parts.append("  cycle: " + " ".join(item.cycle))
        lines.append("".join(parts))
    verdict = pal.good("holds") if report.overall else pal.bad("FAILS")
    lines.append(f"Condition (K): {verdict}")
    return "\n".join(lines), code


_COMMANDS = {
    "check": _cmd_check,
    "info": _cmd_info,
    "atoms": _cmd_atoms,
    "quiver": _cmd_quiver,
    "ktheory": _cmd_ktheory,
    "ideals": _cmd_ideals,
    "condition-k": _cmd_condition_k,
}


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(f"ultra: error: {exc}", file=sys.stderr)
        return 1
    cfg = Config(
        command=ns.command,
        path=ns.path,
        fmt=ns.fmt,
        output=ns.output,
        atom_warn=ns.max_atoms,
        hasse=getattr(ns, "hasse", False),
        verbose=ns.verbose,
    )
    pal = Palette(sys.stdout, os.environ.get("ULTRA_COLOR", "auto"))
    origin = "<stdin>" if cfg.path == "-" else cfg.path
    try:
        g = _load(cfg)
    except ParseError as exc:
        print(f"{origin}:{exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ultra: error: {exc}", file=sys.stderr)
        return 1
    try:
        text, code = _COMMANDS[cfg.command](cfg, g, pal)
    except (ValueError, KeyError) as exc:
        print(f"{origin}: error: {exc}", file=sys.stderr)
        return 1
    except (SelfCheckError, AssertionError) as exc:
        print(f"ultra: internal invariant violation: {exc}", file=sys.stderr)
        return 2
    _emit(cfg, text)
    return code


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
