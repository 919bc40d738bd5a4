"""``glat``: command-line front end.

Exit codes: 0 ok, 1 not gentle (or disconnected), 2 not brick gentle,
3 a verified property failed, 4 too many strings, 64 usage, 65 unparsable
input, 66 unreadable input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from . import export as ex
from .biclosed import BicLattice, enumerate_bic
from .lattice_toolkit import canonical_join_complex, ji_of_label, psi, shard_order
from .quiver_core import Disconnected, NotGentle, ParseError, is_brick_gentle, parse_quiver
from .shadows import ShadowPosets
from .strings import (
    NotFinite,
    TooManyStrings,
    enumerate_strings,
    format_label,
    format_word,
    label_to_json,
    str_of_label,
    word_to_json,
)
from .verification import SUITES, cu_suite, run_suites

EXIT_OK, EXIT_NOT_GENTLE, EXIT_NOT_BRICK, EXIT_PROPERTY, EXIT_TOO_MANY = 0, 1, 2, 3, 4
EXIT_USAGE, EXIT_PARSE, EXIT_NOINPUT = 64, 65, 66

COMMANDS = ("validate", "verify", "strings", "bic", "labels", "ji", "cjc", "shards", "torshad", "widshad")
DOT_COMMANDS = ("bic", "shards", "torshad", "widshad")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    path: str
    format: str = "text"
    out: Optional[str] = None
    suite: str = "all"
    max_strings: int = 10000
    quiet: bool = False
    corrupt_labels: bool = False

    def __post_init__(self):
        if self.format == "dot" and self.command not in DOT_COMMANDS:
            raise UsageError(f"--format dot is only available for {', '.join(DOT_COMMANDS)}")
        if self.suite != "all" and self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="glat", description="Biclosed sets, torsion shadows and wide shadows of brick gentle algebras.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="quiver file (JSON)")
    ap.add_argument("--format", choices=("text", "json", "dot"), default="text")
    ap.add_argument("--out", metavar="PATH", help="write the artifact here instead of stdout")
    ap.add_argument("--suite", default="all", choices=("all",) + SUITES, help="verification suite (verify only)")
    ap.add_argument("--max-strings", type=int, default=10000, metavar="N")
    ap.add_argument("-q", "--quiet", action="store_true", help="no counts on stderr")
    ap.add_argument("--corrupt-labels", action="store_true", help=argparse.SUPPRESS)
    return ap


# ---------------------------------------------------------------- commands


def _strings(bic: BicLattice, fmt: str) -> tuple[str, str]:
    ws = ex.sorted_words(bic.strings)
    if fmt == "json":
        return ex.dumps([word_to_json(w) for w in ws]), f"{len(ws)} strings"
    return "".join(format_word(w) + "\n" for w in ws), f"{len(ws)} strings"


def _labels(bic: BicLattice, fmt: str) -> tuple[str, str]:
    labs = ex.sorted_labels(bic.labels)
    if fmt == "json":
        body = ex.dumps([{"label": label_to_json(s), "str": word_to_json(str_of_label(bic.p, s))} for s in labs])
    else:
        body = "".join(f"{format_label(s)}\t{format_word(str_of_label(bic.p, s))}\n" for s in labs)
    return body, f"{len(labs)} labels"


def _ji(bic: BicLattice, fmt: str) -> tuple[str, str]:
    labs = ex.sorted_labels(bic.labels)
    if fmt == "json":
        body = ex.dumps([{"label": label_to_json(s), "J": ex.word_set_json(bic.J(s))} for s in labs])
    else:
        body = "".join(f"{format_label(s)}\t{ex.word_set_text(bic.J(s))}\n" for s in labs)
    return body, f"{len(labs)} join-irreducibles"


def _bic(bic: BicLattice, fmt: str) -> tuple[str, str]:
    L = bic.L
    nodes = [ex.word_set_text(bic.words(x)) for x in range(L.n)]
    edges = {c: format_label(bic.lab[c]) for c in L.covers}
    counts = f"{L.n} elements, {len(L.covers)} covers"
    if fmt == "dot":
        return ex.hasse_dot("bic", L, nodes, edges), counts
    if fmt == "json":
        data = ex.poset_json(L, [ex.word_set_json(bic.words(x)) for x in range(L.n)],
                             {c: {"added": word_to_json(bic.strings[bic.added[c]]), "label": label_to_json(bic.lab[c])}
                              for c in L.covers})
        return ex.dumps(data), counts
    return ex.poset_text(L, nodes, edges), counts


def _cjc_faces(bic: BicLattice) -> list[list]:
    by_j = {j: s for s, j in ji_of_label(bic.L, bic.lab).items()}
    faces = canonical_join_complex(bic.L, bic.lab).faces
    return [ex.sorted_labels(by_j[j] for j in f) for f in faces]


def _cjc(bic: BicLattice, fmt: str) -> tuple[str, str]:
    cjc = canonical_join_complex(bic.L, bic.lab)
    faces = sorted(_cjc_faces(bic), key=lambda f: (len(f), [format_label(s) for s in f]))
    counts = f"{len(faces)} faces, {len(cjc.vertices)} vertices, {len(cjc.edges)} edges"
    if fmt == "json":
        return ex.dumps({"flag": cjc.is_flag, "faces": [[label_to_json(s) for s in f] for f in faces]}), counts
    return "".join(ex.label_set_text(f) + "\n" for f in faces), counts


def _shards(bic: BicLattice, fmt: str) -> tuple[str, str]:
    so = shard_order(bic.L, bic.lab)
    if so.lattice is None:
        raise RuntimeError(f"shard order is not a lattice: {so.lattice_error}")
    L = so.lattice
    nodes = [ex.label_set_text(s) for s in L.elements]
    counts = f"{L.n} elements, {len(L.covers)} covers"
    if fmt == "dot":
        return ex.hasse_dot("shards", L, nodes), counts
    if fmt == "json":
        return ex.dumps(ex.poset_json(L, [ex.label_set_json(s) for s in L.elements])), counts
    return ex.poset_text(L, nodes), counts


def _shadow_poset(bic: BicLattice, fmt: str, kind: str) -> tuple[str, str]:
    sp = ShadowPosets(bic)
    L = sp.torshad if kind == "torshad" else sp.widshad
    nodes = [ex.word_set_text(s) for s in L.elements]
    counts = f"{L.n} elements, {len(L.covers)} covers"
    if fmt == "dot":
        return ex.hasse_dot(kind, L, nodes), counts
    if fmt == "json":
        return ex.dumps(ex.poset_json(L, [ex.word_set_json(s) for s in L.elements])), counts
    return ex.poset_text(L, nodes), counts


def _verify(bic: BicLattice, cfg: RunConfig) -> tuple[str, str, int]:
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    lab = None
    if cfg.corrupt_labels:
        # test hook: one label on every cover
        some = bic.lab[bic.L.covers[0]]
        lab = {c: some for c in bic.L.covers}
    checks = run_suites(bic, names, lab)
    failed = [c for c in checks if not c.ok]
    summary = f"{len(checks) - len(failed)}/{len(checks)} checks passed"
    if cfg.format == "json":
        cu = [c for c in cu_suite(bic, lab) if c.name == "CN1-CN3 and CU1-CU2"][0]
        so = shard_order(bic.L, bic.lab)
        data = {
            "lattice": {"elements": bic.L.n, "covers": len(bic.L.covers), "join_irreducibles": len(bic.L.join_irreducibles())},
            "semidistributive": next(c.ok for c in cu_suite(bic, lab) if c.name == "semidistributive"),
            "cu_axioms": {"ok": cu.ok, "detail": cu.detail},
            "cjc": [[label_to_json(s) for s in f] for f in _cjc_faces(bic)],
            "shards": [ex.label_set_json(psi(bic.L, bic.lab, x)) for x in range(bic.L.n)],
            "shard_order_is_lattice": so.is_lattice,
            "suites": {name: [c.to_json() for c in checks if c.suite == name] for name in names},
            "ok": not failed,
        }
        body = ex.dumps(data)
    else:
        body = "".join(f"{'PASS' if c.ok else 'FAIL'} {c.suite}: {c.name}" + (f" ({c.detail})" if c.detail and not c.ok else "") + "\n"
                       for c in checks)
    if failed:
        summary += f"\nfirst failure: {failed[0].suite}: {failed[0].name}: {failed[0].detail}"
    return body, summary, EXIT_PROPERTY if failed else EXIT_OK


def _validate(p, fmt: str) -> tuple[str, int]:
    verdict = is_brick_gentle(p)
    code = EXIT_OK if verdict.is_brick else EXIT_NOT_BRICK
    if fmt == "json":
        witness = None if verdict.is_brick else [str(x) for x in verdict.witness]
        return ex.dumps({"gentle": True, "brick_gentle": verdict.is_brick, "witness": witness}), code
    if verdict.is_brick:
        return "gentle: yes; brick gentle: yes\n", EXIT_OK
    walk = " ".join(str(x) for x in verdict.witness)
    return f"gentle: yes; brick gentle: no\nwitness cyclic walk: {walk}\n", EXIT_NOT_BRICK


# ---------------------------------------------------------------- entry point


def run(cfg: RunConfig) -> int:
    try:
        with open(cfg.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"glat: cannot read {cfg.path}: {e.strerror}", file=sys.stderr)
        return EXIT_NOINPUT
    try:
        p = parse_quiver(text)
    except (NotGentle, Disconnected) as e:
        print(f"glat: not gentle: {e}", file=sys.stderr)
        return EXIT_NOT_GENTLE
    except ParseError as e:
        print(f"glat: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE

    note = ""
    code = EXIT_OK
    if cfg.command == "validate":
        body, code = _validate(p, cfg.format)
    else:
        verdict = is_brick_gentle(p)
        if not verdict.is_brick:
            walk = " ".join(str(x) for x in verdict.witness)
            print(f"glat: not brick gentle; cyclic walk with at most one relation: {walk}", file=sys.stderr)
            return EXIT_NOT_BRICK
        try:
            enumerate_strings(p, max_strings=cfg.max_strings)
        except TooManyStrings as e:
            print(f"glat: {e} (raise --max-strings)", file=sys.stderr)
            return EXIT_TOO_MANY
        except NotFinite as e:
            print(f"glat: {e}", file=sys.stderr)
            return EXIT_NOT_BRICK
        bic = enumerate_bic(p)
        handlers = {"strings": _strings, "labels": _labels, "ji": _ji, "bic": _bic, "cjc": _cjc, "shards": _shards}
        if cfg.command in handlers:
            body, note = handlers[cfg.command](bic, cfg.format)
        elif cfg.command in ("torshad", "widshad"):
            body, note = _shadow_poset(bic, cfg.format, cfg.command)
        else:
            body, note, code = _verify(bic, cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    if note and not cfg.quiet:
        print(note, file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.file, args.format, args.out, args.suite, args.max_strings, args.quiet,
                        args.corrupt_labels)
    except UsageError as e:
        print(f"glat: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
