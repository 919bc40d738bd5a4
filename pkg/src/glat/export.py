"""Text, JSON and DOT renderings of the computed objects.

Sets of words are emitted sorted by their text form; lattice elements keep the
lattice's own linear extension so indices are stable between runs.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from .lattice_toolkit import FiniteLattice
from .strings import Label, StringWord, format_label, format_word, label_to_json, word_to_json


def sorted_words(ws: Iterable[StringWord]) -> list[StringWord]:
    return sorted(ws, key=format_word)


def sorted_labels(labs: Iterable[Label]) -> list[Label]:
    return sorted(labs, key=format_label)


def word_set_text(ws: Iterable[StringWord]) -> str:
    return "{" + ", ".join(format_word(w) for w in sorted_words(ws)) + "}"


def label_set_text(labs: Iterable[Label]) -> str:
    return "{" + ", ".join(format_label(s) for s in sorted_labels(labs)) + "}"


def word_set_json(ws: Iterable[StringWord]) -> list:
    return [word_to_json(w) for w in sorted_words(ws)]


def label_set_json(labs: Iterable[Label]) -> list:
    return [label_to_json(s) for s in sorted_labels(labs)]


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def hasse_dot(name: str, L: FiniteLattice, node_text: Sequence[str], edge_text: dict | None = None) -> str:
    """Hasse diagram, bottom at the bottom."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for i in range(L.n):
        lines.append(f'  n{i} [label="{_dot_escape(node_text[i])}"];')
    for a, b in L.covers:
        extra = ""
        if edge_text and (a, b) in edge_text:
            extra = f' [label="{_dot_escape(edge_text[(a, b)])}"]'
        lines.append(f"  n{a} -> n{b}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_json(L: FiniteLattice, elements: list, edge_labels: dict | None = None) -> dict:
    covers = []
    for a, b in L.covers:
        c = {"lower": a, "upper": b}
        if edge_labels is not None:
            c.update(edge_labels[(a, b)])
        covers.append(c)
    return {"elements": elements, "covers": covers}


def poset_text(L: FiniteLattice, node_text: Sequence[str], edge_text: dict | None = None) -> str:
    lines = [f"{i}: {node_text[i]}" for i in range(L.n)]
    lines.append("covers:")
    for a, b in L.covers:
        tail = f"  {edge_text[(a, b)]}" if edge_text else ""
        lines.append(f"{a} -> {b}{tail}")
    return "\n".join(lines) + "\n"
