"""Strings of a gentle presentation and of its double.

A word is stored in written order: ``letters[0]`` is the leftmost letter, which
is walked last.  With ``d`` letters the visited vertices are
``v_0 = t(letters[0])`` and ``v_{i+1} = s(letters[i])``; letter ``i`` joins
``v_i`` and ``v_{i+1}``.

Every function takes the presentation explicitly; words themselves are plain
immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from .quiver_core import GentlePresentation, GlatError, Letter, double, parse_letter


class NotFinite(GlatError):
    """Raised when string enumeration runs past its length cap."""


class TooManyStrings(GlatError):
    """Raised when string enumeration exceeds a caller-supplied count limit."""


class NotInStrTilde(GlatError, ValueError):
    pass


@dataclass(frozen=True)
class StringWord:
    letters: tuple[Letter, ...] = ()
    lazy: Optional[str] = None

    def __post_init__(self):
        if (self.lazy is None) == (not self.letters):
            raise ValueError("a word is either lazy or has letters, not both")

    @classmethod
    def at(cls, v: str) -> "StringWord":
        return cls((), v)

    @property
    def is_lazy(self) -> bool:
        return self.lazy is not None

    def __len__(self) -> int:
        return len(self.letters)

    def sort_key(self):
        return (len(self.letters), self.letters, self.lazy or "")

    def __lt__(self, other: "StringWord") -> bool:
        return self.sort_key() < other.sort_key()

    def inverse(self) -> "StringWord":
        if self.is_lazy:
            return self
        return StringWord(tuple(x.inv() for x in reversed(self.letters)))

    def canonical(self) -> "StringWord":
        if self.is_lazy:
            return self
        inv = self.inverse()
        return inv if inv.letters < self.letters else self

    @property
    def is_starred_free(self) -> bool:
        return not any(x.starred for x in self.letters)

    def tokens(self) -> list[str]:
        return [str(x) for x in self.letters]

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"StringWord({format_word(self)})"


def lazy(v) -> StringWord:
    return StringWord.at(str(v))


def word(*tokens: str) -> StringWord:
    """Build a non-canonicalized word from tokens like ``"alpha^-1"`` or ``"beta*"``."""
    return StringWord(tuple(parse_letter(t) for t in tokens))


def format_word(w: StringWord) -> str:
    if w.is_lazy:
        return f"e{w.lazy}"
    return " ".join(str(x) for x in w.letters)


def word_to_json(w: StringWord):
    if w.is_lazy:
        return {"lazy": w.lazy}
    return w.tokens()


def word_from_json(data) -> StringWord:
    if isinstance(data, dict):
        return lazy(data["lazy"])
    return word(*data)


# ---------------------------------------------------------------- walk basics


def endpoints(p, w: StringWord) -> tuple[str, str]:
    """``(source, target)`` of the walk: where it starts and where it ends."""
    if w.is_lazy:
        return w.lazy, w.lazy
    return p.source(w.letters[-1]), p.target(w.letters[0])


def word_vertices(p, w: StringWord) -> tuple[str, ...]:
    """``(v_0, ..., v_d)`` in written order."""
    if w.is_lazy:
        return (w.lazy,)
    return (p.target(w.letters[0]),) + tuple(p.source(x) for x in w.letters)


def is_valid(p, w: StringWord) -> bool:
    """P1 and P2 over ``p`` (letters must exist in ``p``)."""
    if w.is_lazy:
        return w.lazy in p.vertices
    ends = p.ends
    if any(x.key not in ends for x in w.letters):
        return False
    ls = w.letters
    for x, y in zip(ls, ls[1:]):
        if not p.follows(x, y) or p.is_relation(x, y):
            return False
    return True


def is_self_avoiding(p, w: StringWord) -> bool:
    vs = word_vertices(p, w)
    return len(set(vs)) == len(vs)


def canonical_if_valid(p, w: StringWord) -> Optional[StringWord]:
    return w.canonical() if is_valid(p, w) else None


def enumerate_strings(p, max_length: Optional[int] = None, max_strings: Optional[int] = None) -> list[StringWord]:
    """All canonical strings, lazy ones included, in canonical order.

    Over a gentle presentation the walk is exhaustive and must terminate within
    ``|Q0| - 1`` letters (brick gentle strings are self-avoiding); a longer
    string raises :class:`NotFinite`.  Over a doubled presentation, which is
    never string-finite, ``max_length`` defaults to ``|Q0| - 1`` and acts as a
    hard cap instead.
    """
    cap = len(p.vertices) - 1 if max_length is None else max_length
    strict = not getattr(p, "doubled", False) and max_length is None
    found: set[StringWord] = {lazy(v) for v in p.vertices}
    frontier = [(x,) for x in p.all_letters]
    length = 1
    while frontier:
        if length > cap:
            if strict:
                raise NotFinite(f"string {format_word(StringWord(frontier[0]))} is longer than {cap} letters")
            break
        nxt = []
        for ls in frontier:
            found.add(StringWord(ls).canonical())
            if max_strings is not None and len(found) > max_strings:
                raise TooManyStrings(f"more than {max_strings} strings")
            last = ls[-1]
            for y in p.letters_into[p.source(last)]:
                if y != last.inv() and not p.is_relation(last, y):
                    nxt.append(ls + (y,))
        frontier = nxt
        length += 1
    return sorted(found)


def concatenate(p, v: StringWord, gamma: Letter, u: StringWord) -> Optional[StringWord]:
    """Canonical form of ``v gamma u`` if it is a string of ``p``."""
    if gamma.key not in p.ends:
        return None
    if v.is_lazy and v.lazy != p.target(gamma):
        return None
    if u.is_lazy and u.lazy != p.source(gamma):
        return None
    return canonical_if_valid(p, StringWord(v.letters + (gamma,) + u.letters))


def concatenations(p, u: StringWord, v: StringWord) -> set[StringWord]:
    """Every string of the form ``v g u`` or ``u g v`` for a letter ``g``, in any orientation of ``u``, ``v``."""
    out = set()
    for a in {u, u.inverse()}:
        for b in {v, v.inverse()}:
            for left, right in ((a, b), (b, a)):
                t = endpoints(p, left)[0]
                s = endpoints(p, right)[1]
                for g in p.letters_from[s]:
                    if p.target(g) == t:
                        c = concatenate(p, left, g, right)
                        if c is not None:
                            out.add(c)
    return out


# ---------------------------------------------------------------- breaks


@dataclass(frozen=True)
class Break:
    position: int  # 1..d, counted from the rightmost letter
    left: StringWord  # canonical
    letter: Letter
    right: StringWord  # canonical
    index: int  # written index of the letter

    @property
    def splits(self) -> frozenset[StringWord]:
        return frozenset((self.left, self.right))


def _side(p, ls: tuple[Letter, ...], v: str) -> StringWord:
    return StringWord(ls).canonical() if ls else lazy(v)


def breaks(p, w: StringWord) -> list[Break]:
    """One break per letter, listed by position ``j = 1..d`` (rightmost letter first).

    ``w`` is used as written; its letters need not be canonical.
    """
    if w.is_lazy:
        return []
    ls = w.letters
    vs = word_vertices(p, w)
    d = len(ls)
    out = []
    for j in range(1, d + 1):
        i = d - j
        out.append(Break(j, _side(p, ls[:i], vs[i]), ls[i], _side(p, ls[i + 1 :], vs[i + 1]), i))
    return out


def splits(p, w: StringWord) -> frozenset[StringWord]:
    return frozenset(s for b in breaks(p, w) for s in (b.left, b.right))


def factors(p, w: StringWord) -> set[StringWord]:
    """All canonical contiguous subwalks of ``w``, lazy points and ``w`` itself included."""
    vs = word_vertices(p, w)
    out = {lazy(v) for v in vs}
    ls = w.letters
    for a in range(len(ls)):
        for b in range(a + 1, len(ls) + 1):
            out.add(StringWord(ls[a:b]).canonical())
    return out


def is_proper_substring(p, u: StringWord, w: StringWord) -> bool:
    u, w = u.canonical(), w.canonical()
    return u != w and u in factors(p, w)


# ---------------------------------------------------------------- labels


@dataclass(frozen=True)
class Label:
    """A string with one chosen split per break.

    Stored with the canonical base and canonical splits, so the two members of
    an inversion-equivalence class coincide.
    """

    base: StringWord
    chosen: frozenset[StringWord]

    def sort_key(self):
        return (self.base.sort_key(), sorted(s.sort_key() for s in self.chosen))

    def __lt__(self, other: "Label") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_label(self)

    def __repr__(self) -> str:
        return f"Label({format_label(self)})"


def make_label(p, base: StringWord, chosen: Iterable[StringWord]) -> Label:
    base = base.canonical()
    chosen = frozenset(s.canonical() for s in chosen)
    bs = breaks(p, base)
    allowed = set()
    for b in bs:
        hit = len(chosen & b.splits)
        if hit != 1:
            raise ValueError(f"break {b.position} of {format_word(base)} has {hit} chosen splits")
        allowed |= b.splits
    if not chosen <= allowed:
        raise ValueError(f"{sorted(map(format_word, chosen - allowed))} are not splits of {format_word(base)}")
    return Label(base, chosen)


def format_label(lab: Label) -> str:
    base = format_word(lab.base)
    if len(lab.base) > 1:
        base = f"({base})"
    inner = ", ".join(format_word(s) for s in sorted(lab.chosen))
    return f"{base}_{{{inner}}}"


def label_to_json(lab: Label) -> dict:
    return {"base": word_to_json(lab.base), "splits": [word_to_json(s) for s in sorted(lab.chosen)]}


def labels_with_base(p, w: StringWord) -> list[Label]:
    w = w.canonical()
    bs = breaks(p, w)
    out = []
    for picks in product(*[(b.left, b.right) for b in bs]):
        out.append(Label(w, frozenset(picks)))
    return sorted(out)


@lru_cache(maxsize=None)
def all_labels(p: GentlePresentation) -> tuple[Label, ...]:
    return tuple(sorted(lab for w in enumerate_strings(p) for lab in labels_with_base(p, w)))


# ---------------------------------------------------------------- str(-)


def str_of_label(p: GentlePresentation, lab: Label) -> StringWord:
    """The doubled-algebra string attached to a label.

    Choosing the right split keeps the letter direct (starred when the original
    letter was inverse); choosing the left split makes it inverse (starred when
    the original letter was direct).
    """
    if lab.base.is_lazy:
        return lab.base
    out = list(lab.base.letters)
    for b in breaks(p, lab.base):
        x = b.letter
        if b.right in lab.chosen:
            out[b.index] = Letter(x.arrow, x.inverse, False)
        else:
            out[b.index] = Letter(x.arrow, not x.inverse, True)
    return StringWord(tuple(out)).canonical()


def _specialize_letter(x: Letter) -> Letter:
    return Letter(x.arrow, False, not x.inverse) if x.starred else x


def specialize(p: GentlePresentation, wt: StringWord) -> Optional[StringWord]:
    """Send ``g*`` to ``g^-1`` and ``(g*)^-1`` to ``g``; ``None`` unless the result is a string of ``p``."""
    if wt.is_lazy:
        return wt if wt.lazy in p.vertices else None
    return canonical_if_valid(p, StringWord(tuple(_specialize_letter(x) for x in wt.letters)))


def label_of_string(p: GentlePresentation, wt: StringWord) -> Label:
    if specialize(p, wt) is None:
        raise NotInStrTilde(f"{format_word(wt)} does not specialize to a string")
    if wt.is_lazy:
        return Label(wt, frozenset())
    base = StringWord(tuple(_specialize_letter(x) for x in wt.letters))
    chosen = []
    for b in breaks(p, base):
        chosen.append(b.left if wt.letters[b.index].inverse else b.right)
    return Label(base.canonical(), frozenset(chosen))


def lifts(p: GentlePresentation, w: StringWord) -> set[StringWord]:
    if w.is_lazy:
        return {w}
    pp = double(p)
    out = set()
    options = [(x, Letter(x.arrow, True, not x.inverse)) for x in w.letters]
    for choice in product(*options):
        c = canonical_if_valid(pp, StringWord(tuple(choice)))
        if c is not None:
            out.add(c)
    return out


@lru_cache(maxsize=None)
def str_tilde(p: GentlePresentation) -> tuple[StringWord, ...]:
    """Strings of the double that specialize to strings of ``p``."""
    return tuple(sorted({wt for w in enumerate_strings(p) for wt in lifts(p, w)}))


def sequence_str(ws: Sequence[StringWord]) -> str:
    return "{" + ", ".join(format_word(w) for w in sorted(ws)) + "}"
