"""Print the worked examples and the desk-instance counts."""
import argparse
from pathlib import Path

from glat.biclosed import J, enumerate_bic, is_polygonal
from glat.export import word_set_text
from glat.lattice_toolkit import canonical_join_complex, shard_order
from glat.quiver_core import load_quiver
from glat.shadows import ShadowPosets, torsion_shadow
from glat.strings import enumerate_strings, format_label, format_word, lazy, make_label, str_of_label, word

ROOT = Path(__file__).resolve().parent.parent


def square_example(qdir: Path) -> None:
    p = load_quiver(qdir / "square.json")
    lab = make_label(p, word("alpha^-1", "beta", "gamma^-1"), [lazy("1"), lazy("4"), word("alpha^-1").canonical()])
    j = J(p, lab)
    print(f"label      {format_label(lab)}")
    print(f"J          {word_set_text(j)}")
    print(f"shadow     {word_set_text(torsion_shadow(p, j))}")
    print(f"str        {format_word(str_of_label(p, lab))}")


def counts(qdir: Path, name: str) -> None:
    p = load_quiver(qdir / f"{name}.json")
    bic = enumerate_bic(p)
    sp = ShadowPosets(bic)
    cjc = canonical_join_complex(bic.L, bic.lab)
    so = shard_order(bic.L, bic.lab)
    print(f"{name}: strings {len(enumerate_strings(p))}, bic {len(bic)} ({len(bic.L.covers)} covers), "
          f"ji {len(bic.L.join_irreducibles())}, cjc {len(cjc.vertices)}v/{len(cjc.edges)}e, "
          f"shards {so.lattice.n if so.lattice else 'not a lattice'}, torshad {sp.torshad.n}, widshad {sp.widshad.n}, "
          f"polygonal {is_polygonal(bic)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quivers", type=Path, default=ROOT / "quivers")
    args = ap.parse_args()
    square_example(args.quivers)
    print()
    for name in ("two_cycle", "a2_path", "square"):
        counts(args.quivers, name)


if __name__ == "__main__":
    main()
