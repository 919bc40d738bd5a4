"""Run every verification suite on random small brick gentle quivers.

Exits non-zero on the first failing check and prints the offending quiver.
"""
import argparse
import random
import sys

from glat.biclosed import enumerate_bic
from glat.quiver_core import NotGentle, dump_quiver, is_brick_gentle, make_presentation
from glat.strings import TooManyStrings, enumerate_strings
from glat.verification import run_suites


def random_gentle(rng: random.Random, max_vertices: int):
    n = rng.randint(1, max_vertices)
    vs = [str(i + 1) for i in range(n)]
    edges = []
    for i in range(1, n):
        j = rng.randrange(i)
        edges.append((vs[i], vs[j]) if rng.random() < 0.5 else (vs[j], vs[i]))
    if n >= 2:
        for _ in range(rng.randint(0, 2)):
            edges.append(tuple(rng.sample(vs, 2)))
    arrows = [(f"a{k}", s, t) for k, (s, t) in enumerate(edges)]
    relations = []
    for v in vs:
        ins = [a for a, _, t in arrows if t == v]
        outs = [a for a, s, _ in arrows if s == v]
        if len(ins) > 2 or len(outs) > 2:
            return None
        rng.shuffle(ins)
        rng.shuffle(outs)
        if len(ins) == 2 and len(outs) == 2:
            relations += [(outs[0], ins[0]), (outs[1], ins[1])]
        elif len(ins) == 2 and len(outs) == 1:
            relations.append((outs[0], ins[0]))
        elif len(ins) == 1 and len(outs) == 2:
            relations.append((outs[0], ins[0]))
        elif len(ins) == 1 and len(outs) == 1 and rng.random() < 0.5:
            relations.append((outs[0], ins[0]))
    try:
        return make_presentation(vs, arrows, relations)
    except NotGentle:
        return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", "--count", type=int, default=50, help="quivers to check")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-vertices", type=int, default=5)
    ap.add_argument("--max-strings", type=int, default=14)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    done = tried = 0
    while done < args.count:
        tried += 1
        p = random_gentle(rng, args.max_vertices)
        if p is None or not is_brick_gentle(p):
            continue
        try:
            enumerate_strings(p, max_strings=args.max_strings)
        except TooManyStrings:
            continue
        bic = enumerate_bic(p)
        bad = [c for c in run_suites(bic) if not c.ok]
        if bad:
            print(dump_quiver(p))
            for c in bad:
                print(f"FAIL {c.suite}: {c.name}: {c.detail}")
            return 1
        done += 1
        print(f"{done:4d}  {len(p.vertices)} vertices, {len(bic.strings)} strings, |Bic| = {len(bic)}")
    print(f"all suites passed on {done} quivers ({tried} drawn)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
