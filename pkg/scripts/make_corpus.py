"""Regenerate the group files in src/fusionkit/data/corpus.

Matrix groups are realized as permutation groups on nonzero vectors or on
projective points; everything else is written from explicit generators.

    python3 scripts/make_corpus.py [--check]
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from fusionkit.io import print_group
from fusionkit.perm import Perm, PermGroup, perm_parse

OUT = Path(__file__).resolve().parents[1] / "src" / "fusionkit" / "data" / "corpus"


def cyc(degree: int, *cycles: str) -> PermGroup:
    return PermGroup([perm_parse(c, degree) for c in cycles], degree=degree)


def on_vectors(q: int, mats, projective: bool) -> PermGroup:
    dim = len(mats[0])
    pts = [v for v in itertools.product(range(q), repeat=dim) if any(v)]
    if projective:
        pts = [v for v in pts if v[next(i for i, x in enumerate(v) if x)] == 1]
    index = {v: i for i, v in enumerate(pts)}

    def normal(v):
        if not projective:
            return v
        lead = v[next(i for i, x in enumerate(v) if x)]
        inv = pow(int(lead), -1, q)
        return tuple(int(x) * inv % q for x in v)

    gens = []
    for M in mats:
        M = np.array(M) % q
        gens.append(Perm(index[normal(tuple(int(x) for x in (np.array(v) @ M) % q))] for v in pts))
    return PermGroup(gens, degree=len(pts))


def affine(q: int, mats) -> PermGroup:
    """Translations of GF(q)^dim together with the given linear maps."""
    dim = len(mats[0])
    pts = list(itertools.product(range(q), repeat=dim))
    index = {v: i for i, v in enumerate(pts)}
    gens = []
    for k in range(dim):
        e = [int(i == k) for i in range(dim)]
        gens.append(Perm(index[tuple((a + b) % q for a, b in zip(v, e))] for v in pts))
    for M in mats:
        M = np.array(M) % q
        gens.append(Perm(index[tuple(int(x) for x in (np.array(v) @ M) % q)] for v in pts))
    return PermGroup(gens, degree=len(pts))


def build() -> dict[str, tuple[PermGroup, int | None]]:
    t = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    rot = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    return {
        "c2": (cyc(2, "(1,2)"), 2),
        "c3": (cyc(3, "(1,2,3)"), 3),
        "c5": (cyc(5, "(1,2,3,4,5)"), 5),
        "c3xc3": (cyc(6, "(1,2,3)", "(4,5,6)"), 3),
        "c4": (cyc(4, "(1,2,3,4)"), 2),
        "v4": (cyc(4, "(1,2)(3,4)", "(1,3)(2,4)"), 2),
        "d8": (cyc(4, "(1,2,3,4)", "(1,3)"), 2),
        "q8": (cyc(8, "(1,2,4,8)(3,6,5,7)", "(1,3,4,5)(2,7,8,6)"), 2),
        "c9": (cyc(9, "(1,2,3,4,5,6,7,8,9)"), 3),
        "extraspecial27plus": (cyc(9, "(1,2,3)(4,5,6)(7,8,9)", "(1,4,7)(2,5,8)(3,6,9)",
                                   "(4,5,6)(7,9,8)"), 3),
        "extraspecial27minus": (cyc(9, "(1,2,3,4,5,6,7,8,9)", "(2,5,8)(3,9,6)"), 3),
        "s3": (cyc(3, "(1,2,3)", "(1,2)"), None),
        "s4": (cyc(4, "(1,2,3,4)", "(1,2)"), 2),
        "a4": (cyc(4, "(1,2,3)", "(1,2)(3,4)"), 2),
        "a5": (cyc(5, "(1,2,3,4,5)", "(1,2,3)"), 2),
        "s7": (cyc(7, "(1,2,3,4,5,6,7)", "(1,2)"), 2),
        "gl2_3": (on_vectors(3, [[[1, 1], [0, 1]], [[0, 1], [2, 0]], [[2, 0], [0, 1]]], False), 3),
        "sl2_3": (on_vectors(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], False), 3),
        "gl3_2": (on_vectors(2, [t, rot], False), 2),
        "psl3_3": (on_vectors(3, [t, rot], True), 3),
        "c5sq_s3": (affine(5, [[[0, 1], [4, 4]], [[0, 1], [1, 0]]]), 5),
    }


EXPECTED_ORDERS = {
    "c2": 2, "c3": 3, "c5": 5, "c3xc3": 9, "c4": 4, "v4": 4, "d8": 8, "q8": 8, "c9": 9,
    "extraspecial27plus": 27, "extraspecial27minus": 27, "s3": 6, "s4": 24, "a4": 12,
    "a5": 60, "s7": 5040, "gl2_3": 48, "sl2_3": 24, "gl3_2": 168, "psl3_3": 5616,
    "c5sq_s3": 150,
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with files on disk")
    args = ap.parse_args(argv)
    OUT.mkdir(parents=True, exist_ok=True)
    bad = 0
    for name, (G, p) in build().items():
        if G.order != EXPECTED_ORDERS[name]:
            print(f"{name}: order {G.order}, expected {EXPECTED_ORDERS[name]}")
            bad += 1
            continue
        text = print_group(G, p)
        path = OUT / f"{name}.grp"
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"{name}: differs from {path}")
                bad += 1
        else:
            path.write_text(text)
            print(f"{name:22s} order {G.order:5d} degree {G.degree}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
