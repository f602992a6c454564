"""Prune one essential class of F_D8(GL3(2)), then add it back.

    python3 scripts/prune_extend_demo.py
"""

from __future__ import annotations

from fusionkit import corpus
from fusionkit.build import extend_with_automizer, is_isomorphic, prune
from fusionkit.fusion import automizer_maps, essentials, fusion_from_group, is_saturated
from fusionkit.io import print_fusion
from fusionkit.morphisms import aut_print


def summary(tag, F) -> None:
    ess = ", ".join(f"{F.label(E.fclass.rep)} Out={E.out_order}" for E in essentials(F))
    print(f"{tag:9s} saturated={bool(is_saturated(F))}  essentials: {ess or '-'}")


def main() -> None:
    F = fusion_from_group(corpus.load("gl3_2"), 2)
    summary("original", F)
    _, E = essentials(F)
    V = E.fclass.rep
    pruned = prune(F, E)
    summary("pruned", pruned)
    delta = automizer_maps(F, V)
    print(f"adding back {len(delta)} automorphisms of {F.label(V)}:")
    for phi in delta:
        print("  " + aut_print(phi))
    back = extend_with_automizer(pruned, V, delta)
    summary("extended", back)
    iso = is_isomorphic(back, F)
    print(f"isomorphic to original: {bool(iso)} ({iso.reason})")
    print()
    print(print_fusion(pruned), end="")


if __name__ == "__main__":
    main()
