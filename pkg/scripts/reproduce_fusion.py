"""Print essential classes, O_p(F) and |Aut(S)| for realizable fusion systems.

    python3 scripts/reproduce_fusion.py [name:p ...]

Defaults to the three systems of the fusion-reproduction acceptance check.
"""

from __future__ import annotations

import argparse
import time

from fusionkit import corpus
from fusionkit.fusion import essentials, fusion_from_group, is_saturated, op_core
from fusionkit.morphisms import automorphism_group

DEFAULT = ["s4:2", "gl3_2:2", "psl3_3:3"]


def row(name: str, p: int) -> dict:
    t0 = time.perf_counter()
    F = fusion_from_group(corpus.load(name), p)
    ess = essentials(F)
    out = {
        "system": f"{name}/{p}",
        "|S|": F.s.order,
        "saturated": bool(is_saturated(F)),
        "essentials": ", ".join(f"{E.fclass.rep.order}:{E.out_order}" for E in ess) or "-",
        "|O_p(F)|": op_core(F).order,
        "|Aut(S)|": automorphism_group(F.s).order,
    }
    out["seconds"] = f"{time.perf_counter() - t0:.2f}"
    return out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("systems", nargs="*", default=DEFAULT, help="corpus name and prime, as name:p")
    args = ap.parse_args(argv)
    rows = [row(n, int(p)) for n, p in (s.split(":") for s in args.systems)]
    cols = list(rows[0])
    width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.ljust(width[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).ljust(width[c]) for c in cols))
    print("essentials are listed as |P|:|Out_F(P)|")


if __name__ == "__main__":
    main()
