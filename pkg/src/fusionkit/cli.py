"""The ``fsk`` command line.

Exit codes: 0 success, 1 a checked property is false, 2 usage or input
error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import build, fusion, groups
from .amalgams import amalgam_report, amalgam_spec
from .config import CAPS
from .errors import CapExceeded, FusionKitError, ParseError, PremiseError, SaturationError
from .io import emit_report, parse_fusion, parse_group, print_fusion
from .morphisms import GroupMap, aut_parse, aut_print, automorphism_group
from .perm import PermGroup, perm_print

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class Usage(Exception):
    pass


class Outcome:
    """A report plus an exit code and optional fusion-file text."""

    def __init__(self, doc: dict, code: int = EXIT_OK, system: fusion.FusionSys | None = None):
        self.doc = doc
        self.code = code
        self.system = system


# ---------------------------------------------------------------------------
# helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise Usage(f"cannot read {path}: {e.strerror}") from None


def _group(path: str) -> tuple[PermGroup, int | None]:
    G, p = parse_group(_read(path))
    G.name = Path(path).stem
    return G, p


def _is_fusion_text(text: str) -> bool:
    return any(line.split("#", 1)[0].strip() == "sylow" for line in text.splitlines())


def _system(path: str, p: int | None) -> fusion.FusionSys:
    """A fusion file, or a group file whose prime comes from ``--p`` or its ``p`` line."""
    text = _read(path)
    if _is_fusion_text(text):
        return parse_fusion(text)
    G, fp = parse_group(text)
    G.name = Path(path).stem
    prime = p if p is not None else fp
    if prime is None:
        raise Usage(f"{path} is a group file without a prime; pass --p")
    return fusion.fusion_from_group(G, prime)


def _subgroup(F: fusion.FusionSys, label: str) -> int:
    e = F.engine
    for m in e.subs:
        if e.label(m) == label:
            return m
    raise Usage(f"no subgroup labelled {label!r} (labels look like '#4:0')")


def _gens(P) -> list[str]:
    return [perm_print(g) for g in P.gens]


def _sub_doc(F: fusion.FusionSys, mask: int) -> dict:
    e = F.engine
    P = e.sub(mask)
    return {"label": e.label(mask), "order": P.order, "gens": _gens(P)}


def _saturation_doc(res) -> dict:
    return {"saturated": bool(res), "witness": res.witness}


def _system_summary(F: fusion.FusionSys) -> dict:
    ess = fusion.essentials(F)
    return {
        "p": F.p,
        "sylow_order": F.s.order,
        "provenance": F.provenance,
        "classes": len(F.engine.classes),
        "essentials": [{"rep": E.fclass.rep_label, "out_order": E.out_order} for E in ess],
        "saturation": _saturation_doc(F.meta.get("saturation") or fusion.is_saturated(F)),
    }


# ---------------------------------------------------------------------------
# group verbs


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while n > 1:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    return out


def cmd_group_info(a) -> Outcome:
    G, p = _group(a.file)
    doc = {
        "degree": G.degree,
        "order": G.order,
        "prime": p,
        "gens": _gens(G),
        "sylow_orders": {str(q): groups.p_part(G.order, q) for q in _prime_factors(G.order)},
    }
    if G.under_cap:
        doc["center_order"] = groups.center(G).order
        doc["derived_order"] = groups.derived_subgroup(G).order
    return Outcome(doc)


def cmd_group_aut(a) -> Outcome:
    G, _ = _group(a.file)
    aut = automorphism_group(G)
    return Outcome({
        "order": aut.order,
        "inner_order": aut.inn.order,
        "out_order": aut.out_order,
        "generators": [aut_print(phi) for _, phi in aut.dictionary],
    })


def cmd_group_subgroups(a) -> Outcome:
    G, _ = _group(a.file)
    subs = groups.all_subgroups(G)
    rows = [{"label": groups.subgroup_label(subs, H), "order": H.order,
             "normal": groups.is_normal(G, H), "gens": " ".join(_gens(H)) or "()"}
            for H in subs]
    return Outcome({"count": len(subs), "subgroups": rows})


# ---------------------------------------------------------------------------
# fusion verbs


def cmd_from_group(a) -> Outcome:
    G, fp = _group(a.file)
    p = a.p if a.p is not None else fp
    if p is None:
        raise Usage("pass --p or add a 'p' line to the group file")
    F = fusion.fusion_from_group(G, p)
    return Outcome(_system_summary(F), system=F)


def cmd_from_data(a) -> Outcome:
    F = parse_fusion(_read(a.file))
    res = fusion.is_saturated(F)
    return Outcome(_system_summary(F), EXIT_OK if res else EXIT_FALSE, system=F)


def cmd_classes(a) -> Outcome:
    F = _system(a.input, a.p)
    e = F.engine
    rows = []
    for c, fc in zip(e.classes, fusion.f_classes(F)):
        flags = fusion.status_flags(F, fc.rep)
        rows.append({
            "rep": e.label(c.rep_mask),
            "order": fc.rep.order,
            "size": len(c.masks),
            "aut_order": c.aut.order,
            "out_order": flags.out_order,
            "centric": flags.centric,
            "radical": flags.radical,
            "essential": flags.essential,
            "gens": " ".join(_gens(fc.rep)) or "()",
        })
    return Outcome({"count": len(rows), "classes": rows})


def cmd_essentials(a) -> Outcome:
    F = _system(a.input, a.p)
    rows = [{"rep": E.fclass.rep_label, "order": E.fclass.rep.order,
             "out_order": E.out_order, "spe_components": E.spe_components,
             "members": " ".join(E.fclass.labels)} for E in fusion.essentials(F)]
    return Outcome({"count": len(rows), "essentials": rows})


def cmd_check(a) -> Outcome:
    F = _system(a.input, a.p)
    res = fusion.is_saturated(F)
    return Outcome(_saturation_doc(res), EXIT_OK if res else EXIT_FALSE)


def cmd_core(a) -> Outcome:
    F = _system(a.input, a.p)
    fusion.op_core(F)
    return Outcome({"op_core": _sub_doc(F, fusion.op_core_mask(F))})


def cmd_strongly_closed(a) -> Outcome:
    F = _system(a.input, a.p)
    t = F.table
    rows = []
    for T in fusion.strongly_closed_masks(F):
        d = _sub_doc(F, T)
        d["gens"] = " ".join(d["gens"]) or "()"
        d["abelian"] = t.is_abelian(T)
        rows.append(d)
    return Outcome({"count": len(rows), "strongly_closed": rows})


def cmd_prune(a) -> Outcome:
    F = _system(a.input, a.p)
    m = _subgroup(F, a.target)
    H = build.prune(F, m)
    return Outcome(_system_summary(H), system=H)


def _maps_file(path: str, dom) -> list[GroupMap]:
    out = []
    for no, raw in enumerate(_read(path).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(aut_parse(line, dom))
        except (FusionKitError, ValueError) as e:
            raise ParseError(str(e), no) from None
    return out


def cmd_extend(a) -> Outcome:
    F = _system(a.input, a.p)
    m = _subgroup(F, a.subgroup)
    V = F.engine.sub(m)
    H = build.extend_with_automizer(F, V, _maps_file(a.delta, V))
    return Outcome(_system_summary(H), system=H)


def cmd_opprime(a) -> Outcome:
    F = _system(a.input, a.p)
    H = build.o_pprime(F)
    doc = _system_summary(H)
    doc["index"] = H.meta["index"]
    return Outcome(doc, system=H)


def cmd_interval(a) -> Outcome:
    F = _system(a.input, a.p)
    members = build.pprime_interval(F)
    rows = []
    for i, H in enumerate(members):
        crit = build.pprime_criteria(F, H)
        rows.append({
            "member": i,
            "index": H.meta["index"],
            "aut_s_order": H.engine.automizer(H.table.full).order,
            "saturated": bool(H.meta["saturation"]),
            "contains_hyperfocal": crit["contains-hyperfocal"],
            "restriction_closed": crit["restriction-closed"],
        })
    return Outcome({"count": len(rows), "members": rows,
                    "inclusions": [list(x) for x in build.interval_lattice(members)]})


def cmd_iso(a) -> Outcome:
    F1 = _system(a.first, a.p)
    F2 = _system(a.second, a.p)
    res = build.is_isomorphic(F1, F2)
    doc = {"isomorphic": res.isomorphic, "reason": res.reason,
           "witness": aut_print(res.witness) if res.witness is not None else None}
    return Outcome(doc, EXIT_OK if res else EXIT_FALSE)


def cmd_screen(a) -> Outcome:
    F = _system(a.input, a.p)
    r = build.exotic_screen(F)
    e = F.engine

    def lab(P):
        return None if P is None else e.label(F.mask(P))

    return Outcome({
        "strongly_closed": [lab(T) for T in r.strongly_closed],
        "minimal_sc": lab(r.minimal_sc),
        "abelian_flag": r.abelian_flag,
        "abelian_normal": r.abelian_normal,
        "op_core": lab(r.op_core),
        "normal_support_check": r.normal_support_check,
        "family": r.family,
        "failures": r.failures,
        "verdict": r.verdict,
    })


# ---------------------------------------------------------------------------
# amalgams


def cmd_amalgam_count(a) -> Outcome:
    G1, _ = _group(a.g1)
    G2, _ = _group(a.g2)
    B, _ = _group(a.edge)
    whole = groups.Subgrp.whole(B)

    def emb(text, G):
        if text is None:
            return None
        body = text if text.strip().startswith("aut:") else "aut: " + text
        return aut_parse(body, whole, groups.Subgrp.whole(G))

    spec = amalgam_spec(G1, G2, B, emb(a.emb1, G1), emb(a.emb2, G2))
    return Outcome(amalgam_report(spec))


# ---------------------------------------------------------------------------
# parser


def _global_options(parser: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--element-cap", type=int, default=d, help="max enumerated group order")
    parser.add_argument("--subgroup-cap", type=int, default=d, help="max |S| for subgroup lattices")
    parser.add_argument("--aut-cap", type=int, default=d, help="max order for Aut searches")
    parser.add_argument("--threads", type=int, default=d, help="worker threads")
    parser.add_argument("--seed", type=int, default=d, help="seed for search order")
    parser.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS if suppress
                        else "json")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fsk", description="Finite p-groups and fusion systems.")
    _global_options(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    top = ap.add_subparsers(dest="area", required=True)

    g = top.add_parser("group", help="permutation group queries").add_subparsers(
        dest="verb", required=True)
    for name, fn in (("info", cmd_group_info), ("aut", cmd_group_aut),
                     ("subgroups", cmd_group_subgroups)):
        sp = g.add_parser(name, parents=[common])
        sp.add_argument("file")
        sp.set_defaults(fn=fn)

    f = top.add_parser("fusion", help="fusion systems").add_subparsers(dest="verb", required=True)

    def fverb(name, fn, *, single=True, out=False, help=None):
        sp = f.add_parser(name, parents=[common], help=help)
        if single:
            sp.add_argument("input", help="fusion file, or group file with a prime")
        sp.add_argument("--p", type=int, default=None, help="prime for a group-file input")
        if out:
            sp.add_argument("--out", help="write the resulting fusion file here")
        sp.set_defaults(fn=fn)
        return sp

    sp = f.add_parser("from-group", parents=[common], help="F_S(G) for a group file")
    sp.add_argument("file")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_from_group)
    sp = f.add_parser("from-data", parents=[common], help="validate a fusion file")
    sp.add_argument("file")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_from_data)
    fverb("classes", cmd_classes)
    fverb("essentials", cmd_essentials)
    fverb("check", cmd_check, help="saturation check (exit 1 when unsaturated)")
    fverb("core", cmd_core)
    fverb("strongly-closed", cmd_strongly_closed)
    fverb("prune", cmd_prune, out=True).add_argument("--target", required=True,
                                                     help="label of an essential subgroup")
    sp = fverb("extend", cmd_extend, out=True)
    sp.add_argument("--subgroup", required=True, help="label of V")
    sp.add_argument("--delta", required=True, help="file of 'aut:' lines on V")
    fverb("opprime", cmd_opprime, out=True)
    fverb("interval", cmd_interval)
    sp = fverb("iso", cmd_iso, single=False)
    sp.add_argument("first")
    sp.add_argument("second")
    fverb("screen", cmd_screen)

    am = top.add_parser("amalgam", help="amalgam classes").add_subparsers(dest="verb", required=True)
    sp = am.add_parser("count", parents=[common])
    sp.add_argument("--g1", required=True)
    sp.add_argument("--g2", required=True)
    sp.add_argument("--edge", required=True)
    sp.add_argument("--emb1", help="'(b1 -> g1; ...)' images of the edge generators in G1")
    sp.add_argument("--emb2")
    sp.set_defaults(fn=cmd_amalgam_count)
    return ap


def _apply_caps(a):
    for flag, attr in (("element_cap", "element"), ("subgroup_cap", "subgroup"),
                       ("aut_cap", "aut"), ("threads", "threads"), ("seed", "seed")):
        v = getattr(a, flag, None)
        if v is not None:
            setattr(CAPS, attr, v)


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout.buffer
    err = err if err is not None else sys.stderr
    parser = make_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and EXIT_USAGE
    saved = {k: getattr(CAPS, k) for k in ("element", "subgroup", "aut", "threads", "seed")}
    _apply_caps(a)
    try:
        res = a.fn(a)
    except CapExceeded as e:
        print(f"fsk: cap exceeded: {e}", file=err)
        return EXIT_CAP
    except (PremiseError, SaturationError) as e:
        doc = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, PremiseError):
            doc["premise"] = e.premise
        else:
            doc["witness"] = e.witness
        out.write(emit_report(doc, a.format))
        return EXIT_FALSE
    except (Usage, ParseError, ValueError, FusionKitError) as e:
        print(f"fsk: {e}", file=err)
        return EXIT_USAGE
    finally:
        for k, v in saved.items():
            setattr(CAPS, k, v)
    target = getattr(a, "out", None)
    if res.system is not None and target:
        Path(target).write_text(print_fusion(res.system), encoding="utf-8")
        res.doc["written"] = target
    if res.system is not None and not target and a.verb in ("from-group", "from-data"):
        out.write(print_fusion(res.system).encode())
    else:
        out.write(emit_report(res.doc, a.format))
    return res.code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
