"""Text formats for groups and fusion systems, and report emission."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import FusionKitError, ParseError
from .fusion import Assignment, FusionSys, PROVENANCES
from .groups import Subgrp
from .morphisms import aut_parse, aut_print
from .perm import Perm, PermGroup, perm_parse, perm_print


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _parse_perm(text: str, degree: int, no: int) -> Perm:
    try:
        return perm_parse(text, degree)
    except ValueError as e:
        raise ParseError(str(e), no) from None


def parse_group(text: str) -> tuple[PermGroup, int | None]:
    """Parse the group file grammar: ``degree n``, optional ``p q``, ``gen`` lines."""
    degree = None
    prime = None
    gens: list[Perm] = []
    for no, line in _lines(text):
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "degree":
            if degree is not None:
                raise ParseError("duplicate degree", no)
            try:
                degree = int(rest)
            except ValueError:
                raise ParseError(f"bad degree {rest!r}", no) from None
            if degree < 1:
                raise ParseError("degree must be positive", no)
        elif word == "p":
            try:
                prime = int(rest)
            except ValueError:
                raise ParseError(f"bad prime {rest!r}", no) from None
        elif word == "gen":
            if degree is None:
                raise ParseError("gen before degree", no)
            gens.append(_parse_perm(rest, degree, no))
        else:
            raise ParseError(f"unknown directive {word!r}", no)
    if degree is None:
        raise ParseError("missing degree line")
    return PermGroup(gens, degree=degree), prime


def parse_group_file(path) -> tuple[PermGroup, int | None]:
    return parse_group(Path(path).read_text(encoding="utf-8"))


def print_group(G: PermGroup, p: int | None = None) -> str:
    out = [f"degree {G.degree}"]
    if p is not None:
        out.append(f"p {p}")
    out += [f"gen {perm_print(g)}" for g in G.gens]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# fusion files


def print_fusion(F: FusionSys) -> str:
    out = [f"p {F.p}", f"degree {F.s.degree}", "sylow"]
    out += [f"gen {perm_print(g)}" for g in F.s.gens]
    for a in F.assignments:
        gens = " ".join(perm_print(g) for g in a.rep.gens) or "()"
        out.append(f"assign {gens} {{")
        out += [aut_print(phi) for phi in a.gens]
        out.append("}")
    out.append(f"provenance {F.provenance}")
    return "\n".join(out) + "\n"


def parse_fusion(text: str) -> FusionSys:
    p = degree = None
    sgens: list[Perm] = []
    mode = "head"
    S = None
    assignments = []
    current = None
    provenance = "from-data"
    for no, line in _lines(text):
        if mode == "block":
            if line == "}":
                assignments.append(Assignment(current[0], tuple(current[1])))
                current = None
                mode = "body"
                continue
            if not line.startswith("aut:"):
                raise ParseError("expected 'aut:' or '}'", no)
            try:
                current[1].append(aut_parse(line, current[0]))
            except FusionKitError as e:
                raise ParseError(str(e), no) from None
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "p" and mode == "head":
            p = int(rest)
        elif word == "degree" and mode == "head":
            degree = int(rest)
        elif word == "sylow" and mode == "head":
            if degree is None or p is None:
                raise ParseError("sylow block before p and degree", no)
            mode = "sylow"
        elif word == "gen" and mode == "sylow":
            sgens.append(_parse_perm(rest, degree, no))
        elif word == "assign" and mode in ("sylow", "body"):
            if S is None:
                S = PermGroup(sgens, degree=degree)
            mode = "body"
            if not rest.endswith("{"):
                raise ParseError("assign line must end with '{'", no)
            spec = rest[:-1].strip()
            gens = [] if spec in ("", "()") else [
                _parse_perm(tok, degree, no) for tok in _split_perms(spec)]
            for g in gens:
                if not S.contains(g):
                    raise ParseError(f"{perm_print(g)} is not in the Sylow subgroup", no)
            current = (Subgrp(S, gens), [])
            mode = "block"
        elif word == "provenance":
            if rest not in PROVENANCES:
                raise ParseError(f"unknown provenance {rest!r}", no)
            provenance = rest
        else:
            raise ParseError(f"unexpected {word!r}", no)
    if mode == "block":
        raise ParseError("unterminated assign block")
    if p is None or degree is None:
        raise ParseError("missing header")
    if S is None:
        S = PermGroup(sgens, degree=degree)
    try:
        return FusionSys(p, S, assignments, provenance)
    except (ValueError, FusionKitError) as e:
        raise ParseError(str(e)) from None


def _split_perms(spec: str) -> list[str]:
    """Split ``(1,2)(3,4) (1,3)`` into whitespace-separated permutations."""
    return spec.split()


def parse_fusion_file(path) -> FusionSys:
    return parse_fusion(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# reports


def emit_report(doc: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "text":
        return _text(doc).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)) and all(not isinstance(x, (dict, list)) for x in v):
        return ", ".join(_scalar(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _text(doc: dict, prefix: str = "") -> str:
    lines: list[str] = []
    for key in sorted(doc):
        v = doc[key]
        name = f"{prefix}{key}"
        if isinstance(v, dict) and v:
            lines.append(_text(v, name + ".").rstrip("\n"))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            cols = sorted({k for row in v for k in row})
            rows = [[_scalar(row.get(c)) for c in cols] for row in v]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(f"{name}:")
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for r in rows:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        else:
            lines.append(f"{name}: {_scalar(v)}")
    return "\n".join(x for x in lines if x) + "\n"
