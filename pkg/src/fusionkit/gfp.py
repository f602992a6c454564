"""GF(p) actions on elementary abelian sections: fixed spaces, offenders, action degree."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import NotASubgroup
from .groups import (
    Subgrp,
    all_subgroups,
    as_group,
    conj_by,
    element_set,
    is_normal,
    is_p_power,
    o_p,
    o_upper_pprime,
    sylow,
)
from .morphisms import AutGrp
from .perm import Perm, PermGroup


# ---------------------------------------------------------------------------
# linear algebra mod p


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{x : A x = 0}``."""
    rows, cols = A.shape
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def row_space(rows: np.ndarray, p: int) -> np.ndarray:
    if rows.size == 0:
        return rows.reshape(0, rows.shape[-1] if rows.ndim == 2 else 0)
    R, piv = rref(rows, p)
    return R[: len(piv)]


def mat_str(M: np.ndarray) -> str:
    return "[" + ",".join("[" + ",".join(str(int(x)) for x in row) + "]" for row in M) + "]"


def mat_parse(text: str, p: int) -> np.ndarray:
    import json

    data = json.loads(text)
    M = np.array(data, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"not a square matrix: {text!r}")
    return M % p


# ---------------------------------------------------------------------------
# representations


@dataclass
class MatRep:
    """A GF(p) representation of ``acting``; ``mats[i]`` is the image of ``acting.gens[i]``.

    Vectors are rows and act on the right: ``v -> v M``.
    """

    p: int
    dim: int
    acting: PermGroup
    mats: list[np.ndarray]
    section: tuple[Subgrp, Subgrp] | None = None
    basis: list[Perm] | None = None
    matrix_fn: Callable[[Perm], np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        ident = np.eye(self.dim, dtype=np.int64)
        for M in self.mats:
            if rank(M, self.p) != self.dim:
                raise ValueError("matrix is not invertible over GF(p)")
        gens = self.acting.gens
        for i, j in itertools.product(range(len(gens)), repeat=2):
            lhs = self.matrix(gens[i] * gens[j])
            rhs = (self.mats[i] @ self.mats[j]) % self.p
            if not np.array_equal(lhs, rhs):
                raise ValueError("matrix assignment is not multiplicative")
        self._ident = ident

    def matrix(self, g: Perm) -> np.ndarray:
        if self.matrix_fn is not None:
            return self.matrix_fn(g)
        return self._table()[g]

    def _table(self) -> dict[Perm, np.ndarray]:
        cache = getattr(self, "_mat_table", None)
        if cache is None:
            cache = {self.acting.identity: np.eye(self.dim, dtype=np.int64)}
            queue = [self.acting.identity]
            for x in queue:
                for g, M in zip(self.acting.gens, self.mats):
                    y = x * g
                    if y not in cache:
                        cache[y] = (cache[x] @ M) % self.p
                        queue.append(y)
            self._mat_table = cache
        return cache

    def kernel(self) -> Subgrp:
        ident = np.eye(self.dim, dtype=np.int64)
        ker = [g for g in self.acting.elements() if np.array_equal(self.matrix(g), ident)]
        return Subgrp.from_elements(self.acting, ker)

    @property
    def faithful(self) -> bool:
        return self.kernel().order == 1


def _as_acting(G) -> tuple[PermGroup, Callable[[Perm, Perm], Perm]]:
    if isinstance(G, AutGrp):
        t = G.table

        def act(x: Perm, a: Perm) -> Perm:
            return t.elems[a[t.index[x]]]

        return G.perm_model, act
    return as_group(G), conj_by


def section_matrices(G, upper: Subgrp, lower: Subgrp, p: int) -> MatRep:
    """Matrices of the action of ``G`` on ``upper/lower``.

    ``G`` is a permutation group acting by conjugation or an ``AutGrp``
    acting through its automorphisms.  ``upper`` must be abelian.
    """
    acting, act = _as_acting(G)
    uset = element_set(upper)
    lset = element_set(lower)
    if not lset <= uset or not is_normal(upper, lower):
        raise NotASubgroup("lower is not normal in upper")
    ugens = upper.gens
    if any(a * b != b * a for a in ugens for b in ugens):
        raise ValueError("section upper term is not abelian")
    if any((x ** p) not in lset for x in ugens):
        raise ValueError("section is not elementary abelian")
    for g in acting.gens:
        if any(act(x, g) not in uset for x in ugens) or \
                any(act(x, g) not in lset for x in lower.gens):
            raise ValueError("section is not invariant under the acting group")
    index = len(uset) // len(lset)
    dim = round(math.log(index, p)) if index > 1 else 0
    if p ** dim != index:
        raise ValueError("section order is not a power of p")

    basis: list[Perm] = []
    span = set(lset)
    for x in sorted(uset):
        if x in span:
            continue
        basis.append(x)
        span = set(_span(basis, lset, p, upper.degree))
        if len(span) == len(uset):
            break
    coords: dict[Perm, tuple[int, ...]] = {}
    ident = Perm.identity(upper.degree)
    for c in itertools.product(range(p), repeat=dim):
        y = ident
        for b, k in zip(basis, c):
            y = y * (b ** k)
        for n in lset:
            coords[n * y] = c

    def matrix_fn(g: Perm) -> np.ndarray:
        return np.array([coords[act(b, g)] for b in basis], dtype=np.int64).reshape(dim, dim)

    mats = [matrix_fn(g) for g in acting.gens]
    return MatRep(p, dim, acting, mats, (upper, lower), basis, matrix_fn)


def _span(basis, lset, p, degree):
    out = set(lset)
    for b in basis:
        out = {x * (b ** k) for x in out for k in range(p)}
    return out


def vector_index(v: Sequence[int], p: int) -> int:
    out = 0
    for x in v:
        out = out * p + int(x)
    return out


def matrix_rep(p: int, mats: Sequence[np.ndarray]) -> MatRep:
    """The matrix group ``<mats>`` acting on ``GF(p)^dim``, realized on its ``p^dim`` vectors."""
    mats = [np.array(M, dtype=np.int64) % p for M in mats]
    if not mats:
        raise ValueError("at least one matrix required")
    dim = mats[0].shape[0]
    vectors = np.array(list(itertools.product(range(p), repeat=dim)), dtype=np.int64)
    weights = p ** np.arange(dim - 1, -1, -1)
    gens = []
    for M in mats:
        if rank(M, p) != dim:
            raise ValueError("matrix is not invertible over GF(p)")
        img = ((vectors @ M) % p) @ weights
        gens.append(Perm(int(i) for i in img))
    acting = PermGroup(gens, degree=p ** dim)
    unit = [vector_index(row, p) for row in np.eye(dim, dtype=np.int64)]

    def matrix_fn(g: Perm) -> np.ndarray:
        return vectors[[g[u] for u in unit]].copy()

    return MatRep(p, dim, acting, mats, None, None, matrix_fn)


# ---------------------------------------------------------------------------
# fixed spaces, commutators, offenders


@dataclass(frozen=True)
class FixedSpace:
    dim: int
    basis: np.ndarray


def _elements_of(H) -> list[Perm]:
    if isinstance(H, Subgrp):
        return list(H.gens)
    return list(H)


def fixed_subspace(M: MatRep, H) -> FixedSpace:
    """``C_V(H)`` for a subgroup or a list of acting-group elements."""
    hs = _elements_of(H)
    ident = np.eye(M.dim, dtype=np.int64)
    blocks = [(M.matrix(h) - ident) % M.p for h in hs]
    if not blocks or M.dim == 0:
        return FixedSpace(M.dim, ident)
    stacked = np.hstack(blocks)
    basis = nullspace(stacked.T, M.p)
    return FixedSpace(len(basis), basis)


def commutator_space(M: MatRep, W: np.ndarray, A: Iterable[Perm]) -> np.ndarray:
    """Row basis of ``[W, A]`` for a subspace ``W`` (rows) and elements ``A``."""
    ident = np.eye(M.dim, dtype=np.int64)
    rows = [(W @ ((M.matrix(a) - ident) % M.p)) % M.p for a in A]
    if not rows or W.shape[0] == 0:
        return np.zeros((0, M.dim), dtype=np.int64)
    return row_space(np.vstack(rows), M.p)


@dataclass(frozen=True)
class OffenderRecord:
    subgroup: Subgrp
    cv_dim: int
    a_rank: int
    is_offender: bool


def _require_in_acting(M: MatRep, A: Subgrp):
    if not all(M.acting.contains(g) for g in A.gens):
        raise NotASubgroup("candidate does not lie in the acting group")


def offenders(M: MatRep, candidates: Sequence[Subgrp]) -> list[OffenderRecord]:
    out = []
    ident = np.eye(M.dim, dtype=np.int64)
    for A in candidates:
        _require_in_acting(M, A)
        mats = {M.matrix(a).tobytes(): M.matrix(a) for a in A.elements()}
        images = list(mats.values())
        quotient_order = len(images)
        a_rank = _ilog(quotient_order, M.p)
        elem_ab = (M.p ** a_rank == quotient_order and all(
            np.array_equal((x @ y) % M.p, (y @ x) % M.p) for x in images for y in images)
            and all(np.array_equal(np.linalg.matrix_power(x, M.p) % M.p, ident) for x in images))
        cv = fixed_subspace(M, A).dim
        acts = quotient_order > 1
        out.append(OffenderRecord(A, cv, a_rank,
                                  bool(elem_ab and acts and M.dim - cv <= a_rank)))
    return out


def _ilog(n: int, p: int) -> int:
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def action_degree(M: MatRep, A: Subgrp) -> int | float:
    """Least ``k`` with ``[V, A, ..., A] = 0`` (``k`` commutators); ``inf`` if none."""
    if not is_p_power(A.order, M.p):
        raise ValueError("A is not a p-group")
    _require_in_acting(M, A)
    elems = A.elements()
    W = np.eye(M.dim, dtype=np.int64)
    for k in range(1, M.dim + 2):
        W = commutator_space(M, W, elems)
        if W.shape[0] == 0:
            return k
    return math.inf


# ---------------------------------------------------------------------------
# premise reports


def _premise(value, witness=None) -> dict:
    doc = {"value": value}
    if witness is not None:
        doc["witness"] = witness
    return doc


def _is_extraspecial_plus_order27(S: Subgrp) -> bool:
    if S.order != 27:
        return False
    if all(a * b == b * a for a in S.gens for b in S.gens):
        return False
    return all((x ** 3).is_identity() for x in S.elements())


def premise_report(M: MatRep, kind: str) -> dict:
    """Evaluate the computable premises of a module-based group identification.

    Only premises are reported; no identification of the acting group is
    attempted.
    """
    if kind == "dim6-check":
        return _dim6_report(M)
    if kind == "j2-check":
        return _j2_report(M)
    raise ValueError(f"unknown report kind {kind!r}")


def _order_p_subgroups(A: Subgrp, p: int) -> list[list[Perm]]:
    seen = {}
    for x in A.elements():
        if x.is_identity():
            continue
        key = frozenset(x ** k for k in range(p))
        seen.setdefault(key, x)
    return sorted(([x] for x in seen.values()), key=lambda w: w[0])


def _dim6_report(M: MatRep) -> dict:
    p, G = M.p, M.acting
    rep: dict = {"kind": "dim6-check", "p": p, "dim": M.dim}
    notes = []
    if p != 3:
        notes.append("expected p = 3")
    if M.dim != 6:
        notes.append("expected dimension 6")
    rep["notes"] = notes
    prem: dict = {}
    prem["field_gf3"] = _premise(p == 3)
    prem["dimension_6"] = _premise(M.dim == 6)
    prem["faithful"] = _premise(M.faithful)
    prem["o_p_trivial"] = _premise(o_p(G, p).order == 1) if G.order % p == 0 \
        else _premise(True)
    if G.order % p == 0:
        S = sylow(G, p)
        prem["sylow_extraspecial_27_exp3"] = _premise(_is_extraspecial_plus_order27(S),
                                                      {"sylow_order": S.order})
    else:
        S = None
        prem["sylow_extraspecial_27_exp3"] = _premise(False, {"sylow_order": 1})
    if G.under_cap:
        prem["generated_by_p_elements"] = _premise(o_upper_pprime(G, p).order == G.order)
    else:
        prem["generated_by_p_elements"] = _premise("unevaluated")
    found = None
    if S is not None and M.dim > 0:
        for A in all_subgroups(S.group):
            if A.order != p * p or not _elem_abelian(A, p):
                continue
            if M.dim - fixed_subspace(M, A).dim != 3:
                continue
            if all(M.dim - fixed_subspace(M, [a]).dim == 3
                   for a in A.elements() if not a.is_identity()):
                found = A
                break
    prem["order9_subgroup_codim3"] = _premise(
        found is not None,
        {"matrices": [mat_str(M.matrix(g)) for g in found.gens]} if found is not None else None)
    rep["premises"] = prem
    return rep


def _elem_abelian(A: Subgrp, p: int) -> bool:
    return all(a * b == b * a for a in A.gens for b in A.gens) and \
        all((x ** p).is_identity() for x in A.gens)


def _j2_report(M: MatRep) -> dict:
    p, G = M.p, M.acting
    rep: dict = {"kind": "j2-check", "p": p, "dim": M.dim}
    notes = []
    if p != 5:
        notes.append("expected p = 5")
    if M.dim != 6:
        notes.append("expected dimension 6")
    rep["notes"] = notes
    prem: dict = {}
    if G.order % p == 0:
        S = sylow(G, p)
    else:
        S = Subgrp(G, [], elements=[G.identity])
    prem["i_sylow_elementary_abelian_25"] = _premise(S.order == p * p and _elem_abelian(S, p),
                                                     {"sylow_order": S.order})
    if G.under_cap:
        prem["ii_generated_by_sylow_conjugates"] = _premise(
            S.order > 1 and o_upper_pprime(G, p).order == G.order)
    else:
        prem["ii_generated_by_sylow_conjugates"] = _premise("unevaluated")
    prem["iii_o_p_trivial"] = _premise(S.order == 1 or o_p(G, p).order == 1)
    cs = fixed_subspace(M, S).dim
    elems = [s for s in S.elements() if not s.is_identity()]
    point_dims = sorted({fixed_subspace(M, [s]).dim for s in elems})
    prem["iv_fixed_space_orders"] = _premise(
        S.order > 1 and cs == 1 and point_dims == [2],
        {"cv_s_dim": cs, "cv_elements_dims": point_dims})
    cubic = [s for s in elems if action_degree(M, _cyclic(G, s)) == 3]
    prem["v_cubic_elements"] = _premise(bool(cubic),
                                        {"matrix": mat_str(M.matrix(cubic[0]))} if cubic else None)
    rep["premises"] = prem
    return rep


def _cyclic(G: PermGroup, s: Perm) -> Subgrp:
    return Subgrp(G, [s])


def elementary_abelian_subgroups(P, p: int) -> list[Subgrp]:
    """Nontrivial elementary abelian subgroups, for the offender oracle."""
    return [A for A in all_subgroups(as_group(P)) if A.order > 1 and _elem_abelian(A, p)]
