"""Verified homomorphisms, automorphism groups, strongly p-embedded subgroups."""

from __future__ import annotations

from typing import Sequence

from .config import CAPS
from .errors import CapExceeded, ImageOutsideCodomain, NotAHomomorphism, NotASubgroup
from .groups import (
    GroupLike,
    Subgrp,
    all_subgroups,
    as_group,
    conj_by,
    element_set,
    frattini,
    is_normal,
    is_p_power,
    quotient_action,
    sylow_subgroups,
    table_of,
)
from .perm import Perm, PermGroup
from .table import GroupTable


class GroupMap:
    """A homomorphism ``dom -> cod`` given by generator images.

    Construction verifies multiplicativity by walking the Cayley graph of
    ``dom``; the resulting element table is kept in ``table``.
    """

    def __init__(self, dom: Subgrp, cod: Subgrp, images: Sequence[Perm],
                 table: dict[Perm, Perm] | None = None):
        if len(images) != len(dom.gens):
            raise ValueError("one image per domain generator required")
        self.dom = dom
        self.cod = cod
        self.images = tuple(images)
        if table is None:
            table = _extend(dom.gens, self.images, dom.degree, cod.degree)
            bad = [y for y in table.values() if not cod.contains(y)]
            if bad:
                raise ImageOutsideCodomain(f"{bad[0]} is not in the codomain")
        self.table = table

    @property
    def injective(self) -> bool:
        return len(set(self.table.values())) == len(self.table)

    def __call__(self, x: Perm) -> Perm:
        return self.table[x]

    def image(self) -> Subgrp:
        return Subgrp.from_elements(self.cod.parent, set(self.table.values()))

    def then(self, other: GroupMap) -> GroupMap:
        """``self`` followed by ``other`` (right action)."""
        table = {x: other.table[y] for x, y in self.table.items()}
        return GroupMap(self.dom, other.cod, [table[g] for g in self.dom.gens], table)

    def restrict(self, sub: Subgrp) -> GroupMap:
        return GroupMap(sub, self.cod, [self.table[g] for g in sub.gens],
                        {x: self.table[x] for x in sub.elements()})

    def inverse(self) -> GroupMap:
        if not self.injective:
            raise ValueError("map is not injective")
        img = self.image()
        table = {y: x for x, y in self.table.items()}
        return GroupMap(img, self.dom, [table[g] for g in img.gens], table)

    def is_automorphism_of(self, P: GroupLike) -> bool:
        pset = element_set(P)
        return (set(self.table) == pset and set(self.table.values()) == pset)

    def __eq__(self, other):
        if not isinstance(other, GroupMap):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __repr__(self):
        pairs = "; ".join(f"{g} -> {w}" for g, w in zip(self.dom.gens, self.images))
        return f"GroupMap({pairs})"


def _extend(gens, images, degree, cod_degree) -> dict[Perm, Perm]:
    ident = Perm.identity(degree)
    table = {ident: Perm.identity(cod_degree)}
    queue = [ident]
    for x in queue:
        fx = table[x]
        for g, w in zip(gens, images):
            y = x * g
            v = fx * w
            old = table.get(y)
            if old is None:
                table[y] = v
                queue.append(y)
            elif old != v:
                raise NotAHomomorphism(f"generator relation violated at {y}")
    return table


def map_from_images(dom: Subgrp, cod: Subgrp, images: Sequence[Perm]) -> GroupMap:
    if dom.order > CAPS.element:
        raise CapExceeded("map_from_images", dom.order, CAPS.element)
    return GroupMap(dom, cod, images)


def identity_map(P: Subgrp) -> GroupMap:
    return GroupMap(P, P, list(P.gens), {x: x for x in P.elements()})


def conjugation_map(P: Subgrp, g: Perm, cod: Subgrp | None = None) -> GroupMap:
    """``x -> g^-1 x g`` on ``P``."""
    table = {x: conj_by(x, g) for x in P.elements()}
    if cod is None:
        cod = Subgrp.from_elements(P.parent, table.values())
    return GroupMap(P, cod, [table[x] for x in P.gens], table)


# ---------------------------------------------------------------------------
# automorphism groups


class AutGrp:
    """``Aut(P)`` as a permutation group on the element table of ``P``.

    A point of ``perm_model`` is the index of an element of ``P`` in
    canonical order.
    """

    def __init__(self, base: PermGroup, perm_model: PermGroup, gen_seq: list[int],
                 table: GroupTable):
        self.base = base
        self.table = table
        self.perm_model = perm_model
        self.gen_seq = gen_seq
        whole = Subgrp.whole(base)
        self._whole = whole
        self.dictionary = [(a, self.to_map(a)) for a in perm_model.gens]
        inn_gens = [self.inner(g) for g in base.gens]
        self.inn = Subgrp(perm_model, [a for a in inn_gens if not a.is_identity()])
        self.out_order = perm_model.order // self.inn.order

    @property
    def order(self) -> int:
        return self.perm_model.order

    def inner(self, g: Perm) -> Perm:
        t = self.table
        gi = t.index[g]
        return Perm(t.conj(i, gi) for i in range(t.n))

    def to_map(self, a: Perm) -> GroupMap:
        t = self.table
        table = {t.elems[i]: t.elems[a[i]] for i in range(t.n)}
        return GroupMap(self._whole, self._whole, [table[g] for g in self.base.gens], table)

    def from_map(self, phi: GroupMap) -> Perm:
        t = self.table
        return Perm(t.index[phi.table[t.elems[i]]] for i in range(t.n))

    def from_images(self, images: Sequence[Perm]) -> Perm:
        """Automorphism sending ``base.gens[i]`` to ``images[i]``."""
        phi = map_from_images(self._whole, self._whole, images)
        if not phi.injective:
            raise NotAHomomorphism("map is not injective")
        return self.from_map(phi)

    def image_mask(self, a: Perm, mask: int) -> int:
        out = 0
        for i in self.table.members(mask):
            out |= 1 << a[i]
        return out

    def __repr__(self):
        return f"<AutGrp order={self.order} out_order={self.out_order}>"


def _generating_sequence(t: GroupTable, p: int | None) -> list[int]:
    if t.n == 1:
        return []
    if p is not None:
        phi = t.mask_of(frattini(t.group, p).elements())
        seq: list[int] = []
        cur = phi
        for x in range(t.n):
            if not (cur >> x) & 1:
                seq.append(x)
                cur = t.generate(seq, phi)
                if cur == t.full:
                    break
        return seq
    seq = []
    cur = 1
    while cur != t.full:
        best, best_size = None, -1
        for x in range(t.n):
            if (cur >> x) & 1:
                continue
            size = t.size(t.generate(seq + [x]))
            if size > best_size:
                best, best_size = x, size
        seq.append(best)
        cur = t.generate(seq)
    return seq


def _partial(t: GroupTable, seq: list[int], imgs: list[int]) -> dict[int, int] | None:
    """Extend ``seq[i] -> imgs[i]`` to ``<seq>``; None on conflict or collapse."""
    m = {0: 0}
    queue = [0]
    mul = t.mul
    for x in queue:
        fx = m[x]
        for g, w in zip(seq, imgs):
            y = mul[x][g]
            v = mul[fx][w]
            old = m.get(y)
            if old is None:
                m[y] = v
                queue.append(y)
            elif old != v:
                return None
    if len(set(m.values())) != len(m):
        return None
    return m


def automorphism_group(P: GroupLike) -> AutGrp:
    """Automorphisms by a stabilizer-chain search over generator images.

    Level ``i`` of the search is the stabilizer of the first ``i`` entries of
    a fixed generating sequence.  Candidate images are filtered by element
    order and, for p-groups, by independence modulo the Frattini subgroup.
    """
    Pg = as_group(P)
    if Pg.order > CAPS.aut:
        raise CapExceeded("automorphism group", Pg.order, CAPS.aut)
    cached = getattr(Pg, "_aut_cache", None)
    if cached is not None:
        return cached
    t = table_of(Pg)
    n = t.n
    p = _prime_of_p_group(n)
    seq = _generating_sequence(t, p)
    d = len(seq)
    orders = t.orders
    phi_mask = t.mask_of(frattini(Pg, p).elements()) if p is not None else 1

    def candidates(k: int, prefix: list[int]) -> list[int]:
        want = orders[seq[k]]
        out = [x for x in range(n) if orders[x] == want]
        if p is not None:
            span = t.generate(prefix, phi_mask)
            out = [x for x in out if not (span >> x) & 1]
        return out

    def search(prefix: list[int]):
        k = len(prefix)
        m = _partial(t, seq[:k], prefix)
        if m is None:
            return None
        if k == d:
            return m if len(m) == n else None
        for c in candidates(k, prefix):
            r = search(prefix + [c])
            if r is not None:
                return r
        return None

    found: list[Perm] = []
    for i in reversed(range(d)):
        prefix = list(seq[:i])
        for c in candidates(i, prefix):
            if c == seq[i]:
                continue
            orbit = _orbit(seq[i], found)
            if c in orbit:
                continue
            m = search(prefix + [c])
            if m is not None:
                found.append(Perm(m[x] for x in range(n)))
    model = PermGroup(found, degree=n)
    aut = AutGrp(Pg, model, seq, t)
    Pg._aut_cache = aut
    return aut


def _orbit(pt: int, gens) -> set[int]:
    seen = {pt}
    queue = [pt]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _prime_of_p_group(n: int) -> int | None:
    if n == 1:
        return None
    q = 2
    while n % q:
        q += 1
    return q if is_p_power(n, q) else None


def inn_subgroup(aut: AutGrp) -> Subgrp:
    return aut.inn


def induced_on_quotient(alpha: GroupMap, N: Subgrp) -> GroupMap:
    """The automorphism of ``P/N`` induced by ``alpha``; ``P/N`` acts regularly."""
    P = alpha.dom
    if not is_normal(P, N):
        raise NotASubgroup("N is not normal in P")
    if {alpha(x) for x in N.elements()} != set(N.elements()):
        raise NotASubgroup("N is not alpha-invariant")
    Q, project = quotient_action(P, N)
    whole = Subgrp.whole(Q)
    images = [project(alpha(g)) for g in P.gens]
    return map_from_images(whole, whole, images)


# ---------------------------------------------------------------------------
# strongly p-embedded subgroups


def _union_find_components(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in range(n)})


def has_strongly_p_embedded(H: GroupLike, p: int) -> tuple[bool, int]:
    """Sylow intersection graph test.

    ``H`` has a strongly p-embedded subgroup iff the graph on ``Syl_p(H)``
    joining ``P, Q`` when ``P ∩ Q != 1`` is disconnected.  Returns the flag
    and the number of connected components.
    """
    Hg = as_group(H)
    if Hg.order % p:
        raise ValueError(f"{p} does not divide |H| = {Hg.order}")
    if not Hg.under_cap:
        raise CapExceeded("strongly p-embedded test", Hg.order, Hg.cap)
    syl = sylow_subgroups(Hg, p)
    sets = [s.element_set for s in syl]
    edges = [(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets))
             if len(sets[i] & sets[j]) > 1]
    comps = _union_find_components(len(sets), edges)
    return comps > 1, comps


def strongly_p_embedded_oracle(H: GroupLike, p: int) -> tuple[bool, Subgrp | None]:
    """Definitional check over every proper subgroup ``M < H``."""
    Hg = as_group(H)
    for M in all_subgroups(Hg):
        if is_strongly_p_embedded_in(M, Hg, p):
            return True, M
    return False, None


def is_strongly_p_embedded_in(M: Subgrp, H: GroupLike, p: int) -> bool:
    """Is the given proper subgroup ``M`` strongly p-embedded in ``H``?"""
    Hg = as_group(H)
    if M.order == Hg.order or M.order % p:
        return False
    mset = M.element_set
    for h in Hg.elements():
        if h in mset:
            continue
        if sum(1 for x in M.elements() if conj_by(x, h) in mset) % p == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# serialization


def aut_print(phi: GroupMap) -> str:
    """``aut: (g1 -> w1; g2 -> w2)`` over the domain generators."""
    from .perm import perm_print

    pairs = "; ".join(f"{perm_print(g)} -> {perm_print(w)}"
                      for g, w in zip(phi.dom.gens, phi.images))
    return f"aut: ({pairs})"


def aut_parse(text: str, dom: Subgrp, cod: Subgrp | None = None) -> GroupMap:
    """Inverse of :func:`aut_print`; generators must match ``dom.gens`` in order."""
    from .errors import ParseError
    from .perm import perm_parse

    s = text.strip()
    if not s.startswith("aut:"):
        raise ParseError("expected 'aut:'")
    body = s[4:].strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError("automorphism must be parenthesized")
    body = body[1:-1].strip()
    pairs = [x.strip() for x in body.split(";")] if body else []
    src, dst = [], []
    for pair in pairs:
        if "->" not in pair:
            raise ParseError(f"malformed pair {pair!r}")
        a, b = (x.strip() for x in pair.split("->", 1))
        src.append(perm_parse(a, dom.degree))
        dst.append(perm_parse(b, (cod or dom).degree))
    cod = cod if cod is not None else dom
    if tuple(src) == tuple(dom.gens):
        return map_from_images(dom, cod, dst)
    alt = Subgrp(dom.parent, src)
    if alt.order != dom.order or not all(dom.contains(g) for g in src):
        raise ParseError("the listed sources do not generate the domain")
    phi = map_from_images(alt, cod, dst)
    return GroupMap(dom, cod, [phi(g) for g in dom.gens], phi.table)
