"""Multiplication tables for small groups, with subgroups as bitmasks.

Element ``i`` of a table is the ``i``-th element of the group in canonical
order, so the identity is always element 0 and a subgroup mask read from
the low bit upwards lists its elements in canonical order.
"""

from __future__ import annotations

from .errors import CapExceeded
from .perm import Perm, PermGroup

TABLE_CAP = 1024


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class GroupTable:
    def __init__(self, group: PermGroup):
        if group.order > TABLE_CAP:
            raise CapExceeded("multiplication table", group.order, TABLE_CAP)
        self.group = group
        self.elems: list[Perm] = list(group.elements())
        self.n = len(self.elems)
        self.index = {g: i for i, g in enumerate(self.elems)}
        idx = self.index
        self.mul = [[idx[a * b] for b in self.elems] for a in self.elems]
        self.inv = [idx[~a] for a in self.elems]
        self.full = (1 << self.n) - 1
        self._members: dict[int, list[int]] = {}
        self._orders: list[int] | None = None
        self.gen_idx = [idx[g] for g in group.gens]

    # element helpers -----------------------------------------------------

    def conj(self, i: int, x: int) -> int:
        """Index of ``x^-1 * e_i * x``."""
        return self.mul[self.mul[self.inv[x]][i]][x]

    def comm(self, i: int, j: int) -> int:
        """Index of ``[e_i, e_j] = e_i^-1 e_j^-1 e_i e_j``."""
        m = self.mul
        return m[m[m[self.inv[i]][self.inv[j]]][i]][j]

    def power(self, i: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.mul[r][i]
        return r

    @property
    def orders(self) -> list[int]:
        if self._orders is None:
            out = []
            for i in range(self.n):
                k, x = 1, i
                while x != 0:
                    x = self.mul[x][i]
                    k += 1
                out.append(k)
            self._orders = out
        return self._orders

    # masks -------------------------------------------------------------------

    def members(self, mask: int) -> list[int]:
        m = self._members.get(mask)
        if m is None:
            m = self._members[mask] = bits(mask)
        return m

    def mask_of(self, items) -> int:
        mask = 0
        for x in items:
            if isinstance(x, Perm):
                x = self.index[x]
            mask |= 1 << x
        return mask

    def perms(self, mask: int) -> list[Perm]:
        return [self.elems[i] for i in self.members(mask)]

    @staticmethod
    def size(mask: int) -> int:
        return bin(mask).count("1")

    def key(self, mask: int) -> tuple[int, ...]:
        return tuple(self.members(mask))

    def generate(self, gens, start: int = 1) -> int:
        """Mask of the subgroup generated by ``gens`` and the subgroup ``start``."""
        gens = [g for g in gens if g != 0]
        if start != 1:
            gens = gens + self.gens_of(start)
        mask = 1
        queue = [0]
        mul = self.mul
        for a in queue:
            row = mul[a]
            for g in gens:
                b = row[g]
                if not (mask >> b) & 1:
                    mask |= 1 << b
                    queue.append(b)
        return mask

    def gens_of(self, mask: int) -> list[int]:
        """Greedy generating set: scan elements in canonical order."""
        return list(_greedy_gens(self, mask))

    def image(self, mask: int, x: int) -> int:
        """Mask of the conjugate ``H^x``."""
        out = 0
        for i in self.members(mask):
            out |= 1 << self.conj(i, x)
        return out

    def normalizes(self, x: int, mask: int, gens=None) -> bool:
        if gens is None:
            gens = self.gens_of(mask)
        return all((mask >> self.conj(g, x)) & 1 for g in gens)

    def normalizer(self, mask: int, within: int | None = None) -> int:
        gens = self.gens_of(mask)
        out = 0
        for x in self.members(self.full if within is None else within):
            if self.normalizes(x, mask, gens):
                out |= 1 << x
        return out

    def centralizer(self, mask: int, within: int | None = None) -> int:
        gens = self.gens_of(mask)
        mul = self.mul
        out = 0
        for x in self.members(self.full if within is None else within):
            if all(mul[x][g] == mul[g][x] for g in gens):
                out |= 1 << x
        return out

    def center(self, mask: int | None = None) -> int:
        mask = self.full if mask is None else mask
        return self.centralizer(mask, mask)

    def is_abelian(self, mask: int) -> bool:
        gens = self.gens_of(mask)
        return all(self.mul[a][b] == self.mul[b][a] for a in gens for b in gens)

    def is_elementary_abelian(self, mask: int, p: int) -> bool:
        orders = self.orders
        return self.is_abelian(mask) and all(orders[i] in (1, p) for i in self.members(mask))

    def commutator(self, a: int, b: int) -> int:
        """Mask of ``[A, B]`` for subgroups ``A``, ``B`` normalizing each other."""
        ga, gb = self.gens_of(a), self.gens_of(b)
        seeds = [self.comm(x, y) for x in ga for y in gb]
        mask = self.generate(seeds)
        # close under conjugation by A and B
        conj_by = ga + gb
        while True:
            extra = [self.conj(g, x) for g in self.gens_of(mask) for x in conj_by]
            new = self.generate(extra, mask)
            if new == mask:
                return mask
            mask = new

    def product(self, a: int, b: int) -> int:
        return self.generate(self.gens_of(a) + self.gens_of(b))

    def normal_core(self, mask: int, acting: list[int]) -> int:
        core = mask
        while True:
            new = core
            for x in acting:
                new &= self.image(core, x)
            if new == core:
                return core
            core = new


def _greedy_gens(table: GroupTable, mask: int):
    cache = table.__dict__.setdefault("_gens_cache", {})
    hit = cache.get(mask)
    if hit is not None:
        return hit
    gens: list[int] = []
    current = 1
    for i in table.members(mask):
        if not (current >> i) & 1:
            gens.append(i)
            current = table.generate(gens)
            if current == mask:
                break
    cache[mask] = gens
    return gens
