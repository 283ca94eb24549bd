"""Permutation groups with an enumerated element closure.

Permutations are tuples ``p`` with ``i -> p[i]``; composition follows the
right action used throughout the package, ``(g h)[i] = h[g[i]]``.  Every
element carries a word in the generators (BFS order), which is how
homomorphisms defined on generators get evaluated on arbitrary elements.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property

import numpy as np

DEFAULT_CAP = 20000


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


def compose(g: tuple, h: tuple) -> tuple:
    return tuple(h[i] for i in g)


def invert(g: tuple) -> tuple:
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


class PermGroup:
    def __init__(self, degree: int, gens, cap: int = DEFAULT_CAP):
        self.degree = int(degree)
        gens = [tuple(int(x) for x in g) for g in gens]
        for g in gens:
            if len(g) != self.degree or sorted(g) != list(range(self.degree)):
                raise GroupError(f"{list(g)} is not a permutation of degree {self.degree}")
        self.gens = tuple(gens)
        self.cap = cap
        self._enumerate()

    def _enumerate(self) -> None:
        ident = tuple(range(self.degree))
        elements = [ident]
        words = [()]
        parent = [(-1, -1)]
        index = {ident: 0}
        # right multiplication table by generators
        table = []
        queue = deque([0])
        while queue:
            i = queue.popleft()
            row = []
            for k, g in enumerate(self.gens):
                y = compose(elements[i], g)
                j = index.get(y)
                if j is None:
                    if len(elements) >= self.cap:
                        raise CapExceeded(f"group closure exceeds the cap of {self.cap} elements")
                    j = len(elements)
                    index[y] = j
                    elements.append(y)
                    words.append(words[i] + (k,))
                    parent.append((i, k))
                    queue.append(j)
                row.append(j)
            table.append(row)
        self.elements = elements
        self.words = words
        self.parent = parent
        self.index = index
        self.gen_table = np.array(table, dtype=np.int64).reshape(len(elements), len(self.gens))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def mul(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self.index[invert(self.elements[i])]

    @cached_property
    def mul_table(self) -> np.ndarray:
        n = self.order
        return np.array([[self.mul(i, j) for j in range(n)] for i in range(n)], dtype=np.int64)

    def subgroup_closure(self, seeds) -> set[int]:
        """Element indices of the subgroup generated by ``seeds``."""
        ident = 0
        members = {ident}
        frontier = [ident]
        seeds = list(dict.fromkeys(seeds))
        while frontier:
            nxt = []
            for x in frontier:
                for s in seeds:
                    y = self.mul(x, s)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return members

    def eval_hom_f2(self, gen_images, i: int) -> int:
        """Value at element ``i`` of the map to F_2 given on generators."""
        return sum(gen_images[k] for k in self.words[i]) & 1

    def _key(self):
        return (self.degree, self.gens)

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, ngens={self.ngens})"

    def to_dict(self) -> dict:
        return {"degree": self.degree, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_dict(cls, d: dict, cap: int = DEFAULT_CAP) -> "PermGroup":
        return group_make(d["degree"], d["gens"], cap=cap)


_GROUP_CACHE: dict = {}


def group_make(degree: int, generator_permutations, cap: int = DEFAULT_CAP) -> PermGroup:
    key = (int(degree), tuple(tuple(int(x) for x in g) for g in generator_permutations), cap)
    if key not in _GROUP_CACHE:
        _GROUP_CACHE[key] = PermGroup(degree, generator_permutations, cap=cap)
    return _GROUP_CACHE[key]


def two_torsion_characters(g: PermGroup):
    """A basis of Hom(G, C_2) as lists of generator images.

    Uses N = <commutators, squares>; G/N is elementary abelian of order
    2^t.  Coset coordinates are assigned by adjoining generator cosets in
    order, so basis vector j is the j-th generator that is new modulo the
    previous ones.
    """
    n = g.order
    seeds = set()
    for i in range(n):
        seeds.add(g.mul(i, i))
    for a in range(g.ngens):
        for b in range(g.ngens):
            x, y = g.index[g.gens[a]], g.index[g.gens[b]]
            comm = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))
            seeds.add(comm)
    # normal closure: conjugates of seeds by generators
    normal = g.subgroup_closure(seeds)
    while True:
        extra = set()
        for s in normal:
            for k in range(g.ngens):
                x = g.index[g.gens[k]]
                c = g.mul(g.mul(g.inv(x), s), x)
                if c not in normal:
                    extra.add(c)
        if not extra:
            break
        normal = g.subgroup_closure(normal | extra)
    normal = sorted(normal)

    def coset_key(i: int) -> int:
        return min(g.mul(i, m) for m in normal)

    coords: dict[int, tuple] = {coset_key(0): ()}
    gen_vecs = []
    basis_len = 0
    for k in range(g.ngens):
        x = g.index[g.gens[k]]
        key = coset_key(x)
        if key not in coords:
            new = {}
            for ck, v in coords.items():
                new[coset_key(g.mul(ck, x))] = v + (1,)
            coords = {ck: v + (0,) for ck, v in coords.items()}
            coords.update(new)
            basis_len += 1
        gen_vecs.append(key)
    t = basis_len
    vecs = [coords[kk] + (0,) * (t - len(coords[kk])) for kk in gen_vecs]
    taus = [[vecs[k][j] for k in range(g.ngens)] for j in range(t)]
    return t, taus


def _cyclic_perm(n: int) -> tuple:
    return tuple((i + 1) % n for i in range(n))


def cyclic_group(n: int) -> PermGroup:
    return group_make(n, [_cyclic_perm(n)])


def symmetric_group(n: int) -> PermGroup:
    if n == 2:
        return group_make(2, [(1, 0)])
    swap = (1, 0) + tuple(range(2, n))
    return group_make(n, [swap, _cyclic_perm(n)])


def alternating_group_5() -> PermGroup:
    return group_make(5, [(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)])


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on n points."""
    refl = tuple((-i) % n for i in range(n))
    return group_make(n, [_cyclic_perm(n), refl])


def quaternion_group() -> PermGroup:
    """Q8 in its regular permutation representation, generated by i and j."""
    # elements: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    table = {
        ("1", "i"): "i", ("1", "j"): "j",
        ("i", "i"): "-1", ("i", "j"): "k",
        ("j", "i"): "-k", ("j", "j"): "-1",
        ("k", "i"): "j", ("k", "j"): "-i",
    }

    def times(a: str, b: str) -> str:
        sign = a.startswith("-")
        r = table[(a.lstrip("-"), b)]
        if sign:
            r = r[1:] if r.startswith("-") else "-" + r
        return r

    gens = []
    for b in ("i", "j"):
        gens.append(tuple(names.index(times(a, b)) for a in names))
    return group_make(8, gens)
