"""Finite groups as dense multiplication tables.

Every group is stored the same way: elements are the indices ``0..n-1``
with ``0`` the identity, and products are looked up in a precomputed
table.  Abelian groups keep their residue tuples as raw elements,
permutation groups keep 0-based image tuples.

Permutations compose right to left, so ``(13)(12) == (123)``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

ASSOC_CHECK_LIMIT = 64
DEFAULT_CLOSURE_BOUND = 10_000
DEFAULT_AUT_BOUND = 64


class GroupError(ValueError):
    pass


class Group:
    """A finite group with a full Cayley table.

    ``kind`` is ``"abelian"`` or ``"permutation"``.  ``invariants`` is set
    for abelian groups, ``degree`` and ``perm_generators`` for permutation
    groups.  ``words`` optionally maps generator names (``"r"``, ``"s"``)
    to element indices so that presentation words can be evaluated.
    """

    def __init__(self, elements, table, *, kind, name, invariants=None,
                 degree=None, perm_generators=None, words=None, check=True):
        self.elements = list(elements)
        self.order = len(self.elements)
        self.table = [tuple(row) for row in table]
        self.kind = kind
        self.name = name
        self.invariants = tuple(invariants) if invariants is not None else None
        self.degree = degree
        self.perm_generators = tuple(perm_generators or ())
        self.words = dict(words or {})
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.inverse = self._compute_inverses()
        self.orders = tuple(self._compute_order(i) for i in range(self.order))
        if check:
            self._check_axioms()

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"

    # construction checks

    def _compute_inverses(self):
        inv = [None] * self.order
        for a in range(self.order):
            row = self.table[a]
            for b in range(self.order):
                if row[b] == 0:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise GroupError(f"element {a} has no inverse")
        return tuple(inv)

    def _compute_order(self, a):
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
            if k > self.order:
                raise GroupError(f"element {a} has infinite order in table")
        return k

    def _check_axioms(self):
        n = self.order
        t = self.table
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise GroupError("index 0 is not the identity")
            if t[a][self.inverse[a]] != 0 or t[self.inverse[a]][a] != 0:
                raise GroupError(f"element {a} has no two-sided inverse")
            if n % self.orders[a]:
                raise GroupError(f"order of element {a} does not divide |G|")
        if self.kind == "abelian":
            for a in range(n):
                for b in range(a):
                    if t[a][b] != t[b][a]:
                        raise GroupError("abelian group table is not commutative")
        # composition of permutations / addition of residues is associative by
        # construction; the exhaustive check is kept for desk-scale orders
        if n <= ASSOC_CHECK_LIMIT:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise GroupError("multiplication table is not associative")

    # index-level arithmetic

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def order_of(self, a: int) -> int:
        return self.orders[a]

    def product(self, items: Iterable[int]) -> int:
        x = 0
        for a in items:
            x = self.table[x][a]
        return x

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        x = 0
        for _ in range(k % self.orders[a]):
            x = self.table[x][a]
        return x

    def conj(self, h: int, g: int) -> int:
        """``h g h^-1``."""
        return self.table[self.table[h][g]][self.inverse[h]]

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a b a^-1 b^-1``."""
        t, inv = self.table, self.inverse
        return t[t[t[a][b]][inv[a]]][inv[b]]

    @property
    def is_abelian(self) -> bool:
        if self.kind == "abelian":
            return True
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def elements_of_order(self, k: int) -> list[int]:
        return [i for i, o in enumerate(self.orders) if o == k]

    # elements and labels

    def index_of(self, raw) -> int:
        try:
            return self._index[raw]
        except KeyError:
            raise GroupError(f"{raw!r} is not an element of {self.name}") from None

    def element(self, i: int) -> "Element":
        return Element(self, i)

    @property
    def identity(self) -> "Element":
        return Element(self, 0)

    def label(self, i: int) -> str:
        raw = self.elements[i]
        if self.kind == "abelian":
            return "(" + ",".join(str(x) for x in raw) + ")"
        return cycle_string(raw)

    def parse_element(self, text: str) -> int:
        """Parse an element label: residue tuple, cycle notation or a word.

        Words use the names in ``self.words`` with ``^`` exponents, e.g.
        ``"r^3 s"`` or ``"rs"``; the product reads left to right.
        """
        text = text.strip()
        if self.kind == "abelian":
            nums = [int(x) for x in re.findall(r"-?\d+", text)]
            if len(nums) != len(self.invariants):
                raise GroupError(f"cannot parse {text!r} as an element of {self.name}")
            return self.index_of(tuple(x % d for x, d in zip(nums, self.invariants)))
        if text.startswith("(") or text in ("", "1", "id", "e"):
            if text in ("", "1", "id", "e", "()"):
                return 0
            return self.index_of(parse_cycles(text, self.degree))
        return self.parse_word(text)

    def parse_word(self, text: str) -> int:
        if not self.words:
            raise GroupError(f"{self.name} has no named generators")
        names = sorted(self.words, key=len, reverse=True)
        pat = re.compile("(" + "|".join(re.escape(n) for n in names) + r")(\^(-?\d+))?")
        pos, x = 0, 0
        s = text.replace(" ", "")
        while pos < len(s):
            m = pat.match(s, pos)
            if not m:
                raise GroupError(f"cannot parse word {text!r} at position {pos}")
            exp = int(m.group(3)) if m.group(3) else 1
            x = self.table[x][self.power(self.words[m.group(1)], exp)]
            pos = m.end()
        return x


@dataclass(frozen=True, eq=False)
class Element:
    group: Group
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise GroupError(f"index {self.index} out of range for {self.group.name}")

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.group is not self.group:
            raise GroupError("elements belong to different groups")

    def __mul__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.group, self.group.table[self.index][other.index])

    def __eq__(self, other):
        return isinstance(other, Element) and other.group is self.group and other.index == self.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    def inverse(self) -> "Element":
        return Element(self.group, self.group.inverse[self.index])

    @property
    def order(self) -> int:
        return self.group.orders[self.index]

    def __repr__(self):
        return self.group.label(self.index)


def mul(a: Element, b: Element) -> Element:
    return a * b


def inv(a: Element) -> Element:
    return a.inverse()


def order_of(a: Element) -> int:
    return a.order


def _indices(G: Group, items) -> list[int]:
    out = []
    for x in items:
        if isinstance(x, Element):
            if x.group is not G:
                raise GroupError("element does not belong to this group")
            out.append(x.index)
        else:
            out.append(int(x))
    return out


# permutations (0-based image tuples)

def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Right-to-left product ``p q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def cycle_string(p: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse ``"(12)(34)"`` or ``"(1 2)(3 4)"`` into an image tuple.

    Digits without separators are read one point each, so points above 9
    need spaces or commas.
    """
    p = list(range(degree))
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise GroupError(f"cannot parse permutation {text!r}")
    for body in reversed(cycles):
        if re.search(r"[\s,]", body.strip()):
            pts = [int(x) - 1 for x in re.split(r"[\s,]+", body.strip()) if x]
        else:
            pts = [int(ch) - 1 for ch in body]
        if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle ({body}) for degree {degree}")
        c = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            c[a] = b
        p = list(compose(c, p))
    return tuple(p)


# constructors

def make_abelian_group(invariants: Sequence[int], name: str | None = None) -> Group:
    invariants = [int(d) for d in invariants]
    if not invariants:
        raise GroupError("trivial group not supported")
    if any(d < 2 for d in invariants):
        raise GroupError("each invariant must be >= 2")
    elements = list(itertools.product(*(range(d) for d in invariants)))
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[tuple((x + y) % d for x, y, d in zip(a, b, invariants))] for b in elements]
             for a in elements]
    name = name or " x ".join(f"Z{d}" for d in invariants)
    return Group(elements, table, kind="abelian", name=name, invariants=invariants)


def make_permutation_group(degree: int, generators: Iterable, name: str | None = None,
                           bound: int = DEFAULT_CLOSURE_BOUND, words=None) -> Group:
    """Close permutation generators under composition.

    Generators may be image tuples (0-based) or cycle strings (1-based).
    ``words`` maps names to generators given the same way.
    """
    def as_perm(g):
        if isinstance(g, str):
            return parse_cycles(g, degree)
        g = tuple(g)
        if sorted(g) != list(range(degree)):
            raise GroupError(f"{g!r} is not a permutation of degree {degree}")
        return g

    gens = [as_perm(g) for g in generators]
    ident = tuple(range(degree))
    elements, index = [ident], {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in index:
                    if len(elements) >= bound:
                        raise GroupError(f"closure exceeds bound of {bound} elements")
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    table = [[index[compose(a, b)] for b in elements] for a in elements]
    name = name or f"<{', '.join(cycle_string(g) for g in gens)}>"
    named = {k: index[as_perm(v)] for k, v in (words or {}).items()}
    return Group(elements, table, kind="permutation", name=name, degree=degree,
                 perm_generators=gens, words=named)


def symmetric_group(n: int) -> Group:
    if n < 2:
        raise GroupError("S n needs n >= 2")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return make_permutation_group(n, gens, name=f"S{n}")


def alternating_group(n: int) -> Group:
    if n < 3:
        raise GroupError("A n needs n >= 3")
    # 3-cycles (1 2 k) generate A_n
    gens = [parse_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return make_permutation_group(n, gens, name=f"A{n}")


def dihedral_group(n: int) -> Group:
    """``D n``: the dihedral group of order ``2n``, generated by ``r``, ``s``."""
    if n < 2:
        raise GroupError("D n needs n >= 2")
    if n == 2:
        r, s = (1, 0, 3, 2), (2, 3, 0, 1)
        return make_permutation_group(4, [r, s], name="D2", words={"r": r, "s": s})
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return make_permutation_group(n, [r, s], name=f"D{n}", words={"r": r, "s": s})


def dicyclic_group(n: int) -> Group:
    """``Dic n`` of order ``4n``: ``a^2n = 1, x^2 = a^n, x a x^-1 = a^-1``.

    Realised through its left regular representation.
    """
    if n < 2:
        raise GroupError("Dic n needs n >= 2")
    m = 2 * n
    elems = [(k, e) for e in (0, 1) for k in range(m)]
    pos = {e: i for i, e in enumerate(elems)}

    def op(x, y):
        (k1, e1), (k2, e2) = x, y
        k = k1 + (k2 if e1 == 0 else -k2)
        if e1 and e2:
            k += n
        return (k % m, (e1 + e2) % 2)

    def regular(x):
        return tuple(pos[op(x, y)] for y in elems)

    a, x = regular((1, 0)), regular((0, 1))
    return make_permutation_group(len(elems), [a, x], name=f"Dic{n}", words={"a": a, "x": x})


def direct_product(factors: Sequence[Group], name: str | None = None) -> Group:
    """Direct product; all-abelian factors give an abelian group."""
    if all(f.kind == "abelian" for f in factors):
        inv = [d for f in factors for d in f.invariants]
        return make_abelian_group(inv, name=name)
    gens, degree, perm_reps = [], 0, []
    for f in factors:
        if f.kind == "abelian":
            # abelian factor as a product of disjoint cycles
            reps = []
            for d in f.invariants:
                reps.append((degree, d))
                degree += d
            perm_reps.append(("abelian", reps, f))
        else:
            perm_reps.append(("perm", degree, f))
            degree += f.degree
    words = {}
    for kind, data, f in perm_reps:
        if kind == "abelian":
            for j, (off, d) in enumerate(data):
                p = list(range(degree))
                for i in range(d):
                    p[off + i] = off + (i + 1) % d
                gens.append(tuple(p))
        else:
            off = data
            for g in f.perm_generators:
                p = list(range(degree))
                for i, gi in enumerate(g):
                    p[off + i] = off + gi
                gens.append(tuple(p))
            for wname, idx in f.words.items():
                g = f.elements[idx]
                p = list(range(degree))
                for i, gi in enumerate(g):
                    p[off + i] = off + gi
                words.setdefault(wname, tuple(p))
    name = name or " x ".join(f.name for f in factors)
    return make_permutation_group(degree, gens, name=name, words=words)


# subgroups and conjugation

def subgroup_generated(G: Group, gens: Iterable) -> frozenset[int]:
    return _closure(G, frozenset(_indices(G, gens)))


@lru_cache(maxsize=200_000)
def _closure_cached(gid: int, G: Group, gens: frozenset[int]) -> frozenset[int]:
    t = G.table
    gens = [g for g in gens if g != 0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = t[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _closure(G: Group, gens: frozenset[int]) -> frozenset[int]:
    return _closure_cached(id(G), G, gens)


def generates(G: Group, gens: Iterable[int]) -> bool:
    return len(_closure(G, frozenset(gens))) == G.order


def cyclic_subgroup(G: Group, g: int) -> frozenset[int]:
    out, x = {0}, g
    while x != 0:
        out.add(x)
        x = G.table[x][g]
    return frozenset(out)


def conjugacy_class(G: Group, g: int) -> frozenset[int]:
    return frozenset(G.conj(h, g) for h in range(G.order))


def cyclic_conjugate_union(G: Group, g) -> frozenset[int]:
    """Union of the cyclic subgroups generated by the conjugates of ``g``."""
    (g,) = _indices(G, [g])
    out: set[int] = set()
    for c in conjugacy_class(G, g):
        out |= cyclic_subgroup(G, c)
    return frozenset(out)


def stabilizer_mask(G: Group, elliptic: Iterable[int]) -> int:
    """Bitmask of the union of ``cyclic_conjugate_union`` over ``elliptic``."""
    mask = 1
    for g in set(elliptic):
        mask |= _stab_mask_one(id(G), G, g)
    return mask


@lru_cache(maxsize=100_000)
def _stab_mask_one(gid: int, G: Group, g: int) -> int:
    m = 0
    for x in cyclic_conjugate_union(G, g):
        m |= 1 << x
    return m


def center(G: Group) -> frozenset[int]:
    t = G.table
    return frozenset(a for a in range(G.order) if all(t[a][b] == t[b][a] for b in range(G.order)))


def derived_subgroup(G: Group) -> frozenset[int]:
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(G.order)}
    return _closure(G, frozenset(comms))


def fingerprint(G: Group) -> tuple:
    """Isomorphism invariants used to spot duplicate catalog entries."""
    stats = tuple(sorted(_count(G.orders).items()))
    classes = {conjugacy_class(G, g) for g in range(G.order)}
    return (G.order, stats, len(center(G)), len(derived_subgroup(G)), len(classes))


def _count(xs):
    out: dict = {}
    for x in xs:
        out[x] = out.get(x, 0) + 1
    return out


def small_generating_set(G: Group) -> list[int]:
    """Greedy generating set: repeatedly add an element of maximal order
    outside the current subgroup."""
    gens: list[int] = []
    H = frozenset({0})
    by_order = sorted(range(G.order), key=lambda a: (-G.orders[a], a))
    while len(H) < G.order:
        best, best_size = None, -1
        for a in by_order:
            if a in H:
                continue
            size = len(_closure(G, frozenset(gens + [a])))
            if size > best_size:
                best, best_size = a, size
                if size == G.order:
                    break
        gens.append(best)
        H = _closure(G, frozenset(gens))
    return gens


# automorphisms

@dataclass(frozen=True)
class Automorphism:
    map: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.map[i]

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        return Automorphism(tuple(self.map[i] for i in other.map))

    def inverse(self) -> "Automorphism":
        out = [0] * len(self.map)
        for i, j in enumerate(self.map):
            out[j] = i
        return Automorphism(tuple(out))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.map))


def extend_homomorphism(G: Group, gens: Sequence[int], images: Sequence[int]) -> Automorphism | None:
    """Extend ``gens[i] -> images[i]`` to an automorphism of ``G``.

    Returns ``None`` when the assignment is not a bijective homomorphism.
    """
    t = G.table
    phi = [-1] * G.order
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, images):
                y = t[x][g]
                v = t[phi[x]][im]
                if phi[y] == -1:
                    phi[y] = v
                    nxt.append(y)
                elif phi[y] != v:
                    return None
        frontier = nxt
    if -1 in phi or len(set(phi)) != G.order:
        return None
    for a in range(G.order):
        pa, ta = phi[a], t[a]
        tpa = t[pa]
        for b in range(G.order):
            if phi[ta[b]] != tpa[phi[b]]:
                return None
    return Automorphism(tuple(phi))


def automorphisms(G: Group, bound: int = DEFAULT_AUT_BOUND) -> list[Automorphism]:
    """All automorphisms of ``G`` via generator-image search."""
    if G.order > bound:
        raise GroupError(f"|G| = {G.order} exceeds automorphism bound {bound}")
    return list(_automorphisms_cached(id(G), G))


@lru_cache(maxsize=256)
def _automorphisms_cached(gid: int, G: Group) -> tuple[Automorphism, ...]:
    gens = small_generating_set(G)
    found = []

    def rec(i, images, image_set):
        if i == len(gens):
            a = extend_homomorphism(G, gens, images)
            if a is not None:
                found.append(a)
            return
        for y in G.elements_of_order(G.orders[gens[i]]):
            # g_i lies outside <g_1..g_{i-1}>, so its image must too
            if y in image_set:
                continue
            part = _partial_extension(G, gens[:i + 1], images + [y])
            if part is not None:
                rec(i + 1, images + [y], part)

    rec(0, [], frozenset({0}))
    found.sort(key=lambda a: (not a.is_identity(), a.map))
    return tuple(found)


def _partial_extension(G: Group, gens, images):
    """Image set of the induced map on ``<gens>``, or ``None`` if the
    assignment is not a well-defined injective homomorphism there."""
    t = G.table
    phi = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            px = phi[x]
            for g, im in zip(gens, images):
                y = t[x][g]
                v = t[px][im]
                got = phi.get(y)
                if got is None:
                    phi[y] = v
                    nxt.append(y)
                elif got != v:
                    return None
        frontier = nxt
    values = frozenset(phi.values())
    if len(values) != len(phi):
        return None
    return values


def automorphisms_bruteforce(G: Group) -> list[Automorphism]:
    """Every bijection fixing the identity that respects the table.  Only for
    tiny groups; used as an independent check."""
    n = G.order
    t = G.table
    out = []
    for perm in itertools.permutations(range(1, n)):
        phi = (0,) + perm
        if all(phi[t[a][b]] == t[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            out.append(Automorphism(phi))
    return out


# group specs

_FACTOR = re.compile(r"(dic|z|s|a|d)(\d+)")


def parse_group_spec(text: str) -> Group:
    """Parse ``Z2 x Z4``, ``S4``, ``A5``, ``D6`` (order 12), ``Dic3`` and
    direct products of these joined by ``x``."""
    s = re.sub(r"\s+", "", text.lower())
    if not s:
        raise GroupError("empty group spec")
    factors = []
    pos = 0
    while True:
        m = _FACTOR.match(s, pos)
        if not m:
            raise GroupError(f"cannot parse group spec {text!r} at position {pos}")
        factors.append((m.group(1), int(m.group(2))))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "x":
            raise GroupError(f"expected 'x' in group spec {text!r} at position {pos}")
        pos += 1
    groups = []
    for kind, n in factors:
        if kind == "z":
            groups.append(make_abelian_group([n]))
        elif kind == "s":
            groups.append(symmetric_group(n))
        elif kind == "a":
            groups.append(alternating_group(n))
        elif kind == "d":
            groups.append(dihedral_group(n))
        else:
            groups.append(dicyclic_group(n))
    canon = " x ".join(f"{k.capitalize() if k != 'dic' else 'Dic'}{n}" for k, n in factors)
    if len(groups) == 1:
        groups[0].name = canon
        return groups[0]
    return direct_product(groups, name=canon)


def abelian_invariant_factor_lists(order: int) -> list[list[int]]:
    """All invariant-factor lists ``d1 | d2 | ... `` with product ``order``."""
    if order < 2:
        return []
    out = []

    def rec(rem, prefix):
        # choose the next factor d with prefix[-1] | d, d | rem, and the
        # remaining cofactor still divisible by d (so later factors fit)
        if rem == 1:
            out.append(list(prefix))
            return
        start = prefix[-1] if prefix else 2
        for d in range(start, rem + 1):
            if rem % d or (prefix and d % prefix[-1]):
                continue
            rest = rem // d
            if rest == 1 or rest % d == 0:
                rec(rest, prefix + [d])

    rec(order, [])
    return sorted(out, key=lambda inv: (len(inv), inv))


def exponent(G: Group) -> int:
    return math.lcm(*G.orders)
