"""Generating vectors of admissible epimorphisms and the freeness test."""
from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass
from typing import Sequence

from .fuchsian import (Signature, SignatureError, SurfaceInvariants, riemann_hurwitz_genus,
                       surface_invariants)
from .groups import Group, generates, stabilizer_mask


@dataclass(frozen=True, order=True)
class GeneratingVector:
    """Images ``(g_1..g_r; h_1..h_2g')`` as element indices of a group."""
    sig: Signature
    elliptic: tuple[int, ...]
    hyperbolic: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elliptic", tuple(self.elliptic))
        object.__setattr__(self, "hyperbolic", tuple(self.hyperbolic))
        if len(self.elliptic) != self.sig.r:
            raise ValueError("elliptic part does not match the signature")
        if len(self.hyperbolic) != 2 * self.sig.orbit_genus:
            raise ValueError("hyperbolic part does not match the orbit genus")

    @property
    def entries(self) -> tuple[int, ...]:
        return self.elliptic + self.hyperbolic

    def key(self) -> tuple[int, ...]:
        return self.elliptic + self.hyperbolic

    def format(self, G: Group) -> str:
        ell = ", ".join(G.label(x) for x in self.elliptic)
        hyp = ", ".join(G.label(x) for x in self.hyperbolic)
        return f"[{ell} ; {hyp}]" if self.hyperbolic else f"[{ell}]"

    @classmethod
    def from_labels(cls, G: Group, sig: Signature, elliptic: Sequence[str],
                    hyperbolic: Sequence[str] = ()) -> "GeneratingVector":
        return cls(sig, tuple(G.parse_element(x) for x in elliptic),
                   tuple(G.parse_element(x) for x in hyperbolic))


def parse_vector(G: Group, sig: Signature, text: str) -> GeneratingVector:
    """Inverse of :meth:`GeneratingVector.format`: ``"[a, b ; h1, h2]"``."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"vector text must be bracketed: {text!r}")
    ell_text, _, hyp_text = body[1:-1].partition(";")
    return GeneratingVector.from_labels(G, sig, _split_top(ell_text), _split_top(hyp_text))


def _split_top(text: str) -> list[str]:
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def long_relation(G: Group, elliptic: Sequence[int], hyperbolic: Sequence[int]) -> int:
    """``g_1 ... g_r * prod [h_i, h_{i+g'}]``."""
    x = G.product(elliptic)
    gp = len(hyperbolic) // 2
    for i in range(gp):
        x = G.mul(x, G.commutator(hyperbolic[i], hyperbolic[i + gp]))
    return x


def admissibility_failures(G: Group, v: GeneratingVector) -> list[str]:
    """Names of the violated generating-vector conditions (empty if admissible)."""
    bad = []
    if any(not 0 <= x < G.order for x in v.entries):
        return ["range"]
    if any(G.orders[g] != m for g, m in zip(v.elliptic, v.sig.branching)):
        bad.append("orders")
    if long_relation(G, v.elliptic, v.hyperbolic) != 0:
        bad.append("long_relation")
    if not generates(G, v.entries):
        bad.append("generation")
    return bad


def is_admissible(G: Group, v: GeneratingVector) -> bool:
    return not admissibility_failures(G, v)


def enumerate_generating_vectors(G: Group, sig: Signature) -> list[GeneratingVector]:
    """All admissible generating vectors for ``sig`` (orbit genus 0 or 1).

    The last elliptic entry is solved from the long relation.  Output is in
    lexicographic order of ``(elliptic, hyperbolic)`` indices.
    """
    per_group = _cache.setdefault(G, {})
    if sig not in per_group:
        per_group[sig] = tuple(_enumerate(G, sig))
    return list(per_group[sig])


_cache: "weakref.WeakKeyDictionary[Group, dict]" = weakref.WeakKeyDictionary()


def _enumerate(G: Group, sig: Signature):
    if sig.orbit_genus not in (0, 1):
        raise SignatureError("only orbit genus 0 and 1 are supported")
    ms = sig.branching
    r = len(ms)
    t, inv, orders = G.table, G.inverse, G.orders
    pools = [G.elements_of_order(m) for m in ms]
    if any(not p for p in pools):
        return []
    found = []
    if sig.orbit_genus == 0:
        if r == 0:
            return []
        last = ms[-1]

        def rec(prefix, prod):
            if len(prefix) == r - 1:
                g = inv[prod]
                if orders[g] == last:
                    vec = prefix + (g,)
                    if generates(G, vec):
                        found.append(GeneratingVector(sig, vec))
                return
            for x in pools[len(prefix)]:
                rec(prefix + (x,), t[prod][x])

        rec((), 0)
    else:
        n = G.order
        comm = [[G.commutator(a, b) for b in range(n)] for a in range(n)]
        for head in itertools.product(*pools[:-1]) if r else [()]:
            prod = G.product(head)
            for h1 in range(n):
                for h2 in range(n):
                    c = comm[h1][h2]
                    if r == 0:
                        if t[prod][c] != 0:
                            continue
                        vec = ()
                    else:
                        # g_1 ... g_r [h1, h2] = 1
                        g = _solve_last(G, prod, c)
                        if orders[g] != ms[-1]:
                            continue
                        vec = head + (g,)
                    if generates(G, vec + (h1, h2)):
                        found.append(GeneratingVector(sig, vec, (h1, h2)))
    found.sort()
    return found


def _solve_last(G: Group, prod: int, comm: int) -> int:
    """``x`` with ``prod * x * comm == 1``."""
    return G.mul(G.inv(prod), G.inv(comm))


def is_free_diagonal_action(G: Group, V: GeneratingVector, W: GeneratingVector) -> bool:
    """Freeness of the diagonal action on ``C x F``: the conjugation-closed
    stabilizer unions of ``V`` and ``W`` meet only in the identity."""
    return stabilizer_mask(G, V.elliptic) & stabilizer_mask(G, W.elliptic) == 1


def freeness_witness(G: Group, V: GeneratingVector, W: GeneratingVector) -> int | None:
    """Smallest non-identity element fixed on both curves, if any."""
    common = stabilizer_mask(G, V.elliptic) & stabilizer_mask(G, W.elliptic) & ~1
    if not common:
        return None
    return (common & -common).bit_length() - 1


@dataclass(frozen=True)
class GenusPair:
    g_C: int
    g_F: int


class BuildingDataError(ValueError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check


@dataclass(frozen=True)
class BuildingData:
    G: Group
    V: GeneratingVector
    W: GeneratingVector
    genus: GenusPair
    invariants: SurfaceInvariants | None = None


def validate_building_data(G: Group, V: GeneratingVector, W: GeneratingVector) -> BuildingData:
    """Check the hypotheses for ``(C x F)/G`` to be a surface with
    ``p_g = q = 1``; raise :class:`BuildingDataError` naming the failed check."""
    if V.sig.orbit_genus != 0:
        raise BuildingDataError("fibre_signature", "V must have orbit genus 0")
    if W.sig.orbit_genus != 1:
        raise BuildingDataError("base_signature", "W must have orbit genus 1")
    for name, vec in (("V", V), ("W", W)):
        bad = admissibility_failures(G, vec)
        if bad:
            raise BuildingDataError("admissibility", f"{name} fails {', '.join(bad)}")
    try:
        g_F = riemann_hurwitz_genus(G.order, V.sig)
        g_C = riemann_hurwitz_genus(G.order, W.sig)
    except SignatureError as e:
        raise BuildingDataError("genus", str(e)) from None
    if g_C < 3 or g_F < 3:
        raise BuildingDataError("genus", f"g(C) = {g_C}, g(F) = {g_F}; both must be >= 3")
    if G.order != (g_C - 1) * (g_F - 1):
        raise BuildingDataError("order", f"|G| = {G.order} != (g(C)-1)(g(F)-1) = {(g_C - 1) * (g_F - 1)}")
    w = freeness_witness(G, V, W)
    if w is not None:
        raise BuildingDataError("freeness", f"{G.label(w)} has fixed points on C x F")
    bd = BuildingData(G, V, W, GenusPair(g_C, g_F))
    return BuildingData(G, V, W, bd.genus, surface_invariants(bd))

