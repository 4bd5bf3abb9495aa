"""Hurwitz moves, the Aut(G) action and orbit classes of building data.

Moves act on raw index tuples.  The genus-0 braid generators may reorder
elliptic entries of different orders; closures therefore run over
unsorted intermediate states, and only states whose order pattern matches
the sorted signature count as members of a class.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .genvec import GeneratingVector
from .groups import Automorphism, Group, automorphisms

MAX_VISITED = 10_000_000


class MoveError(ValueError):
    pass


# raw moves: genus 0

def sigma(G: Group, ell: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Braid generator at 0-based position ``i``:
    ``g_i -> g_{i+1}``, ``g_{i+1} -> g_{i+1}^-1 g_i g_{i+1}``."""
    a, b = ell[i], ell[i + 1]
    t = G.table
    return ell[:i] + (b, t[t[G.inverse[b]][a]][b]) + ell[i + 2:]


def sigma_inverse(G: Group, ell: tuple[int, ...], i: int) -> tuple[int, ...]:
    a, b = ell[i], ell[i + 1]
    return ell[:i] + (G.conj(a, b), a) + ell[i + 2:]


def braid_move_genus0(G: Group, v: GeneratingVector, i: int) -> GeneratingVector:
    """Apply the ``i``-th braid generator (1-based) to a genus-0 vector.

    Only moves between entries of equal order keep the sorted signature;
    other positions are rejected.
    """
    if v.sig.orbit_genus != 0:
        raise MoveError("braid moves need orbit genus 0")
    if not 1 <= i <= v.sig.r - 1:
        raise MoveError(f"index {i} out of range 1..{v.sig.r - 1}")
    if v.sig.branching[i - 1] != v.sig.branching[i]:
        raise MoveError(f"positions {i} and {i + 1} have different orders")
    return GeneratingVector(v.sig, sigma(G, v.elliptic, i - 1))


# raw moves: orbit genus 1; states are (elliptic, (a, b))

def t_alpha(G, ell, hyp):
    a, b = hyp
    return ell, (a, G.mul(b, a))


def t_beta(G, ell, hyp):
    a, b = hyp
    return ell, (G.mul(a, G.inv(b)), b)


def t_gamma(G, ell, hyp):
    x1, x2 = ell
    a, b = hyp
    t, inv = G.table, G.inverse
    ai, bi = inv[a], inv[b]
    # x2 -> a b^-1 a^-1 x2 a b a^-1
    left = t[t[a][bi]][ai]
    right = t[t[a][b]][ai]
    new_x2 = t[t[left][x2]][right]
    new_a = t[t[bi][x1]][a]
    return (x1, new_x2), (new_a, b)


def rho(G, ell, hyp):
    x1, x2 = ell
    a, b = hyp
    t, inv = G.table, G.inverse
    ai, bi = inv[a], inv[b]
    # x1 -> b^-1 a^-1 x2 a b,  x2 -> a^-1 b^-1 x1 b a
    new_x1 = t[t[t[bi][ai]][x2]][t[a][b]]
    new_x2 = t[t[t[ai][bi]][x1]][t[b][a]]
    return (new_x1, new_x2), (ai, bi)


def move5(G, ell, hyp):
    """The composite ``1, 2, 1``; on abelian vectors ``(h1, h2) -> (-h2, h1)``."""
    for f in (t_alpha, t_beta, t_alpha):
        ell, hyp = f(G, ell, hyp)
    return ell, hyp


NAMED_MOVES: dict[str, Callable] = {
    "1": t_alpha,
    "2": t_beta,
    "3": t_gamma,
    "4": rho,
    "5": move5,
}


def _require(w: GeneratingVector, r: int, equal_orders: bool = False):
    if w.sig.orbit_genus != 1 or w.sig.r != r:
        raise MoveError(f"expected a (1 | m^{r}) vector, got {w.sig}")
    if equal_orders and len(set(w.sig.branching)) > 1:
        raise MoveError("torus moves with two branch points need m_1 = m_2")


def torus1_moves(G: Group, w: GeneratingVector) -> dict[str, GeneratingVector]:
    """Images of ``w`` under ``t_alpha`` and ``t_beta`` for ``(1 | m)``."""
    _require(w, 1)
    out = {}
    for name, f in (("t_alpha", t_alpha), ("t_beta", t_beta)):
        ell, hyp = f(G, w.elliptic, w.hyperbolic)
        out[name] = GeneratingVector(w.sig, ell, hyp)
    return out


def torus2_moves(G: Group, w: GeneratingVector) -> dict[str, GeneratingVector]:
    """Images of ``w`` under ``t_alpha, t_beta, t_gamma, rho`` for ``(1 | m^2)``."""
    _require(w, 2, equal_orders=True)
    out = {}
    for name, f in (("t_alpha", t_alpha), ("t_beta", t_beta), ("t_gamma", t_gamma), ("rho", rho)):
        ell, hyp = f(G, w.elliptic, w.hyperbolic)
        out[name] = GeneratingVector(w.sig, ell, hyp)
    return out


def apply_moves(G: Group, w: GeneratingVector, trace: str | Sequence[str]) -> list[GeneratingVector]:
    """Apply a move trace such as ``"1,3,5,3"``; returns every intermediate
    vector, the input first."""
    _require(w, 2, equal_orders=True)
    names = [x.strip() for x in trace.split(",")] if isinstance(trace, str) else list(trace)
    path = [w]
    ell, hyp = w.elliptic, w.hyperbolic
    for name in names:
        if name not in NAMED_MOVES:
            raise MoveError(f"unknown move {name!r}")
        ell, hyp = NAMED_MOVES[name](G, ell, hyp)
        path.append(GeneratingVector(w.sig, ell, hyp))
    return path


# move generators per signature, acting on (elliptic, hyperbolic) states

def state_moves(G: Group, sig) -> list[Callable]:
    """Generators of the move action for ``sig`` on raw states."""
    if sig.orbit_genus == 0:
        return [(lambda e, h, i=i: (sigma(G, e, i), h)) for i in range(sig.r - 1)]
    if sig.orbit_genus == 1 and sig.r == 1:
        return [lambda e, h: t_alpha(G, e, h), lambda e, h: t_beta(G, e, h)]
    if sig.orbit_genus == 1 and sig.r == 2 and sig.branching[0] == sig.branching[1]:
        return [(lambda e, h, f=f: f(G, e, h)) for f in (t_alpha, t_beta, t_gamma, rho)]
    raise MoveError(f"no move system for signature {sig}")


def pattern_ok(G: Group, ell: tuple[int, ...], branching: tuple[int, ...]) -> bool:
    orders = G.orders
    return all(orders[g] == m for g, m in zip(ell, branching))


# automorphisms

def apply_automorphism(lam: Automorphism, pair: tuple[GeneratingVector, GeneratingVector]):
    V, W = pair
    return (GeneratingVector(V.sig, tuple(lam(x) for x in V.elliptic), tuple(lam(x) for x in V.hyperbolic)),
            GeneratingVector(W.sig, tuple(lam(x) for x in W.elliptic), tuple(lam(x) for x in W.hyperbolic)))


def automorphism_generators(G: Group) -> list[Automorphism]:
    """A small generating set of Aut(G)."""
    auts = automorphisms(G)
    total = len(auts)
    gens: list[Automorphism] = []
    span = {auts[0]}  # identity comes first
    for a in auts:
        if a in span:
            continue
        gens.append(a)
        span = _aut_closure(gens)
        if len(span) == total:
            break
    return gens


def _aut_closure(gens):
    ident = Automorphism(tuple(range(len(gens[0].map))))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g.compose(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# orbit classes

@dataclass(frozen=True)
class OrbitClass:
    representative: tuple[GeneratingVector, GeneratingVector]
    size: int
    members: tuple = field(default=(), compare=False)


def _pair_key(pair):
    V, W = pair
    return (V.elliptic, W.elliptic, W.hyperbolic)


def r_classes(G: Group, pairs: Iterable[tuple[GeneratingVector, GeneratingVector]],
              max_visited: int = MAX_VISITED) -> list[OrbitClass]:
    """Partition pairs ``(V, W)`` into classes of the relation generated by
    moves on ``V``, moves on ``W`` and simultaneous automorphisms of ``G``.

    Breadth-first closure from each unvisited input pair.  The representative
    of a class is its smallest member (as index tuples) with sorted order
    pattern; ``size`` counts those members.
    """
    pairs = list(pairs)
    if not pairs:
        return []
    sigV, sigW = pairs[0][0].sig, pairs[0][1].sig
    if any(p[0].sig != sigV or p[1].sig != sigW for p in pairs):
        raise MoveError("all pairs must share the same signatures")
    vmoves = state_moves(G, sigV)
    wmoves = state_moves(G, sigW)
    auts = automorphism_generators(G)
    input_keys = {_pair_key(p): p for p in pairs}
    owner: dict = {}
    classes = []
    visited_total = 0
    for start in sorted(input_keys):
        if start in owner:
            continue
        cid = len(classes)
        seen = {start}
        queue = deque([start])
        members = []
        while queue:
            state = queue.popleft()
            ev, ew, hw = state
            if pattern_ok(G, ev, sigV.branching) and pattern_ok(G, ew, sigW.branching):
                members.append(state)
            nbrs = []
            for f in vmoves:
                nbrs.append((f(ev, ())[0], ew, hw))
            for f in wmoves:
                e2, h2 = f(ew, hw)
                nbrs.append((ev, e2, h2))
            for lam in auts:
                m = lam.map
                nbrs.append((tuple(m[x] for x in ev), tuple(m[x] for x in ew), tuple(m[x] for x in hw)))
            for n in nbrs:
                if n not in seen:
                    seen.add(n)
                    queue.append(n)
            if visited_total + len(seen) > max_visited:
                raise MoveError(f"orbit closure exceeded {max_visited} states")
        visited_total += len(seen)
        hit = []
        for s in members:
            if s in input_keys:
                owner[s] = cid
                hit.append(input_keys[s])
        rep = min(members)
        classes.append(OrbitClass(
            (GeneratingVector(sigV, rep[0]), GeneratingVector(sigW, rep[1], rep[2])),
            len(members), tuple(hit)))
    return classes


def move_orbits(G: Group, vectors: Sequence[GeneratingVector]) -> dict[tuple, int]:
    """Orbit ids of vectors under the move action alone (no automorphisms).

    Returns a map from ``vector.key()`` to orbit id for every input vector.
    """
    if not vectors:
        return {}
    sig = vectors[0].sig
    moves = state_moves(G, sig)
    keys = {v.key() for v in vectors}
    orbit_of: dict = {}
    next_id = 0
    for v in vectors:
        k = v.key()
        if k in orbit_of:
            continue
        start = (v.elliptic, v.hyperbolic)
        seen = {start}
        queue = deque([start])
        while queue:
            e, h = queue.popleft()
            for f in moves:
                n = f(e, h)
                if n not in seen:
                    seen.add(n)
                    queue.append(n)
        for e, h in seen:
            kk = e + h
            if kk in keys:
                orbit_of[kk] = next_id
        next_id += 1
    return orbit_of


def count_r_classes_factored(G: Group, Vs: Sequence[GeneratingVector], Ws: Sequence[GeneratingVector],
                             free: Callable[[GeneratingVector, GeneratingVector], bool]):
    """Class count via move orbits on each factor, then Aut(G) on orbit pairs.

    Moves commute with automorphisms and only conjugate elliptic entries, so
    freeness is constant on orbit pairs.  Returns ``(count, reps)`` where
    ``reps`` lists one free pair per class.
    """
    if not Vs or not Ws:
        return 0, []
    ov = move_orbits(G, Vs)
    ow = move_orbits(G, Ws)
    rep_v: dict[int, GeneratingVector] = {}
    for v in Vs:
        rep_v.setdefault(ov[v.key()], v)
    rep_w: dict[int, GeneratingVector] = {}
    for w in Ws:
        rep_w.setdefault(ow[w.key()], w)
    auts = automorphism_generators(G)

    def img_v(lam, oid):
        v = rep_v[oid]
        return ov[tuple(lam(x) for x in v.key())]

    def img_w(lam, oid):
        w = rep_w[oid]
        return ow[tuple(lam(x) for x in w.key())]

    nodes = [(a, b) for a in sorted(rep_v) for b in sorted(rep_w) if free(rep_v[a], rep_w[b])]
    node_set = set(nodes)
    seen: set = set()
    reps = []
    for start in nodes:
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            a, b = queue.popleft()
            for lam in auts:
                n = (img_v(lam, a), img_w(lam, b))
                if n not in seen and n in node_set:
                    seen.add(n)
                    queue.append(n)
        reps.append((rep_v[start[0]], rep_w[start[1]]))
    return len(reps), reps
