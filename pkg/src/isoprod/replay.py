"""Machine checks of the stated move chains and automorphism maps that
establish the component counts of the four abelian families."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import knowndata as kd
from .catalog import abelian_group
from .fuchsian import Signature
from .genvec import (GeneratingVector, enumerate_generating_vectors, is_admissible,
                     is_free_diagonal_action)
from .groups import Automorphism, Group, automorphisms, extend_homomorphism
from .moves import NAMED_MOVES, apply_moves, automorphism_generators, r_classes

BASE_SIG = Signature(1, (2, 2))


class ReplayError(RuntimeError):
    def __init__(self, family: str, claim: str, detail: str):
        super().__init__(f"type {family}, {claim}: {detail}")
        self.family = family
        self.claim = claim
        self.detail = detail


@dataclass(frozen=True)
class ClaimResult:
    family: str
    claim: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"family": self.family, "claim": self.claim, "ok": self.ok, "detail": self.detail}


class _Family:
    """Shared state for one family: group, signatures, parsers, pair set."""

    def __init__(self, label: str):
        inv, m, _ = kd.ABELIAN_FAMILIES[label]
        self.label = label
        self.G: Group = abelian_group(inv)
        self.sigV = Signature(0, m)
        self.results: list[ClaimResult] = []
        self._Vs = None
        self._Ws = None

    # parsing

    def el(self, text: str) -> int:
        if text.startswith("(") or text.startswith("-"):
            return self.G.parse_element(text)
        coords = [0] * len(self.G.invariants)
        if text != "0":
            for part in text.split("+"):
                coords[int(part.strip()[1:]) - 1] += 1
        return self.G.parse_element("(" + ",".join(map(str, coords)) + ")")

    def W(self, triple) -> GeneratingVector:
        g, h1, h2 = (self.el(x) for x in triple)
        return GeneratingVector(BASE_SIG, (g, self.G.inv(g)), (h1, h2))

    def V(self, entries) -> GeneratingVector:
        return GeneratingVector(self.sigV, tuple(self.el(x) for x in entries))

    def aut(self, images) -> Automorphism | None:
        n = len(self.G.invariants)
        basis = [self.G.parse_element("(" + ",".join("1" if j == i else "0" for j in range(n)) + ")")
                 for i in range(n)]
        return extend_homomorphism(self.G, basis, [self.el(x) for x in images])

    def fmt(self, v: GeneratingVector) -> str:
        return v.format(self.G)

    # data

    @property
    def Vs(self):
        if self._Vs is None:
            self._Vs = enumerate_generating_vectors(self.G, self.sigV)
        return self._Vs

    @property
    def Ws(self):
        if self._Ws is None:
            self._Ws = enumerate_generating_vectors(self.G, BASE_SIG)
        return self._Ws

    def free_Vs(self, W):
        return [V for V in self.Vs if is_free_diagonal_action(self.G, V, W)]

    def pairs(self):
        return [(V, W) for W in self.Ws for V in self.free_Vs(W)]

    # recording

    def record(self, claim: str, ok: bool, detail: str = ""):
        self.results.append(ClaimResult(self.label, claim, bool(ok), detail))

    def chain(self, claim: str, start: GeneratingVector, trace: str, target: GeneratingVector):
        path = apply_moves(self.G, start, trace) if trace else [start]
        ok = path[-1] == target
        detail = " -> ".join(self.fmt(p) for p in path)
        if not ok:
            detail += f"; expected {self.fmt(target)}"
        self.record(claim, ok, detail)


def _multiset(v: GeneratingVector):
    return tuple(sorted(v.elliptic))


def _apply(lam: Automorphism, v: GeneratingVector) -> GeneratingVector:
    return GeneratingVector(v.sig, tuple(lam(x) for x in v.elliptic), tuple(lam(x) for x in v.hyperbolic))


def _w_closure(G: Group, start: GeneratingVector, move_names, auts) -> set:
    """States reachable from ``start`` by the named base moves and ``auts``."""
    fs = [NAMED_MOVES[n] for n in move_names]
    s0 = (start.elliptic, start.hyperbolic)
    seen = {s0}
    queue = deque([s0])
    while queue:
        e, h = queue.popleft()
        nbrs = [f(G, e, h) for f in fs]
        for lam in auts:
            m = lam.map
            nbrs.append((tuple(m[x] for x in e), tuple(m[x] for x in h)))
        for n in nbrs:
            if n not in seen:
                seen.add(n)
                queue.append(n)
    return seen


def _check_move_formulas(F: _Family):
    """Abelian specialization of moves 1-4 and the composite 5 = 1,2,1."""
    G = F.G
    neg = G.inv
    bad1 = bad5 = 0
    for W in F.Ws:
        g = W.elliptic[0]
        h1, h2 = W.hyperbolic
        expected = {
            "1": (h1, G.mul(h1, h2)),
            "2": (G.mul(h1, neg(h2)), h2),
            "3": (G.mul(G.mul(g, h1), neg(h2)), h2),
            "4": (neg(h1), neg(h2)),
        }
        for name, hyp in expected.items():
            e, h = NAMED_MOVES[name](G, W.elliptic, W.hyperbolic)
            if e != W.elliptic or h != hyp:
                bad1 += 1
        via = apply_moves(G, W, "1,2,1")[-1]
        direct = apply_moves(G, W, "5")[-1]
        if not (via == direct and via.hyperbolic == (neg(h2), h1) and via.elliptic == W.elliptic):
            bad5 += 1
    F.record("moves 1-4 act as h2->h1+h2, h1->h1-h2, h1->g+h1-h2, (h1,h2)->(-h1,-h2)",
             bad1 == 0, f"{len(F.Ws)} base vectors, {bad1} mismatches")
    F.record("move 5 = 1,2,1 sends (g; h1, h2) to (g; -h2, h1)",
             bad5 == 0, f"{len(F.Ws)} base vectors, {bad5} mismatches")


def _check_aut_claim(F: _Family, spec: dict, W: GeneratingVector, V_named: dict, tag: str):
    lam = F.aut(spec["images"])
    if lam is None:
        F.record(f"{tag} is an automorphism", False, "images do not extend to an automorphism")
        return
    src, dst = F.V(V_named[spec["V_from"]]), F.V(V_named[spec["V_to"]])
    img = _apply(lam, src)
    F.record(f"{tag} sends {spec['V_from']} to {spec['V_to']} up to permutation",
             _multiset(img) == _multiset(dst), f"image {F.fmt(img)}")
    wimg = _apply(lam, W)
    expected = F.W(spec["W_image"])
    F.record(f"{tag} sends W to {F.fmt(expected)}", wimg == expected, f"image {F.fmt(wimg)}")
    F.chain(f"{F.fmt(expected)} --{spec['chain']}--> W", expected, spec["chain"], W)


def _check_free_Vs(F: _Family, W: GeneratingVector, named: dict, forbidden: int, extra=None):
    free = F.free_Vs(W)
    F.record(f"freeness with W excludes {F.G.label(forbidden)} from the fibre vector",
             all(forbidden not in V.elliptic for V in free) and any(forbidden in V.elliptic for V in F.Vs),
             f"{len(free)} free fibre vectors of {len(F.Vs)}")
    listed = {_multiset(F.V(v)) for v in named.values()}
    listed_ok = all(is_admissible(F.G, F.V(v)) and is_free_diagonal_action(F.G, F.V(v), W)
                    for v in named.values())
    found = {_multiset(V) for V in free}
    if extra is not None:
        found = {min(ms, _multiset(_apply(extra, GeneratingVector(F.sigV, ms)))) for ms in found}
        listed = {min(ms, _multiset(_apply(extra, GeneratingVector(F.sigV, ms)))) for ms in listed}
    names = ",".join(named)
    F.record(f"free fibre vectors are {names} up to permutation" + (" and lambda0" if extra else ""),
             listed_ok and found == listed, f"{len(found)} classes found, {len(listed)} listed")


def _check_classes(F: _Family, expected: int):
    classes = r_classes(F.G, F.pairs())
    F.record(f"exhaustive closure gives {expected} class(es)", len(classes) == expected,
             f"{len(classes)} classes, sizes {[c.size for c in classes]}")
    return classes


def _type_I():
    F = _Family("I")
    d = kd.TYPE_I
    Wn = {k: F.W(v) for k, v in d["W"].items()}
    e1, e2 = F.el("e1"), F.el("e2")
    auts = automorphism_generators(F.G)
    # every base vector reaches one with g = e1, h1 = e2 via move 5 and Aut(G)
    targets = {(w.elliptic, w.hyperbolic) for w in F.Ws if w.elliptic[0] == e1 and w.hyperbolic[0] == e2}
    unreached = [w for w in F.Ws if not (_w_closure(F.G, w, ["5"], auts) & targets)]
    F.record("up to move 5 and Aut(G), g = e1 and h1 = e2", not unreached,
             f"{len(F.Ws)} base vectors, {len(unreached)} unreached")
    F.record("the base vectors with g = e1, h1 = e2 are W1..W4",
             {(w.elliptic, w.hyperbolic) for w in Wn.values()} == targets, f"{len(targets)} found")
    for src, trace, dst in d["chains"]:
        F.chain(f"{src} --{trace}--> {dst}", Wn[src], trace, Wn[dst])
    _check_free_Vs(F, Wn["W1"], d["V"], e1)
    _check_aut_claim(F, d["aut"], Wn["W1"], d["V"], "e1->e1, e2->e1+e2")
    _check_move_formulas(F)
    _check_classes(F, 1)
    return F


def _type_II():
    F = _Family("II")
    d = kd.TYPE_II
    W = F.W(d["W"])
    G = F.G
    bases = all(len({G.orders[x] for x in (w.elliptic[0],) + w.hyperbolic}) == 1 and
                len({w.elliptic[0]} | set(w.hyperbolic)) == 3 for w in F.Ws)
    F.record("every base vector (g; h1, h2) is a basis", bases, f"{len(F.Ws)} base vectors")
    orbit = {_apply(lam, W) for lam in automorphisms(G)}
    F.record("up to Aut(G), W = (e1; e2, e3)", orbit == set(F.Ws),
             f"Aut-orbit {len(orbit)}, base vectors {len(F.Ws)}")
    l0 = F.aut(d["lambda0"]["images"])
    img = _apply(l0, W)
    F.record("lambda0 sends W to (e1; e3, e2)", img == F.W(d["lambda0"]["W_image"]), F.fmt(img))
    F.chain("(e1; e3, e2) --5--> W", img, d["lambda0"]["chain"], W)
    _check_free_Vs(F, W, d["V"], F.el("e1"), extra=l0)
    V1 = F.V(d["V"]["V1"])
    for i, (name, w_image, trace) in enumerate(d["table"], start=1):
        Vi = d["V"][f"V{i}"]
        # lambda_i: e1 -> e1, e2 -> alpha_i, e3 -> beta_i
        lam = F.aut(("e1", Vi[0], Vi[2]))
        if lam is None:
            F.record(f"{name} is an automorphism", False, "images are not a basis")
            continue
        F.record(f"{name} sends V1 to V{i} up to permutation",
                 _multiset(_apply(lam, V1)) == _multiset(F.V(Vi)), F.fmt(_apply(lam, V1)))
        wi = _apply(lam, W)
        F.record(f"{name} sends W to {F.fmt(F.W(w_image))}", wi == F.W(w_image), F.fmt(wi))
        F.chain(f"{name}(W) --{trace or 'no moves'}--> W", wi, trace, W)
    _check_move_formulas(F)
    _check_classes(F, 1)
    return F


def _type_III():
    F = _Family("III")
    d = kd.TYPE_III
    G = F.G
    W = F.W(d["W"])
    bad_g = G.parse_element(d["forbidden_g"])
    dead = [w for w in F.Ws if w.elliptic[0] == bad_g]
    F.record(f"g = {d['forbidden_g']} admits no free fibre vector",
             bool(dead) and all(not F.free_Vs(w) for w in dead), f"{len(dead)} such base vectors")
    auts = automorphism_generators(G)
    g0, h10 = F.el("(1,0)"), F.el("(0,1)")
    targets = {(w.elliptic, w.hyperbolic) for w in F.Ws if w.elliptic[0] == g0 and w.hyperbolic[0] == h10}
    unreached = [w for w in F.Ws if w.elliptic[0] != bad_g and
                 not (_w_closure(G, w, ["5"], auts) & targets)]
    F.record("up to move 5 and Aut(G), g = (1,0) and h1 = (0,1)", not unreached,
             f"{len(unreached)} unreached")
    opts = [F.W(t) for t in d["W_options"]]
    reps = set()
    for s in targets:
        clos = _w_closure(G, GeneratingVector(BASE_SIG, *s), ["1"], [])
        reps.add(min(clos & targets))
    opt_keys = {(o.elliptic, o.hyperbolic) for o in opts}
    cover = all(any(o in _w_closure(G, GeneratingVector(BASE_SIG, *r), ["1"], []) for o in opt_keys)
                for r in reps)
    F.record("modulo move 1 there are two such base vectors", len(reps) == 2 and cover,
             f"{len(reps)} classes")
    F.chain(f"{F.fmt(opts[0])} --{d['W_chain']}--> {F.fmt(opts[1])}", opts[0], d["W_chain"], opts[1])
    _check_free_Vs(F, W, d["V"], g0)
    for spec in d["auts"]:
        _check_aut_claim(F, spec, W, d["V"], f"(0,1)->{spec['images'][1]}")
    fixed = G.parse_element(d["fixed_element"])
    allauts = automorphisms(G)
    F.record(f"every automorphism fixes {d['fixed_element']}", all(a(fixed) == fixed for a in allauts),
             f"{len(allauts)} automorphisms")
    classes = _check_classes(F, 2)
    a, b = (F.V(d["V"][k]) for k in d["inequivalent"])

    def owner(V):
        key = (V.elliptic, W.elliptic, W.hyperbolic)
        for i, c in enumerate(classes):
            if any((m[0].elliptic, m[1].elliptic, m[1].hyperbolic) == key for m in c.members):
                return i
        return None

    oa, ob = owner(a), owner(b)
    F.record(f"({d['inequivalent'][0]}, W) and ({d['inequivalent'][1]}, W) lie in different classes",
             oa is not None and ob is not None and oa != ob, f"classes {oa} and {ob}")
    _check_move_formulas(F)
    return F


def _type_IV():
    F = _Family("IV")
    d = kd.TYPE_IV
    G = F.G
    W = F.W(d["W"])
    bad_g = G.parse_element(d["forbidden_g"])
    dead = [w for w in F.Ws if w.elliptic[0] == bad_g]
    F.record(f"g = {d['forbidden_g']} admits no free fibre vector",
             bool(dead) and all(not F.free_Vs(w) for w in dead), f"{len(dead)} such base vectors")
    auts = automorphism_generators(G)
    clos = _w_closure(G, W, ["1", "2", "3", "4"], auts)
    live = [w for w in F.Ws if w.elliptic[0] != bad_g]
    F.record("up to Aut(G) and moves, W = ((1,0); (0,1), (1,0))",
             all((w.elliptic, w.hyperbolic) in clos for w in live), f"{len(live)} base vectors")
    _check_free_Vs(F, W, d["V"], F.el("(1,0)"))
    for spec in d["auts"]:
        _check_aut_claim(F, spec, W, d["V"], f"(0,1)->{spec['images'][1]}")
    _check_move_formulas(F)
    _check_classes(F, 1)
    return F


_RUNNERS = {"I": _type_I, "II": _type_II, "III": _type_III, "IV": _type_IV}


def replay_moduli_claims(label: str, strict: bool = True) -> list[ClaimResult]:
    """Check every stated equivalence for family ``label`` (I-IV).

    Returns one :class:`ClaimResult` per claim.  With ``strict`` the first
    failing claim raises :class:`ReplayError` instead.
    """
    if label not in _RUNNERS:
        raise ValueError(f"unknown family {label!r}; expected one of I, II, III, IV")
    results = _RUNNERS[label]().results
    if strict:
        for r in results:
            if not r.ok:
                raise ReplayError(label, r.claim, r.detail)
    return results
