"""Classification pipelines: abelian families, known nonabelian examples,
and the catalog search over nonabelian groups."""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import knowndata as kd
from .catalog import (abelian_group, catalog_gaps, catalog_group, nonabelian_catalog)
from .fuchsian import (MAX_GENUS_BOUND, NumericCandidate, Signature, abelian_signature_candidates,
                       base_signature_options, fibre_signatures, format_branching)
from .genvec import (GeneratingVector, enumerate_generating_vectors, is_free_diagonal_action,
                     validate_building_data, BuildingDataError)
from .groups import Group, abelian_invariant_factor_lists
from .moves import count_r_classes_factored, r_classes

THREADS_ENV = "ISOPROD_THREADS"
ABELIAN_BASE = Signature(1, (2, 2))
ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X")


def default_jobs() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return 1


def _run_jobs(fn, args: list, jobs: int | None):
    """Map ``fn`` over ``args``; results come back in input order."""
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, args, chunksize=1))


@dataclass(frozen=True)
class FamilyRecord:
    label: str
    kind: str  # "abelian" or "nonabelian"
    group: str
    order: int
    m: tuple[int, ...]
    n: tuple[int, ...]
    g_C: int
    g_F: int
    num_components: int
    component_dimension: int
    exact: bool
    representatives: tuple[tuple[str, str], ...] = ()
    known: bool | None = None
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        object.__setattr__(self, "n", tuple(self.n))
        object.__setattr__(self, "representatives", tuple(tuple(p) for p in self.representatives))
        if self.num_components < 1:
            raise ValueError("a family has at least one component")

    @property
    def sigV(self) -> Signature:
        return Signature(0, self.m)

    @property
    def sigW(self) -> Signature:
        return Signature(1, self.n)

    def key(self) -> tuple:
        return (self.order, self.m, self.n, self.group)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["m"] = list(self.m)
        d["n"] = list(self.n)
        d["representatives"] = [{"V": v, "W": w} for v, w in self.representatives]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FamilyRecord":
        d = dict(d)
        d["representatives"] = tuple((p["V"], p["W"]) for p in d.get("representatives", ()))
        return cls(**d)


def component_dimension(r: int, s: int) -> int:
    """``r`` points on P^1 up to PGL(2) plus an elliptic curve with ``s``
    marked points: ``(r - 3) + s``; ``r - 1`` when ``s = 2``."""
    return r - 3 + s


# abelian case

@dataclass(frozen=True)
class CandidateVerdict:
    """Fate of one (numerical candidate, abelian group) combination."""
    m: tuple[int, ...]
    order: int
    g_C: int
    group: str
    reason: str  # "ok", "exponent", "rank", "no_fibre_vector", "no_base_vector", "not_free"
    n_fibre: int = 0
    n_base: int = 0
    n_pairs: int = 0
    within_order_bound: bool = True


def _group_name(inv) -> str:
    return " x ".join(f"Z{d}" for d in inv)


def _abelian_job(args) -> tuple[CandidateVerdict, dict | None]:
    inv, ms, g_C, within = args
    inv, ms = tuple(inv), tuple(ms)
    order = math.prod(inv)
    name = _group_name(inv)
    base = dict(m=ms, order=order, g_C=g_C, group=name, within_order_bound=within)
    # the g_i generate, so the exponent is lcm(m); an abelian group needs
    # at least as many generators as its number of invariant factors
    if inv[-1] != math.lcm(*ms):
        return CandidateVerdict(reason="exponent", **base), None
    if len(inv) > len(ms) - 1 or len(inv) > 3:
        return CandidateVerdict(reason="rank", **base), None
    G = abelian_group(inv)
    sigV = Signature(0, ms)
    Vs = enumerate_generating_vectors(G, sigV)
    if not Vs:
        return CandidateVerdict(reason="no_fibre_vector", **base), None
    Ws = enumerate_generating_vectors(G, ABELIAN_BASE)
    if not Ws:
        return CandidateVerdict(reason="no_base_vector", n_fibre=len(Vs), **base), None
    pairs = [(V, W) for W in Ws for V in Vs if is_free_diagonal_action(G, V, W)]
    if not pairs:
        return CandidateVerdict(reason="not_free", n_fibre=len(Vs), n_base=len(Ws), **base), None
    classes = r_classes(G, pairs)
    reps = []
    for c in classes:
        V, W = c.representative
        validate_building_data(G, V, W)
        reps.append((V.format(G), W.format(G)))
    verdict = CandidateVerdict(reason="ok", n_fibre=len(Vs), n_base=len(Ws), n_pairs=len(pairs), **base)
    return verdict, {"group": name, "order": order, "m": ms, "g_C": g_C,
                     "components": len(classes), "reps": tuple(reps)}


def _abelian_jobs(max_genus: int) -> list[tuple]:
    jobs = []
    for cand in abelian_signature_candidates(max_genus):
        for inv in abelian_invariant_factor_lists(cand.group_order):
            jobs.append((tuple(inv), cand.signature.branching, cand.g_C, cand.within_order_bound))
    return jobs


def abelian_case_analysis(max_genus: int = MAX_GENUS_BOUND, jobs: int | None = None) -> list[CandidateVerdict]:
    """Every numerical candidate paired with every abelian group of its
    order, with the reason it was kept or excluded."""
    return [v for v, _ in _run_jobs(_abelian_job, _abelian_jobs(max_genus), jobs)]


def classify_abelian(max_genus: int = MAX_GENUS_BOUND, jobs: int | None = None) -> list[FamilyRecord]:
    """All families with abelian ``G``, sorted by ``(|G|, m)`` and labelled
    I, II, ... in that order."""
    found = [data for _, data in _run_jobs(_abelian_job, _abelian_jobs(max_genus), jobs) if data]
    found.sort(key=lambda d: (d["order"], d["m"], d["group"]))
    out = []
    for i, d in enumerate(found):
        label = ROMAN[i] if i < len(ROMAN) else f"A{i + 1}"
        out.append(FamilyRecord(
            label=label, kind="abelian", group=d["group"], order=d["order"], m=d["m"], n=(2, 2),
            g_C=d["g_C"], g_F=3, num_components=d["components"],
            component_dimension=component_dimension(len(d["m"]), 2), exact=True,
            representatives=d["reps"]))
    return out


def numeric_candidates(max_genus: int = MAX_GENUS_BOUND) -> list[NumericCandidate]:
    return abelian_signature_candidates(max_genus)


# known nonabelian constructions

class KnownExampleError(RuntimeError):
    def __init__(self, tag: str, detail: str):
        super().__init__(f"{tag}: {detail}")
        self.tag = tag


def known_example_data(ex: dict) -> tuple[Group, GeneratingVector, GeneratingVector]:
    G = catalog_group(ex["group"])
    V = GeneratingVector.from_labels(G, Signature(0, ex["m"]), ex["V"])
    W = GeneratingVector.from_labels(G, Signature(1, ex["n"]), ex["ell"], ex["hyp"])
    return G, V, W


def verify_known_examples(count_classes: bool = True) -> list[FamilyRecord]:
    """Validate the six explicit nonabelian constructions as written."""
    out = []
    for ex in kd.NONABELIAN_EXAMPLES:
        tag = ex["tag"]
        try:
            G, V, W = known_example_data(ex)
            bd = validate_building_data(G, V, W)
        except (BuildingDataError, ValueError) as e:
            raise KnownExampleError(tag, str(e)) from None
        if (G.order, bd.genus.g_C, bd.genus.g_F) != (G.order, ex["g_C"], ex["g_F"]):
            raise KnownExampleError(tag, f"genera ({bd.genus.g_C}, {bd.genus.g_F}) differ from "
                                         f"({ex['g_C']}, {ex['g_F']})")
        count = 1
        if count_classes:
            Vs = enumerate_generating_vectors(G, V.sig)
            Ws = enumerate_generating_vectors(G, W.sig)
            count, _ = count_r_classes_factored(G, Vs, Ws, lambda a, b: is_free_diagonal_action(G, a, b))
        out.append(FamilyRecord(
            label=tag, kind="nonabelian", group=ex["group"], order=G.order, m=V.sig.branching,
            n=W.sig.branching, g_C=bd.genus.g_C, g_F=bd.genus.g_F, num_components=count,
            component_dimension=component_dimension(V.sig.r, W.sig.r), exact=False,
            representatives=((V.format(G), W.format(G)),), known=True,
            notes="component count is a lower bound"))
    return out


def known_products_check() -> list[tuple[str, bool]]:
    """The two A5 products quoted next to its construction."""
    ex = next(e for e in kd.NONABELIAN_EXAMPLES if e["tag"] == "A5")
    G, V, W = known_example_data(ex)
    names = {"g1": V.elliptic[0], "g2": V.elliptic[1], "g3": V.elliptic[2],
             "l1": W.elliptic[0], "h1": W.hyperbolic[0], "h2": W.hyperbolic[1]}
    out = []
    for word, expected in kd.A5_PRODUCTS:
        got = G.product(names[w] for w in word)
        out.append(("".join(word) + " = " + expected, got == G.parse_element(expected)))
    return out


KNOWN_ROWS = {(ex["group"], tuple(ex["m"]), tuple(ex["n"])) for ex in kd.NONABELIAN_EXAMPLES}


# nonabelian search

class CatalogGapWarning(UserWarning):
    pass


def search_orders(max_order: int) -> list[int]:
    """Orders that some base option can reach: ``|G| = (g_C-1)(g_F-1)`` with
    ``g_C >= 3``."""
    out = set()
    for opt in base_signature_options():
        k = opt.g_F - 1
        out.update(range(2 * k, max_order + 1, k))
    return sorted(out)


def _nonabelian_job(args):
    spec, = args
    G = catalog_group(spec)
    rows = []
    elem_orders = sorted({o for o in G.orders if o > 1})
    for opt in base_signature_options():
        k = opt.g_F - 1
        if G.order % k or G.order < 2 * k:
            continue
        g_C = G.order // k + 1
        sigW = opt.signature
        Ws = None
        for sigV in fibre_signatures(G.order, opt.g_F, allowed_orders=elem_orders):
            Vs = enumerate_generating_vectors(G, sigV)
            if not Vs:
                continue
            if Ws is None:
                Ws = enumerate_generating_vectors(G, sigW)
            if not Ws:
                break
            count, reps = count_r_classes_factored(G, Vs, Ws, lambda a, b: is_free_diagonal_action(G, a, b))
            if not count:
                continue
            V, W = reps[0]
            validate_building_data(G, V, W)
            rows.append(dict(group=spec, order=G.order, m=sigV.branching, n=sigW.branching,
                             g_C=g_C, g_F=opt.g_F, count=count, option=opt.label,
                             reps=tuple((v.format(G), w.format(G)) for v, w in reps)))
    return rows


def search_nonabelian(max_order: int = 60, jobs: int | None = None) -> list[FamilyRecord]:
    """Search the curated nonabelian catalog up to ``max_order``.

    Emits :class:`CatalogGapWarning` listing reachable orders at which the
    catalog is incomplete.  Component counts are lower bounds.
    """
    orders = search_orders(max_order)
    gaps = catalog_gaps(max_order, orders)
    if gaps:
        listing = ", ".join(f"{n} ({have} of {tot})" for n, (have, tot) in sorted(gaps.items()))
        warnings.warn(CatalogGapWarning(f"catalog incomplete at orders: {listing}"), stacklevel=2)
    specs = [s for s, G in nonabelian_catalog(max_order) if G.order in set(orders)]
    results = _run_jobs(_nonabelian_job, [(s,) for s in specs], jobs)
    rows = [r for rs in results for r in rs]
    rows.sort(key=lambda d: (d["order"], d["m"], d["n"], d["group"]))
    out = []
    for d in rows:
        known = (d["group"], d["m"], d["n"]) in KNOWN_ROWS
        out.append(FamilyRecord(
            label=d["group"], kind="nonabelian", group=d["group"], order=d["order"], m=d["m"], n=d["n"],
            g_C=d["g_C"], g_F=d["g_F"], num_components=d["count"],
            component_dimension=component_dimension(len(d["m"]), len(d["n"])), exact=False,
            representatives=d["reps"], known=known,
            notes=("component count is a lower bound; base option " + d["option"]
                   + ("" if known else "; candidate row beyond the known list"))))
    return out


def describe(rec: FamilyRecord) -> str:
    return (f"{rec.label}: G={rec.group} m=({format_branching(rec.m)}) n=({format_branching(rec.n)}) "
            f"g_C={rec.g_C} g_F={rec.g_F}")
