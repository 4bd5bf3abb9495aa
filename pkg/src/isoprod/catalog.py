"""Group catalog used by the searches.

Abelian groups are enumerated completely by invariant factors.  The
nonabelian list is curated (dihedral, dicyclic, S3, S4, A4, A5 and direct
products with small abelian groups); it is not a complete census of any
order above 14, and :func:`catalog_gaps` says where it falls short.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .groups import Group, abelian_invariant_factor_lists, make_abelian_group, parse_group_spec

# number of isomorphism types of groups of order n, n = 1..60
GROUP_COUNTS = (
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5,
    2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1, 51, 1, 2, 1, 14, 1, 2, 2, 14,
    1, 6, 1, 4, 2, 2, 1, 52, 2, 5, 1, 5, 1, 15, 2, 13, 2, 2, 1, 13,
)

NONABELIAN_SPECS = (
    "S3",
    "D4", "Dic2",
    "D5",
    "D6", "A4", "Dic3",
    "D7",
    "D8", "Dic4", "D4 x Z2", "Dic2 x Z2",
    "D9", "S3 x Z3",
    "D10", "Dic5",
    "D11",
    "S4", "D12", "Dic6", "A4 x Z2", "S3 x Z4", "D4 x Z3", "Dic2 x Z3", "Dic3 x Z2", "D6 x Z2",
    "D13",
    "D14", "Dic7",
    "D15", "D5 x Z3", "S3 x Z5",
    "D16", "Dic8", "D8 x Z2", "Dic4 x Z2", "D4 x Z4", "D4 x Z2 x Z2", "Dic2 x Z4", "Dic2 x Z2 x Z2",
    "D17",
    "D18", "Dic9", "S3 x S3", "A4 x Z3", "S3 x Z6", "Dic3 x Z3",
    "D19",
    "D20", "Dic10", "D10 x Z2", "Dic5 x Z2", "D5 x Z4", "D4 x Z5", "Dic2 x Z5",
    "D21", "D7 x Z3", "S3 x Z7",
    "D22", "Dic11",
    "D23",
    "S4 x Z2", "D24", "Dic12", "A4 x Z4", "A4 x Z2 x Z2", "D12 x Z2", "Dic6 x Z2", "S3 x Z8",
    "D4 x Z6", "Dic2 x Z6", "Dic3 x Z4",
    "D25", "D5 x Z5",
    "D26", "Dic13",
    "D27", "D9 x Z3", "S3 x Z9", "S3 x Z3 x Z3",
    "D28", "Dic14", "D7 x Z4", "D4 x Z7", "Dic2 x Z7",
    "D29",
    "A5", "D30", "Dic15", "A4 x Z5", "D5 x Z6", "S3 x Z10", "Dic3 x Z5", "Dic5 x Z3",
)


def partition_count(k: int) -> int:
    p = [1] + [0] * k
    for part in range(1, k + 1):
        for i in range(part, k + 1):
            p[i] += p[i - part]
    return p[k]


def abelian_count(n: int) -> int:
    out, d = 1, 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out *= partition_count(e)
        d += 1
    return out


def nonabelian_count(n: int) -> int | None:
    if not 1 <= n <= len(GROUP_COUNTS):
        return None
    return GROUP_COUNTS[n - 1] - abelian_count(n)


@lru_cache(maxsize=None)
def abelian_group(invariants: tuple[int, ...]) -> Group:
    return make_abelian_group(list(invariants), name=" x ".join(f"Z{d}" for d in invariants))


def abelian_groups(order: int) -> list[Group]:
    return [abelian_group(tuple(inv)) for inv in abelian_invariant_factor_lists(order)]


@lru_cache(maxsize=None)
def catalog_group(spec: str) -> Group:
    return parse_group_spec(spec)


def spec_order(spec: str) -> int:
    """Order of a catalog spec without building the group."""
    total = 1
    for factor in spec.lower().replace(" ", "").split("x"):
        n = int("".join(ch for ch in factor if ch.isdigit()))
        if factor.startswith("dic"):
            total *= 4 * n
        elif factor.startswith("d"):
            total *= 2 * n
        elif factor.startswith("s"):
            total *= math.factorial(n)
        elif factor.startswith("a"):
            total *= math.factorial(n) // 2
        else:
            total *= n
    return total


def nonabelian_catalog(max_order: int = 60) -> list[tuple[str, Group]]:
    specs = [s for s in NONABELIAN_SPECS if spec_order(s) <= max_order]
    specs.sort(key=lambda s: (spec_order(s), NONABELIAN_SPECS.index(s)))
    return [(s, catalog_group(s)) for s in specs]


def catalog_gaps(max_order: int = 60, orders=None) -> dict[int, tuple[int, int]]:
    """Orders where the curated list misses nonabelian groups.

    Maps order -> (groups in catalog, nonabelian groups that exist).
    """
    have: dict[int, int] = {}
    for s in NONABELIAN_SPECS:
        have[spec_order(s)] = have.get(spec_order(s), 0) + 1
    gaps = {}
    for n in orders if orders is not None else range(1, max_order + 1):
        if n > max_order:
            continue
        total = nonabelian_count(n)
        if total is None:
            continue
        if have.get(n, 0) < total:
            gaps[n] = (have.get(n, 0), total)
    return gaps


def catalog_description(max_order: int = 60) -> str:
    n = sum(1 for s in NONABELIAN_SPECS if spec_order(s) <= max_order)
    full = [k for k in range(1, max_order + 1) if k not in catalog_gaps(max_order)]
    complete = ",".join(str(k) for k in full if (nonabelian_count(k) or 0) > 0)
    return (f"abelian groups: all, by invariant factors; nonabelian: {n} curated groups of order "
            f"<= {max_order}, complete only at orders {complete}")
