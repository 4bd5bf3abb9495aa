"""Signatures, Riemann-Hurwitz arithmetic and the numerical candidate search.

All arithmetic is done with :class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

MAX_GENUS_BOUND = 64


class SignatureError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Signature:
    orbit_genus: int
    branching: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branching", tuple(int(m) for m in self.branching))
        if self.orbit_genus < 0:
            raise SignatureError("orbit genus must be non-negative")
        if any(m < 2 for m in self.branching):
            raise SignatureError("branching orders must be >= 2")
        if list(self.branching) != sorted(self.branching):
            raise SignatureError("branching data must be non-decreasing")

    @property
    def r(self) -> int:
        return len(self.branching)

    def orbifold_term(self) -> Fraction:
        """``2g' - 2 + sum(1 - 1/m_i)``."""
        return 2 * self.orbit_genus - 2 + sum((1 - Fraction(1, m) for m in self.branching), Fraction(0))

    def __str__(self):
        return f"({self.orbit_genus} | {format_branching(self.branching)})"

    @classmethod
    def parse(cls, text: str) -> "Signature":
        return parse_signature(text)


def format_branching(ms) -> str:
    """``(2,2,4,4)`` -> ``2^2,4^2``; empty -> ``-``."""
    if not ms:
        return "-"
    parts, i = [], 0
    ms = list(ms)
    while i < len(ms):
        j = i
        while j < len(ms) and ms[j] == ms[i]:
            j += 1
        parts.append(str(ms[i]) if j - i == 1 else f"{ms[i]}^{j - i}")
        i = j
    return ",".join(parts)


def parse_branching(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-"):
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
        if not m:
            raise SignatureError(f"bad branching entry {tok!r}")
        out += [int(m.group(1))] * int(m.group(2) or 1)
    return tuple(sorted(out))


def parse_signature(text: str) -> Signature:
    """Parse ``(g' | m1,m2,...)`` with exponent sugar, e.g. ``(0|2^2,4^2)``."""
    m = re.fullmatch(r"\s*\(\s*(\d+)\s*\|([^)]*)\)\s*", text)
    if not m:
        col = 0 if not text.strip().startswith("(") else len(text)
        raise SignatureError(f"cannot parse signature {text!r} (column {col})")
    return Signature(int(m.group(1)), parse_branching(m.group(2)))


def riemann_hurwitz_genus(group_order: int, sig: Signature) -> int:
    """Genus ``g`` with ``2g - 2 = |G| (2g' - 2 + sum(1 - 1/m_i))``."""
    if group_order < 1:
        raise SignatureError("group order must be >= 1")
    rhs = group_order * sig.orbifold_term()
    if rhs.denominator != 1 or rhs.numerator % 2:
        raise SignatureError("signature incompatible with order")
    g = (rhs.numerator + 2) // 2
    if g < 0:
        raise SignatureError("signature incompatible with order")
    return g


@dataclass(frozen=True)
class BaseOption:
    label: str
    g_F: int
    n: tuple[int, ...]
    abelian_ok: bool

    @property
    def signature(self) -> Signature:
        return Signature(1, self.n)


def base_signature_options() -> list[BaseOption]:
    """The three base-curve branching options for ``p_g = q = 1``.

    Each solves ``2 = (g_F - 1) * sum(1 - 1/n_j)`` with ``g_F >= 3``.  Only
    options with at least two branch points survive for abelian groups,
    since a single elliptic generator maps to zero there.
    """
    out = []
    for g_F in range(3, 6):
        target = Fraction(2, g_F - 1)
        for s in range(1, 5):
            # each term is >= 1/2
            if Fraction(s, 2) > target:
                break
            for n in egyptian_tuples(s - target, s):
                out.append((g_F, n))
    labels = "abc"
    return [BaseOption(labels[i], g_F, n, len(n) >= 2) for i, (g_F, n) in enumerate(out)]


def egyptian_tuples(total: Fraction, k: int, lo: int = 2) -> Iterator[tuple[int, ...]]:
    """Non-decreasing ``(m_1..m_k)`` with ``m_1 >= lo`` and
    ``sum(1/m_i) == total``, exactly.  Finite for every ``total > 0``."""
    if k == 0:
        if total == 0:
            yield ()
        return
    if total <= 0:
        return
    if k == 1:
        if total.numerator == 1 and total.denominator >= lo:
            yield (total.denominator,)
        return
    # 1/m <= total  and  k/m >= total
    m = max(lo, -(-total.denominator // total.numerator))
    while Fraction(k, m) >= total:
        for rest in egyptian_tuples(total - Fraction(1, m), k - 1, m):
            yield (m,) + rest
        m += 1


@dataclass(frozen=True)
class NumericCandidate:
    """A genus-0 branching list solving the fibre equation before any group
    theory: ``sum(1 - 1/m_i) - 2 == 2 (g_F - 1) / |G|``."""
    signature: Signature
    group_order: int
    g_C: int
    g_F: int = 3
    within_order_bound: bool = field(default=True)

    @property
    def r(self) -> int:
        return self.signature.r


def abelian_signature_candidates(max_genus: int = MAX_GENUS_BOUND) -> list[NumericCandidate]:
    """Branching data ``m`` with ``3 <= r <= 6`` solving
    ``2 = (g_C - 1)(-2 + sum(1 - 1/m_i))`` with ``|G| = 2 (g_C - 1)``.

    Searched for ``3 <= g_C <= max_genus``; the ``m_i`` are bounded by the
    equation itself, not by ``|G|``, so purely numerical solutions such as
    ``(2^2, 4, 12)`` with ``|G| = 6`` are kept and left to the group filter.
    """
    out = []
    for r in range(3, 7):
        for g_C in range(3, max_genus + 1):
            order = 2 * (g_C - 1)
            # sum(1/m_i) = r - 2 - 2/(g_C - 1)
            total = Fraction(r - 2) - Fraction(2, g_C - 1)
            for ms in egyptian_tuples(total, r):
                sig = Signature(0, ms)
                out.append(NumericCandidate(sig, order, g_C, 3, max(ms) <= order))
    out.sort(key=lambda c: (c.r, c.signature.branching, c.group_order))
    return out


def fibre_signatures(group_order: int, g_F: int, allowed_orders=None, max_r: int = 12) -> list[Signature]:
    """Genus-0 signatures ``(0 | m)`` with ``riemann_hurwitz_genus == g_F``.

    ``allowed_orders`` restricts the ``m_i`` (e.g. to element orders of a
    group).
    """
    target = 2 + Fraction(2 * (g_F - 1), group_order)
    out = []
    for r in range(1, max_r + 1):
        if Fraction(r, 2) > target:
            break
        total = r - target
        for ms in egyptian_tuples(total, r):
            if allowed_orders is not None and not set(ms) <= set(allowed_orders):
                continue
            out.append(Signature(0, ms))
    return out


@dataclass(frozen=True)
class SurfaceInvariants:
    p_g: int
    q: int
    chi: int
    K2: int
    group_order: int
    g_C: int
    g_F: int


def surface_invariants(bd) -> SurfaceInvariants:
    """Invariants of the surface built from validated building data."""
    order = bd.G.order
    g_F = riemann_hurwitz_genus(order, bd.V.sig)
    g_C = riemann_hurwitz_genus(order, bd.W.sig)
    if (g_C, g_F) != (bd.genus.g_C, bd.genus.g_F) or order != (g_C - 1) * (g_F - 1):
        raise SignatureError("inconsistent genera for validated building data")
    # chi(O_S) = chi(O_C x O_F) / |G| = 1, then Noether with K^2 = 2 c_2
    chi = Fraction((g_C - 1) * (g_F - 1), order)
    if chi != 1:
        raise SignatureError("chi(O_S) != 1")
    c2 = Fraction(4 * (g_C - 1) * (g_F - 1), order)
    K2 = 2 * c2
    if K2 + c2 != 12 * chi:
        raise SignatureError("Noether formula fails")
    return SurfaceInvariants(1, 1, int(chi), int(K2), order, g_C, g_F)
