"""Certificates for the existence of strata with prescribed ``s_k``.

The construction starts from a general bundle of degree ``d + N`` whose
``s_k`` lies in the generic band, then performs ``N`` elementary
transformations that are type I at rank ``k``. This lowers ``s_k`` by exactly
``N*k`` and every other ``s_i`` by at most ``N*i``. A certificate records
the lower bounds on each ``s_i`` and whether all of them stay positive.

Two checks are run for each ``i``:

* the closed-form chain, which drops the residues ``eps_i`` and is valid
  for ``i < k`` (ranks above ``k`` are handled on the dual side);
* an exact bound ``s_max(d + N, i) - N*i``, computed both directly and on
  the dual side, keeping whichever is larger.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import core
from .errors import DomainError

__all__ = [
    "Verdict",
    "ChainResult",
    "RankBound",
    "ConstructionCertificate",
    "GenusRequirement",
    "choose_Nk",
    "paper_chain",
    "chain_holds",
    "sharp_feasibility",
    "genus_requirement",
]

RANGE_NOTE = (
    "s is validated against s_max = k(r-k)(g-1)+eps_k; the looser range "
    "k(r-k)(g-1)+(r+1) exceeds the Hirschowitz bound k(r-k)(g-1)+(r-1)"
)
SHARPENING_NOTE = (
    "not attempted: choosing transformations that are k-type I and i-type II "
    "wherever possible may lower the genus requirement"
)


class Verdict(enum.Enum):
    PAPER_GUARANTEED = "PaperGuaranteed"
    SHARP_GUARANTEED = "SharpGuaranteed"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ChainResult:
    values: tuple[Fraction, Fraction]
    positive: bool


@dataclass(frozen=True)
class RankBound:
    """Worst-case lower bound on ``s_i`` after the construction."""

    i: int
    reduction: str  # "direct" or "dual", whichever bound is larger
    s_i_max: int  # general value at the starting degree of the chosen side
    worst_case_lb: int
    direct_lb: int
    dual_lb: int
    dual_N: int
    chain: Optional[ChainResult]  # closed-form chain on the reduced side

    @property
    def passes(self) -> bool:
        return self.worst_case_lb > 0


@dataclass(frozen=True)
class ConstructionCertificate:
    g: int
    r: int
    d: int
    k: int
    s: int
    N_k: int
    d_tilde: int
    window: tuple[int, int]
    per_i: tuple[RankBound, ...]
    verdict: Verdict
    sharp_guaranteed: bool
    paper_guaranteed: bool
    notes: tuple[str, ...] = field(default=(RANGE_NOTE, SHARPENING_NOTE))


@dataclass(frozen=True)
class GenusRequirement:
    r: int
    k: int
    general_bound: Fraction
    refined_bound: Fraction
    n: int


def _window(g: int, r: int, k: int) -> tuple[int, int]:
    base = core.generic_floor(g, r, k)
    return base, base + r - 1


def choose_Nk(g: int, r: int, k: int, s: int) -> int:
    """Smallest ``N >= 0`` with ``s + N*k`` inside the generic band.

    The band ``[k(r-k)(g-1), k(r-k)(g-1) + r - 1]`` holds ``r`` consecutive
    integers and ``k < r``, so stepping by ``k`` cannot jump over it.
    """
    lo, hi = _window(g, r, k)
    if not isinstance(s, int) or not 0 < s <= hi:
        raise DomainError(f"s={s!r} outside 0 < s <= {hi}")
    if s >= lo:
        return 0
    return -((s - lo) // k)


def paper_chain(g: int, r: int, k: int, s: int, i: int) -> ChainResult:
    """The two rational lower bounds for ``s_i`` used by the closed-form chain.

    ``values[0] = i(r-i)(g-1) - (i/k)(k(r-k)(g-1) - s + r - 1)``
    ``values[1] = i(k-i)(g-1) - (i/k)(r-2)``

    ``positive`` holds when both are ``> 0`` and the first dominates the
    second (which it does for every ``s >= 1``).
    """
    core.check_genus(g)
    core.check_rank(r)
    core.check_subrank(r, k)
    if not 1 <= i <= k - 1:
        raise DomainError(f"i={i} outside 1..{k - 1}")
    first = i * (r - i) * (g - 1) - Fraction(i, k) * (k * (r - k) * (g - 1) - s + r - 1)
    second = i * (k - i) * (g - 1) - Fraction(i, k) * (r - 2)
    return ChainResult((first, second), first > 0 and second > 0 and first >= second)


def chain_holds(g: int, r: int, k: int, s: int) -> bool:
    """True when the chain is positive for every ``1 <= i <= k-1`` (vacuous for ``k = 1``)."""
    return all(paper_chain(g, r, k, s, i).positive for i in range(1, k))


def _exact_lb(g: int, r: int, d: int, k: int, s: int, i: int) -> tuple[int, int, int]:
    """``(N, s_max(d+N, i), s_max(d+N, i) - N*i)`` for the construction at ``(d, k)``."""
    n = choose_Nk(g, r, k, s)
    top = core.s_max(g, r, d + n, i)
    return n, top, top - n * i


def sharp_feasibility(g: int, r: int, d: int, k: int, s: int) -> ConstructionCertificate:
    """Replay the construction for ``(g, r, d, k, s)`` and grade it.

    ``Unknown`` means neither bound stays positive for some ``i``; it does
    not mean the stratum is empty.
    """
    core.require_valid_s(g, r, d, k, s)
    n_k = choose_Nk(g, r, k, s)
    window = _window(g, r, k)
    d_tilde = d + n_k
    # s + N_k*k sits in the band and has the right residue, so it is s_max
    assert s + n_k * k == core.s_max(g, r, d_tilde, k)

    rows = []
    for i in range(1, r):
        if i == k:
            continue
        _, direct_top, direct_lb = _exact_lb(g, r, d, k, s, i)
        dual_n, dual_top, dual_lb = _exact_lb(g, r, -d, r - k, s, r - i)
        if i < k:
            chain = paper_chain(g, r, k, s, i)
        else:
            chain = paper_chain(g, r, r - k, s, r - i)
        if direct_lb >= dual_lb:
            reduction, top, best = "direct", direct_top, direct_lb
        else:
            reduction, top, best = "dual", dual_top, dual_lb
        rows.append(
            RankBound(
                i=i, reduction=reduction, s_i_max=top, worst_case_lb=best,
                direct_lb=direct_lb, dual_lb=dual_lb, dual_N=dual_n, chain=chain,
            )
        )

    sharp = all(row.passes for row in rows)
    closed_form = sharp and all(row.chain.positive for row in rows)
    if closed_form:
        verdict = Verdict.PAPER_GUARANTEED
    elif sharp:
        verdict = Verdict.SHARP_GUARANTEED
    else:
        verdict = Verdict.UNKNOWN
    return ConstructionCertificate(
        g=g, r=r, d=d, k=k, s=s, N_k=n_k, d_tilde=d_tilde, window=window,
        per_i=tuple(rows), verdict=verdict,
        sharp_guaranteed=sharp, paper_guaranteed=closed_form,
    )


def genus_requirement(r: int, k: int) -> GenusRequirement:
    """Genus needed by the closed-form chain for a fixed ``(r, k)``.

    For ``k`` in ``{1, r-1}`` any ``g >= 2`` works. Otherwise write
    ``k = (r +- n)/2``; then ``g >= 3 + 2(n-1)/(r-n)`` suffices.
    """
    core.check_rank(r)
    core.check_subrank(r, k)
    n = abs(r - 2 * k)
    if k in (1, r - 1):
        refined = Fraction(2)
    else:
        refined = 3 + Fraction(2 * (n - 1), r - n)
    return GenusRequirement(r=r, k=k, general_bound=Fraction(r + 1, 2), refined_bound=refined, n=n)
