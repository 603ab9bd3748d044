"""Closed-form Segre invariants, bounds and stratum dimensions.

A bundle is never represented here, only its numeric class ``(g, r, d)``.
For a rank-``k`` subbundle ``F`` of degree ``degF`` the pair invariant is
``k*d - r*degF``; the Segre invariant ``s_k`` is its minimum over all
subbundles. Everything is exact integer or :class:`~fractions.Fraction`
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    MAX_ABS_DEGREE,
    MAX_GENUS,
    MAX_RANK,
    DomainError,
    GuardError,
    checked,
)

__all__ = [
    "CurveClass",
    "BundleClass",
    "SubbundlePair",
    "StratumDescriptor",
    "NestedBounds",
    "segre_pair",
    "hirschowitz_bound",
    "mukai_sakai_bound",
    "segre_bound",
    "generic_floor",
    "epsilon_k",
    "s_max",
    "valid_s",
    "dual_params",
    "stratum_dim",
    "generic_dim",
    "maximal_locus_dim",
    "nested_bounds",
    "strata_table",
]


# -- argument guards ---------------------------------------------------------

def check_genus(g: int) -> int:
    if not isinstance(g, int) or isinstance(g, bool):
        raise DomainError(f"genus must be an integer, got {g!r}")
    if g < 2:
        raise DomainError(f"genus must be >= 2, got {g}")
    if g > MAX_GENUS:
        raise GuardError(f"genus {g} exceeds guard {MAX_GENUS}")
    return g


def check_rank(r: int) -> int:
    if not isinstance(r, int) or isinstance(r, bool):
        raise DomainError(f"rank must be an integer, got {r!r}")
    if r < 2:
        raise DomainError(f"rank must be >= 2, got {r}")
    if r > MAX_RANK:
        raise GuardError(f"rank {r} exceeds guard {MAX_RANK}")
    return r


def check_degree(d: int) -> int:
    if not isinstance(d, int) or isinstance(d, bool):
        raise DomainError(f"degree must be an integer, got {d!r}")
    if abs(d) > MAX_ABS_DEGREE:
        raise GuardError(f"|degree| {abs(d)} exceeds guard {MAX_ABS_DEGREE}")
    return d


def check_subrank(r: int, k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool):
        raise DomainError(f"sub-rank must be an integer, got {k!r}")
    if not 1 <= k <= r - 1:
        raise DomainError(f"sub-rank k={k} outside 1..{r - 1}")
    return k


# -- value types -------------------------------------------------------------

@dataclass(frozen=True)
class CurveClass:
    g: int

    def __post_init__(self) -> None:
        check_genus(self.g)


@dataclass(frozen=True)
class BundleClass:
    """Numeric stand-in for a bundle: genus, rank and degree."""

    g: int
    r: int
    d: int

    def __post_init__(self) -> None:
        check_genus(self.g)
        check_rank(self.r)
        check_degree(self.d)

    @property
    def slope(self) -> Fraction:
        return Fraction(self.d, self.r)


@dataclass(frozen=True)
class SubbundlePair:
    bundle: BundleClass
    k: int
    degF: int

    def __post_init__(self) -> None:
        check_subrank(self.bundle.r, self.k)

    @property
    def value(self) -> int:
        return segre_pair(self.bundle.r, self.bundle.d, self.k, self.degF)

    def slope_gap(self) -> Fraction:
        """``k(r-k)(mu(E/F) - mu(F))``; always equal to :attr:`value`."""
        r, d, k = self.bundle.r, self.bundle.d, self.k
        mu_sub = Fraction(self.degF, k)
        mu_quot = Fraction(d - self.degF, r - k)
        return k * (r - k) * (mu_quot - mu_sub)


@dataclass(frozen=True)
class StratumDescriptor:
    g: int
    r: int
    d: int
    k: int
    s: int
    eps: int
    d1: int
    dim: int
    codim: int
    locus_dim: int
    is_generic: bool


@dataclass(frozen=True)
class NestedBounds:
    """Lower bounds for the invariants of a maximal subbundle and its quotient.

    A side whose ``nu`` range is empty is ``None``.
    """

    nu: int
    sub_bound: Optional[Fraction]
    quot_bound: Optional[Fraction]
    sub_bound_int: Optional[int]
    quot_bound_int: Optional[int]


# -- operations --------------------------------------------------------------

def segre_pair(r: int, d: int, k: int, degF: int) -> int:
    """Return ``k*d - r*degF``, the invariant of one rank-``k`` subbundle."""
    check_rank(r)
    check_subrank(r, k)
    return checked(k * d - r * degF)


def generic_floor(g: int, r: int, k: int) -> int:
    """``k(r-k)(g-1)``: the lower edge of the generic band."""
    check_genus(g)
    check_rank(r)
    check_subrank(r, k)
    return checked(k * (r - k) * (g - 1))


def hirschowitz_bound(g: int, r: int, k: int) -> int:
    return checked(generic_floor(g, r, k) + r - 1)


def mukai_sakai_bound(g: int, r: int, k: int) -> int:
    check_genus(g)
    check_rank(r)
    check_subrank(r, k)
    return checked(k * (r - k) * g)


def segre_bound(g: int) -> int:
    """Rank-2 upper bound ``s_1 <= g``."""
    return check_genus(g)


def epsilon_k(g: int, r: int, d: int, k: int) -> int:
    """Residue in ``[0, r-1]`` making ``k(r-k)(g-1) + eps = k*d (mod r)``."""
    check_degree(d)
    return (k * d - generic_floor(g, r, k)) % r


def s_max(g: int, r: int, d: int, k: int) -> int:
    """Value of ``s_k`` on a general bundle of rank ``r`` and degree ``d``."""
    return checked(generic_floor(g, r, k) + epsilon_k(g, r, d, k))


def valid_s(g: int, r: int, d: int, k: int) -> list[int]:
    """All ``s`` with ``0 < s <= s_max`` and ``s = k*d (mod r)``, ascending."""
    top = s_max(g, r, d, k)
    first = (k * d) % r or r
    return list(range(first, top + 1, r))


def dual_params(r: int, d: int, k: int) -> tuple[int, int, int]:
    """Parameters of the dual bundle: ``(r, -d, r-k)``."""
    check_rank(r)
    check_degree(d)
    check_subrank(r, k)
    return r, -d, r - k


def require_valid_s(g: int, r: int, d: int, k: int, s: int) -> None:
    if not isinstance(s, int) or isinstance(s, bool):
        raise DomainError(f"s must be an integer, got {s!r}")
    if (s - k * d) % r:
        raise DomainError(f"s={s} is not congruent to k*d={k * d} mod {r}")
    top = s_max(g, r, d, k)
    if not 0 < s <= top:
        raise DomainError(f"s={s} outside the window 0 < s <= {top}")


def generic_dim(g: int, r: int) -> int:
    check_genus(g)
    check_rank(r)
    return checked(r * r * (g - 1) + 1)


def stratum_dim(g: int, r: int, d: int, k: int, s: int) -> int:
    """Dimension of the stratum of stable bundles with ``s_k = s``.

    Below the generic band the stratum has dimension
    ``(r^2 + k^2 - rk)(g-1) + s + 1``; inside it the stratum is dense and
    has the full moduli dimension ``r^2(g-1) + 1``.
    """
    require_valid_s(g, r, d, k, s)
    if s < generic_floor(g, r, k):
        return checked((r * r + k * k - r * k) * (g - 1) + s + 1)
    return generic_dim(g, r)


def maximal_locus_dim(g: int, r: int, k: int, s: int) -> int:
    """Dimension of the maximal-subbundle locus of a general bundle in the stratum."""
    top = hirschowitz_bound(g, r, k)
    if not isinstance(s, int) or not 0 < s <= top:
        raise DomainError(f"s={s!r} outside 0 < s <= {top}")
    return max(s - generic_floor(g, r, k), 0)


def nested_bounds(r: int, k: int, s: int, nu: int) -> NestedBounds:
    """Lower bounds for ``s_nu(F)`` and ``s_nu(E/F)`` with ``F`` maximal.

    Requires ``E`` stable, so ``s >= 1``. The subbundle side exists for
    ``1 <= nu <= k-1``, the quotient side for ``1 <= nu <= r-k-1``.
    """
    check_rank(r)
    check_subrank(r, k)
    if not isinstance(s, int) or s < 1:
        raise DomainError(f"s={s!r} must be >= 1 (E stable)")
    has_sub = 1 <= nu <= k - 1
    has_quot = 1 <= nu <= r - k - 1
    if not (has_sub or has_quot):
        raise DomainError(f"nu={nu} outside both 1..{k - 1} and 1..{r - k - 1}")
    sub = Fraction(k - nu * s, r) if has_sub else None
    quot = Fraction((r - k) - (r - k - nu) * s, r) if has_quot else None
    return NestedBounds(
        nu=nu,
        sub_bound=sub,
        quot_bound=quot,
        sub_bound_int=math.ceil(sub) if sub is not None else None,
        quot_bound_int=math.ceil(quot) if quot is not None else None,
    )


def strata_table(g: int, r: int, d: int) -> list[StratumDescriptor]:
    """Every stratum for ``(g, r, d)``, ordered by ``(k, s)``."""
    check_genus(g)
    check_rank(r)
    check_degree(d)
    full = generic_dim(g, r)
    rows = []
    for k in range(1, r):
        eps = epsilon_k(g, r, d, k)
        floor = generic_floor(g, r, k)
        for s in valid_s(g, r, d, k):
            dim = stratum_dim(g, r, d, k, s)
            rows.append(
                StratumDescriptor(
                    g=g, r=r, d=d, k=k, s=s, eps=eps,
                    d1=(k * d - s) // r,
                    dim=dim,
                    codim=full - dim,
                    locus_dim=maximal_locus_dim(g, r, k, s),
                    is_generic=s >= floor,
                )
            )
    return rows
