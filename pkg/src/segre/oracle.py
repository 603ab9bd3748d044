"""Brute-force checks written against the definitions.

Nothing here calls the closed forms in :mod:`segre.core`: general values,
residues and bounds are recomputed by scanning. The fuzzer is the exception,
since its job is to exercise :mod:`segre.transform` itself.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import transform
from .errors import DomainError

__all__ = [
    "SearchSpec",
    "NestedMinimum",
    "FuzzReport",
    "CheckResult",
    "min_adversarial",
    "brute_valid_s",
    "brute_nested",
    "fuzz_congruence",
    "verify_suite",
]

MAX_SEARCH_RANK = 5
MAX_SEARCH_STEPS = 6


class SearchTooLarge(DomainError):
    """Exhaustive search requested outside ``r <= 5, N <= 6``."""


def _band_value(g: int, r: int, d: int, k: int) -> int:
    # the general value is the unique member of the band of width r with residue k*d
    base = k * (r - k) * (g - 1)
    hits = [v for v in range(base, base + r) if (v - k * d) % r == 0]
    assert len(hits) == 1
    return hits[0]


@dataclass(frozen=True)
class SearchSpec:
    """Exhaustive search over type assignments at every rank except ``k``."""

    r: int
    g: int
    d0: int
    initial: tuple[int, ...]
    N: int
    k: int
    filter: str = "none"  # or "cap"

    def __post_init__(self) -> None:
        object.__setattr__(self, "initial", tuple(self.initial))
        if not 2 <= self.r <= MAX_SEARCH_RANK:
            raise SearchTooLarge(f"rank {self.r} outside 2..{MAX_SEARCH_RANK}")
        if not 0 <= self.N <= MAX_SEARCH_STEPS:
            raise SearchTooLarge(f"N={self.N} outside 0..{MAX_SEARCH_STEPS}")
        if self.g < 2:
            raise DomainError(f"genus must be >= 2, got {self.g}")
        if not 1 <= self.k <= self.r - 1:
            raise DomainError(f"controlled rank {self.k} outside 1..{self.r - 1}")
        if len(self.initial) != self.r - 1:
            raise DomainError(f"initial profile needs {self.r - 1} entries")
        if self.filter not in ("none", "cap"):
            raise DomainError(f"unknown filter {self.filter!r}")


def min_adversarial(spec: SearchSpec) -> dict[int, int]:
    """Minimum reachable ``s_i`` after ``N`` steps, for every sub-rank ``i``.

    Rank ``k`` is always moved with type I; every other rank independently
    takes I or II on every step (subject to the cap filter if requested).
    Reachable states are deduplicated per step, which leaves the minimum
    unchanged because ``min`` is order- and multiplicity-independent.
    """
    r, k = spec.r, spec.k
    others = [i for i in range(1, r) if i != k]
    frontier = {spec.initial}
    d = spec.d0
    for _ in range(spec.N):
        caps = (
            {i: _band_value(spec.g, r, d - 1, i) for i in others}
            if spec.filter == "cap"
            else None
        )
        nxt = set()
        for state in frontier:
            for choice in itertools.product((False, True), repeat=len(others)):
                new = list(state)
                new[k - 1] -= k
                ok = True
                for i, second_kind in zip(others, choice):
                    if second_kind:
                        new[i - 1] += r - i
                        if caps is not None and new[i - 1] > caps[i]:
                            ok = False
                            break
                    else:
                        new[i - 1] -= i
                if ok:
                    nxt.add(tuple(new))
        frontier = nxt
        d -= 1
    return {i: min(state[i - 1] for state in frontier) for i in range(1, r)}


def brute_valid_s(g: int, r: int, d: int, k: int) -> list[int]:
    """Sweep subbundle degrees and keep the pair values in ``(0, s_max]``."""
    if g < 2 or r < 2 or not 1 <= k <= r - 1:
        raise DomainError(f"invalid (g, r, k) = ({g}, {r}, {k})")
    top = _band_value(g, r, d, k)
    lo = (k * d - top) // r - 2
    hi = (k * d) // r + 2
    found = set()
    for deg_f in range(lo, hi + 1):
        s = k * d - r * deg_f
        if 0 < s <= top:
            found.add(s)
    return sorted(found)


@dataclass(frozen=True)
class NestedMinimum:
    """Smallest invariant permitted by stability of ``E`` on each side.

    ``None`` marks a side whose ``nu`` range is empty.
    """

    nu: int
    sub_min: Optional[Fraction]
    quot_min: Optional[Fraction]


def brute_nested(r: int, d: int, k: int, s: int, nu: int) -> NestedMinimum:
    """Minimise ``s_nu`` of a maximal subbundle / quotient over integer degrees.

    A rank-``nu`` subbundle ``F'`` of ``F`` is a subbundle of ``E``, and the
    preimage of a rank-``nu`` subbundle ``G'`` of ``E/F`` is a rank
    ``k + nu`` subbundle of ``E``; stability of ``E`` constrains both.
    """
    if not 1 <= k <= r - 1:
        raise DomainError(f"k={k} outside 1..{r - 1}")
    if s < 1 or (k * d - s) % r:
        raise DomainError(f"s={s} must be >= 1 and congruent to k*d mod r")
    has_sub = 1 <= nu <= k - 1
    has_quot = 1 <= nu <= r - k - 1
    if not (has_sub or has_quot):
        raise DomainError(f"nu={nu} outside both ranges")
    deg_f = (k * d - s) // r
    deg_g = d - deg_f
    span = abs(d) * r + abs(deg_f) + 2 * r + 2

    sub_min = None
    if has_sub:
        values = [
            nu * deg_f - k * deg_sub
            for deg_sub in range(-span, span + 1)
            if nu * d - r * deg_sub >= 1
        ]
        sub_min = Fraction(min(values))

    quot_min = None
    if has_quot:
        values = [
            nu * deg_g - (r - k) * deg_q
            for deg_q in range(-span, span + 1)
            if (k + nu) * d - r * (deg_f + deg_q) >= 1
        ]
        quot_min = Fraction(min(values))
    return NestedMinimum(nu=nu, sub_min=sub_min, quot_min=quot_min)


@dataclass
class FuzzReport:
    seed: int
    trials: int
    steps_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _random_profile(rng: random.Random, g: int, r: int, d: int) -> transform.SegreProfile:
    general = [_band_value(g, r, d, i) for i in range(1, r)]
    if rng.random() < 0.5:
        return transform.SegreProfile(g, r, d, tuple(general))
    # lower each entry by a random multiple of r: congruence kept, cap respected
    return transform.SegreProfile(
        g, r, d, tuple(v - r * rng.randint(0, 4) for v in general)
    )


def fuzz_congruence(seed: int, trials: int) -> FuzzReport:
    """Random profiles and step sequences checked against three invariants.

    * every step keeps ``s_i = i*d (mod r)``;
    * the dual step maps the dual of the image back to the dual of the source;
    * choosing only cap-feasible types keeps ``s_i`` under the Hirschowitz bound.
    """
    rng = random.Random(seed)
    report = FuzzReport(seed=seed, trials=trials)
    kinds = list(transform.StepType)
    for trial in range(trials):
        r = rng.randint(2, 8)
        g = rng.randint(2, 12)
        d = rng.randint(-3 * r, 3 * r)
        p = _random_profile(rng, g, r, d)
        filtered = rng.random() < 0.5
        for step_no in range(rng.randint(0, 8)):
            if filtered:
                types = [rng.choice(transform.feasible_types(p, i)) for i in range(1, r)]
            else:
                types = [rng.choice(kinds) for _ in range(1, r)]
            t = transform.TransformStep(tuple(types))
            tag = f"trial={trial} step={step_no} r={r} g={g} d={p.d} s={p.s} t={t}"
            try:
                q = transform.apply_step(p, t)
            except DomainError as exc:
                report.failures.append(f"{tag}: apply_step raised {exc}")
                break
            report.steps_checked += 1
            if q.d != p.d - 1 or any((q.s[i - 1] - i * q.d) % r for i in range(1, r)):
                report.failures.append(f"{tag}: congruence broken -> {q.s}")
            back = transform.apply_step(transform.dual_profile(q), transform.dual_step(r, t))
            if back != transform.dual_profile(p):
                report.failures.append(f"{tag}: duality conjugation broken")
            if filtered:
                for i in range(1, r):
                    cap = i * (r - i) * (g - 1) + r - 1
                    if q.s[i - 1] > cap:
                        report.failures.append(f"{tag}: s_{i}={q.s[i - 1]} above cap {cap}")
            p = q
    return report


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""


def verify_suite(
    checks: tuple[str, ...] = ("valid-s", "adversarial", "nested", "fuzz"),
    seed: int = 0,
    trials: int = 1000,
) -> list[CheckResult]:
    """Run the oracle comparisons used by the ``verify`` subcommand."""
    from . import core  # comparison target only; the oracles above never touch it

    results = []
    if "valid-s" in checks:
        cases, bad = 0, []
        for g in range(2, 11):
            for r in range(2, 7):
                for d in range(-2 * r, 2 * r + 1):
                    for k in range(1, r):
                        cases += 1
                        if brute_valid_s(g, r, d, k) != core.valid_s(g, r, d, k):
                            bad.append((g, r, d, k))
        results.append(CheckResult("valid-s", not bad, cases, f"mismatches={bad[:5]}" if bad else ""))
    if "adversarial" in checks:
        cases, bad = 0, []
        for r in range(2, MAX_SEARCH_RANK + 1):
            for d in range(r):
                start = transform.general_profile(2, r, d)
                for k in range(1, r):
                    for n in range(MAX_SEARCH_STEPS + 1):
                        cases += 1
                        got = min_adversarial(SearchSpec(r, 2, d, start.s, n, k))
                        want = {i: start.s[i - 1] - n * i for i in range(1, r)}
                        if got != want:
                            bad.append((r, d, k, n))
        results.append(CheckResult("adversarial", not bad, cases, f"mismatches={bad[:5]}" if bad else ""))
    if "nested" in checks:
        cases, bad, tight = 0, [], 0
        for r in range(2, 9):
            for k in range(1, r):
                for d in range(-2 * r, 2 * r + 1):
                    for s in core.valid_s(2, r, d, k):
                        for nu in range(1, max(k, r - k)):
                            cases += 1
                            bound = core.nested_bounds(r, k, s, nu)
                            found = brute_nested(r, d, k, s, nu)
                            for lb, got in ((bound.sub_bound, found.sub_min),
                                            (bound.quot_bound, found.quot_min)):
                                if lb is None:
                                    continue
                                if got < lb:
                                    bad.append((r, d, k, s, nu))
                                elif got == lb:
                                    tight += 1
        results.append(
            CheckResult("nested", not bad, cases,
                        f"violations={bad[:5]}" if bad else f"equality_cases={tight}")
        )
    if "fuzz" in checks:
        report = fuzz_congruence(seed, trials)
        results.append(
            CheckResult("fuzz", report.passed, report.trials,
                        f"seed={seed} steps={report.steps_checked}"
                        + (f" first_failure={report.failures[0]}" if report.failures else ""))
        )
    return results
