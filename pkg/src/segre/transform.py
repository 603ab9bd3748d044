"""Elementary transformations acting on Segre profiles.

An elementary transformation lowers the degree by one and, for each
sub-rank ``i``, either lowers ``s_i`` by ``i`` (type I) or raises it by
``r - i`` (type II). Profiles here are formal states: the machine enforces
congruences and caps, which are necessary conditions only. Whether a
particular assignment of types across all ranks is realised by an actual
point and linear form on a curve is not decided by anything in this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from . import core
from .errors import DomainError, checked

__all__ = [
    "StepType",
    "SegreProfile",
    "TransformStep",
    "LocusDimBounds",
    "general_profile",
    "apply_step",
    "apply_steps",
    "subbundle_transition",
    "dual_step",
    "dual_profile",
    "type_feasible",
    "feasible_types",
    "locus_dim_step",
    "locus_dims_step",
    "parse_steps",
]


class StepType(enum.Enum):
    I = "I"
    II = "II"

    def flip(self) -> "StepType":
        return StepType.II if self is StepType.I else StepType.I

    @classmethod
    def parse(cls, text: Union[str, "StepType"]) -> "StepType":
        if isinstance(text, StepType):
            return text
        try:
            return cls(str(text).strip().upper())
        except ValueError:
            raise DomainError(f"step type must be I or II, got {text!r}") from None


@dataclass(frozen=True)
class SegreProfile:
    """Formal vector ``(s_1, ..., s_{r-1})`` attached to ``(g, r, d)``.

    Only the congruences ``s_i = i*d (mod r)`` are enforced; the vector is
    not claimed to be realised by any bundle.
    """

    g: int
    r: int
    d: int
    s: tuple[int, ...]

    def __post_init__(self) -> None:
        core.check_genus(self.g)
        core.check_rank(self.r)
        core.check_degree(self.d)
        s = tuple(self.s)
        object.__setattr__(self, "s", s)
        if len(s) != self.r - 1:
            raise DomainError(f"profile needs {self.r - 1} entries, got {len(s)}")
        for i, value in enumerate(s, start=1):
            if not isinstance(value, int) or isinstance(value, bool):
                raise DomainError(f"s_{i}={value!r} is not an integer")
            checked(value)
            if (value - i * self.d) % self.r:
                raise DomainError(
                    f"s_{i}={value} not congruent to {i}*d={i * self.d} mod {self.r}"
                )

    def __getitem__(self, i: int) -> int:
        """1-indexed access by sub-rank."""
        if not 1 <= i <= self.r - 1:
            raise DomainError(f"sub-rank {i} outside 1..{self.r - 1}")
        return self.s[i - 1]


@dataclass(frozen=True)
class TransformStep:
    """Type assignment for every sub-rank ``1..r-1`` of one transformation."""

    types: tuple[StepType, ...]

    def __post_init__(self) -> None:
        types = tuple(StepType.parse(t) for t in self.types)
        if not types:
            raise DomainError("a step needs at least one sub-rank")
        object.__setattr__(self, "types", types)

    @property
    def r(self) -> int:
        return len(self.types) + 1

    def __getitem__(self, i: int) -> StepType:
        if not 1 <= i <= len(self.types):
            raise DomainError(f"sub-rank {i} outside 1..{len(self.types)}")
        return self.types[i - 1]

    @classmethod
    def parse(cls, text: str) -> "TransformStep":
        """Parse ``"I,II,I"`` (sub-rank 1 first)."""
        return cls(tuple(part for part in text.split(",") if part.strip()))

    @classmethod
    def from_mapping(cls, r: int, mapping: Mapping[int, Union[str, StepType]]) -> "TransformStep":
        missing = set(range(1, r)) - set(mapping)
        if missing or set(mapping) - set(range(1, r)):
            raise DomainError(f"step must assign exactly the sub-ranks 1..{r - 1}")
        return cls(tuple(mapping[i] for i in range(1, r)))

    @classmethod
    def uniform(cls, r: int, kind: StepType = StepType.I) -> "TransformStep":
        return cls((kind,) * (r - 1))

    def __str__(self) -> str:
        return ",".join(t.value for t in self.types)


@dataclass(frozen=True)
class LocusDimBounds:
    """Interval ``[lo, hi]`` for ``dim M_k(E)`` at each sub-rank ``k``."""

    r: int
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        core.check_rank(self.r)
        intervals = tuple((int(lo), int(hi)) for lo, hi in self.intervals)
        if len(intervals) != self.r - 1:
            raise DomainError(f"need {self.r - 1} intervals, got {len(intervals)}")
        for k, (lo, hi) in enumerate(intervals, start=1):
            if not 0 <= lo <= hi <= k * (self.r - k):
                raise DomainError(f"interval [{lo},{hi}] invalid at k={k}")
        object.__setattr__(self, "intervals", intervals)

    def __getitem__(self, k: int) -> tuple[int, int]:
        return self.intervals[k - 1]

    @classmethod
    def unknown(cls, r: int) -> "LocusDimBounds":
        return cls(r, tuple((0, k * (r - k)) for k in range(1, r)))

    @classmethod
    def general(cls, g: int, r: int, d: int) -> "LocusDimBounds":
        """Exact dimensions ``eps_k`` of a general bundle."""
        return cls(r, tuple((e, e) for e in (core.epsilon_k(g, r, d, k) for k in range(1, r))))


def general_profile(g: int, r: int, d: int) -> SegreProfile:
    """Profile of a general bundle: every entry at its maximal value."""
    return SegreProfile(g, r, d, tuple(core.s_max(g, r, d, i) for i in range(1, r)))


def _check_step(r: int, t: TransformStep) -> None:
    if t.r != r:
        raise DomainError(f"step is for rank {t.r}, profile has rank {r}")


def apply_step(p: SegreProfile, t: TransformStep) -> SegreProfile:
    """Apply one elementary transformation with per-rank types ``t``."""
    _check_step(p.r, t)
    r = p.r
    new_s = tuple(
        checked(value - i if t[i] is StepType.I else value + (r - i))
        for i, value in enumerate(p.s, start=1)
    )
    return SegreProfile(p.g, r, checked(p.d - 1), new_s)


def apply_steps(p: SegreProfile, steps: Iterable[TransformStep]) -> list[SegreProfile]:
    """Trajectory ``[p, p1, ..., pN]``; an empty sequence yields ``[p]``."""
    trajectory = [p]
    for t in steps:
        trajectory.append(apply_step(trajectory[-1], t))
    return trajectory


def subbundle_transition(
    r: int, d: int, k: int, degF: int, kind: Union[StepType, str]
) -> tuple[int, int]:
    """Follow one subbundle through a transformation.

    Returns ``(new degF, new pair value)``. A type I subbundle lies inside
    the kernel and keeps its degree; a type II subbundle loses one degree.
    """
    kind = StepType.parse(kind)
    old = core.segre_pair(r, d, k, degF)
    if kind is StepType.I:
        return degF, checked(old - k)
    return checked(degF - 1), checked(old + (r - k))


def dual_step(r: int, t: TransformStep) -> TransformStep:
    """Types of the dual transformation: ``t'(r-i) = flip(t(i))``."""
    _check_step(r, t)
    return TransformStep(tuple(t[r - j].flip() for j in range(1, r)))


def dual_profile(p: SegreProfile) -> SegreProfile:
    return SegreProfile(p.g, p.r, -p.d, tuple(reversed(p.s)))


def type_feasible(p: SegreProfile, i: int, kind: Union[StepType, str]) -> bool:
    """Necessary condition for sub-rank ``i`` to move with type ``kind``.

    Type I is never excluded. Type II would raise ``s_i`` by ``r - i``, so
    it is rejected when the result exceeds the general value ``s_max`` at
    degree ``d - 1``.
    """
    kind = StepType.parse(kind)
    if kind is StepType.I:
        return True
    return p[i] + (p.r - i) <= core.s_max(p.g, p.r, p.d - 1, i)


def feasible_types(p: SegreProfile, i: int) -> list[StepType]:
    return [kind for kind in StepType if type_feasible(p, i, kind)]


def locus_dim_step(
    b: LocusDimBounds, k: int, kind: Union[StepType, str], r: int
) -> LocusDimBounds:
    """Propagate the bound on ``dim M_k`` through one transformation.

    Type I loses at most ``k`` dimensions and cannot gain any. Type II adds
    at most ``r - k`` and gives no lower bound, so ``lo`` resets to 0.
    """
    kind = StepType.parse(kind)
    if b.r != r:
        raise DomainError(f"bounds are for rank {b.r}, not {r}")
    core.check_subrank(r, k)
    cap = k * (r - k)
    lo, hi = b[k]
    if kind is StepType.I:
        lo, hi = max(lo - k, 0), min(hi, cap)
    else:
        lo, hi = 0, min(hi + r - k, cap)
    intervals = list(b.intervals)
    intervals[k - 1] = (lo, hi)
    return LocusDimBounds(r, tuple(intervals))


def locus_dims_step(b: LocusDimBounds, t: TransformStep) -> LocusDimBounds:
    """Apply :func:`locus_dim_step` at every sub-rank of ``t``."""
    _check_step(b.r, t)
    for k in range(1, b.r):
        b = locus_dim_step(b, k, t[k], b.r)
    return b


def parse_steps(text: str) -> list[TransformStep]:
    """Parse ``"I,I;I,II"`` into a list of steps (``;`` separates steps)."""
    return [TransformStep.parse(chunk) for chunk in text.split(";") if chunk.strip()]
