"""Exit criteria. Every check is exact; each test logs one PASS/FAIL line."""

import math
import time

import pytest

from segre import core
from segre.construct import Verdict, choose_Nk, sharp_feasibility
from segre.oracle import SearchSpec, brute_nested, brute_valid_s, fuzz_congruence, min_adversarial
from segre.transform import general_profile


@pytest.fixture
def record(acceptance_log):
    started = time.perf_counter()

    def _record(number, title, failures, extra=""):
        status = "PASS" if not failures else "FAIL"
        elapsed = time.perf_counter() - started
        line = f"[{status}] AC{number:>2} {title} ({elapsed:.2f}s)"
        if extra:
            line += f" {extra}"
        if failures:
            line += f" first failures: {failures[:3]}"
        acceptance_log.append(line)
        print(line)
        assert not failures, line

    return _record


def grid_3():
    for g in range(2, 21):
        for r in range(2, 11):
            for d in range(-r, r + 1):
                for k in range(1, r):
                    yield g, r, d, k


def grid_5():
    for r in range(2, 9):
        for g in range(max(2, math.ceil((r + 1) / 2)), 13):
            for d in range(r):
                for k in range(1, r):
                    for s in core.valid_s(g, r, d, k):
                        yield g, r, d, k, s


def test_ac01_rank_two_equivalence(record):
    failures = []
    for g in range(2, 31):
        for d in (0, 1):
            for s in core.valid_s(g, 2, d, 1):
                dim = 3 * g + s - 2 if s <= g - 2 else 4 * g - 3
                if core.stratum_dim(g, 2, d, 1, s) != dim:
                    failures.append(("dim", g, d, s))
                locus = 1 if (s == g and (d - g) % 2 == 0) else 0
                if core.maximal_locus_dim(g, 2, 1, s) != locus:
                    failures.append(("locus", g, d, s))
    record(1, "rank-2 dimension and maximal-locus formulas, g in [2,30]", failures)


def test_ac02_three_one_two_two_instance(record):
    failures = []
    if core.s_max(2, 3, 1, 2) != 2:
        failures.append("s_max")
    rows = [row for row in core.strata_table(2, 3, 1) if (row.k, row.s) == (2, 2)]
    if len(rows) != 1:
        failures.append("row missing")
    else:
        row = rows[0]
        if row.dim != 10 or row.dim != 3 * 3 * (2 - 1) + 1:
            failures.append(("dim", row.dim))
        if row.locus_dim != 0:
            failures.append(("locus", row.locus_dim))
    record(2, "(g,r,d,k)=(2,3,1,2): s_max=2, dim=10, locus_dim=0", failures)


def test_ac03_bound_congruence_grid(record):
    failures = []
    for g, r, d, k in grid_3():
        top = core.s_max(g, r, d, k)
        floor = k * (r - k) * (g - 1)
        if not floor <= top <= floor + r - 1:
            failures.append(("band", g, r, d, k))
        if (top - k * d) % r:
            failures.append(("residue", g, r, d, k))
        if top != core.s_max(g, r, -d, r - k):
            failures.append(("dual", g, r, d, k))
        if any(core.s_max(g, r, d + r * t, k) != top for t in range(-3, 4)):
            failures.append(("twist", g, r, d, k))
    record(3, "band, residue, duality and twist invariance of s_max", failures)


def test_ac04_codimension_identity(record):
    failures, cases = [], 0
    for g, r, d, k in grid_3():
        floor = k * (r - k) * (g - 1)
        for s in core.valid_s(g, r, d, k):
            if s < floor:
                cases += 1
                if core.generic_dim(g, r) - core.stratum_dim(g, r, d, k, s) != floor - s:
                    failures.append((g, r, d, k, s))
    record(4, "generic_dim - stratum_dim = k(r-k)(g-1) - s", failures, f"cases={cases}")


def test_ac05_existence_replay(record):
    failures, cases = [], 0
    for g, r, d, k, s in grid_5():
        cases += 1
        if sharp_feasibility(g, r, d, k, s).verdict is not Verdict.PAPER_GUARANTEED:
            failures.append((g, r, d, k, s))
    for r in range(2, 9):
        for k in {1, r - 1}:
            for d in range(r):
                for s in core.valid_s(2, r, d, k):
                    cases += 1
                    if sharp_feasibility(2, r, d, k, s).verdict is not Verdict.PAPER_GUARANTEED:
                        failures.append((2, r, d, k, s))
    record(5, "closed-form chain certifies every stratum for g >= (r+1)/2 and k in {1,r-1} at g=2",
           failures, f"cases={cases}")


def test_ac06_window_identity(record):
    failures = []
    for g, r, d, k, s in grid_5():
        n = choose_Nk(g, r, k, s)
        floor = k * (r - k) * (g - 1)
        if not floor <= s + n * k <= floor + r - 1:
            failures.append(("window", g, r, d, k, s))
        if n > 0 and s + (n - 1) * k >= floor:
            failures.append(("minimal", g, r, d, k, s))
        if s + n * k != core.s_max(g, r, d + n, k):
            failures.append(("identity", g, r, d, k, s))
    record(6, "N_k minimal, inside the band, s + N_k k = s_max(d + N_k)", failures)


def test_ac07_oracle_equivalence(record):
    failures, cases = [], 0
    for g in (2, 3):
        for r in range(2, 6):
            for d in range(r):
                start = general_profile(g, r, d)
                for k in range(1, r):
                    for n in range(7):
                        cases += 1
                        got = min_adversarial(SearchSpec(r, g, d, start.s, n, k))
                        if got != {i: start[i] - n * i for i in range(1, r)}:
                            failures.append(("adversarial", g, r, d, k, n))
    for g in range(2, 11):
        for r in range(2, 7):
            for d in range(-2 * r, 2 * r + 1):
                for k in range(1, r):
                    cases += 1
                    if brute_valid_s(g, r, d, k) != core.valid_s(g, r, d, k):
                        failures.append(("valid_s", g, r, d, k))
    record(7, "exhaustive search and degree sweep match closed forms", failures, f"cases={cases}")


def test_ac08_nested_bounds_sound(record):
    failures, cases, tight = [], 0, set()
    for r in range(2, 9):
        for k in range(1, r):
            for d in range(-2 * r, 2 * r + 1):
                seen = set()
                for g in range(2, 5):
                    seen.update(core.valid_s(g, r, d, k))
                for s in sorted(seen):
                    for nu in range(1, max(k, r - k)):
                        cases += 1
                        bound = core.nested_bounds(r, k, s, nu)
                        found = brute_nested(r, d, k, s, nu)
                        for side, lb, got in (("sub", bound.sub_bound, found.sub_min),
                                              ("quot", bound.quot_bound, found.quot_min)):
                            if lb is None:
                                continue
                            if got < lb:
                                failures.append((side, r, d, k, s, nu))
                            elif got == lb:
                                tight.add((side, r, k, s, nu))
    record(8, "brute-force nested minimum >= nested bound", failures,
           f"cases={cases} equality_classes={len(tight)}")


def test_ac09_property_fuzz(record):
    report = fuzz_congruence(seed=20240601, trials=10_000)
    record(9, "10,000 seeded profile/step sequences", report.failures,
           f"seed={report.seed} steps={report.steps_checked}")


def test_ac10_chain_implies_sharp(record):
    failures, guaranteed = [], 0
    for g, r, d, k, s in grid_5():
        cert = sharp_feasibility(g, r, d, k, s)
        if cert.paper_guaranteed:
            guaranteed += 1
            if not cert.sharp_guaranteed:
                failures.append((g, r, d, k, s))
    record(10, "every PaperGuaranteed certificate is SharpGuaranteed", failures, f"paper_guaranteed={guaranteed}")
