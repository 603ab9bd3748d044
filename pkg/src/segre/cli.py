"""Command-line front end.

Exit codes: 0 success, 1 verdict ``Unknown`` or a failed verification,
2 invalid input, 3 arithmetic overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, TextIO

from . import construct, core, oracle, transform
from .errors import DomainError, SegreError, SegreOverflowError
from .formats import dumps_csv, dumps_json, dumps_text, to_jsonable, write_atomic

EXIT_OK = 0
EXIT_UNKNOWN = 1
EXIT_INVALID = 2
EXIT_OVERFLOW = 3

STRATA_COLUMNS = ("g", "r", "d", "k", "s", "eps", "d1", "dim", "codim", "locus_dim", "is_generic")


@dataclass
class Outcome:
    title: str
    payload: dict
    columns: tuple[str, ...] = ()
    rows: list[dict] = field(default_factory=list)
    header: dict = field(default_factory=dict)
    code: int = EXIT_OK

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return dumps_json(self.payload)
        if fmt == "csv":
            return dumps_csv(self.columns, self.rows)
        return dumps_text(self.title, self.header, self.columns, self.rows)


def _int(params: dict, name: str, default: Any = ...) -> Any:
    if name not in params or params[name] is None:
        if default is ...:
            raise DomainError(f"missing parameter {name!r}")
        return default
    value = params[name]
    if isinstance(value, bool):
        raise DomainError(f"parameter {name!r} must be an integer")
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            raise DomainError(f"parameter {name!r} must be an integer, got {value!r}") from None
    if not isinstance(value, int):
        raise DomainError(f"parameter {name!r} must be an integer, got {value!r}")
    return value


def _int_list(value: Any) -> list[int]:
    if isinstance(value, str):
        parts = [p for p in value.replace(",", " ").split() if p]
    else:
        parts = list(value)
    try:
        return [int(p) for p in parts]
    except (TypeError, ValueError):
        raise DomainError(f"expected a list of integers, got {value!r}") from None


# -- commands ------------------------------------------------------------------

def cmd_bound(params: dict) -> Outcome:
    g, r, k = _int(params, "g"), _int(params, "r"), _int(params, "k")
    record = {
        "g": g, "r": r, "k": k,
        "hirschowitz": core.hirschowitz_bound(g, r, k),
        "mukai_sakai": core.mukai_sakai_bound(g, r, k),
        "segre": core.segre_bound(g) if r == 2 else None,
    }
    columns = ("g", "r", "k", "hirschowitz", "mukai_sakai", "segre")
    return Outcome("bound", {"command": "bound", **record}, columns, [record], header={})


def cmd_smax(params: dict) -> Outcome:
    g, r, d = _int(params, "g"), _int(params, "r"), _int(params, "d")
    k = _int(params, "k", None)
    core.check_rank(r)
    ks = [core.check_subrank(r, k)] if k is not None else list(range(1, r))
    rows = []
    for kk in ks:
        rows.append({
            "g": g, "r": r, "d": d, "k": kk,
            "eps": core.epsilon_k(g, r, d, kk),
            "s_max": core.s_max(g, r, d, kk),
            "hirschowitz": core.hirschowitz_bound(g, r, kk),
            "valid_s": core.valid_s(g, r, d, kk),
        })
    columns = ("g", "r", "d", "k", "eps", "s_max", "hirschowitz", "valid_s")
    return Outcome("smax", {"command": "smax", "rows": rows}, columns, rows)


def cmd_strata(params: dict) -> Outcome:
    g, r, d = _int(params, "g"), _int(params, "r"), _int(params, "d")
    table = core.strata_table(g, r, d)
    rows = [to_jsonable(row) for row in table]
    payload = {"command": "strata", "g": g, "r": r, "d": d,
               "generic_dim": core.generic_dim(g, r), "rows": rows}
    return Outcome("strata", payload, STRATA_COLUMNS, rows,
                   header={"generic_dim": payload["generic_dim"]})


CONSTRUCT_COLUMNS = (
    "i", "reduction", "s_i_max", "worst_case_lb", "direct_lb", "dual_lb", "dual_N",
    "chain_first", "chain_second", "chain_positive",
)


def cmd_construct(params: dict) -> Outcome:
    cert = construct.sharp_feasibility(
        _int(params, "g"), _int(params, "r"), _int(params, "d"), _int(params, "k"), _int(params, "s")
    )
    rows = []
    for b in cert.per_i:
        rows.append({
            "i": b.i, "reduction": b.reduction, "s_i_max": b.s_i_max,
            "worst_case_lb": b.worst_case_lb, "direct_lb": b.direct_lb,
            "dual_lb": b.dual_lb, "dual_N": b.dual_N,
            "chain_first": b.chain.values[0], "chain_second": b.chain.values[1],
            "chain_positive": b.chain.positive,
        })
    header = {
        "inputs": f"g={cert.g} r={cert.r} d={cert.d} k={cert.k} s={cert.s}",
        "N_k": cert.N_k, "d_tilde": cert.d_tilde, "window": list(cert.window),
        "verdict": cert.verdict, "sharp_guaranteed": cert.sharp_guaranteed,
        "paper_guaranteed": cert.paper_guaranteed,
    }
    code = EXIT_UNKNOWN if cert.verdict is construct.Verdict.UNKNOWN else EXIT_OK
    payload = {"command": "construct", **to_jsonable(cert)}
    return Outcome("construct", payload, CONSTRUCT_COLUMNS, rows, header=header, code=code)


def cmd_transform(params: dict) -> Outcome:
    g, r, d = _int(params, "g"), _int(params, "r"), _int(params, "d")
    steps_raw = params.get("steps") or ""
    if isinstance(steps_raw, str):
        steps = transform.parse_steps(steps_raw)
    else:
        steps = [transform.TransformStep.parse(s) if isinstance(s, str) else transform.TransformStep(tuple(s))
                 for s in steps_raw]
    if params.get("s") not in (None, ""):
        start = transform.SegreProfile(g, r, d, tuple(_int_list(params["s"])))
    else:
        start = transform.general_profile(g, r, d)
    is_general = start == transform.general_profile(g, r, d)
    bounds = (transform.LocusDimBounds.general(g, r, d) if is_general
              else transform.LocusDimBounds.unknown(r))

    columns = ("stage", "step", "d") + tuple(f"s_{i}" for i in range(1, r)) + ("feasible",)
    rows, trajectory = [], []
    p = start

    def add(stage: int, step: Optional[transform.TransformStep], feasible: Optional[bool]) -> None:
        row = {"stage": stage, "step": str(step) if step else None, "d": p.d, "feasible": feasible}
        row.update({f"s_{i}": p[i] for i in range(1, r)})
        rows.append(row)
        trajectory.append({"stage": stage, "step": row["step"], "d": p.d, "s": list(p.s),
                           "feasible": feasible, "locus_bounds": [list(iv) for iv in bounds.intervals]})

    add(0, None, None)
    for n, t in enumerate(steps, start=1):
        if t.r != r:
            raise DomainError(f"step {n} assigns {t.r - 1} sub-ranks, need {r - 1}")
        feasible = all(transform.type_feasible(p, i, t[i]) for i in range(1, r))
        p = transform.apply_step(p, t)
        bounds = transform.locus_dims_step(bounds, t)
        add(n, t, feasible)

    payload = {
        "command": "transform",
        "initial": to_jsonable(start),
        "steps": [str(t) for t in steps],
        "trajectory": trajectory,
        "final": to_jsonable(p),
        "note": "formal state: only congruences and caps are enforced; realisability is not checked",
    }
    return Outcome("transform", payload, columns, rows,
                   header={"initial": list(start.s), "final": list(p.s)})


def cmd_verify(params: dict) -> Outcome:
    checks = params.get("check") or ["valid-s", "adversarial", "nested", "fuzz"]
    if isinstance(checks, str):
        checks = [checks]
    known = {"valid-s", "adversarial", "nested", "fuzz"}
    unknown = set(checks) - known
    if unknown:
        raise DomainError(f"unknown checks {sorted(unknown)}")
    seed, trials = _int(params, "seed", 0), _int(params, "trials", 1000)
    if trials < 0:
        raise DomainError("trials must be >= 0")
    results = oracle.verify_suite(tuple(checks), seed=seed, trials=trials)
    rows = [to_jsonable(res) for res in results]
    code = EXIT_OK if all(res.passed for res in results) else EXIT_UNKNOWN
    return Outcome("verify", {"command": "verify", "seed": seed, "results": rows},
                   ("name", "passed", "cases", "detail"), rows, code=code)


COMMANDS: dict[str, Callable[[dict], Outcome]] = {
    "bound": cmd_bound,
    "smax": cmd_smax,
    "strata": cmd_strata,
    "construct": cmd_construct,
    "transform": cmd_transform,
    "verify": cmd_verify,
}


def dispatch(command: str, params: dict) -> Outcome:
    try:
        handler = COMMANDS[command]
    except KeyError:
        raise DomainError(f"unknown command {command!r}") from None
    return handler(params)


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, SegreOverflowError):
        return EXIT_OVERFLOW
    return EXIT_INVALID


# -- batch ----------------------------------------------------------------------

def run_batch(lines: list[str]) -> tuple[list[dict], int]:
    """One JSON record per input line, in order; failures become error records."""
    records, worst = [], EXIT_OK
    for lineno, line in enumerate(lines, start=1):
        try:
            query = json.loads(line)
            if not isinstance(query, dict):
                raise DomainError("query must be a JSON object")
            query = dict(query)
            command = query.pop("command", None)
            if not isinstance(command, str):
                raise DomainError("query needs a 'command' string")
            outcome = dispatch(command, query)
            record = {"line": lineno, "ok": True, "exit_code": outcome.code, "result": outcome.payload}
            code = outcome.code
        except (SegreError, json.JSONDecodeError) as exc:
            code = exit_code_for(exc)
            record = {"line": lineno, "ok": False, "exit_code": code, "error": str(exc)}
        worst = max(worst, code)
        records.append(record)
    return records, worst


# -- argument parsing -------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segre",
        description="Segre invariants, stratum dimensions and construction certificates "
                    "for vector bundles on curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", metavar="FILE", help="write output atomically to FILE")

    p = sub.add_parser("bound", help="Hirschowitz, Mukai-Sakai and rank-2 Segre bounds")
    for name in ("g", "r", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    common(p)

    p = sub.add_parser("smax", help="generic value s_max, residue eps_k and valid s")
    for name in ("g", "r", "d"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--k", type=int, help="single sub-rank (default: all)")
    common(p)

    p = sub.add_parser("strata", help="stratum table for (g, r, d)")
    for name in ("g", "r", "d"):
        p.add_argument(f"--{name}", type=int, required=True)
    common(p)

    p = sub.add_parser("construct", help="construction certificate for (g, r, d, k, s)")
    for name in ("g", "r", "d", "k", "s"):
        p.add_argument(f"--{name}", type=int, required=True)
    common(p)

    p = sub.add_parser("transform", help="apply elementary transformations to a profile")
    for name in ("g", "r", "d"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--s", help="starting profile s_1,...,s_{r-1} (default: general)")
    p.add_argument("--steps", default="", help="steps such as 'I,I;I,II' (';' between steps)")
    common(p)

    p = sub.add_parser("verify", help="run brute-force oracle checks")
    p.add_argument("--check", action="append",
                   choices=("valid-s", "adversarial", "nested", "fuzz"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    common(p)

    p = sub.add_parser("batch", help="run one JSON query per input line")
    p.add_argument("--input", metavar="FILE", help="query file (default: stdin)")
    p.add_argument("--out", metavar="FILE", help="write output atomically to FILE")
    return parser


def run(argv: Optional[list[str]] = None, stdout: Optional[TextIO] = None,
        stdin: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    params = vars(args).copy()
    out_path = params.pop("out", None)
    if args.command == "batch":
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        else:
            lines = (stdin or sys.stdin).read().splitlines()
        records, code = run_batch(lines)
        text = "".join(json.dumps(rec, ensure_ascii=False) + "\n" for rec in records)
    else:
        fmt = params.pop("format")
        command = params.pop("command")
        try:
            outcome = dispatch(command, params)
        except SegreError as exc:
            print(f"segre: error: {exc}", file=sys.stderr)
            return exit_code_for(exc)
        text, code = outcome.render(fmt), outcome.code

    if out_path:
        write_atomic(out_path, text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
