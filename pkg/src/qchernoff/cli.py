"""Command-line front end.

Subcommands::

    qchernoff bounds  --rho0 A.json --rho1 B.json --n 3 [--json] [--bits]
    qchernoff sweep   --rho0 A.json --rho1 B.json --n-max 8 [--trials T --seed S] [--out f.csv]
    qchernoff example pauli --a 0.8 --b 0.8 --theta 1.5708 [--n 3 | --n-max 8 ...]
    qchernoff example entangle [--n 3] [--trials 100000 --seed 0]

Exit status is 0 on success, 1 for invalid input and 2 for I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .jointtest import ErrorReport, error_bounds, pure_state_vector
from .matcore import DEFAULT_DIM_CAP
from .septest import (likelihood_strategy, pure_strategy, pure_strategy_error,
                      simulate)
from .states import (BELL_PHI_PLUS, as_state_pair, entanglement_pair,
                     load_state, pauli_pair)

CSV_HEADER = ("n", "exact", "lower_fid", "upper_fid", "upper_pure",
              "relent_rate", "empirical", "stderr")
RATE_FIELDS = ("rate_lower_fid", "rate_upper_fid", "rate_lower_relent")

ENTANGLE_NOTE = (
    "note: the two states have identical single-qubit marginals, so no "
    "measurement acting on each particle separately can distinguish them; "
    "the per-copy measurement used here is a joint two-qubit projection.")


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".12g")


# -- bounds ---------------------------------------------------------------

def report_dict(report: ErrorReport, bits: bool = False) -> dict:
    d = report.as_dict()
    if bits:
        for k in RATE_FIELDS:
            d[k] = d[k] / math.log(2)
    d["units"] = "bits" if bits else "nats"
    return d


def cmd_bounds(rho0, rho1, n: int, cap: int = DEFAULT_DIM_CAP,
               bits: bool = False, as_json: bool = False) -> str:
    rho0, rho1 = as_state_pair(rho0, rho1)
    report = error_bounds(rho0, rho1, n, cap)
    if as_json:
        return json.dumps(report_dict(report, bits), indent=2)
    unit = "bits" if bits else "nats"
    scale = 1 / math.log(2) if bits else 1.0
    d = rho0.shape[0]
    lines = [f"copies n = {report.n}, dimension d = {d}"]
    if report.exact_error is None:
        lines.append(f"exact error        not computed (d^n = {d}^{n} exceeds cap {cap})")
    else:
        lines.append(f"exact error        {_fmt(report.exact_error)}")
    lines.append(f"fidelity bounds    [{_fmt(report.lower_fid)}, {_fmt(report.upper_fid)}]")
    if report.upper_pure is not None:
        lines.append(f"pure-state upper   {_fmt(report.upper_pure)}")
    lines.append(f"per-copy log-error rates ({unit}):")
    lines.append(f"  fidelity lower    {_fmt(report.rate_lower_fid * scale)}")
    lines.append(f"  fidelity upper    {_fmt(report.rate_upper_fid * scale)}")
    lines.append(f"  rel. entropy      {_fmt(report.rate_lower_relent * scale)}")
    return "\n".join(lines)


# -- sweep ----------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    n: int
    exact_error: Optional[float]
    lower_fid: float
    upper_fid: float
    upper_pure: Optional[float]
    relent_rate_error: float
    empirical_error: Optional[float] = None
    empirical_stderr: Optional[float] = None

    def cells(self) -> list[str]:
        return [str(self.n), _fmt(self.exact_error), _fmt(self.lower_fid),
                _fmt(self.upper_fid), _fmt(self.upper_pure),
                _fmt(self.relent_rate_error), _fmt(self.empirical_error),
                _fmt(self.empirical_stderr)]


def default_strategy(rho0, rho1):
    """Two-outcome projection when rho0 is pure, else the likelihood test."""
    psi0 = pure_state_vector(rho0)
    if psi0 is not None:
        return pure_strategy(psi0)
    return likelihood_strategy(rho0, rho1)


def sweep_rows(rho0, rho1, n_max: int, trials: int = 0, seed: int = 0,
               cap: int = DEFAULT_DIM_CAP) -> list[SweepRow]:
    if n_max < 1:
        raise ValueError(f"--n-max must be at least 1, got {n_max}")
    if trials < 0:
        raise ValueError(f"--trials must be non-negative, got {trials}")
    rho0, rho1 = as_state_pair(rho0, rho1)
    strategy = default_strategy(rho0, rho1) if trials > 0 else None
    rows = []
    for n in range(1, n_max + 1):
        rep = error_bounds(rho0, rho1, n, cap)
        rate = rep.rate_lower_relent
        relent_err = math.exp(n * rate) if rate > -math.inf else 0.0
        emp = se = None
        if strategy is not None:
            sim = simulate(strategy, rho0, rho1, n, trials, seed)
            emp, se = sim.avg_error, sim.std_err
        rows.append(SweepRow(n, rep.exact_error, rep.lower_fid, rep.upper_fid,
                             rep.upper_pure, relent_err, emp, se))
    return rows


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


def cmd_sweep(rho0, rho1, n_max: int, trials: int = 0, seed: int = 0,
              out_path: Optional[str] = None, cap: int = DEFAULT_DIM_CAP) -> str:
    text = rows_to_csv(sweep_rows(rho0, rho1, n_max, trials, seed, cap))
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


# -- examples -------------------------------------------------------------

def cmd_example(name: str, *, a: Optional[float] = None, b: Optional[float] = None,
                theta: Optional[float] = None, n: int = 3, n_max: Optional[int] = None,
                trials: int = 0, seed: int = 0, out_path: Optional[str] = None,
                cap: int = DEFAULT_DIM_CAP, bits: bool = False,
                as_json: bool = False) -> str:
    if name == "pauli":
        missing = [f"--{k}" for k, v in (("a", a), ("b", b), ("theta", theta)) if v is None]
        if missing:
            raise ValueError(f"example 'pauli' requires {', '.join(missing)}")
        rho0, rho1 = pauli_pair(a, b, theta)
    elif name == "entangle":
        rho0, rho1 = entanglement_pair()
    else:
        raise ValueError(f"unknown example {name!r}; choose 'pauli' or 'entangle'")

    if n_max is not None:
        return cmd_sweep(rho0, rho1, n_max, trials, seed, out_path, cap)

    text = cmd_bounds(rho0, rho1, n, cap, bits, as_json)
    if name != "entangle":
        return text
    analytic = pure_strategy_error(BELL_PHI_PLUS, rho1, n)
    sim = None
    if trials > 0:
        sim = simulate(pure_strategy(BELL_PHI_PLUS), rho0, rho1, n, trials, seed)
    if as_json:
        doc = json.loads(text)
        doc["separable"] = {"analytic_error": analytic}
        if sim is not None:
            doc["separable"].update(asdict(sim))
        doc["note"] = ENTANGLE_NOTE
        return json.dumps(doc, indent=2)
    parts = [text, f"separable two-outcome test, analytic error  {_fmt(analytic)}"]
    if sim is not None:
        z = (sim.avg_error - analytic) / sim.std_err if sim.std_err > 0 else 0.0
        parts.append(
            f"separable two-outcome test, simulated error {_fmt(sim.avg_error)} "
            f"+/- {_fmt(sim.std_err)} ({trials} trials per hypothesis, seed {seed}, "
            f"{z:+.2f} standard errors from analytic)")
    parts.append(ENTANGLE_NOTE)
    return "\n".join(parts)


# -- argument parsing -----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cap", type=int, default=DEFAULT_DIM_CAP,
                   help="largest d^n for which the exact error is computed (default %(default)s)")
    p.add_argument("--bits", action="store_true", help="report rates in bits instead of nats")


def _sim(p: argparse.ArgumentParser, trials: int) -> None:
    p.add_argument("--trials", type=int, default=trials,
                   help="Monte Carlo trials per hypothesis; 0 disables simulation (default %(default)s)")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qchernoff", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="exact error, fidelity bounds and rates at one n")
    p.add_argument("--rho0", required=True, help="state file for hypothesis 0")
    p.add_argument("--rho1", required=True, help="state file for hypothesis 1")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    _common(p)

    p = sub.add_parser("sweep", help="CSV table of errors and bounds for n = 1..n-max")
    p.add_argument("--rho0", required=True)
    p.add_argument("--rho1", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", help="write CSV here instead of stdout")
    _sim(p, 0)
    _common(p)

    p = sub.add_parser("example", help="built-in state pairs")
    p.add_argument("name", choices=("pauli", "entangle"))
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--n-max", type=int, help="emit a sweep table instead of a single report")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    _sim(p, 100_000)
    _common(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bounds":
            rho0, rho1 = load_state(args.rho0), load_state(args.rho1)
            rho0, rho1 = as_state_pair(rho0, rho1)
            text = cmd_bounds(rho0, rho1, args.n, args.cap, args.bits, args.json)
        elif args.command == "sweep":
            rho0, rho1 = load_state(args.rho0), load_state(args.rho1)
            text = cmd_sweep(rho0, rho1, args.n_max, args.trials, args.seed,
                             args.out, args.cap)
            if args.out:
                text = None
        else:
            text = cmd_example(args.name, a=args.a, b=args.b, theta=args.theta,
                               n=args.n, n_max=args.n_max, trials=args.trials,
                               seed=args.seed, out_path=args.out, cap=args.cap,
                               bits=args.bits, as_json=args.json)
            if args.n_max is not None and args.out:
                text = None
    except OSError as exc:
        print(f"qchernoff: I/O error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"qchernoff: invalid input: {exc}", file=sys.stderr)
        return 1
    if text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
