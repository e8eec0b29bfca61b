"""Command line front end.

One subcommand = one output artifact (JSON or CSV), written to --out or
stdout.  All numbers in artifacts are exact rational strings; decimal
columns are convenience duplicates and lossy.  Output bytes are
deterministic for identical inputs, including across --threads settings,
because every quantity is computed exactly.

Exit codes: 0 ok, 1 parse/input error, 2 validation error, 3 resource
cap.  Failures write a one-object JSON report to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import catalog_density, catalog_entry, catalog_minor_check
from .combinators import DensityPair, rescale_density, segre
from .errors import CapacityError, HKDError, InputError, ValidationError
from .exact import PiecewisePoly, pw_integrate, pw_sup_distance, rat, rat_str
from .hn import HNData, dim2_pair_density, hn_density
from .lattice import LatticePair, MonomialIdealSpec, SemigroupSpec
from .resolution import BettiTable, closed_form_density, ehk_closed_form
from .rings import hilbert_function, leading_coefficient, parse_ring_json

COMMANDS = (
    "density-betti",
    "density-empirical",
    "compare",
    "segre",
    "rescale",
    "catalog",
    "hn2",
    "integrate",
    "sample",
)


@dataclass(frozen=True)
class JobSpec:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    output: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; route through InputError
    # so the parse-failure class keeps exit code 1
    def error(self, message):
        raise InputError(message)


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dec(x) -> str:
    """Lossy decimal rendering of an exact rational."""
    try:
        return repr(float(Fraction(x)))
    except OverflowError:
        return "inf" if x > 0 else "-inf"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _density_payload(f: PiecewisePoly) -> dict:
    return {
        "density": f.to_json(),
        "integral": rat_str(pw_integrate(f)),
        "integral_decimal": _dec(pw_integrate(f)),
        "support_end": rat_str(f.support_end),
    }


def _load_density(path: str) -> PiecewisePoly:
    data = _read_json(path)
    if isinstance(data, dict) and "density" in data:
        data = data["density"]
    return PiecewisePoly.from_json(data)


def _load_pair(path: str) -> DensityPair:
    data = _read_json(path)
    try:
        return DensityPair(
            PiecewisePoly.from_json(data["F"]),
            PiecewisePoly.from_json(data["f"]),
            int(data["d"]),
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: density pair JSON needs F, f, d ({exc})") from None


def _pair_payload(pair: DensityPair) -> dict:
    return {
        "F": pair.F.to_json(),
        "f": pair.f.to_json(),
        "d": pair.d,
        "ehat": rat_str(pair.ehat),
        "ehk": rat_str(pair.ehk),
        "ehk_decimal": _dec(pair.ehk),
    }


def _load_lattice_pair(path: str, cap: int | None = None) -> LatticePair:
    data = _read_json(path)
    try:
        spec = SemigroupSpec.from_json(data["semigroup"])
        ideal_data = data["ideal"]
    except KeyError as exc:
        raise InputError(f"{path}: pair JSON missing key {exc}") from None
    if isinstance(ideal_data, dict):
        ideal = MonomialIdealSpec.from_json(ideal_data)
    else:
        ideal = MonomialIdealSpec.build(ideal_data)
    return LatticePair(spec, ideal, cap=cap)


def _parse_levels(text: str) -> list[int]:
    try:
        levels = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"levels must be comma-separated integers, got {text!r}") from None
    if not levels or any(n < 1 for n in levels):
        raise InputError(f"levels must be >= 1, got {text!r}")
    return levels


# ---------------------------------------------------------------- handlers


def _run_density_betti(job: JobSpec) -> str:
    data = _read_json(job.inputs["in"])
    if "betti" not in data:
        raise InputError("input needs a 'betti' table")
    betti = BettiTable.from_json(data["betti"])
    if "ring" in data:
        ring = parse_ring_json(data["ring"])
        ehat = leading_coefficient(ring)
        n0 = hilbert_function(ring).n0
    else:
        try:
            ehat = rat(data["ehat"])
        except KeyError:
            raise InputError("input needs either a 'ring' or an explicit 'ehat'") from None
        n0 = int(data.get("n0", 1))
    f = closed_form_density(betti, ehat, n0)
    ehk = ehk_closed_form(betti, ehat, n0)
    payload = {
        "command": "density-betti",
        "d": betti.d,
        "n0": n0,
        "ehat": rat_str(ehat),
        "ehk": rat_str(ehk),
        "ehk_decimal": _dec(ehk),
        **_density_payload(f),
    }
    return _json_text(payload)


def _run_density_empirical(job: JobSpec) -> str:
    pair = _load_lattice_pair(job.inputs["in"], cap=job.options.get("cap"))
    level = job.options["level"]
    approx = pair.build_approximant(level, threads=job.options.get("threads", 1))
    payload = {
        "command": "density-empirical",
        "level": approx.level,
        "q": approx.q,
        "f_step": approx.f_step.to_json(),
        "g_interp": approx.g_interp.to_json(),
        "integral": rat_str(approx.integral),
        "integral_decimal": _dec(approx.integral),
    }
    return _json_text(payload)


def _run_compare(job: JobSpec) -> str:
    pair = _load_lattice_pair(job.inputs["spec"], cap=job.options.get("cap"))
    reference = None
    if "reference" in job.inputs:
        reference = _load_density(job.inputs["reference"])
    rows = pair.convergence_report(
        job.options["levels"],
        reference=reference,
        threads=job.options.get("threads", 1),
    )
    header = [
        "level",
        "q",
        "sup_distance",
        "sup_distance_decimal",
        "integral",
        "integral_decimal",
    ]
    body = [
        [
            str(r.level),
            str(r.q),
            rat_str(r.sup_distance),
            _dec(r.sup_distance),
            rat_str(r.integral),
            _dec(r.integral),
        ]
        for r in rows
    ]
    return _csv_text(header, body)


def _run_segre(job: JobSpec) -> str:
    pair = segre(_load_pair(job.inputs["a"]), _load_pair(job.inputs["b"]))
    return _json_text({"command": "segre", **_pair_payload(pair)})


def _run_rescale(job: JobSpec) -> str:
    f = _load_density(job.inputs["in"])
    out = rescale_density(f, job.options["l0"], job.options["rank"])
    return _json_text({"command": "rescale", **_density_payload(out)})


def _run_catalog(job: JobSpec) -> str:
    entry = catalog_entry(
        job.options["family"], job.options.get("n"), job.options.get("p")
    )
    pair, verdict = catalog_density(entry)
    minors = catalog_minor_check(entry)
    payload = {
        "command": "catalog",
        "entry": {
            "label": entry.label,
            "family": entry.family,
            "n": entry.n,
            "gen_degrees": list(entry.gen_degrees),
            "rel_degree": entry.rel_degree,
            "l0": entry.l0,
            "rank": entry.rank,
            "printed_order": entry.printed_order,
            "char_min": entry.char_min,
            "char_coprime_to": entry.char_coprime_to,
            "betti": entry.betti.to_json(),
            "printed_ehk": None if entry.printed_ehk is None else rat_str(entry.printed_ehk),
            "printed_table": None
            if entry.printed_table is None
            else entry.printed_table.to_json(),
        },
        **_pair_payload(pair),
        "verdict": {
            "ehk": rat_str(verdict.ehk),
            "expected_ehk": rat_str(verdict.expected_ehk),
            "ehk_matches_expected": verdict.ehk_matches_expected,
            "printed_ehk": None if verdict.printed_ehk is None else rat_str(verdict.printed_ehk),
            "ehk_matches_printed": verdict.ehk_matches_printed,
            "table_status": verdict.table_status,
            "table_sup_distance": None
            if verdict.table_sup_distance is None
            else rat_str(verdict.table_sup_distance),
            "clean": verdict.clean,
            "flags": list(verdict.flags),
            "notes": list(verdict.notes),
        },
        "minor_check": {
            "verdict": minors.verdict,
            "degree_consistent": minors.degree_consistent,
            "per_generator": list(minors.per_generator),
            "notes": list(minors.notes),
        },
    }
    return _json_text(payload)


def _run_hn2(job: JobSpec) -> str:
    v = HNData.from_json(_read_json(job.inputs["in"]))
    twists = job.options.get("twists")
    if twists is None:
        f = hn_density(v)
    else:
        f = dim2_pair_density(v, twists, v.d)
    return _json_text({"command": "hn2", **_density_payload(f)})


def _run_integrate(job: JobSpec) -> str:
    f = _load_density(job.inputs["in"])
    val = pw_integrate(f)
    return _json_text(
        {
            "command": "integrate",
            "integral": rat_str(val),
            "integral_decimal": _dec(val),
        }
    )


def _run_sample(job: JobSpec) -> str:
    f = _load_density(job.inputs["in"])
    k = job.options["count"]
    if k < 2:
        raise ValidationError(f"sample count {k} must be >= 2")
    end = f.support_end * Fraction(11, 10)
    rows = []
    for i in range(k + 1):
        x = end * i / k
        v = f(x)
        rows.append([rat_str(x), _dec(x), rat_str(v), _dec(v)])
    return _csv_text(["x", "x_decimal", "value", "value_decimal"], rows)


_HANDLERS = {
    "density-betti": _run_density_betti,
    "density-empirical": _run_density_empirical,
    "compare": _run_compare,
    "segre": _run_segre,
    "rescale": _run_rescale,
    "catalog": _run_catalog,
    "hn2": _run_hn2,
    "integrate": _run_integrate,
    "sample": _run_sample,
}


def run(job: JobSpec) -> int:
    _emit(_HANDLERS[job.command](job), job.output)
    return 0


# ------------------------------------------------------------ arg parsing


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="hkdensity",
        description="Exact Hilbert-Kunz density functions of graded rings.",
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", help="output file (default stdout)")
        return p

    p = add("density-betti", "closed-form density from a graded Betti table")
    p.add_argument("--in", dest="infile", required=True, help="betti + ring JSON")

    p = add("density-empirical", "step/interpolant approximants by colength counting")
    p.add_argument("--in", dest="infile", required=True, help="semigroup pair JSON")
    p.add_argument("--level", type=int, required=True, help="Frobenius level n (q = p^n)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-points", type=int, default=None, help="enumeration cap override")

    p = add("compare", "convergence table of sup distances")
    p.add_argument("--spec", required=True, help="semigroup pair JSON")
    p.add_argument("--levels", required=True, help="comma-separated levels")
    p.add_argument("--reference", help="density JSON to compare against")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-points", type=int, default=None)

    p = add("segre", "Segre product of two density pairs")
    p.add_argument("--a", required=True, help="density pair JSON")
    p.add_argument("--b", required=True, help="density pair JSON")

    p = add("rescale", "Veronese-type rescale x -> s f(c x) with c=l0, s=l0/rank")
    p.add_argument("--in", dest="infile", required=True, help="density JSON")
    p.add_argument("--l0", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)

    p = add("catalog", "built-in ADE invariant pairs with verdicts")
    p.add_argument("--family", required=True, help="A, D, E6, E7 or E8")
    p.add_argument("--n", type=int, help="parameter for the A and D families")
    p.add_argument("--p", type=int, help="characteristic to validate")

    p = add("hn2", "dimension-2 density from Harder-Narasimhan data")
    p.add_argument("--in", dest="infile", required=True, help="HN JSON")
    p.add_argument(
        "--twists", help="comma-separated generator degrees; subtracts the twisted line-bundle sum"
    )

    p = add("integrate", "integral of a density JSON")
    p.add_argument("--in", dest="infile", required=True)

    p = add("sample", "evaluate k+1 evenly spaced points past the support")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--count", type=int, required=True, help="k >= 2")

    return parser


def parse_args(argv: list[str] | None = None) -> JobSpec:
    ns = _build_parser().parse_args(argv)
    cmd = ns.command
    inputs: dict[str, str] = {}
    options: dict = {}
    if cmd in ("density-betti", "density-empirical", "rescale", "hn2", "integrate", "sample"):
        inputs["in"] = ns.infile
    if cmd == "density-empirical":
        options["level"] = ns.level
        options["threads"] = ns.threads
        if ns.max_points is not None:
            options["cap"] = ns.max_points
    if cmd == "compare":
        inputs["spec"] = ns.spec
        if ns.reference is not None:
            inputs["reference"] = ns.reference
        options["levels"] = _parse_levels(ns.levels)
        options["threads"] = ns.threads
        if ns.max_points is not None:
            options["cap"] = ns.max_points
    if cmd == "segre":
        inputs["a"], inputs["b"] = ns.a, ns.b
    if cmd == "rescale":
        if ns.l0 < 1 or ns.rank < 1:
            raise InputError("l0 and rank must be >= 1")
        options["l0"], options["rank"] = ns.l0, ns.rank
    if cmd == "catalog":
        options["family"] = ns.family
        options["n"] = ns.n
        options["p"] = ns.p
    if cmd == "hn2" and ns.twists is not None:
        try:
            options["twists"] = [int(t) for t in ns.twists.split(",") if t.strip()]
        except ValueError:
            raise InputError(f"twists must be comma-separated integers, got {ns.twists!r}") from None
    if cmd == "sample":
        options["count"] = ns.count
    return JobSpec(cmd, inputs, ns.out, options)


def _report(exc: Exception, **extra) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc), **extra}
    sys.stderr.write(_json_text(payload))


def main(argv: list[str] | None = None) -> int:
    try:
        job = parse_args(argv)
        return run(job)
    except CapacityError as exc:
        extra = {}
        if getattr(exc, "max_feasible_level", None) is not None:
            extra["max_feasible_level"] = exc.max_feasible_level
        _report(exc, **extra)
        return 3
    except InputError as exc:
        _report(exc)
        return 1
    except HKDError as exc:
        # ValidationError, DomainError, BettiIdentityError, InternalError
        extra = {}
        if getattr(exc, "residual", None) is not None:
            extra["residual"] = exc.residual.to_json()
        _report(exc, **extra)
        return 2


if __name__ == "__main__":
    sys.exit(main())
