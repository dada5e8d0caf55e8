"""Command-line front end.

    qgraphgaps cf golden --depth 8
    qgraphgaps gaps --golden --alpha -4.35
    qgraphgaps classify --theta-family 3 --alpha 3.5
    qgraphgaps thresholds --golden --jmax 6
    qgraphgaps secular cell.json --kmax 20 --format csv

Every command builds a plain report dict.  ``--format json`` dumps it as
is, ``text`` renders it for reading and ``csv`` emits the tabular part.
Exit codes: 0 success, 2 input error, 3 domain error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__, floquet, lattice
from .diophantine import (
    as_cf,
    convergents,
    evaluate,
    markov,
    theta_family,
    upsilon,
)
from .errors import BoundaryUndecidedError, InputError, QGraphError
from .intervals import RealInterval, fmt_real
from .lattice import LatticeParams
from .quadratic import QuadraticSurd, golden_mean, parse_number

COMMANDS = ("cf", "gaps", "classify", "secular", "thresholds")


# ---------------------------------------------------------------------------
# Formatting helpers
# ---------------------------------------------------------------------------

def _num(x) -> str:
    return fmt_real(x)


def _enc(d: dict) -> str:
    """Render an interval dict {lo, hi, certified} as [lo, hi]."""
    s = str(RealInterval(d["lo"], d["hi"]))
    return s if d.get("certified", True) else s + " (uncertified)"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _exact_str(x) -> str:
    if isinstance(x, QuadraticSurd):
        return x.to_spec()
    return str(x)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except (TypeError, ValueError):
            raise argparse.ArgumentTypeError(f"invalid value {text!r}") from None
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
        return v
    conv.__name__ = kind.__name__
    return conv


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--config", help="JSON file with default values for the flags")


def _add_lattice(p: argparse.ArgumentParser):
    g = p.add_argument_group("lattice")
    g.add_argument("--a", help="edge length a (rational or quadratic literal)")
    g.add_argument("--b", help="edge length b (rational or quadratic literal)")
    g.add_argument("--alpha", type=float, help="delta coupling strength")
    shape = g.add_mutually_exclusive_group()
    shape.add_argument("--golden", action="store_true", default=False,
                       help="a = phi*b with a = 1 unless --a is given")
    shape.add_argument("--theta-family", type=int, metavar="T",
                       help="a/b = theta(T) = [0;T,T,1,1,...] with b = 1 unless --b is given")
    shape.add_argument("--ratio", metavar="SPEC",
                       help="exact a/b as a quadratic literal or CF '[a0;a1,(p)]'")
    g.add_argument("--M", type=_positive(int), default=lattice.DEFAULT_M,
                   help="terms checked exactly in the threshold infima (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgraphgaps",
        description="Spectral gaps of periodic quantum graphs and the number theory behind them.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("cf", help="continued-fraction expansion and approximation constants")
    p.add_argument("spec", nargs="?",
                   help="'golden', a rational, '(A+B*sqrt(D))/C' or '[a0;a1,(p)]'")
    p.add_argument("--family-t", type=int, metavar="T", help="use theta(T) instead of SPEC")
    p.add_argument("--depth", type=_positive(int), default=10)
    p.add_argument("--eps", type=_positive(float), default=1e-12,
                   help="width of the printed value enclosure")
    _add_common(p)

    p = sub.add_parser("gaps", help="gap intervals of the rectangular lattice")
    _add_lattice(p)
    p.add_argument("--kmax", type=_positive(float),
                   help="scan bound in k (default: the count-verification bound on the "
                        "golden lattice with alpha < 0, else 200)")
    p.add_argument("--tol", type=_positive(float), default=1e-11)
    _add_common(p)

    p = sub.add_parser("classify", help="gap-count regime of the rectangular lattice")
    _add_lattice(p)
    _add_common(p)

    p = sub.add_parser("thresholds", help="gamma+-, finite-gap bounds and the A_j table")
    _add_lattice(p)
    p.add_argument("--jmax", type=_positive(int), default=6)
    _add_common(p)

    p = sub.add_parser("secular", help="band scan of a general periodic cell graph")
    p.add_argument("graph", help="graph description (JSON)")
    p.add_argument("--kmin", type=_positive(float), default=0.01)
    p.add_argument("--kmax", type=_positive(float), default=20.0)
    p.add_argument("--dk", type=_positive(float), default=0.01)
    p.add_argument("--grid", type=_positive(int), default=32)
    p.add_argument("--eps", type=_positive(float))
    p.add_argument("--tol", type=_positive(float), default=1e-9)
    _add_common(p)
    return parser


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"config {path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise InputError(f"config {path}: expected an object")
    return doc


def parse_args(argv=None) -> argparse.Namespace:
    """Parse flags; values from ``--config`` fill in anything not given."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.config:
        return args
    doc = _load_config(args.config)
    sp = _subparser(parser, args.command)
    known = {a.dest for a in sp._actions if a.dest not in ("help", "config")}
    defaults = {}
    for key, value in doc.items():
        dest = key.replace("-", "_")
        if dest not in known:
            raise InputError(f"config {args.config}: unknown key {key!r} for '{args.command}'")
        for a in sp._actions:
            if a.dest == dest and a.type is not None and value is not None \
                    and not isinstance(value, bool):
                try:
                    value = a.type(str(value)) if isinstance(value, str) else a.type(value)
                except (argparse.ArgumentTypeError, TypeError, ValueError) as exc:
                    raise InputError(f"config {args.config}: {key}: {exc}") from None
        defaults[dest] = value
    sp.set_defaults(**defaults)
    return parser.parse_args(argv)


# ---------------------------------------------------------------------------
# Lattice parameters
# ---------------------------------------------------------------------------

def _length(text):
    try:
        v = parse_number(text)
    except InputError:
        try:
            v = float(text)
        except ValueError:
            raise InputError(f"cannot parse length {text!r}") from None
    return v


def _ratio_of(a, b):
    exact = (int, Fraction, QuadraticSurd)
    if not (isinstance(a, exact) and isinstance(b, exact)):
        return None
    try:
        r = QuadraticSurd(a) / b if not isinstance(a, QuadraticSurd) else a / b
    except ValueError:
        return None  # different radicands
    return r.x if r.is_rational else r


def lattice_params(args, need_alpha: bool = True) -> LatticeParams:
    if args.alpha is None and need_alpha:
        raise InputError("--alpha is required")
    alpha = float(args.alpha) if args.alpha is not None else 1.0
    a = _length(args.a) if args.a is not None else None
    b = _length(args.b) if args.b is not None else None
    if args.golden:
        if b is not None:
            raise InputError("--golden fixes b = a/phi; give --a only")
        return LatticeParams.golden(alpha, float(a) if a is not None else 1.0)
    ratio = None
    if args.theta_family is not None:
        ratio = theta_family(args.theta_family)[0]
    elif args.ratio is not None:
        ratio = as_cf(args.ratio).value() if args.ratio.strip().startswith("[") \
            else parse_number(args.ratio)
    if ratio is not None:
        if a is not None:
            raise InputError("a ratio fixes a = ratio*b; give --b only")
        if not ratio > 0:
            raise InputError("the ratio must be positive")
        return LatticeParams.from_ratio(alpha, ratio, float(b) if b is not None else 1.0)
    if a is None or b is None:
        raise InputError("give --a and --b, or one of --golden, --theta-family, --ratio")
    return LatticeParams(float(a), float(b), alpha, _ratio_of(a, b))


def _params_doc(p: LatticeParams) -> dict:
    d = p.to_dict()
    d.setdefault("ratio", None)
    return d


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_cf(args) -> dict:
    if args.family_t is not None:
        if args.spec is not None:
            raise InputError("give either SPEC or --family-t")
        value, cf = theta_family(args.family_t)
        source = f"theta({args.family_t})"
    else:
        if args.spec is None:
            raise InputError("a SPEC or --family-t is required")
        source = args.spec
        if args.spec.strip().lower() == "golden":
            value = golden_mean()
        elif args.spec.strip().startswith("["):
            value = None
        else:
            value = parse_number(args.spec)
        cf = as_cf(value if value is not None else args.spec)
        if value is None and not cf.truncated:
            value = cf.value()
    terms = cf.terms(args.depth)
    convs = convergents(cf, len(terms))
    shown = f"[{terms[0]}" + (";" + ",".join(map(str, terms[1:])) if len(terms) > 1 else "")
    shown += "]"
    enc = evaluate(cf, args.eps)
    report = {
        "command": "cf",
        "input": source,
        "value": None if value is None else _exact_str(value),
        "expansion": str(cf),
        "terms": terms,
        "terms_text": shown,
        "convergents": [[c.numerator, c.denominator] for c in convs],
        "enclosure": enc.to_dict(),
        "upsilon": None,
        "markov": None,
    }
    if cf.is_periodic and (cf.a0 > 0 or (cf.a0 == 0 and cf.n_terms > 1)):
        report["upsilon"] = upsilon(cf).to_dict()
        report["markov"] = markov(cf).to_dict()
    return report


def _render_cf(r: dict) -> str:
    lines = [f"input        {r['input']}"]
    if r["value"] is not None:
        lines.append(f"value        {r['value']}")
    lines.append(f"expansion    {r['expansion']}")
    lines.append(f"terms        {r['terms_text']}")
    lines.append("convergents  " + ", ".join(f"{p}/{q}" for p, q in r["convergents"]))
    lines.append(f"enclosure    {_enc(r['enclosure'])}")
    if r["upsilon"] is not None:
        lines.append(f"upsilon      {_enc(r['upsilon'])}")
        lines.append(f"mu           {_enc(r['markov'])}")
    return "\n".join(lines) + "\n"


def _csv_cf(r: dict) -> str:
    rows = [(i, t, p, q) for i, (t, (p, q)) in enumerate(zip(r["terms"], r["convergents"]))]
    return _csv(("i", "a_i", "p_i", "q_i"), rows)


def _default_kmax(p: LatticeParams, args) -> tuple[float, str]:
    if args.golden and p.alpha < 0:
        try:
            n = lattice.predict_gap_count_golden(p.alpha, p.a)
        except BoundaryUndecidedError:
            n = "undecided"
        if isinstance(n, int):
            return lattice.kmax_policy(n, p.a, p.b), f"count-verification bound for N = {n}"
    return 200.0, "default"


def cmd_gaps(args) -> dict:
    p = lattice_params(args)
    if args.kmax is not None:
        kmax, why = float(args.kmax), "given"
    else:
        kmax, why = _default_kmax(p, args)
    gaps = lattice.scan_gaps(p, kmax, args.tol)
    return {
        "command": "gaps",
        "params": _params_doc(p),
        "kmax": kmax,
        "kmax_source": why,
        "count": len(gaps),
        "gaps": [g.to_dict() for g in gaps],
    }


def _render_gaps(r: dict) -> str:
    p = r["params"]
    lines = [f"lattice      a = {_num(p['a'])}, b = {_num(p['b'])}, alpha = {_num(p['alpha'])}",
             f"scan         0 < k <= {_num(r['kmax'])} ({r['kmax_source']})",
             f"gaps         {r['count']}"]
    if r["gaps"]:
        lines.append(f"{'k_lo':>20} {'k_hi':>20} {'E_lo':>20} {'E_hi':>20}  certified")
        for g in r["gaps"]:
            lines.append(f"{_num(g['k_lo']):>20} {_num(g['k_hi']):>20} {_num(g['E_lo']):>20} "
                         f"{_num(g['E_hi']):>20}  {'yes' if g['certified'] else 'no'}")
    return "\n".join(lines) + "\n"


def _csv_gaps(r: dict) -> str:
    gaps = [lattice.GapInterval(g["k_lo"], g["k_hi"], g["certified"]) for g in r["gaps"]]
    return lattice.gaps_to_csv(gaps)


def _golden_prediction(p: LatticeParams) -> dict | None:
    if p.alpha > 0:
        return None
    out: dict = {"N": None, "A_N": None, "A_N1": None, "note": None}
    try:
        n = lattice.predict_gap_count_golden(p.alpha, p.a)
    except BoundaryUndecidedError as exc:
        out["note"] = str(exc)
        return out
    if n == "infinite":
        out["N"] = "infinite"
        return out
    out["N"] = n
    if n > 0:
        out["A_N"] = lattice.A_sequence(n, p.a).to_dict()
    out["A_N1"] = lattice.A_sequence(n + 1, p.a).to_dict()
    return out


def cmd_classify(args) -> dict:
    p = lattice_params(args)
    rep = lattice.classify(p, args.M)
    return {
        "command": "classify",
        "params": _params_doc(p),
        "report": rep.to_dict(),
        "golden": _golden_prediction(p) if args.golden else None,
    }


def _render_classify(r: dict) -> str:
    p, rep = r["params"], r["report"]
    lines = [f"lattice      a = {_num(p['a'])}, b = {_num(p['b'])}, alpha = {_num(p['alpha'])}",
             f"regime       {rep['regime']}",
             f"gamma{rep['sign']}       {_enc(rep['gamma'])}",
             f"finite bound {_enc(rep['finite_bound'])}"]
    if rep["argmin"]:
        lines.append(f"attained at  eta = {rep['argmin']['eta']}, m = {rep['argmin']['m']}")
    g = r["golden"]
    if g is not None:
        if g["note"]:
            lines.append(f"predicted N  boundary-undecided: {g['note']}")
        else:
            lines.append(f"predicted N  {g['N']}")
            if g["A_N1"] is not None:
                lo = "0" if g["A_N"] is None else _enc(g["A_N"])
                lines.append(f"bracket      A_N = {lo} < |alpha| <= A_N+1 = {_enc(g['A_N1'])}")
    for note in rep["notes"]:
        lines.append(f"note         {note}")
    return "\n".join(lines) + "\n"


def _flat(prefix: str, d, out: list):
    if isinstance(d, dict):
        for k, v in d.items():
            _flat(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(d, list):
        out.append((prefix, "; ".join(str(x) for x in d)))
    else:
        out.append((prefix, "" if d is None else d))
    return out


def _csv_classify(r: dict) -> str:
    rows = _flat("", {k: v for k, v in r.items() if k != "command"}, [])
    return _csv(("field", "value"), rows)


def cmd_thresholds(args) -> dict:
    p = lattice_params(args, need_alpha=False)
    out = {"command": "thresholds", "params": _params_doc(p)}
    for sign, name in ((+1, "plus"), (-1, "minus")):
        q = LatticeParams(p.a, p.b, sign * (abs(p.alpha) or 1.0), p.ratio)
        gamma = lattice.gamma_plus(q, args.M) if sign > 0 else lattice.gamma_minus(q, args.M)
        out[f"gamma_{name}"] = gamma.to_dict()
        out[f"finite_bound_{name}"] = lattice.finite_gap_bound(q, sign).to_dict()
    out["A"] = None
    if args.golden:
        out["A"] = [{"j": j, **lattice.A_sequence(j, p.a).to_dict()}
                    for j in range(1, args.jmax + 1)]
    return out


def _render_thresholds(r: dict) -> str:
    p = r["params"]
    lines = [f"lattice         a = {_num(p['a'])}, b = {_num(p['b'])}",
             f"gamma+          {_enc(r['gamma_plus'])}",
             f"finite bound +  {_enc(r['finite_bound_plus'])}",
             f"gamma-          {_enc(r['gamma_minus'])}",
             f"finite bound -  {_enc(r['finite_bound_minus'])}"]
    if r["A"]:
        lines.append("A_j (alpha in [-A_N+1, -A_N) gives exactly N gaps)")
        for row in r["A"]:
            lines.append(f"  j = {row['j']:<3d} {_enc(row)}")
    return "\n".join(lines) + "\n"


def _csv_thresholds(r: dict) -> str:
    rows = []
    for key in ("gamma_plus", "finite_bound_plus", "gamma_minus", "finite_bound_minus"):
        d = r[key]
        rows.append((key, "", fmt_real(d["lo"], "down"), fmt_real(d["hi"], "up"),
                     str(d["certified"]).lower()))
    for row in r["A"] or []:
        rows.append(("A", row["j"], fmt_real(row["lo"], "down"), fmt_real(row["hi"], "up"),
                     str(row["certified"]).lower()))
    return _csv(("quantity", "j", "lo", "hi", "certified"), rows)


def cmd_secular(args) -> dict:
    g = floquet.load_graph(args.graph)
    if not args.kmin < args.kmax:
        raise InputError("need kmin < kmax")
    gaps = floquet.scan_bands(g, args.kmin, args.kmax, args.dk, args.grid, args.eps, args.tol)
    base = floquet.momentum_base_length(g)
    report = {
        "command": "secular",
        "graph": args.graph,
        "kmin": args.kmin,
        "kmax": args.kmax,
        "dk": args.dk,
        "count": len(gaps),
        "gaps": [x.to_dict() for x in gaps],
        "momentum_base_length": None if base is None else str(base),
        "momentum_period": None if base is None else 2 * math.pi / float(base),
    }
    if args.format == "csv":
        n = max(1, int(math.ceil((args.kmax - args.kmin) / args.dk)))
        ks = np.linspace(args.kmin, args.kmax, n + 1)
        report["samples"] = [[float(k), floquet.min_abs_secular(g, float(k), args.grid)]
                             for k in ks]
    return report


def _render_secular(r: dict) -> str:
    lines = [f"graph        {r['graph']}",
             f"scan         {_num(r['kmin'])} <= k <= {_num(r['kmax'])}, dk = {_num(r['dk'])}"]
    if r["gaps"]:
        lines.append(f"gaps         {r['count']}")
        lines.append(f"{'k_lo':>20} {'k_hi':>20}  certified")
        for x in r["gaps"]:
            lines.append(f"{_num(x['k_lo']):>20} {_num(x['k_hi']):>20}  "
                         f"{'yes' if x['certified'] else 'no'}")
    else:
        lines.append("no gaps detected")
    if r["momentum_period"] is not None:
        lines.append(f"momentum period: 2*pi/L = {_num(r['momentum_period'])} "
                     f"(L = {r['momentum_base_length']})")
    else:
        lines.append("momentum period: none (non-scale-invariant coupling or inexact lengths)")
    return "\n".join(lines) + "\n"


def _csv_secular(r: dict) -> str:
    return _csv(("k", "min_abs_F"), [(_num(k), _num(f)) for k, f in r["samples"]])


HANDLERS = {
    "cf": (cmd_cf, _render_cf, _csv_cf),
    "gaps": (cmd_gaps, _render_gaps, _csv_gaps),
    "classify": (cmd_classify, _render_classify, _csv_classify),
    "thresholds": (cmd_thresholds, _render_thresholds, _csv_thresholds),
    "secular": (cmd_secular, _render_secular, _csv_secular),
}


def run(args) -> str:
    """Execute a parsed command and return the rendered output."""
    build, text, table = HANDLERS[args.command]
    report = build(args)
    if args.format == "json":
        return json.dumps(report, indent=2, allow_nan=False) + "\n"
    if args.format == "csv":
        return table(report)
    return text(report)


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        out = run(args)
    except QGraphError as exc:
        print(f"qgraphgaps: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"qgraphgaps: numerical failure: {exc}", file=sys.stderr)
        return 4
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
