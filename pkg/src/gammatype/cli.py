"""Command-line front end: ``gammatype {classify,eval,scan,check,emit} ...``.

Output is JSON on stdout (or the file given by ``--out``), always carrying
``"schema": "gammatype/1"``.  Grid data can be written as CSV with
``--format csv``.  Exit codes: 0 ok, 2 usage, 3 domain error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import enum
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import classifier as cl
from . import divisibility as dv
from . import moment_spec as ms
from . import numerics as nm
from .errors import BracketError, DomainError, GammaTypeError, NumericalError
from .mittag_leffler import MLParams, ml2_eval, ml3_eval, ml3_min_on_ray, wright_eval

SCHEMA = "gammatype/1"

EXIT_CODES = {"ok": 0, "usage_error": 2, "domain_error": 3, "bracket_error": 3, "eval_error": 4}


@dataclass
class CommandResult:
    status: str
    payload: object = field(default_factory=dict)
    #: rendered output (JSON or CSV text)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    @property
    def ok(self) -> bool:
        return self.status == "ok"


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise _Usage(message or "") if status else _HelpShown()


class _HelpShown(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def number(text: str) -> Fraction | float:
    """Exact rational when the text allows it (``3``, ``0.25``, ``7/3``), float otherwise."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        pass
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _param(text: str) -> tuple[str, Fraction | float]:
    key, sep, val = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return key.strip(), number(val)


_FAMILIES = {
    "gamma": (ms.spec_gamma, ("c",)),
    "beta": (ms.spec_beta, ("a", "b")),
    "X": (ms.spec_X, ("a", "b", "c", "d")),
    "D": (ms.spec_D, ("a", "b", "c", "d")),
    "Y_MP": (ms.spec_Y_MP, ("alpha", "r")),
    "M_FS": (ms.spec_M, ("alpha", "beta")),
    "M_t": (ms.spec_M_t, ("alpha", "beta", "t")),
    "B_Dufresne": (ms.spec_dufresne, ("a", "b", "c", "d")),
    "F_Bosch": (ms.spec_bosch, ("alpha", "t")),
    "half_cauchy": (ms.spec_half_cauchy, ("alpha",)),
}


def _add_spec_args(p: argparse.ArgumentParser, prefix: str = "") -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument(f"--{prefix}spec", help="spec as JSON text or a path to a JSON file")
    g.add_argument(f"--{prefix}preset", choices=sorted(ms.PRESETS))
    g.add_argument(f"--{prefix}family", choices=sorted(_FAMILIES))
    p.add_argument(f"--{prefix}param", action="append", type=_param, default=[],
                   metavar="NAME=VALUE", help="family parameter (repeatable)")


def _load_spec(args, prefix: str = "") -> ms.GammaTypeSpec:
    key = prefix.replace("-", "_")
    text = getattr(args, f"{key}spec")
    pre = getattr(args, f"{key}preset")
    fam = getattr(args, f"{key}family")
    if text is not None:
        path = Path(text)
        raw = path.read_text() if not text.lstrip().startswith("{") and path.exists() else text
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise _Usage(f"--{prefix}spec is neither JSON nor a readable file: {exc}") from None
        if isinstance(obj, dict) and "spec" in obj:
            obj = obj["spec"]
        return ms.GammaTypeSpec.from_json(obj)
    if pre is not None:
        return ms.preset(pre)
    fn, names = _FAMILIES[fam]
    params = dict(getattr(args, f"{key}param"))
    if set(params) != set(names):
        raise _Usage(f"family {fam} needs --{prefix}param for {', '.join(names)}")
    return fn(*(params[n] for n in names))


def _f(x) -> float:
    return float(x)


# ---------------------------------------------------------------------------
# command implementations; each returns a JSON-able payload


def _classify_x(a):
    return cl.classify_X(a.a, a.b, a.c, a.d).to_json()


def _classify_ml3(a):
    return cl.classify_ml3_nonneg(a.rho, a.mu, a.gamma).to_json()


def _classify_ml2(a):
    return cl.classify_ml2_domain(a.rho, a.mu).to_json()


def _classify_d(a):
    return cl.classify_D(a.a, a.b, a.c, a.d).to_json()


def _classify_catalog(a):
    out = cl.classify_catalog(a.family, **dict(a.param)).to_json()
    if a.family == cl.Family.B_DUFRESNE.value:
        p = dict(a.param)
        if p.get("b", 1) + p.get("d", 1) == 0:
            out["point_mass"] = cl.dufresne_point_mass(p["a"], p["b"], p["c"], p["d"])
    return out


def _classify_cauchy(a):
    out = cl.classify_half_cauchy_id(a.alpha, a.eps, a.p).to_json()
    out["threshold"] = cl.half_cauchy_threshold(a.alpha, a.eps)
    return out


def _eval_payload(r):
    if not math.isfinite(r.est_error):
        raise NumericalError("evaluation failed on every branch")
    return r.to_json()


def _eval_ml3(a):
    return _eval_payload(ml3_eval(MLParams(_f(a.rho), _f(a.mu), _f(a.gamma)), _f(a.z)))


def _eval_ml2(a):
    return _eval_payload(ml2_eval(_f(a.rho), _f(a.mu), _f(a.z)))


def _eval_wright(a):
    return _eval_payload(wright_eval(_f(a.alpha), _f(a.beta), _f(a.z)))


def _eval_mellin(a):
    spec = _load_spec(a)
    return {"s": _f(a.s), "value": ms.mellin_eval(spec, _f(a.s)), "spec": spec.to_json()}


def _eval_charfn(a):
    spec = _load_spec(a)
    v = ms.char_fn_eval(spec, _f(a.t))
    return {"t": _f(a.t), "real": v.real, "imag": v.imag, "abs": abs(v)}


def _eval_density(a):
    v, e = nm.density_X_inverse_with_error(a.a, a.b, a.c, a.d, _f(a.t))
    return {"t": _f(a.t), "value": v, "est_error": e}


def _scan_nonneg(a):
    return nm.nonneg_scan(a.a, a.b, a.c, a.d, _f(a.t_max), a.n_grid)


def _scan_boundary(a):
    mu_lo = None if a.mu_lo is None else _f(a.mu_lo)
    mu_hi = None if a.mu_hi is None else _f(a.mu_hi)
    f_hat = nm.boundary_bracket(_f(a.rho), mu_lo, mu_hi, _f(a.t_max), _f(a.tol_mu))
    L, U = cl.L_bound(a.rho), cl.U_bound(a.rho)
    return {"rho": _f(a.rho), "f_hat": f_hat, "L": float(L), "U": float(U), "tol_mu": _f(a.tol_mu)}


def _scan_kernel(a):
    spec = _load_spec(a)
    t_max = None if a.t_max is None else _f(a.t_max)
    out = dv.malmsten_kernel_check(spec, t_max, a.n_grid).to_json()
    out["result"] = out.pop("status")
    return out


def _check_hausdorff(a):
    spec = _load_spec(a)
    N = a.N if a.N is not None else max(a.K, 25)
    seq = dv.factorial_ratio_sequence(spec, N)
    res = dv.hausdorff_oracle(seq, a.K, N)
    out = res.to_json()
    out["result"] = out.pop("status")
    out["scale"] = seq.scale
    try:
        out["majorization"] = dv.hausdorff_sufficient(dv.unit_slope_normalize(spec)).value
    except DomainError as exc:
        out["majorization"] = f"not applicable: {exc}"
    return out


def _check_identity(a):
    lhs = _load_spec(a)
    rhs = _load_spec(a, "rhs-")
    dev = ms.mellin_identity_check(lhs, rhs)
    return {"max_deviation": dev, "tol": _f(a.tol), "result": "Equal" if dev <= _f(a.tol) else "Different"}


def _check_janson(a):
    spec = _load_spec(a)
    gd = ms.gamma_delta(spec)
    return {"result": ms.janson_check(spec).value, "gamma": gd.gamma, "delta": gd.delta}


def _emit_spec(a):
    return {"spec": _load_spec(a).to_json()}


def _emit_grid(a):
    if a.a is not None:
        return nm.nonneg_scan(a.a, a.b, a.c, a.d, _f(a.t_max), a.n_grid)
    if a.rho is None or a.mu is None:
        raise _Usage("emit grid-csv needs either --a --b --c --d or --rho --mu")
    return ml3_min_on_ray(MLParams(_f(a.rho), _f(a.mu), _f(a.gamma)), _f(a.t_max), a.n_grid)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="json by default; csv for grid-csv")
    common.add_argument("--out", help="write the output here instead of stdout")

    root = _Parser(prog="gammatype", description="Gamma-type moment problems: classification, evaluation and checks.")
    top = root.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    def nums(p, *names, required=True):
        for n in names:
            p.add_argument(f"--{n}", type=number, required=required)

    c = top.add_parser("classify", help="exact parameter-domain verdicts").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    nums(leaf(c, "x", _classify_x, "existence of X_{a,b,c,d}"), "a", "b", "c", "d")
    p = leaf(c, "ml3", _classify_ml3, "non-negativity of E^gamma_{rho,mu}(-t)")
    nums(p, "rho", "mu")
    p.add_argument("--gamma", type=number, default=Fraction(1))
    nums(leaf(c, "ml2", _classify_ml2, "admissible domain of E_{rho,mu}"), "rho", "mu")
    nums(leaf(c, "d", _classify_d, "existence of the four-parameter D law"), "a", "b", "c", "d")
    p = leaf(c, "catalog", _classify_catalog, "named families")
    p.add_argument("--family", required=True, choices=[f.value for f in cl.Family])
    p.add_argument("--param", action="append", type=_param, default=[], metavar="NAME=VALUE")
    p = leaf(c, "cauchy", _classify_cauchy, "infinite divisibility of |C_alpha|^(eps p)")
    nums(p, "alpha", "p")
    p.add_argument("--eps", type=int, choices=(1, -1), required=True)

    e = top.add_parser("eval", help="numerical evaluation").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = leaf(e, "ml3", _eval_ml3, "E^gamma_{rho,mu}(z)")
    nums(p, "rho", "mu", "z")
    p.add_argument("--gamma", type=number, default=Fraction(1))
    nums(leaf(e, "ml2", _eval_ml2, "E_{rho,mu}(z)"), "rho", "mu", "z")
    nums(leaf(e, "wright", _eval_wright, "Wright function"), "alpha", "beta", "z")
    p = leaf(e, "mellin", _eval_mellin, "E X^s of a spec")
    _add_spec_args(p)
    nums(p, "s")
    p = leaf(e, "charfn", _eval_charfn, "characteristic function of log X")
    _add_spec_args(p)
    nums(p, "t")
    nums(leaf(e, "density", _eval_density, "density of 1/X_{a,b,c,d}"), "a", "b", "c", "d", "t")

    s = top.add_parser("scan", help="grid scans").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = leaf(s, "nonneg", _scan_nonneg, "sign of the density of 1/X_{a,b,c,d}")
    nums(p, "a", "b", "c", "d")
    p.add_argument("--t-max", type=number, default=nm.SCAN_T_MAX)
    p.add_argument("--n-grid", type=int, default=1200)
    p = leaf(s, "boundary", _scan_boundary, "empirical boundary f(rho)")
    nums(p, "rho")
    nums(p, "mu-lo", "mu-hi", required=False)
    p.add_argument("--t-max", type=number, default=1e4)
    p.add_argument("--tol-mu", type=number, default=Fraction(1, 1000))
    p = leaf(s, "kernel", _scan_kernel, "infinite-divisibility kernel sign")
    _add_spec_args(p)
    p.add_argument("--t-max", type=number)
    p.add_argument("--n-grid", type=int, default=4096)

    k = top.add_parser("check", help="exact and structural checks").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = leaf(k, "hausdorff", _check_hausdorff, "exact complete-monotonicity test")
    _add_spec_args(p)
    p.add_argument("--K", type=int, default=15)
    p.add_argument("--N", type=int)
    p = leaf(k, "identity", _check_identity, "equality in law of two specs")
    _add_spec_args(p)
    _add_spec_args(p, "rhs-")
    p.add_argument("--tol", type=number, default=1e-10)
    p = leaf(k, "janson", _check_janson, "necessary condition for existence")
    _add_spec_args(p)

    m = top.add_parser("emit", help="serialise specs and grids").add_subparsers(
        dest="cmd", required=True, parser_class=_Parser)
    p = leaf(m, "spec", _emit_spec, "normalised spec JSON")
    _add_spec_args(p)
    p = leaf(m, "grid-csv", _emit_grid, "evaluation grid as CSV")
    nums(p, "a", "b", "c", "d", "rho", "mu", required=False)
    p.add_argument("--gamma", type=number, default=Fraction(1))
    p.add_argument("--t-max", type=number, default=nm.SCAN_T_MAX)
    p.add_argument("--n-grid", type=int, default=1200)
    return root


# ---------------------------------------------------------------------------
# rendering


def _plain(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.floating, np.integer)):
        x = x.item()
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _render(status: str, command: str, payload, fmt: str) -> str:
    if fmt == "csv" and isinstance(payload, nm.ScanReport):
        return payload.to_csv()
    if isinstance(payload, nm.ScanReport):
        payload = payload.to_json()
    body = {"schema": SCHEMA, "command": command, "status": status}
    if isinstance(payload, dict):
        body.update(payload)
    else:
        body["result"] = payload
    return json.dumps(_plain(body), indent=2, sort_keys=False) + "\n"


_NEGATIVE = re.compile(r"^-(\d|\.\d|inf)")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--z -1/2`` into ``--z=-1/2`` so argparse does not read a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: list[str] | None = None) -> CommandResult:
    """Parse ``argv`` and execute; never raises for user errors."""
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _HelpShown:
        return CommandResult("ok", {}, "")
    except _Usage as exc:
        msg = str(exc)
        return CommandResult("usage_error", {"error": msg}, _render("usage_error", "", {"error": msg}, "json"))
    command = f"{args.group} {args.cmd}"
    if args.format is None:
        args.format = "csv" if command == "emit grid-csv" else "json"
    try:
        payload = args.fn(args)
        if args.format == "csv" and not isinstance(payload, nm.ScanReport):
            raise _Usage(f"{command} has no CSV output")
        status = "ok"
    except _Usage as exc:
        status, payload = "usage_error", {"error": str(exc)}
    except BracketError as exc:
        status, payload = "bracket_error", {"error": str(exc)}
    except (DomainError, ZeroDivisionError) as exc:
        status, payload = "domain_error", {"error": str(exc)}
    except (NumericalError, ArithmeticError) as exc:
        status, payload = "eval_error", {"error": str(exc)}
    except GammaTypeError as exc:
        status, payload = "domain_error", {"error": str(exc)}
    fmt = args.format if status == "ok" else "json"
    text = _render(status, command, payload, fmt)
    if status == "ok" and args.out:
        Path(args.out).write_text(text)
        text = ""
    return CommandResult(status, payload, text)


def main(argv: list[str] | None = None) -> int:
    res = run(argv)
    if res.text:
        stream = sys.stdout if res.ok else sys.stderr
        stream.write(res.text)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
