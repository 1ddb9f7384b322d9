"""Command-line interface.

Subcommands: potential | spectrum | verify | pct | second-class | classify.
Every numeric option can also come from a `key = value` config file via
--config; explicit flags win over file entries.  All values are parsed through
one coercion path so malformed input fails the same way from either source.

Exit codes: 0 success, 2 configuration error, 3 numerical-oracle failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import tables
from .errors import OracleError, QbError
from .family import (AlphaClass, FamilyParams, PhysicalConstants, classify_alpha,
                     coulomb_params, couplings, oscillator_params, potential_eval)
from .oracle import RadialGrid, fd_spectrum
from .pct import exp_map_potential, morse_view, pct_energy
from .second_class import SecondClassParams, derived_coeffs, eta_bar_exponents, second_potential
from .spectrum import energy_coulomb, energy_oscillator, epsilon_n
from .verify import build_report


def _keep(key, value):
    return str(value)


def _choice(options):
    def check(key, value):
        s = str(value)
        if s not in options:
            raise ValueError(f"config key '{key}': must be one of {', '.join(options)}")
        return s
    return check


_COERCERS = {
    "float": tables.coerce_float,
    "int": tables.coerce_int,
    "bool": tables.coerce_bool,
    "str": _keep,
    "grid": tables.parse_grid_spec,
}

# per-command option schema: name -> (kind, default); None default = unset
_SPECS = {
    "potential": {
        "family": (_choice(["first", "pct", "second"]), "first"),
        "alpha": ("float", 2.0),
        "a": ("float", None), "b": ("float", None), "c": ("float", None),
        "epsilon": ("float", 0.0), "l": ("int", 0), "n": ("int", 0),
        "lam": ("float", 1.0), "omega": ("float", 1.0), "energy": ("float", 0.0),
        "gamma": ("float", None), "beta": ("float", 0.0), "delta": ("float", 0.0),
        "grid": ("grid", (0.1, 5.0, 50)),
        "hbar": ("float", 1.0), "mass": ("float", 1.0), "e2": ("float", 1.0),
        "format": (_choice(["csv", "json"]), "csv"),
    },
    "spectrum": {
        "case": (_choice(["coulomb", "oscillator", "numeric"]), "coulomb"),
        "n_max": ("int", 2), "l_max": ("int", 1),
        "omega": ("float", 1.0), "verify": ("bool", False),
        "alpha": ("float", None),
        "g1": ("float", 0.0), "g2": ("float", 0.0), "g3": ("float", 0.0),
        "grid": ("grid", None),
        "hbar": ("float", 1.0), "mass": ("float", 1.0), "e2": ("float", 1.0),
        "format": (_choice(["csv", "json"]), "csv"),
    },
    "verify": {
        "seed": ("int", 42),
        "only": ("str", None),
    },
    "pct": {
        "alpha": ("float", None),
        "a": ("float", None), "b": ("float", 0.0), "c": ("float", 0.0),
        "epsilon": ("float", 0.0), "l": ("int", 0), "lam": ("float", 1.0),
        "grid": ("grid", (0.1, 10.0, 100)),
        "hbar": ("float", 1.0), "mass": ("float", 1.0), "e2": ("float", 1.0),
        "format": (_choice(["csv", "json"]), "csv"),
    },
    "second-class": {
        "alpha": ("float", None),
        "a": ("float", None), "b": ("float", None),
        "gamma": ("float", None), "beta": ("float", 0.0), "delta": ("float", 0.0),
        "l": ("int", 0), "lam": ("float", 1.0),
        "format": (_choice(["csv", "json"]), "csv"),
    },
    "classify": {
        "alpha_min": ("float", 0.5), "alpha_max": ("float", 3.0),
        "alpha_step": ("float", 0.05),
        "format": (_choice(["csv", "json"]), "csv"),
    },
}

_PLOT_COMMANDS = {"spectrum": "levels", "verify": "checks", "classify": "classes"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qbertrand",
        description="Bound-state potentials, spectra, and verification suites "
                    "for the Euler-operator similarity-transformation family.")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "potential": "tabulate a potential (family, PCT, or second class)",
        "spectrum": "closed-form and numerical level tables",
        "verify": "run the full verification suite, JSON report",
        "pct": "exponential-map potential table plus energy/Morse info",
        "second-class": "derived coefficients and indicial roots",
        "classify": "constant-independence classification over an alpha scan",
    }
    for command, spec in _SPECS.items():
        sp = sub.add_parser(command, help=helps[command])
        sp.add_argument("--config", help="key = value file; flags override it")
        sp.add_argument("--out", help="output path (default: stdout)")
        if command in _PLOT_COMMANDS:
            sp.add_argument("--plot", action="store_true",
                            help="also render PNG figures next to --out")
        for name in spec:
            flag = "--" + name.replace("_", "-")
            sp.add_argument(flag, dest=name, default=None, metavar="V")
    return ap


def _merge(args, spec) -> dict:
    file_cfg = tables.parse_config_file(args.config) if args.config else {}
    merged = {}
    for key, (kind, default) in spec.items():
        coerce = _COERCERS[kind] if isinstance(kind, str) else kind
        raw = getattr(args, key, None)
        file_raw = file_cfg.pop(key, None)
        if raw is None:
            raw = file_raw
        merged[key] = default if raw is None else coerce(key, raw)
    if file_cfg:
        unknown = sorted(file_cfg)[0]
        raise ValueError(f"unknown config key '{unknown}'")
    return merged


def _require(opts, keys, context):
    for key in keys:
        if opts[key] is None:
            raise ValueError(f"config key '{key}' is required for {context}")


def _constants(opts) -> PhysicalConstants:
    return PhysicalConstants(hbar=opts["hbar"], m=opts["mass"],
                             e2_over_4pieps0=opts["e2"], omega=opts["omega"] if "omega" in opts else 1.0)


def _emit_table(args, opts, header, rows):
    if opts["format"] == "csv":
        text = tables.render_csv(header, rows)
    else:
        text = tables.render_json(tables.rows_to_objects(header, rows))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plot_stem(args):
    out = args.out
    if not out:
        raise ValueError("--plot requires --out")
    stem = out.rsplit(".", 1)[0] if "." in out.rsplit("/", 1)[-1] else out
    return stem


def cmd_potential(args, opts) -> int:
    lo, hi, npts = opts["grid"]
    r = np.linspace(lo, hi, npts)
    family = opts["family"]
    if family == "first":
        v = _first_family_potential(opts, r)
    elif family == "pct":
        _require(opts, ["alpha", "a"], "family=pct")
        p = FamilyParams(alpha=opts["alpha"], a=opts["a"], b=opts["b"] or 0.0,
                         c=opts["c"] or 0.0, epsilon=opts["epsilon"],
                         l=opts["l"], lam=opts["lam"], constants=_constants(opts))
        v = exp_map_potential(p, r)
    else:
        _require(opts, ["alpha", "a", "b", "gamma"], "family=second")
        sp = SecondClassParams(alpha=opts["alpha"], beta=opts["beta"],
                               delta=opts["delta"], gamma=opts["gamma"],
                               a=opts["a"], b=opts["b"], l=opts["l"],
                               lam=opts["lam"], constants=_constants(opts))
        v = second_potential(derived_coeffs(sp), sp, r)
    _emit_table(args, opts, ["r", "V"], list(zip(r.tolist(), np.asarray(v).tolist())))
    return 0


def _first_family_potential(opts, r):
    cst = _constants(opts)
    l, n, lam = opts["l"], opts["n"], opts["lam"]
    cls = classify_alpha(opts["alpha"])
    if cls is AlphaClass.OSCILLATOR:
        p = oscillator_params(l, opts["omega"], cst, lam)
        p = p.with_epsilon(epsilon_n(p, n, -1))
        cs = couplings(p)
        return potential_eval(cs, -cs.g2, r)
    if cls is AlphaClass.COULOMB:
        sigma = -cst.m * cst.e2_over_4pieps0 * lam / (cst.hbar ** 2 * (n + l + 1))
        p = coulomb_params(l, sigma, cst, lam)
        p = p.with_epsilon(epsilon_n(p, n, -1))
        cs = couplings(p)
        return potential_eval(cs, -cs.g1, r)
    _require(opts, ["a", "b", "c"], "a generic alpha")
    p = FamilyParams(alpha=opts["alpha"], a=opts["a"], b=opts["b"], c=opts["c"],
                     epsilon=opts["epsilon"], l=l, lam=lam, constants=cst)
    return potential_eval(couplings(p), opts["energy"], r)


def cmd_spectrum(args, opts) -> int:
    case = opts["case"]
    grid_spec = opts["grid"]
    if grid_spec is None:
        grid_spec = (1e-3, 60.0, 6000) if case == "coulomb" else (1e-3, 20.0, 4000)
    grid = RadialGrid(*grid_spec)
    cst = _constants(opts)
    n_max, l_max = opts["n_max"], opts["l_max"]
    rows = []
    if case == "numeric":
        _require(opts, ["alpha"], "case=numeric")
        e1 = 2.0 * (opts["alpha"] - 1.0)
        e2 = opts["alpha"] - 2.0
        g1, g2, g3 = opts["g1"], opts["g2"], opts["g3"]

        def V(x):
            return g1 * x ** e1 + g2 * x ** e2 + g3 * x ** -2.0

        for l in range(l_max + 1):
            pairs = fd_spectrum(V, l, grid, n_max + 1)
            rows += [(n, l, None, pairs[n].E, None) for n in range(n_max + 1)]
    else:
        if case == "coulomb":
            ana = lambda n, l: energy_coulomb(n, l, cst).E
            V = lambda x: -cst.e2_over_4pieps0 / x
        else:
            ana = lambda n, l: energy_oscillator(n, l, opts["omega"], cst).E
            V = lambda x: 0.5 * cst.m * opts["omega"] ** 2 * x ** 2
        numeric = {}
        if opts["verify"]:
            for l in range(l_max + 1):
                pairs = fd_spectrum(V, l, grid, n_max + 1)
                numeric[l] = [ep.E for ep in pairs]
        for l in range(l_max + 1):
            for n in range(n_max + 1):
                ea = ana(n, l)
                en = numeric[l][n] if l in numeric else None
                rows.append((n, l, ea, en, None if en is None else abs(en - ea)))
    _emit_table(args, opts, ["n", "l", "E_analytic", "E_numeric", "abs_diff"], rows)
    if getattr(args, "plot", False):
        from .plots import spectrum_figure
        spectrum_figure(rows, _plot_stem(args) + "_levels.png")
    return 0


def cmd_verify(args, opts) -> int:
    report, _timings = build_report(seed=opts["seed"], only=opts["only"])
    text = tables.render_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "plot", False):
        from .plots import verify_figure
        verify_figure(report, _plot_stem(args) + "_checks.png")
    return 0 if report["all_passed"] else 4


def cmd_pct(args, opts) -> int:
    _require(opts, ["alpha", "a"], "the pct command")
    p = FamilyParams(alpha=opts["alpha"], a=opts["a"], b=opts["b"], c=opts["c"],
                     epsilon=opts["epsilon"], l=opts["l"], lam=opts["lam"],
                     constants=_constants(opts))
    lo, hi, npts = opts["grid"]
    rho = np.linspace(lo, hi, npts)
    v = exp_map_potential(p, rho)
    if opts["format"] == "csv":
        _emit_table(args, opts, ["rho", "V"], list(zip(rho.tolist(), v.tolist())))
        return 0
    morse = None
    if abs(p.alpha + 1.0) <= 1e-12:
        m2, m1 = morse_view(p)
        morse = {"e2_coeff": m2, "e1_coeff": m1}
    payload = {
        "energy": pct_energy(p),
        "morse": morse,
        "table": [{"rho": x, "V": y} for x, y in zip(rho.tolist(), v.tolist())],
    }
    text = tables.render_json(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_second_class(args, opts) -> int:
    _require(opts, ["alpha", "a", "b", "gamma"], "the second-class command")
    sp = SecondClassParams(alpha=opts["alpha"], beta=opts["beta"], delta=opts["delta"],
                           gamma=opts["gamma"], a=opts["a"], b=opts["b"],
                           l=opts["l"], lam=opts["lam"])
    dc = derived_coeffs(sp)
    s_plus, s_minus = eta_bar_exponents(sp)
    names = ["A1", "A2", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D2", "D3"]
    rows = [(name, getattr(dc, name)) for name in names]
    rows += [("s_plus", s_plus), ("s_minus", s_minus)]
    if opts["format"] == "csv":
        _emit_table(args, opts, ["name", "value"], rows)
    else:
        payload = {name: value for name, value in rows}
        text = tables.render_json(payload)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 0


def cmd_classify(args, opts) -> int:
    lo, hi, step = opts["alpha_min"], opts["alpha_max"], opts["alpha_step"]
    if step <= 0:
        raise ValueError("config key 'alpha_step': must be positive")
    count = int(round((hi - lo) / step))
    rows = []
    for k in range(count + 1):
        alpha = lo + k * step
        if alpha > hi + 1e-12:
            break
        rows.append((alpha, classify_alpha(alpha).value))
    _emit_table(args, opts, ["alpha", "class"], rows)
    if getattr(args, "plot", False):
        from .plots import classify_figure
        classify_figure(rows, _plot_stem(args) + "_classes.png")
    return 0


_RUNNERS = {
    "potential": cmd_potential,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "pct": cmd_pct,
    "second-class": cmd_second_class,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = _merge(args, _SPECS[args.command])
        if getattr(args, "plot", False) and not args.out:
            raise ValueError("--plot requires --out")
        return _RUNNERS[args.command](args, opts)
    except OracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (QbError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
