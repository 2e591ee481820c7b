"""Command-line harness: deterministic experiment runs and spectrum reports.

Subcommands:

  run       solve a preset over an N-list; write convergence tables,
            profile or transient dumps, a spectrum report, and a manifest
  spectrum  per-mode eigenvalue report with expansion-fit summary
  presets   list the built-in experiment definitions

Every float is emitted with 17 significant digits, so identical
configurations produce byte-identical CSV files. The manifest echoes every
parameter that affects the numbers and can itself be fed back as --config.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    asymptotic_error,
    asymptotic_error_system,
    convergence_study,
    run_experiment,
    transient_profile,
)
from .basis import make_grid
from .presets import PRESET_NAMES, make_preset
from .solver import FluxConfigError, FluxSpec
from .symbol import (
    asymptotic_constant,
    dissipation_factor,
    pade_check,
    spectral_gap,
    spectrum_sweep,
    verify_lambda0_expansion,
)


class ConfigError(ValueError):
    """Invalid configuration; maps to exit code 2."""


def fmt(x) -> str:
    """17-significant-digit float formatting for reproducible CSVs."""
    return f"{float(x):.17g}"


# --------------------------------------------------------------------------
# configuration handling


RUN_KEYS = (
    "preset", "k", "N", "t_final", "cfl", "init", "level", "flux", "M",
    "a", "rho0", "u0", "c", "out", "profile",
)


def parse_config_file(path: str) -> dict:
    """Flat key=value file; '#' starts a comment; later keys win."""
    values: dict = {}
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"{path}: config file not found")
    for lineno, raw in enumerate(p.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in RUN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = val
    return values


def _parse_n_list(text: str) -> list[int]:
    try:
        return [int(s) for s in str(text).split(",") if s.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad N list {text!r}: {exc}") from exc


class RunConfig:
    def __init__(self, **kw):
        self.preset = str(kw.get("preset", "ex1"))
        self.k = int(kw.get("k", 1))
        self.Ns = _parse_n_list(kw.get("N", "40,80"))
        self.t_final = float(kw.get("t_final", 1.0))
        self.cfl = float(kw.get("cfl", 0.1))
        self.init = str(kw.get("init", "l2"))
        self.level = int(kw.get("level", 0))
        self.flux = kw.get("flux")  # None -> preset default
        self.M = float(kw.get("M", 6.0))
        self.a = float(kw.get("a", 1.0))
        self.rho0 = float(kw.get("rho0", 1.0))
        self.u0 = float(kw.get("u0", 1.0))
        self.c = float(kw.get("c", 5.0))
        self.out = Path(kw.get("out", "out"))
        self.profile = _as_bool(kw.get("profile", False))
        self.validate()

    def validate(self):
        if self.preset not in PRESET_NAMES:
            raise ConfigError(f"unknown preset {self.preset!r}")
        if not 0 <= self.k <= 4:
            raise ConfigError(f"k must be in [0, 4], got {self.k}")
        for N in self.Ns:
            if N < 4 * (self.k + 1):
                raise ConfigError(f"N={N} too small: need N >= 4(k+1) = {4 * (self.k + 1)}")
            if self.preset == "ex2" and N % 2 != 0:
                # keeps the data's kinks on cell interfaces, away from all
                # quadrature nodes
                raise ConfigError(f"preset ex2 needs even N, got {N}")
        if self.t_final < 0:
            raise ConfigError("t_final must be nonnegative")
        if self.cfl <= 0:
            raise ConfigError("cfl must be positive")
        if self.init not in ("l2", "gauss_radau", "special"):
            raise ConfigError(f"init must be l2|gauss_radau|special, got {self.init!r}")
        if self.init == "special" and not 0 <= self.level <= self.k:
            raise ConfigError(f"special init needs 0 <= level <= k, got {self.level}")
        if self.flux is not None and self.flux not in ("upwind", "lf", "lax_friedrichs"):
            raise ConfigError(f"flux must be upwind|lf, got {self.flux!r}")
        if self.M <= 0:
            raise ConfigError("M must be positive")

    @property
    def init_kind(self):
        return ("special", self.level) if self.init == "special" else self.init

    def manifest_items(self):
        return [
            ("preset", self.preset), ("k", self.k), ("N", ",".join(map(str, self.Ns))),
            ("t_final", fmt(self.t_final)), ("cfl", fmt(self.cfl)), ("init", self.init),
            ("level", self.level), ("flux", self.flux or "upwind"), ("M", fmt(self.M)),
            ("a", fmt(self.a)), ("rho0", fmt(self.rho0)), ("u0", fmt(self.u0)),
            ("c", fmt(self.c)), ("out", str(self.out)), ("profile", int(self.profile)),
        ]


def _as_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    return str(v).strip().lower() in ("1", "true", "yes", "on")


def _build_problem(cfg: RunConfig):
    problem = make_preset(cfg.preset, cfg.k, rho0=cfg.rho0, u0=cfg.u0, c=cfg.c,
                          M=cfg.M, a=cfg.a)
    if cfg.flux in ("lf", "lax_friedrichs"):
        problem.flux = FluxSpec("lax_friedrichs", M=cfg.M)
    elif cfg.flux == "upwind":
        if problem.system.n_components > 1:
            raise ConfigError("upwind flux is scalar-only; ex4 needs lax_friedrichs")
        problem.flux = FluxSpec("upwind")
    problem.t_final = cfg.t_final
    return problem


# --------------------------------------------------------------------------
# CSV writers


def write_convergence_csv(path: Path, table):
    lines = ["N,l1,order1,l2,order2,linf,orderinf,mode,component"]
    for r in table.rows:
        lines.append(
            f"{r.n_cells},{fmt(r.l1)},{fmt(r.order_l1)},{fmt(r.l2)},{fmt(r.order_l2)},"
            f"{fmt(r.linf)},{fmt(r.order_linf)},{r.mode},{r.component}"
        )
    path.write_text("\n".join(lines) + "\n")


def write_profile_csv(path: Path, xs, measured, predicted, t, N, k):
    lines = ["x_j,measured_scaled_error,predicted_scaled_error,t,N,k"]
    for x, m, p in zip(xs, measured, predicted):
        lines.append(f"{fmt(x)},{fmt(m)},{fmt(p)},{fmt(t)},{N},{k}")
    path.write_text("\n".join(lines) + "\n")


def write_transient_csv(path: Path, series_list):
    lines = ["t,scaled_linf,init_kind"]
    for s in series_list:
        for t, v in zip(s.times, s.scaled_linf):
            lines.append(f"{fmt(t)},{fmt(v)},{s.init_kind}")
    path.write_text("\n".join(lines) + "\n")


def write_spectrum_csv(path: Path, rows, k: int):
    heads = ["m", "mh"]
    for n in range(k + 1):
        heads += [f"re_lambda{n}", f"im_lambda{n}"]
    heads.append("physical_index")
    lines = [",".join(heads)]
    for r in rows:
        cells = [str(r.m), fmt(r.theta)]
        for lam in r.values:
            cells += [fmt(lam.real), fmt(lam.imag)]
        cells.append(str(r.physical_index))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def write_manifest(path: Path, cfg: RunConfig, wall_time: float):
    lines = [f"# dgadvect {__version__} run manifest",
             f"# wall_time_s = {wall_time:.3f}"]
    lines += [f"{k} = {v}" for k, v in cfg.manifest_items()]
    path.write_text("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# subcommands


#: initialization pairs compared in the transient figure, per degree
TRANSIENT_COMPARISONS = {
    0: ["l2"],
    1: ["gauss_radau", "l2"],
    2: ["gauss_radau", "l2"],
    3: ["special:1", "gauss_radau"],
    4: ["special:1", "gauss_radau"],
}


def cmd_run(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    problem = _build_problem(cfg)
    cfg.flux = problem.flux.kind  # echo the resolved flux into the manifest
    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)

    decs = {N: run_experiment(problem, N, cfg.k, cfg.init_kind, cfg.cfl) for N in cfg.Ns}
    table = convergence_study(problem, cfg.Ns, cfg.k, cfg.init_kind, cfg.cfl,
                              decompositions=decs)
    write_convergence_csv(out / f"convergence_{cfg.preset}_k{cfg.k}.csv", table)

    if cfg.profile:
        if problem.profile_kind == "transient":
            tgrid = np.linspace(cfg.t_final / 80.0, cfg.t_final, 80)
            for N in cfg.Ns:
                series = transient_profile(problem, N, cfg.k,
                                           TRANSIENT_COMPARISONS[cfg.k], tgrid, cfg.cfl)
                write_transient_csv(out / f"transient_{cfg.preset}_k{cfg.k}_N{N}.csv", series)
        else:
            for N in cfg.Ns:
                dec = decs[N]
                grid = make_grid(N)
                hpow = grid.h ** (2 * cfg.k + 1)
                if problem.system.n_components == 1:
                    pred = asymptotic_error(
                        problem.fields[0], cfg.t_final, cfg.k, init_kind=cfg.init_kind,
                        a=float(problem.system.speeds[0]), flux=problem.flux,
                        M=problem.flux.M, grid=grid,
                    )
                else:
                    pred = asymptotic_error_system(
                        problem.fields, problem.system, cfg.t_final, cfg.k,
                        problem.flux.M, grid, init_kind=cfg.init_kind,
                    )
                for comp in range(problem.system.n_components):
                    write_profile_csv(
                        out / f"profile_{cfg.preset}_k{cfg.k}_N{N}_c{comp}.csv",
                        grid.cell_centers,
                        dec.e_modes[:, comp, 0] / hpow,
                        pred.e0_scaled[comp],
                        cfg.t_final, N, cfg.k,
                    )

    flux = problem.flux
    a_for_spectrum = float(problem.system.speeds[0])
    rows = spectrum_sweep(max(cfg.Ns), cfg.k, flux, a_for_spectrum)
    write_spectrum_csv(out / f"spectrum_{cfg.preset}_k{cfg.k}.csv", rows, cfg.k)

    write_manifest(out / "manifest.txt", cfg, time.perf_counter() - t0)
    for N in cfg.Ns:
        r0 = [r for r in table.rows if r.mode == 0 and r.n_cells == N and r.component == 0][0]
        print(f"{cfg.preset} k={cfg.k} N={N}: |e0| l1={r0.l1:.3e} l2={r0.l2:.3e} "
              f"linf={r0.linf:.3e} order_inf={r0.order_linf:.2f}")
    return 0


def cmd_spectrum(args) -> int:
    k = int(args.k)
    if not 1 <= k <= 4:
        raise ConfigError("spectrum needs k in [1, 4]")
    kind = "lax_friedrichs" if args.flux in ("lf", "lax_friedrichs") else "upwind"
    M = float(args.M)
    a = float(args.a)
    flux = FluxSpec(kind, M=M) if kind == "lax_friedrichs" else FluxSpec("upwind")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = spectrum_sweep(int(args.N), k, flux, a)
    write_spectrum_csv(out / f"spectrum_k{k}_{kind}.csv", rows, k)

    gap = spectral_gap(k, flux, M=M, a=a)
    fit = verify_lambda0_expansion(k, flux, a=a, M=M)
    chi = 1.0 if kind == "upwind" else dissipation_factor(k, M, a)
    pade = {mh: pade_check(k, mh) for mh in (0.1, 0.3)}

    lines = [
        f"degree k = {k}, flux = {kind}, a = {a:g}" + (f", M = {M:g}" if kind != "upwind" else ""),
        f"spectral gap alpha = {gap.alpha:.12g}",
        f"sweep max nonphysical Re(lambda) = {gap.sweep_max_real:.6g}",
        f"expansion fit: order = {fit.order:.6g} (expected {2 * k + 2}), "
        f"constant = {fit.constant:.8g} (expected {abs(a) * chi * asymptotic_constant(k):.8g}, chi = {chi:g})",
        f"pade residuals: " + ", ".join(f"mh={mh:g}: {r:.3e}" for mh, r in pade.items()),
    ]
    if kind == "lax_friedrichs" and M == abs(a):
        lines.append("note: M = |a|, the Lax-Friedrichs symbol coincides with upwind")
    text = "\n".join(lines)
    (out / f"spectrum_k{k}_{kind}_summary.txt").write_text(text + "\n")
    print(text)
    return 0


def cmd_presets() -> int:
    for name in PRESET_NAMES:
        p = make_preset(name, 1)
        kind = p.flux.kind + (f"(M={p.flux.M:g})" if p.flux.M else "")
        print(f"{name}: {p.description}")
        print(f"      flux={kind}, t_final={p.t_final:g}, components={p.system.n_components}, "
              f"headline figure: {p.profile_kind}")
    return 0


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dgadvect",
                                 description="DG advection experiments and spectra")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a preset experiment")
    run.add_argument("--config", help="key=value config file; flags override")
    run.add_argument("--preset", choices=PRESET_NAMES)
    run.add_argument("--k", type=int)
    run.add_argument("--N", help="comma-separated cell counts, e.g. 40,80,160")
    run.add_argument("--t-final", dest="t_final", type=float)
    run.add_argument("--cfl", type=float)
    run.add_argument("--init", choices=("l2", "gauss_radau", "special"))
    run.add_argument("--level", type=int, help="level l for --init special")
    run.add_argument("--flux", choices=("upwind", "lf"))
    run.add_argument("--M", type=float)
    run.add_argument("--a", type=float)
    run.add_argument("--rho0", type=float)
    run.add_argument("--u0", type=float)
    run.add_argument("--c", type=float)
    run.add_argument("--out")
    run.add_argument("--profile", action="store_true", default=None,
                     help="also dump error profiles (or transient series for ex3)")

    spec = sub.add_parser("spectrum", help="per-mode eigenvalue report")
    spec.add_argument("--k", type=int, required=True)
    spec.add_argument("--flux", choices=("upwind", "lf"), default="upwind")
    spec.add_argument("--M", type=float, default=1.0)
    spec.add_argument("--a", type=float, default=1.0)
    spec.add_argument("--N", type=int, default=64)
    spec.add_argument("--out", default="out")

    sub.add_parser("presets", help="list built-in experiment definitions")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "presets":
            return cmd_presets()
        if args.command == "spectrum":
            return cmd_spectrum(args)
        values = parse_config_file(args.config) if args.config else {}
        for key in RUN_KEYS:
            flag = getattr(args, key, None)
            if flag is not None:
                values[key] = flag
        return cmd_run(RunConfig(**values))
    except (ConfigError, FluxConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
