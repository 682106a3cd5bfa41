"""Command-line front end.

    clifwave analyze field.cwf --out coeffs.cwc
    clifwave synthesize coeffs.cwc --out back.cwf --reference field.cwf
    clifwave admissibility --n 3
    clifwave verify plancherel --trials 20
    clifwave export-csv coeffs.cwc --slice 0,0 --out slice.csv

Settings come from an optional key=value file (``--config``); command-line
flags override it. Exit status is 0 on success, 1 when a verified property
fails and 2 for bad input.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from dataclasses import dataclass, fields

import numpy as np

from .algebra import Multivector, parse_blade
from .analysis import cft_uncertainty, wavelet_uncertainty
from .cft import plancherel_lhs_rhs
from .cwt import (analyze_direct, analyze_spectral, inner_product_relation, relative_error,
                  reproduce, synthesize)
from .errors import ClifwaveError, FormatError
from .field import GridSpec, MultivectorField, random_bandlimited_field
from .io import read_field, read_volume, slice_csv, write_field, write_volume
from .simgroup import GroupGrid, parse_key_values
from .wavelets import GaborParams, gabor_wavelet

SUITES = ("plancherel", "covariance", "norm-relation", "kernel", "uncertainty")


@dataclass
class RunConfig:
    command: str = ""
    input: str | None = None
    out: str | None = None
    reference: str | None = None
    suite: str | None = None
    n: int = 2
    grid: int = 32
    half_width: float = 8.0
    scales: int = 16
    angles: int | None = None
    a_min: float | None = None
    a_max: float | None = None
    sigma: tuple | None = None
    omega0: tuple | None = None
    amplitude: str | None = None
    method: str = "spectral"
    seed: int = 0
    trials: int = 5
    threads: int | None = None
    demo: bool = False
    slice: tuple = (0, 0)
    blades: bool = False

    def grid_spec(self) -> GridSpec:
        return GridSpec(self.n, self.grid, self.half_width)

    def group_grid(self, grid: GridSpec | None = None) -> GroupGrid:
        return GroupGrid.build(grid or self.grid_spec(), self.scales, self.angles,
                               self.a_min, self.a_max)

    def gabor(self) -> GaborParams:
        base = GaborParams.default(self.n)
        sigma = self.sigma or base.sigma
        omega0 = self.omega0 or base.omega0
        amp = parse_multivector(self.amplitude, self.n) if self.amplitude else base.amplitude
        return GaborParams(sigma, omega0, amp)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_multivector(text: str, dim: int) -> Multivector:
    """Parse sums like ``1 + 0.5*e1 - e12`` into a multivector."""
    out = Multivector(dim)
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse multivector {text!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        parts = [p.strip() for p in m.group(2).split("*")]
        coef, mask = sign, 0
        for p in parts:
            if p.startswith("e"):
                mask = parse_blade(p, dim)
            else:
                coef *= float(p)
        out = out + Multivector.blade(dim, mask, coef)
        pos = m.end()
    return out


def _floats(text) -> tuple:
    return tuple(float(v) for v in str(text).replace(",", " ").split())


_CONVERT = {
    "n": int, "grid": int, "half_width": float, "scales": int, "n_scales": int,
    "angles": int, "n_angles": int, "a_min": float, "a_max": float, "seed": int,
    "trials": int, "threads": int, "sigma": _floats, "omega0": _floats,
    "amplitude": str, "method": str,
}
_ALIASES = {"n_scales": "scales", "n_angles": "angles"}


def load_config(path) -> dict:
    with open(path) as fh:
        raw = parse_key_values(fh.read())
    out = {}
    for k, v in raw.items():
        if k not in _CONVERT:
            raise ValueError(f"unknown config key {k!r}")
        out[_ALIASES.get(k, k)] = _CONVERT[k](v)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--n", type=int, choices=(2, 3))
    common.add_argument("--grid", type=int, help="points per axis (power of two)")
    common.add_argument("--half-width", type=float, help="domain is [-L, L)^n")
    common.add_argument("--scales", type=int)
    common.add_argument("--angles", type=int, help="angles (n=2) or nodes per Euler axis (n=3)")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--out")

    p = argparse.ArgumentParser(prog="clifwave", description="Clifford-algebra wavelet transforms")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="field (CWF1) -> coefficients (CWC1)")
    a.add_argument("input", nargs="?")
    a.add_argument("--demo", action="store_true", help="analyze a seeded demo field")
    a.add_argument("--method", choices=("spectral", "direct"))
    s = sub.add_parser("synthesize", parents=[common], help="coefficients (CWC1) -> field (CWF1)")
    s.add_argument("input")
    s.add_argument("--reference", help="CWF1 field to report the reconstruction error against")
    sub.add_parser("admissibility", parents=[common], help="print C_psi and its inverse")
    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--trials", type=int)
    e = sub.add_parser("export-csv", parents=[common], help="|T f| of one (scale, rotation) slice")
    e.add_argument("input")
    e.add_argument("--slice", default="0,0", help="scale,rotation indices")
    e.add_argument("--blades", action="store_true", help="add one column per blade")
    return p


def resolve(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(command=args.command)
    if args.config:
        for k, v in load_config(args.config).items():
            setattr(cfg, k, v)
    if os.environ.get("CLIFWAVE_THREADS"):
        cfg.threads = cfg.threads or int(os.environ["CLIFWAVE_THREADS"])
    for f in fields(RunConfig):
        key = f.name
        val = getattr(args, key, None)
        if key == "command" or val is None or val is False:
            continue
        setattr(cfg, key, val)
    if isinstance(cfg.slice, str):
        try:
            cfg.slice = tuple(int(v) for v in cfg.slice.split(","))
        except ValueError:
            raise ValueError(f"--slice expects two integers, got {cfg.slice!r}") from None
    return cfg


def _demo_field(cfg: RunConfig) -> MultivectorField:
    g = cfg.grid_spec()
    return random_bandlimited_field(g, np.random.default_rng(cfg.seed), center=1.5,
                                    bandwidth=0.5, envelope=g.L / 4)


def cmd_analyze(cfg: RunConfig) -> int:
    if cfg.demo:
        f = _demo_field(cfg)
    elif cfg.input:
        f = read_field(cfg.input)
        cfg.n, cfg.grid, cfg.half_width = f.grid.dim, f.grid.N, f.grid.L
    else:
        raise ValueError("analyze needs an input field or --demo")
    if type(f) is not MultivectorField:
        raise FormatError("analyze expects a spatial field, got a spectrum")
    cfg.n = f.dim
    psi = gabor_wavelet(cfg.gabor())
    gg = cfg.group_grid(f.grid)
    run = analyze_direct if cfg.method == "direct" else analyze_spectral
    t0 = time.perf_counter()
    w = run(f, psi, gg, threads=cfg.threads)
    dt = time.perf_counter() - t0
    mods = np.sqrt(np.sum(w.data ** 2, axis=-1))
    print(f"analyzed {gg!r} with {psi.name} ({cfg.method}) in {dt:.3f} s")
    print(f"max |T f| = {mods.max():.6g}")
    if cfg.out:
        write_volume(cfg.out, w)
        print(f"wrote {cfg.out}")
    return 0


def cmd_synthesize(cfg: RunConfig) -> int:
    w = read_volume(cfg.input)
    cfg.n = w.grid.dim
    psi = gabor_wavelet(cfg.gabor())
    t0 = time.perf_counter()
    f = synthesize(w, psi, threads=cfg.threads)
    print(f"synthesized {w.group_grid!r} in {time.perf_counter() - t0:.3f} s")
    if cfg.reference:
        ref = read_field(cfg.reference)
        print(f"relative L2 reconstruction error = {relative_error(f, ref):.6g}")
    if cfg.out:
        write_field(cfg.out, f)
        print(f"wrote {cfg.out}")
    return 0


def cmd_admissibility(cfg: RunConfig) -> int:
    psi = gabor_wavelet(cfg.gabor())
    print(f"{psi.name}, parity {psi.parity}")
    print(f"C_psi     = {psi.admissibility!r}")
    print(f"C_psi^-1  = {psi.admissibility_inverse!r}")
    return 0


def _report(name, ok, detail, failures, seed=None):
    tag = "PASS" if ok else "FAIL"
    where = f" (seed {seed})" if seed is not None else ""
    print(f"{tag} {name}{where}: {detail}")
    if not ok:
        failures.append((name, seed))


def cmd_verify(cfg: RunConfig) -> int:
    g = cfg.grid_spec()
    failures = []
    seeds = range(cfg.seed, cfg.seed + cfg.trials)
    if cfg.suite == "plancherel":
        for s in seeds:
            f = random_bandlimited_field(g, np.random.default_rng(s), center=1.0)
            h = random_bandlimited_field(g, np.random.default_rng(s + 10_000), center=1.0)
            lhs, rhs = plancherel_lhs_rhs(f, h)
            err = (lhs - rhs).norm() / max(lhs.norm(), 1e-300)
            _report("plancherel", err < 1e-8, f"relative error {err:.2e}", failures, s)
    elif cfg.suite == "covariance":
        psi = gabor_wavelet(cfg.gabor())
        gg = GroupGrid.build(g, 2, 4 if g.dim == 2 else 2, 2 * g.dx, g.L / 2)
        for s in seeds:
            f = random_bandlimited_field(g, np.random.default_rng(s), center=1.0, envelope=g.L / 4)
            shift = tuple(int(v) for v in np.random.default_rng(s).integers(-g.N // 4, g.N // 4, g.dim))
            t = analyze_spectral(f, psi, gg).data
            moved = MultivectorField(g, np.roll(f.data, shift, axis=tuple(range(g.dim))))
            t2 = analyze_spectral(moved, psi, gg).data
            ref = np.roll(t, shift, axis=tuple(range(2, 2 + g.dim)))
            err = np.abs(t2 - ref).max() / np.abs(ref).max()
            _report("translation", err < 1e-12, f"grid shift {shift}, max deviation {err:.2e}", failures, s)
            if g.dim == 2:
                err = _quarter_turn_error(f, psi, gg)
                _report("rotation", err < 1e-12, f"quarter turn, max deviation {err:.2e}", failures, s)
    elif cfg.suite == "norm-relation":
        psi = gabor_wavelet(cfg.gabor())
        gg = cfg.group_grid(g)
        for s in seeds:
            f = random_bandlimited_field(g, np.random.default_rng(s), center=1.5, bandwidth=0.5)
            lhs, rhs = inner_product_relation(f, f, psi, gg, cfg.threads)
            err = abs(lhs.scalar_part - rhs.scalar_part) / abs(rhs.scalar_part)
            _report("norm-relation", err < 0.02, f"relative error {err:.2e}", failures, s)
    elif cfg.suite == "kernel":
        for s in seeds:
            err = reproducing_error(s)
            _report("reproducing-kernel", err < 0.03, f"relative error {err:.2e}", failures, s)
    elif cfg.suite == "uncertainty":
        psi = gabor_wavelet(cfg.gabor())
        gg = cfg.group_grid(g)
        for s in seeds:
            f = random_bandlimited_field(g, np.random.default_rng(s), center=1.5, bandwidth=0.5,
                                         envelope=g.L / 4)
            r = cft_uncertainty(f)
            _report("cft-uncertainty", r.satisfied, f"ratio {r.ratio:.4g}", failures, s)
            r = wavelet_uncertainty(f, psi, gg)
            _report("wavelet-uncertainty", r.satisfied, f"ratio {r.ratio:.4g}", failures, s)
    if failures:
        print(f"{len(failures)} failure(s): " + ", ".join(f"{n} seed {s}" for n, s in failures))
        return 1
    print("all properties hold")
    return 0


def _quarter_turn_error(f: MultivectorField, psi, gg: GroupGrid) -> float:
    """Compare [T f(r .)](a, theta, b) with T f(a, theta + pi/2, r b), r a quarter turn."""
    M = gg.n_rotations
    if M % 4:
        raise ValueError("quarter-turn check needs the angle count to be a multiple of 4")
    rotated = MultivectorField(f.grid, quarter_turn(f.data, (0, 1)))
    t = analyze_direct(f, psi, gg).data
    t2 = analyze_direct(rotated, psi, gg).data
    ref = quarter_turn(np.roll(t, -(M // 4), axis=1), (2, 3))
    return float(np.abs(t2 - ref).max() / np.abs(ref).max())


def quarter_turn(data: np.ndarray, axes=(0, 1)) -> np.ndarray:
    """Samples of x -> u(r x) from samples of u, r(x1, x2) = (-x2, x1), on a periodic grid."""
    a1, a2 = axes
    N = data.shape[a1]
    # node j sits at -L + j dx and its negative at (N - j) mod N
    neg = (N - np.arange(N)) % N
    return np.swapaxes(np.take(data, neg, axis=a1), a1, a2)


def reproducing_error(seed: int, points: int = 24) -> float:
    """Relative error of the reproducing identity on a coarse grid.

    16^2 signal grid, 4 scales and 4 angles, and a Gabor wavelet with a small
    carrier, which is nearly isotropic so that four angles integrate it well.
    """
    g = GridSpec(2, 16, 8.0)
    psi = gabor_wavelet(GaborParams((1.0, 1.0), (0.1, 0.0), Multivector.scalar(2)))
    gg = GroupGrid.build(g, 4, 4, 0.15, 4.2)
    rng = np.random.default_rng(seed)
    f = random_bandlimited_field(g, rng, center=1.0, bandwidth=0.3)
    w = analyze_spectral(f, psi, gg)
    flat = w.data.reshape(-1, g.blades)
    pick = rng.choice(flat.shape[0], size=points, replace=False)
    shape = (gg.n_scales, gg.n_rotations) + g.shape
    targets = [gg.element(i, j, idx) for i, j, *idx in
               (np.unravel_index(p, shape) for p in pick)]
    approx = reproduce(w, psi, targets)
    return float(np.linalg.norm(approx - flat[pick]) / np.linalg.norm(flat[pick]))


def cmd_export_csv(cfg: RunConfig) -> int:
    w = read_volume(cfg.input)
    i, j = cfg.slice
    text = slice_csv(w, i, j, cfg.blades)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"wrote {cfg.out} ({text.count(chr(10)) - 1} rows)")
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "synthesize": cmd_synthesize,
    "admissibility": cmd_admissibility,
    "verify": cmd_verify,
    "export-csv": cmd_export_csv,
}


def main(argv=None) -> int:
    try:
        cfg = resolve(argv)
        return COMMANDS[cfg.command](cfg)
    except (FormatError, ValueError, OSError, IndexError, ClifwaveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
