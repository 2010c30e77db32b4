"""Command-line front end.

Subcommands: ``phantom``, ``mask``, ``measure``, ``reconstruct``, ``sweep``.
Exit status is 0 on success, 2 for usage/config errors, 3 when a
reconstruction diverges and 4 for I/O failures.
"""
import argparse
import logging
import os
import sys

from . import __version__
from .config import ConfigError, RunConfig, SweepConfig
from .fileio import (psnr_profile_svg, read_image, read_observation, write_image, write_mask,
                     write_observation, write_pgm, atomic_write)
from .fourier import measure, radial_mask
from .grid import format_psnr
from .phantom import modified_shepp_logan_spec, rasterize, shepp_logan_spec, unit_disk_spec
from .recon import DivergenceError, iterations_to, reconstruct, trace_to_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_IO = 4

SWEEP_HEADER = "cell,params,terminal_psnr_db,iters_to_48db"
TARGET_DB = 48.0

PHANTOM_SPECS = {
    "modified_shepp_logan": modified_shepp_logan_spec,
    "shepp_logan": shepp_logan_spec,
    "unit_disk": unit_disk_spec,
}

log = logging.getLogger("pocsrecon")


class UsageError(Exception):
    pass


def _out_dir(args, cfg=None):
    path = args.out or (cfg["output.dir"] if cfg is not None else "out")
    os.makedirs(path, exist_ok=True)
    return path


def _load_config(args):
    cfg = RunConfig.load(args.config) if args.config else RunConfig.default()
    if args.out:
        cfg = cfg.replace(output__dir=args.out)
    return cfg


def _phantom(cfg):
    return rasterize(PHANTOM_SPECS[cfg["phantom.kind"]](), cfg["sampling.n"])


def _problem(cfg):
    """Observation plus the PSNR reference (``None`` if unknown)."""
    reference = read_image(cfg["input.reference"]) if cfg["input.reference"] else None
    if cfg["input.observation"]:
        return read_observation(cfg["input.observation"]), reference
    truth = _phantom(cfg)
    obs = measure(truth, radial_mask(cfg["sampling.n"], cfg["sampling.lines"]))
    return obs, truth if reference is None else reference


def cmd_phantom(args):
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    out = _out_dir(args)
    img = rasterize(PHANTOM_SPECS[args.phantom](), args.n)
    write_pgm(os.path.join(out, "phantom.pgm"), img)
    write_image(os.path.join(out, "phantom.fpr"), img)
    print(f"wrote {args.phantom} phantom n={args.n} to {out}")
    return EXIT_OK


def cmd_mask(args):
    cfg = _load_config(args)
    n = args.n if args.n is not None else cfg["sampling.n"]
    lines = args.lines if args.lines is not None else cfg["sampling.lines"]
    if n < 2 or n % 2 or lines < 1:
        raise UsageError("mask needs an even --n >= 2 and --lines >= 1")
    out = _out_dir(args, cfg)
    mask = radial_mask(n, lines)
    write_mask(os.path.join(out, "mask.fpm"), mask)
    # view with DC in the center
    import numpy as np
    write_pgm(os.path.join(out, "mask.pgm"), np.fft.fftshift(mask).astype(float))
    print(f"mask n={n} lines={lines} sampled={int(mask.sum())} ratio={mask.mean():.6f}")
    return EXIT_OK


def cmd_measure(args):
    cfg = _load_config(args)
    if args.print_config:
        sys.stdout.write(cfg.to_text())
        return EXIT_OK
    out = _out_dir(args, cfg)
    truth = _phantom(cfg)
    mask = radial_mask(cfg["sampling.n"], cfg["sampling.lines"])
    obs = measure(truth, mask)
    write_image(os.path.join(out, "phantom.fpr"), truth)
    write_mask(os.path.join(out, "mask.fpm"), mask)
    write_observation(os.path.join(out, "observation.fpo"), obs)
    print(f"observation n={obs.n} sampled={int(mask.sum())} ratio={obs.sampling_ratio:.6f}")
    return EXIT_OK


def run_reconstruction(cfg, out):
    """Measure (or load) and reconstruct per ``cfg``; write the enabled outputs."""
    obs, reference = _problem(cfg)
    result = reconstruct(obs, cfg.recon_config(reference))
    if cfg["output.image"]:
        write_image(os.path.join(out, "recon.fpr"), result.image)
        write_pgm(os.path.join(out, "recon.pgm"), result.image)
    if cfg["output.trace"]:
        atomic_write(os.path.join(out, "trace.csv"), trace_to_csv(result))
    if cfg["output.plot"]:
        title = f"{cfg['filter.kind']}, n={obs.n}, {cfg['sampling.lines']} lines"
        atomic_write(os.path.join(out, "psnr.svg"), psnr_profile_svg(result.trace, title))
    if cfg["output.mask"]:
        write_mask(os.path.join(out, "mask.fpm"), obs.mask)
    if cfg["output.observation"]:
        write_observation(os.path.join(out, "observation.fpo"), obs)
    return result


def cmd_reconstruct(args):
    cfg = _load_config(args)
    if args.print_config:
        sys.stdout.write(cfg.to_text())
        return EXIT_OK
    out = _out_dir(args, cfg)
    result = run_reconstruction(cfg, out)
    hit = iterations_to(result, TARGET_DB)
    print(f"filter={cfg['filter.kind']} iterations={result.iterations_run} "
          f"final_psnr_db={format_psnr(result.final_psnr_db)} "
          f"iters_to_48db={'' if hit is None else hit}")
    return EXIT_OK


def _cell_params(assignment):
    return ";".join(f"{k}={v}" for k, v in assignment.items())


def cmd_sweep(args):
    sweep = SweepConfig.load(args.config)
    base = RunConfig.from_mapping(sweep.base)
    if args.print_config:
        sys.stdout.write(base.to_text())
        for key, values in sweep.axes:
            sys.stdout.write(f"sweep.{key} = {', '.join(values)}\n")
        return EXIT_OK
    out = args.out or base["output.dir"]
    cell_dir = os.path.join(out, "cells")
    os.makedirs(cell_dir, exist_ok=True)
    rows = [SWEEP_HEADER]
    for index, (assignment, raw) in enumerate(sweep.cells()):
        params = _cell_params(assignment)
        try:
            cfg = RunConfig.from_mapping(raw).replace(output__image=False, output__plot=False,
                                                      output__trace=False)
            obs, reference = _problem(cfg)
            result = reconstruct(obs, cfg.recon_config(reference))
            atomic_write(os.path.join(cell_dir, f"cell_{index:04d}_trace.csv"), trace_to_csv(result))
            hit = iterations_to(result, TARGET_DB)
            rows.append(f"{index},{params},{format_psnr(result.final_psnr_db)},{'' if hit is None else hit}")
        except (ConfigError, DivergenceError, ValueError, OSError) as exc:
            reason = str(exc).replace(",", ";").replace("\n", " ")
            rows.append(f"{index},{params},error: {type(exc).__name__}: {reason},")
        print(rows[-1], flush=True)
    atomic_write(os.path.join(out, "sweep_summary.csv"), "\n".join(rows) + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="pocsrecon", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log iteration progress")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phantom", help="rasterize a phantom")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--phantom", choices=sorted(PHANTOM_SPECS), default="modified_shepp_logan")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("mask", help="write a radial sampling mask")
    p.add_argument("--config", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--lines", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_mask)

    for name, func, helptext in (("measure", cmd_measure, "measure the phantom on the radial mask"),
                                 ("reconstruct", cmd_reconstruct, "run alternating projections"),
                                 ("sweep", cmd_sweep, "run a parameter grid")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=(name == "sweep"), default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--print-config", action="store_true", help="print the resolved config and exit")
        p.set_defaults(func=func)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print("invalid configuration:", file=sys.stderr)
        for key, msg in exc.problems:
            print(f"  {key}: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergenceError as exc:
        print(f"reconstruction diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
