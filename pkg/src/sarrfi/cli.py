"""Command line front end.

One executable, one subcommand per pipeline stage:

    sar-rfi simulate  --radar cfg.json --scene scene.json [--interf i.json] --out raw.sarc
    sar-rfi focus     --radar cfg.json --in raw.sarc --out img.sarc [--dump-stage ...]
    sar-rfi predict   --radar cfg.json --interf i.json [--grid img.sarc] --json out.json
    sar-rfi artefact  --closed-form|--rank1 --radar cfg.json --interf i.json --out a.sarc
    sar-rfi mitigate  --in img.sarc --method pca|rpca [...] --out-image c.sarc --out-interf j.sarc
    sar-rfi analyze   --in img.sarc --singvals k out.csv | --stft ... | --support db out.json
    sar-rfi repro     [--seed n] [--out report.json]

All configuration comes from JSON files; logs go to stderr. Exit codes:
0 success, 2 config error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

import numpy as np

from .analysis import measure_support, singular_values, stft
from .artefact import artefact_closed_form, predict_footprint, rank1_estimate
from .container import ContainerError, read_matrix, write_matrix
from .core import (
    Axis,
    ComplexMatrix,
    ConfigError,
    interference_config_from_dict,
    radar_config_from_dict,
)
from .focusing import focus_omegak
from .lowrank import RpcaOptions, blockwise, pca_mitigate, rpca_mitigate
from .repro import _footprint_dict, report_json, run_repro
from .simulate import inject_interference, scene_from_dict, simulate_echo

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _load_json(path):
    with open(path, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from exc


def _write_json(path, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _radar(path):
    return radar_config_from_dict(_load_json(path))


def _interf(path):
    return interference_config_from_dict(_load_json(path))


def _parse_block(text):
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ConfigError(f"--block wants ROWSxCOLS, got {text!r}")
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ConfigError(f"--block wants integers, got {text!r}") from exc
    if rows < 2 or cols < 2:
        raise ConfigError("--block dims must be >= 2")
    return rows, cols


# --- subcommands -------------------------------------------------------------


def _cmd_simulate(args):
    cfg = _radar(args.radar)
    scene = scene_from_dict(_load_json(args.scene))
    raw = simulate_echo(scene, cfg)
    if args.interf:
        icfg = _interf(args.interf)
        raw = inject_interference(raw, cfg, icfg)
    write_matrix(args.out, raw)
    log.info("wrote %s: %dx%d raw samples", args.out, raw.rows, raw.cols)
    return EXIT_OK


_STAGE_NAMES = {
    "wavenumber": "wavenumber",
    "rangedoppler": "range-doppler",
    "range-doppler": "range-doppler",
}


def _cmd_focus(args):
    cfg = _radar(args.radar)
    raw = read_matrix(args.inp)
    wanted = {}
    for stage, path in args.dump_stage or ():
        if stage not in _STAGE_NAMES:
            raise ConfigError(
                f"unknown stage {stage!r}; choices: {sorted(_STAGE_NAMES)}"
            )
        wanted[_STAGE_NAMES[stage]] = path

    def capture(tag, m):
        if tag in wanted:
            write_matrix(wanted[tag], m)
            log.info("dumped %s stage to %s", tag, wanted[tag])

    img = focus_omegak(raw, cfg, capture=capture if wanted else None,
                       workers=args.threads)
    write_matrix(args.out, img)
    log.info("wrote %s: %dx%d image", args.out, img.rows, img.cols)
    return EXIT_OK


class _ConfigGrid:
    """Axis carrier matching the layout focus_omegak gives its output."""

    def __init__(self, cfg):
        self.axis_eta = cfg.eta_axis
        self.axis_tau = cfg.image_tau_axis


def _cmd_predict(args):
    cfg = _radar(args.radar)
    icfg = _interf(args.interf)
    grid = read_matrix(args.grid) if args.grid else _ConfigGrid(cfg)
    fp = predict_footprint(cfg, icfg, grid=grid)
    _write_json(args.json, _footprint_dict(fp))
    log.info("footprint centre eta=%.6g s tau=%.6g s", fp.eta_i, fp.tau_i)
    return EXIT_OK


def _cmd_artefact(args):
    cfg = _radar(args.radar)
    icfg = _interf(args.interf)
    grid = read_matrix(args.grid) if args.grid else None
    if args.closed_form:
        m = artefact_closed_form(cfg, icfg, grid=grid)
    else:
        m = rank1_estimate(cfg, icfg, grid=grid)
    write_matrix(args.out, m)
    log.info("wrote %s: %dx%d artefact model", args.out, m.rows, m.cols)
    return EXIT_OK


def _cmd_mitigate(args):
    y = read_matrix(args.inp)
    if args.method == "pca":
        if args.rank is None:
            raise ConfigError("--method pca requires --rank")
        def fn(m):
            return pca_mitigate(m, args.rank)
    else:
        opts = RpcaOptions(
            mu=args.mu,
            max_iters=args.iters if args.iters is not None else RpcaOptions.max_iters,
            tol=args.tol if args.tol is not None else RpcaOptions.tol,
        )
        def fn(m):
            return rpca_mitigate(m, opts)
    if args.block:
        split = blockwise(y, _parse_block(args.block), fn)
    else:
        split = fn(y)
    write_matrix(args.out_image, split.I)
    write_matrix(args.out_interf, split.J)
    if args.report:
        total = y.energy()
        removed = split.J.energy()
        payload = {
            "method": args.method,
            "rows": y.rows,
            "cols": y.cols,
            "block": list(_parse_block(args.block)) if args.block else None,
            "iters": split.iters,
            "feas": split.feas,
            "converged": split.converged,
            "sigma_head": list(split.sigma[:16]),
            "energy_total": total,
            "energy_removed": removed,
            "energy_residual": split.I.energy(),
            "removed_db": float(10 * np.log10(removed / total)) if removed > 0 else None,
            "tiles": [asdict(t) for t in split.tiles] if split.tiles else None,
        }
        _write_json(args.report, payload)
    log.info("mitigated %s with %s: feas=%.3e iters=%d",
             args.inp, args.method, split.feas, split.iters)
    return EXIT_OK


def _cmd_analyze(args):
    m = read_matrix(args.inp)
    if args.singvals:
        k_max, out = int(args.singvals[0]), args.singvals[1]
        if k_max < 1:
            raise ConfigError("--singvals K must be >= 1")
        s = singular_values(m, k_max=min(k_max, min(m.rows, m.cols)))
        lines = ["k,sigma"]
        lines += [f"{k + 1},{float(v)!r}" for k, v in enumerate(s)]
        with open(out, "w", encoding="utf-8") as f:
            f.write("\n".join(lines) + "\n")
        log.info("wrote %d singular values to %s", len(s), out)
    elif args.stft:
        if not args.out:
            raise ConfigError("--stft requires --out for the spectrogram")
        spec, line = _stft_of_line(m, args.stft, args.line)
        sg = ComplexMatrix(
            data=spec.values.astype(np.complex128),
            axis_eta=Axis(spec.time_start, spec.time_step),
            axis_tau=Axis(spec.freq_start, spec.freq_step),
            domain_tag="range-doppler",
        )
        write_matrix(args.out, sg)
        log.info("wrote %s spectrogram of line %d to %s (dB in the real part)",
                 args.stft, line, args.out)
    else:
        db, out = float(args.support[0]), args.support[1]
        if db <= 0:
            raise ConfigError("--support threshold must be a positive dB drop")
        box = measure_support(m, threshold_db=db)
        payload = asdict(box)
        payload["row_extent"] = box.row_extent
        payload["col_extent"] = box.col_extent
        payload["threshold_db"] = db
        _write_json(out, payload)
        log.info("support box rows %d..%d cols %d..%d",
                 box.row_min, box.row_max, box.col_min, box.col_max)
    return EXIT_OK


def _stft_of_line(m, direction, line):
    """Pick a row (range) or column (azimuth), defaulting to the strongest."""
    power = np.abs(m.data) ** 2
    if direction == "range":
        if line is None:
            line = int(np.argmax(power.sum(axis=1)))
        if not 0 <= line < m.rows:
            raise ConfigError(f"--line {line} outside 0..{m.rows - 1}")
        signal = m.data[line, :]
        rate = 1.0 / m.axis_tau.step
    else:
        if line is None:
            line = int(np.argmax(power.sum(axis=0)))
        if not 0 <= line < m.cols:
            raise ConfigError(f"--line {line} outside 0..{m.cols - 1}")
        signal = m.data[:, line]
        rate = 1.0 / m.axis_eta.step
    return stft(signal, rate), line


def _cmd_repro(args):
    squints = tuple(float(s) for s in args.squints.split(",")) if args.squints \
        else (0.6, 0.0, -0.6)
    report = run_repro(
        seed=args.seed, squints=squints, n_a=args.na, n_r=args.nr,
        k_max=args.kmax, workers=args.threads, save_dir=args.save_images,
    )
    text = report_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        log.info("wrote report to %s", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def _parser():
    p = argparse.ArgumentParser(
        prog="sar-rfi",
        description="Simulate, focus, predict and mitigate LFM interference in SAR images.",
    )
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads for the FFT stages")
    p.add_argument("--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="simulate raw echoes, optionally with interference")
    sp.add_argument("--radar", required=True, help="radar config JSON")
    sp.add_argument("--scene", required=True, help="scene JSON (scatterer list)")
    sp.add_argument("--interf", help="interference config JSON")
    sp.add_argument("--out", required=True, help="output raw .sarc")
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("focus", help="focus raw data to a single look complex image")
    sp.add_argument("--radar", required=True)
    sp.add_argument("--in", dest="inp", required=True, help="input raw .sarc")
    sp.add_argument("--out", required=True, help="output image .sarc")
    sp.add_argument("--dump-stage", nargs=2, action="append",
                    metavar=("STAGE", "PATH"),
                    help="also write an intermediate stage: wavenumber or rangedoppler")
    sp.set_defaults(func=_cmd_focus)

    sp = sub.add_parser("predict", help="closed-form artefact footprint report")
    sp.add_argument("--radar", required=True)
    sp.add_argument("--interf", required=True)
    sp.add_argument("--grid", help="image .sarc whose axes pin the pixel box")
    sp.add_argument("--json", required=True, help="output JSON path, - for stdout")
    sp.set_defaults(func=_cmd_predict)

    sp = sub.add_parser("artefact", help="evaluate the artefact model on an image grid")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--closed-form", action="store_true",
                   help="full stationary-phase model")
    g.add_argument("--rank1", action="store_true", help="separable rank-1 estimate")
    sp.add_argument("--radar", required=True)
    sp.add_argument("--interf", required=True)
    sp.add_argument("--grid", help="borrow axes from this image .sarc")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_artefact)

    sp = sub.add_parser("mitigate", help="split an image into interference + residual")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--method", choices=("pca", "rpca"), required=True)
    sp.add_argument("--rank", type=int, help="components removed by pca")
    sp.add_argument("--mu", type=float, help="rpca sparsity weight")
    sp.add_argument("--iters", type=int, help="rpca iteration cap")
    sp.add_argument("--tol", type=float, help="rpca feasibility tolerance")
    sp.add_argument("--block", help="tile size ROWSxCOLS for blockwise runs")
    sp.add_argument("--out-image", required=True, help="residual image .sarc")
    sp.add_argument("--out-interf", required=True, help="interference estimate .sarc")
    sp.add_argument("--report", help="JSON diagnostics path")
    sp.set_defaults(func=_cmd_mitigate)

    sp = sub.add_parser("analyze", help="singular spectra, spectrograms, support boxes")
    sp.add_argument("--in", dest="inp", required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--singvals", nargs=2, metavar=("K", "OUT_CSV"),
                   help="leading K singular values to CSV")
    g.add_argument("--stft", choices=("range", "azimuth"),
                   help="spectrogram along one line")
    g.add_argument("--support", nargs=2, metavar=("DB", "OUT_JSON"),
                   help="support box of pixels within DB of the peak")
    sp.add_argument("--line", type=int,
                    help="row (range) or column (azimuth) index; default strongest")
    sp.add_argument("--out", help="spectrogram output .sarc for --stft")
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("repro", help="reference-profile squint study, end to end")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--squints", help="comma separated degrees, default 0.6,0,-0.6")
    sp.add_argument("--na", type=int, default=4096, help="azimuth grid size")
    sp.add_argument("--nr", type=int, default=2048, help="range grid size")
    sp.add_argument("--kmax", type=int, default=100, help="rank error curve depth")
    sp.add_argument("--out", help="report JSON path, default stdout")
    sp.add_argument("--save-images", metavar="DIR",
                    help="also store each focused artefact image here")
    sp.set_defaults(func=_cmd_repro)
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s %(message)s",
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        log.error("config: %s", exc)
        return EXIT_CONFIG
    except ContainerError as exc:
        log.error("container: %s", exc)
        return EXIT_IO
    except OSError as exc:
        log.error("io: %s", exc)
        return EXIT_IO
    except (ValueError, ArithmeticError, np.linalg.LinAlgError, RuntimeError) as exc:
        log.error("numerical: %s", exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
