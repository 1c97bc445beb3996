"""Command-line front end.

Subcommands::

    ber         BER-vs-SNR sweep, CSV + JSON manifest
    papr        per-frame PAPR CCDF tables for one or more formats
    rates       print the reference rate table (counted rates)
    vectors     emit a deterministic golden waveform file
    sweep-fig12 matched-rate crossings at BER 1e-4 across formats

Exit codes: 0 success, 2 configuration error (including unknown flags),
1 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
import time

from .configfile import config_from_sources
from .harness import (
    ConfigError,
    ExperimentConfig,
    PAPR_COLUMNS,
    emit_golden_vector,
    find_crossing,
    run_ber_sweep,
    run_papr_experiment,
    write_manifest,
    write_rows_csv,
)
from .metrics import TABLE_I, TIERS, rate_table

CROSSING_START = {2: 14.0, 3: 16.0, 4: 19.0, 5: 22.0, 6: 25.0, 7: 28.0}


def _int_log2(m: int) -> int:
    import math

    return int(math.log2(m))


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--workers", type=int)
    p.add_argument("--format")
    p.add_argument("--n", type=int)
    p.add_argument("--m", dest="orders", help="modulation order(s), e.g. 16 or 8/16/16")
    p.add_argument("--components", type=int, help="component count (see) or depth (eu)")
    p.add_argument("--allocation", help="SEE_a | SEE_b | SEE_c")
    p.add_argument("--receiver", help="hard | soft | reconstruction")
    p.add_argument("--snr-start", dest="snr_start", type=float)
    p.add_argument("--snr-stop", dest="snr_stop", type=float)
    p.add_argument("--snr-step", dest="snr_step", type=float)
    p.add_argument("--noise-dbm", dest="noise_dbm", type=float)
    p.add_argument("--ceiling", type=float)
    p.add_argument("--min-errors", dest="min_errors", type=int)
    p.add_argument("--max-bits", dest="max_bits", type=int)
    p.add_argument("--frames", type=int, help="PAPR frame count")
    p.add_argument("--no-receiver-clip", dest="receiver_clip", action="store_const", const=False)


def _overrides(args: argparse.Namespace) -> dict:
    keys = (
        "seed", "out", "workers", "format", "n", "components", "allocation",
        "receiver", "snr_start", "snr_stop", "snr_step", "noise_dbm", "ceiling",
        "min_errors", "max_bits", "frames", "receiver_clip",
    )
    over = {k: getattr(args, k, None) for k in keys}
    if getattr(args, "orders", None):
        over["orders"] = tuple(int(p) for p in str(args.orders).replace(",", "/").split("/"))
    return over


def _build_config(args) -> ExperimentConfig:
    return config_from_sources(args.config, _overrides(args))


def cmd_ber(args) -> int:
    cfg = _build_config(args)
    t0 = time.perf_counter()
    rows = run_ber_sweep(cfg)
    out = cfg.out or "ber_results.csv"
    write_rows_csv(out, rows)
    write_manifest(out + ".manifest.json", cfg, time.perf_counter() - t0)
    for row in rows:
        flag = " censored" if row["censored"] else ""
        print(f"{row['format']:>5} snr={row['snr_db']:5.1f} dB  ber={row['ber']:.3e}"
              f"  ({row['errors']} errors / {row['bits']} bits){flag}")
    print(f"wrote {out}")
    return 0


def cmd_papr(args) -> int:
    formats = (args.format or "see").split(",")
    all_rows = []
    cfg = None
    t0 = time.perf_counter()
    for name in formats:
        over = _overrides(args)
        over["format"] = name.strip()
        cfg = config_from_sources(args.config, over)
        rows, samples = run_papr_experiment(cfg)
        all_rows.extend(rows)
        import numpy as np

        p999 = float(np.quantile(samples, 0.999))
        print(f"{name.strip():>5}: {samples.size} frames, PAPR p99.9 = {p999:.2f} dB")
    out = (cfg.out if cfg and cfg.out else "papr_ccdf.csv")
    write_rows_csv(out, all_rows, PAPR_COLUMNS)
    write_manifest(out + ".manifest.json", cfg, time.perf_counter() - t0)
    print(f"wrote {out}")
    return 0


def cmd_rates(args) -> int:
    n = args.n or 64
    table = rate_table(n)
    print(f"counted data rates (bits/s/Hz) at n={n}, no cyclic prefix")
    header = f"{'format':>10} | " + " | ".join(f"{t:^16}" for t in TIERS)
    print(header)
    print("-" * len(header))
    for name in TABLE_I:
        cells = []
        for tier in TIERS:
            cell = table[(name, tier)]
            if cell is None:
                cells.append(f"{'N/A*':^16}")
            else:
                orders = "/".join(str(m) for m in cell["orders"])
                cells.append(f"{orders:>7} {cell['counted']:7.2f} ")
        print(f"{name:>10} | " + " | ".join(cells))
    print("* not feasible at BER 1e-4 inside the source's linear range")
    return 0


def cmd_vectors(args) -> int:
    cfg = _build_config(args)
    out = cfg.out or f"golden_{cfg.format}_{cfg.seed}.txt"
    emit_golden_vector(out, cfg)
    print(f"wrote {out}")
    return 0


def cmd_sweep_fig12(args) -> int:
    tier = args.tier
    tier_idx = TIERS.index(tier)
    names = (args.formats or "aco,haco,see-2,see-3,see-3-mix,asco,eu").split(",")
    rows_out = []
    t0 = time.perf_counter()
    cfg = None
    for name in names:
        name = name.strip()
        cell = TABLE_I[name][tier_idx]
        if cell is None:
            print(f"{name:>10}: N/A at tier {tier!r}")
            continue
        orders, _ = cell
        over = _overrides(args)
        over.update(_fig12_config(name, orders))
        cfg = config_from_sources(args.config, over)
        start = CROSSING_START.get(_int_log2(max(cfg.orders)), 20.0)
        crossing, rows = find_crossing(cfg, 1e-4, start_snr=start)
        rate = cfg.runner().rate
        label = "not reached" if crossing is None else f"{crossing:6.2f} dB"
        print(f"{name:>10}: rate {rate:.2f} bits/s/Hz, SNR@1e-4 = {label}")
        for row in rows:
            row = dict(row)
            row["format"] = name
            rows_out.append(row)
    out = (args.out or "fig12_sweep.csv")
    write_rows_csv(out, rows_out)
    if cfg is not None:
        write_manifest(out + ".manifest.json", cfg, time.perf_counter() - t0)
    print(f"wrote {out}")
    return 0


def _fig12_config(name: str, orders) -> dict:
    base = {
        "orders": tuple(orders),
        "receiver": "hard",
        "allocation": "SEE_b",
        "snr_start": 8.0,
        "snr_stop": 45.0,
        "snr_step": 1.0,
    }
    if name.startswith("see"):
        base["format"] = "see"
        base["components"] = 3 if "3" in name else 2
    elif name == "eu":
        base["format"] = "eu"
        base["components"] = 2
    else:
        base["format"] = name
        base["components"] = {"aco": 1, "dco": 1, "haco": 2, "asco": 3}[name]
    return base


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optofdm",
        description="Unipolar optical OFDM Monte Carlo experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ber = sub.add_parser("ber", help="run a BER-vs-SNR sweep")
    _add_common(p_ber)
    p_ber.set_defaults(func=cmd_ber)

    p_papr = sub.add_parser("papr", help="per-frame PAPR CCDF tables")
    _add_common(p_papr)
    p_papr.set_defaults(func=cmd_papr)

    p_rates = sub.add_parser("rates", help="print the reference rate table")
    p_rates.add_argument("--n", type=int, default=64)
    p_rates.set_defaults(func=cmd_rates)

    p_vec = sub.add_parser("vectors", help="emit a golden waveform vector")
    _add_common(p_vec)
    p_vec.set_defaults(func=cmd_vectors)

    p_fig = sub.add_parser("sweep-fig12", help="matched-rate crossings at BER 1e-4")
    _add_common(p_fig)
    p_fig.add_argument("--tier", choices=TIERS, default="low")
    p_fig.add_argument("--formats", help="comma list, default all reference formats")
    p_fig.set_defaults(func=cmd_sweep_fig12)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
