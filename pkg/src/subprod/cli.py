"""Command-line Monte-Carlo sweeps.

Examples:
    subprod-sim --code db:3:1:4 --decoder fastml --ebn0 2:0.5:4 --out out.csv
    subprod-sim --code db:3:2:5 --decoder bp+lgs --gamma 0.12 --tmax 5 \
        --plgs 512 --ebn0 1.0:0.5:2.0 --seed 7 --out out.csv

Code specs: rm:R:M | db:N:R:M | hamming:R:M | db953:R:M | file:PATH:R:M
(file reads a base generator matrix, one '0'/'1' row per line).

CRC polynomials are given with the leading term, as binary or hex digits
(x^4+x+1 is 10011 or 0x13); the CRC payload is dim - width bits, the check
bits are appended before encoding and the graph search keeps only
candidates that satisfy the CRC.  A config file holds "key = value" lines
with the same keys as the long flags; flags override file values.
"""

import argparse
import sys

from . import bp as bp_mod
from . import lgs as lgs_mod
from .construction import base_code_from_text, build_base_code, build_code, dual_berman_code, hamming_code, rm_code
from .simulate import SweepConfig, emit_results, records_to_csv, run_sweep


def parse_code_spec(spec: str):
    parts = spec.split(":")
    family = parts[0].lower()
    try:
        if family == "rm" and len(parts) == 3:
            r, m = int(parts[1]), int(parts[2])
            return rm_code(r, m)
        if family == "db" and len(parts) == 4:
            n, r, m = int(parts[1]), int(parts[2]), int(parts[3])
            return dual_berman_code(n, r, m)
        if family == "hamming" and len(parts) == 3:
            r, m = int(parts[1]), int(parts[2])
            return hamming_code(r, m)
        if family == "db953" and len(parts) == 3:
            r, m = int(parts[1]), int(parts[2])
            seed_code = dual_berman_code(3, 1, 2)
            return build_code(build_base_code(seed_code.Grm), r, m)
        if family == "file" and len(parts) == 4:
            with open(parts[1]) as fh:
                base = base_code_from_text(fh.read())
            return build_code(base, int(parts[2]), int(parts[3]))
    except ValueError as exc:
        raise SystemExit(f"error: bad code spec {spec!r}: {exc}")
    raise SystemExit(f"error: cannot parse code spec {spec!r}")


def parse_ebn0(text: str):
    text = text.strip()
    if "," in text:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    if ":" in text:
        start, step, stop = (float(tok) for tok in text.split(":"))
        if step <= 0:
            raise SystemExit("error: ebn0 step must be positive")
        grid = []
        value = start
        while value <= stop + 1e-9:
            grid.append(round(value, 10))
            value += step
        return grid
    return [float(text)]


def read_config_file(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"error: bad config line {raw.rstrip()!r} (expected key = value)")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subprod-sim", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--config", help="flat key=value config file; flags override it")
    p.add_argument("--code", help="code spec, e.g. db:3:2:5")
    p.add_argument("--decoder", choices=["fastml", "bp", "bp+lgs"])
    p.add_argument("--ebn0", help="Eb/N0 grid in dB: start:step:stop or comma list")
    p.add_argument("--gamma", type=float, default=None, help="BP weight on check messages")
    p.add_argument("--gamma-g", type=float, default=None, help="BP weight on base-code check messages")
    p.add_argument("--tmax", type=int, default=None, help="max BP iterations")
    p.add_argument("--clamp", type=float, default=None, help="LLR saturation magnitude (default 30)")
    p.add_argument("--check-rule", choices=["exact", "minsum"], default=None)
    p.add_argument("--plgs", type=int, default=None, help="graph search path length")
    p.add_argument("--crc", default=None, help="CRC polynomial incl. leading term (binary or 0x hex)")
    p.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    p.add_argument("--min-errors", type=int, default=None, help="stop a point after this many errors (default 100)")
    p.add_argument("--max-trials", type=int, default=None, help="cap on trials per point (default 1000000)")
    p.add_argument("--out", help="output path (default: CSV to stdout)")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    return p


def _merged(args, file_values: dict, key: str, cast=str):
    cli = getattr(args, key)
    if cli is not None:
        return cli
    if key in file_values:
        return cast(file_values[key])
    return None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    file_values = read_config_file(args.config) if args.config else {}

    def get(key, cast=str, default=None):
        value = _merged(args, file_values, key, cast)
        return default if value is None else value

    code_spec = get("code")
    decoder = get("decoder")
    ebn0 = get("ebn0")
    if not code_spec or not decoder or not ebn0:
        print("error: --code, --decoder and --ebn0 are required (via flags or config file)", file=sys.stderr)
        return 2
    if decoder not in ("fastml", "bp", "bp+lgs"):
        print(f"error: unknown decoder {decoder!r}", file=sys.stderr)
        return 2

    code = parse_code_spec(code_spec)
    grid = parse_ebn0(ebn0)

    try:
        bp_cfg = None
        if decoder in ("bp", "bp+lgs"):
            bp_cfg = bp_mod.BpConfig(
                gamma=get("gamma", float, 0.1),
                gamma_g=get("gamma_g", float, 0.1),
                tmax=get("tmax", int, 10),
                llr_clamp=get("clamp", float, 30.0),
                check_rule=get("check_rule", str, "exact"),
            )
        search_cfg = None
        if decoder == "bp+lgs":
            crc_text = get("crc")
            crc = None
            if crc_text:
                probe = lgs_mod.crc_spec_from_string(crc_text, message_len=1)
                crc = lgs_mod.CrcSpec(poly=probe.poly, message_len=code.dim - probe.width)
            search_cfg = lgs_mod.SearchConfig(path_len=get("plgs", int, 512), crc=crc)
        cfg = SweepConfig(
            code=code,
            code_spec=code_spec,
            decoder=decoder,
            ebn0_grid=grid,
            bp=bp_cfg,
            search=search_cfg,
            min_errors=get("min_errors", int, 100),
            max_trials=get("max_trials", int, 1_000_000),
            seed=get("seed", int, 0),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    records = run_sweep(cfg)
    out = get("out")
    fmt = get("format") or "csv"
    if out:
        emit_results(records, out, fmt)
    else:
        sys.stdout.write(records_to_csv(records))
    return 0


if __name__ == "__main__":
    sys.exit(main())
