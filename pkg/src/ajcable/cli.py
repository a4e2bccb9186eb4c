"""Command line entry point: ``python -m ajcable.cli <command> ...``.

Exit codes: 0 on success (PASS or NOT_APPLICABLE for ``verify``), 1 on a
failed check or verdict, 2 on bad usage, 3 when guessing caps are exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cache import JonesCache, knot_id, read_sequence_file, write_sequence_file

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPS = 0, 1, 2, 3


def _odd(value: str) -> int:
    r = int(value)
    if r % 2 == 0:
        raise argparse.ArgumentTypeError(f"r must be odd, got {r}")
    return r


def _write_report(path, payload: dict):
    if path:
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_jones(args) -> int:
    from .jones.colored import colored_jones

    if args.n < 1:
        print("color must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.no_cache:
        value = colored_jones(args.m, args.n, args.method)
    else:
        value = JonesCache(args.cache_dir).colored_jones(args.m, args.n, args.method)
    if args.out:
        write_sequence_file(args.out, knot_id(args.m), [(args.n, value)])
    else:
        sys.stdout.write(f"@ {knot_id(args.m)} {args.n}\n" + value.to_text())
    _write_report(args.report, {"command": "jones", "m": args.m, "n": args.n, "method": args.method,
                                "value": value.to_text()})
    return EXIT_OK


def cmd_guess(args) -> int:
    from .guess import CapsExhaustedError, GuessConfig, GuessStats, guess_recurrence, has_candidate

    kid, values = read_sequence_file(args.input)
    if not values:
        print("empty sequence file", file=sys.stderr)
        return EXIT_USAGE
    cfg = GuessConfig(d_cap=args.dcap, delta_cap=args.mcap, seed=args.seed)
    affine = tuple(args.m_affine)
    stats = GuessStats()
    op = None
    try:
        for d in range(cfg.d_cap + 1):
            for delta in range(cfg.delta_cap + 1):
                if len(values) < cfg.values_wanted(d, delta):
                    raise CapsExhaustedError({"d_cap": d, "delta_cap": delta - 1, "reason": "values ran out"})
                stats.tried.append((d, delta))
                if not has_candidate(values, d, delta, cfg, m_affine=affine):
                    continue
                op = guess_recurrence(values, d, delta, cfg, stats=stats, m_affine=affine)
                if op is not None:
                    stats.found = (d, delta)
                    break
            if op is not None:
                break
        else:
            raise CapsExhaustedError({"d_cap": cfg.d_cap, "delta_cap": cfg.delta_cap})
    except CapsExhaustedError as exc:
        print(f"no recurrence: {exc}", file=sys.stderr)
        _write_report(args.report, {"command": "guess", "knot": kid, "result": None, "searched": exc.region})
        return EXIT_CAPS
    sys.stdout.write(op.to_text())
    _write_report(args.report, {"command": "guess", "knot": kid, "found": list(stats.found),
                                "operator": op.to_text()})
    return EXIT_OK


def cmd_apoly(args) -> int:
    from .apoly import check_hs_properties, irreducibility_certificate, numeric_oracle, twist_aprime

    a = twist_aprime(args.m)
    print(f"A'_{{K_{args.m}}} = {a}")
    payload = {"command": "apoly", "m": args.m, "aprime": a.to_text()}
    code = EXIT_OK
    if args.check:
        props = check_hs_properties(args.m)
        cert = irreducibility_certificate(args.m)
        resid = numeric_oracle(args.m)
        for name, ok in props.checks.items():
            print(f"  {name}: {'pass' if ok else 'FAIL'}")
        for note in props.notes:
            print(f"  note: {note}")
        print(f"  certificate premises: {'pass' if cert.premises_pass else 'FAIL'} ({cert.conclusion})")
        print(f"  numeric oracle max residual: {resid:.2e}")
        payload.update(properties=props.to_json(), certificate=cert.to_json(), oracle_residual=resid)
        if not (props.all_pass and cert.premises_pass and resid < 1e-8):
            code = EXIT_FAIL
    _write_report(args.report, payload)
    return code


def cmd_verify(args) -> int:
    from .guess import GuessConfig
    from .harness import NOT_APPLICABLE, PASS, CAPS_EXHAUSTED, verify_aj

    cfg = GuessConfig(d_cap=args.dcap, delta_cap=args.mcap, seed=args.seed)
    rep = verify_aj(args.m, args.r, cfg, explore=args.explore)
    print(rep.digest())
    payload = rep.to_json()
    payload["content_hash"] = rep.content_hash()
    _write_report(args.report, payload)
    if rep.verdict in (PASS, NOT_APPLICABLE):
        return EXIT_OK
    return EXIT_CAPS if rep.verdict == CAPS_EXHAUSTED else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ajcable", description="AJ-identity checks for cables of twist knots")
    ap.add_argument("--cache-dir", default=None, help="cache location (default: $AJCABLE_CACHE_DIR or ~/.cache/ajcable)")
    ap.add_argument("--report", default=None, help="write a JSON report here")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jones", help="colored Jones polynomial of K_m (m = 0: unknot)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["skein", "fast", "cyclotomic"], default="fast")
    p.add_argument("--out", default=None, help="write a sequence file instead of printing")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("guess", help="minimal recurrence of a sequence file")
    p.add_argument("--input", required=True)
    p.add_argument("--dcap", type=int, default=2)
    p.add_argument("--mcap", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-affine", type=int, nargs=2, default=[1, 0], metavar=("A", "B"),
                   help="search coefficients in t^{2(An+B)} (default 1 0)")
    p.set_defaults(func=cmd_guess)

    p = sub.add_parser("apoly", help="bundled A'-polynomial of K_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--check", action="store_true", help="run the property, certificate and oracle checks")
    p.set_defaults(func=cmd_apoly)

    p = sub.add_parser("verify", help="end-to-end AJ check for the (r,2)-cable of K_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=_odd, required=True)
    p.add_argument("--dcap", type=int, default=2)
    p.add_argument("--mcap", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--explore", action="store_true", help="run even when the theorem condition fails")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
