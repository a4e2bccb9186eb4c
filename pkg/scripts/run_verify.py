"""Run the end-to-end AJ check for one (m, r) and write the JSON report.

    python scripts/run_verify.py --m -1 --r -1
    python scripts/run_verify.py --m 1 --r 9 --dcap 3 --mcap 60 --report fig8.json
"""

import argparse
import json
import logging
import sys

from ajcable.guess import GuessConfig
from ajcable.harness import NOT_APPLICABLE, PASS, verify_aj


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, required=True)
    ap.add_argument("--r", type=int, required=True)
    ap.add_argument("--dcap", type=int, default=2)
    ap.add_argument("--mcap", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--explore", action="store_true")
    ap.add_argument("--report", default=None)
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s")
    rep = verify_aj(args.m, args.r, GuessConfig(d_cap=args.dcap, delta_cap=args.mcap, seed=args.seed),
                    explore=args.explore)
    print(rep.digest())
    if rep.guessed_alpha_J is not None:
        print(rep.guessed_alpha_J.to_text(), end="")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(rep.to_json() | {"content_hash": rep.content_hash()}, fh, indent=2, sort_keys=True)
    return 0 if rep.verdict in (PASS, NOT_APPLICABLE) else 1


if __name__ == "__main__":
    sys.exit(main())
