"""Write colored Jones values of K_m (or the unknot, m = 0) as a sequence file.

    python scripts/sequence_file.py --m -1 --first 1 --last 40 --out trefoil.txt
    ajcable guess --input trefoil.txt --dcap 2 --mcap 12

With --odd the file holds J(2n+1) at index n, the input of the cable
pipeline; pair it with ``--m-affine 2 1`` when guessing.
"""

import argparse
import time

from ajcable.cache import JonesCache, knot_id, write_sequence_file


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, required=True)
    ap.add_argument("--first", type=int, default=1)
    ap.add_argument("--last", type=int, required=True)
    ap.add_argument("--odd", action="store_true", help="index n holds J(2n+1)")
    ap.add_argument("--method", default="cyclotomic", choices=["skein", "fast", "cyclotomic"])
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)
    cache = JonesCache(args.cache_dir)
    t0 = time.perf_counter()
    values = []
    for n in range(args.first, args.last + 1):
        color = 2 * n + 1 if args.odd else n
        values.append((n, cache.colored_jones(args.m, color, args.method)))
    name = knot_id(args.m) + ("_odd" if args.odd else "")
    write_sequence_file(args.out, name, values)
    print(f"{len(values)} values of {name} in {time.perf_counter() - t0:.2f}s -> {args.out}")


if __name__ == "__main__":
    main()
