"""Write the formula-vs-solver table to a CSV file.

    python scripts/tabulate.py 12 12 --dp-max 6 -o table.csv
"""

import argparse
import sys
import time

from domtorus.cli import cmd_table, format_table


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("m_max", type=int)
    ap.add_argument("n_max", type=int)
    ap.add_argument("--dp-max", type=int, default=6)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = cmd_table(args.m_max, args.n_max, args.dp_max)
    text = format_table(rows, "csv")
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    bad = [r for r in rows if not r["agree"]]
    print(f"{len(rows)} rows, {len(bad)} disagreements, {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
