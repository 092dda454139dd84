"""Which odd-odd tori does the diagonal family (x + 2y, x) cover, read modulo (m, n)?

The staircase family is checked on the same range; it should never fail.

    python scripts/odd_odd_families.py 31
"""

import sys

from domtorus.assignment import is_independent
from domtorus.constructions import diagonal_family, staircase_family
from domtorus.digraph import make_torus
from domtorus.formulas import alpha_formula


def ok(cells, m, n):
    D = make_torus(m, n)
    members = {D.index(*c) for c in cells}
    return len(members) == alpha_formula(m, n) and is_independent(members, D)


def main(limit=31):
    print("m,n,diagonal,staircase")
    for m in range(3, limit + 1, 2):
        for n in range(3, m + 1, 2):
            print(f"{m},{n},{ok(diagonal_family(m, n), m, n)},{ok(staircase_family(m, n), m, n)}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 31)
