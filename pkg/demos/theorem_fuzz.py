"""Seeded fuzzing of the level-set checkers, plus the Lelong inequality
against constructed Green functions.

    python3 demos/theorem_fuzz.py [count] [seed]
"""
import sys
from collections import Counter
from fractions import Fraction

from lelong import fixtures
from lelong.green import check_prop21
from lelong.theorems import check_prop310, check_thm11, check_thm12, check_thm38

F = Fraction


def main(count: int, seed: int) -> None:
    shapes = Counter()
    status = Counter()
    for i in range(count):
        T = fixtures.random_current(f"{seed}:{i}")
        for alpha in (F(1, 2), F(2, 3)):
            r = check_thm11(T, alpha)
            status["line classification", r.status] += 1
            shapes[r.classification.shape] += 1
        r = check_thm12(T, F(2, 5))
        status["conic classification", r.status] += 1
        shapes[r.classification.shape] += 1
        T, alpha, q1, q2 = fixtures.random_thm38_instance(f"{seed}:{i}")
        status["two heavy points", check_thm38(T, alpha, q1, q2).status] += 1
        T, alpha, triple, L = fixtures.random_prop310_instance(f"{seed}:{i}")
        status["three points on a line", check_prop310(T, alpha, triple, L).status] += 1
        T, u = fixtures.prop21_instance(f"{seed}:{i}")
        v = check_prop21(T, u)
        status["Lelong inequality", "equality" if v.equality else ("pass" if v.holds else "fail")] += 1
    for (name, st), n in sorted(status.items()):
        print(f"{name:28s} {st:10s} {n}")
    print("shapes seen:", dict(shapes.most_common()))


if __name__ == "__main__":
    args = sys.argv[1:]
    main(int(args[0]) if args else 50, int(args[1]) if len(args) > 1 else 0)
