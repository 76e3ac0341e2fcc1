"""Walk through the built-in example currents: Lelong numbers at the
distinguished points, the upper level sets, and the shape classify() finds.

    python3 demos/level_sets.py
"""
from fractions import Fraction

from lelong import fixtures
from lelong.currents import lelong_at, mass, upper_level_set
from lelong.theorems import classify

F = Fraction


def show(ex, alpha, strict=True):
    T = ex.current
    print(f"--- example {ex.id}: mass {mass(T)}, {len(T.terms)} components")
    for name, p in ex.points.items():
        v = lelong_at(T, p)
        print(f"  nu({name}) = {v.lower}" + ("" if v.lower == v.upper else f" .. {v.upper}"))
    ls = upper_level_set(T, alpha, strict)
    sign = ">" if strict else ">="
    print(f"  {{nu {sign} {alpha}}}: {len(ls.curves)} curve(s), {len(ls.points('in'))} isolated point(s)")
    cl = classify(T, alpha)
    print(f"  classify at {alpha}: {cl.shape}" + (" (truncated tail)" if cl.truncated else ""))
    for name, ok, detail in ex.check():
        print(f"  [{'ok' if ok else 'FAILED'}] {name}: {detail}")


if __name__ == "__main__":
    # three lines: values exactly 2/3 at the three crossings
    show(fixtures.example_32(), F(2, 3) - F(1, 100))
    # four lines: six double points, no three on a conic with the rest
    show(fixtures.example_33(), F(1, 2) - F(1, 100))
    # a smooth conic carrying half the mass
    show(fixtures.example_34(), F(2, 5))
    # m points on a base line plus one point off it
    for m in (2, 4):
        show(fixtures.example_35(m), F(1, 2))
    # seven points, every value exactly 2/5
    show(fixtures.example_36(), F(2, 5), strict=False)
    # a conic with a truncated family of lines through a fixed point
    show(fixtures.example_37(6), F(2, 5))
    show(fixtures.example_39(), F(1, 2), strict=False)
