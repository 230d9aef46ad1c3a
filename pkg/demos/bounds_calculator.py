"""Composition-length bounds beyond the exact table.

For d <= 8 the values are exact table entries; past that the calculator
brackets c_S(d) between the increment recurrence / irrational-threshold
lower bounds and the best of the doubling recurrence and the wreath
tower closed forms.  All threshold comparisons against
alpha = 5 log_9 2 + 1 run in interval arithmetic, never floats.
"""

from solvlen.bounds import (alpha_interval, cn_bounds, cs_bounds,
                            g89_min_length)


def main():
    a = alpha_interval()
    print(f"alpha = 5 log_9 2 + 1 in [{float(a.a):.15f}, {float(a.b):.15f}]")
    print()
    print(f"{'d':>3} {'c_S lower':>10} {'c_S upper':>10}  provenance")
    for d in (8, 9, 10, 12, 15, 25, 27):
        res = cs_bounds(d)
        tag = res.provenance[-1] if d > 8 else "exact"
        print(f"{d:>3} {res.lower:>10} {res.upper:>10}  {tag}")
        if res.annotation:
            lo, hi = res.annotation
            print(f"{'':>25}  stored annotation: {lo} <= c_S({d}) <= {hi}")
    print()
    print("nilpotent bounds:")
    for d in (4, 5, 10):
        lo, hi = cn_bounds(d)
        print(f"  c_N({d}) in [{lo}, {hi}]")
    print()
    print("smallest n with d <= alpha log2(n) + 9:")
    for d in (10, 12, 20, 30):
        print(f"  d = {d}: n >= {g89_min_length(d)}")


if __name__ == "__main__":
    main()
