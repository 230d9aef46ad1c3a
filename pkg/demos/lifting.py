"""Walk through the extraspecial lifting pipeline behind the d = 8 witness.

A matrix group acting on F_2^6 lifts to automorphisms of an extraspecial
group 2^{1+6} only if it preserves the squaring form of the chosen
cocycle; the obstruction is quadratic and the correction, when it exists,
is again a quadratic form.  Stages:

  i.   build the order-1296 linear group over F_2^6
  ii.  reduce it to two generators via a Cayley-graph search (~30s)
  iii. find the invariant quadratic form (Arf invariant 1: minus type)
  iv.  lift the two generators to automorphism pairs with the right orders
  v.   form the holomorph as a degree-128 permutation group

Run with --small to only demonstrate the correction law on a tiny example.
"""

import sys

from solvlen.errors import NotOrthogonal
from solvlen.fpmat import FpMatrix
from solvlen.lift import (Extraspecial2Model, d8_group,
                          quadratic_correction)


def small_demo():
    model = Extraspecial2Model(1, "+")
    # the swap on F_2^2 preserves the plus-type squaring form xy
    swap = FpMatrix.from_rows([[0, 1], [1, 0]], 2)
    pair = quadratic_correction(swap, model)
    print(f"swap on F_2^2: correction q has coeffs {pair.q.coeffs}")
    assert pair.verify(model)
    # a transvection sends xy to xy + x: no correction exists
    t = FpMatrix.from_rows([[1, 1], [0, 1]], 2)
    try:
        quadratic_correction(t, model)
    except NotOrthogonal as e:
        print(f"transvection: {e}")


def main():
    small_demo()
    if "--small" in sys.argv:
        return
    print("\nrunning the full degree-128 pipeline (about a minute)...")
    handle, report = d8_group()
    print(f"order {handle.order()} = 2^11 * 3^4")
    print(f"derived orders {report.orders}")
    print(f"d = {report.d}, c = {report.c}, n = {report.n}")


if __name__ == "__main__":
    main()
