"""Why the fractional tour is LP-optimal: the convex-combination certificate.

The canonical fractional vector x weighs a path chain per line at 1 and six
triangle closure edges at 1/2.  A family of pseudo-tours (each line either
contributes a gap detour or anchors an end) combines, with explicit lambda
coefficients, into exactly (1 + 1/D) * x where D is the LP cost.  That
identity pins the LP optimum from below and the shortcut tours pin the
integer optimum from above, so the ratio needs no solver at all.
"""

from tspgap.core import fractional_cost, tour_length
from tspgap.exact import held_karp
from tspgap.families import (
    IJK,
    fractional_xijk,
    gen_I2,
    lambda_certificate,
    pseudo_tours,
    shortcut_tour,
)


def main() -> None:
    p = IJK(1, 2, 1)
    rep = lambda_certificate(p)
    print(f"triple {p}")
    print(f"multiplier 1 + 1/D = {rep.multiplier:.10f}")
    print(f"coefficient sum error  {rep.sum_error:.2e}")
    print(f"entrywise identity err {rep.max_entry_error:.2e}")
    print()
    print("lambda per pseudo-tour:")
    for name, lam in rep.coefficients:
        print(f"  {name:<14} {lam:.10f}")

    inst = gen_I2(p)
    x = fractional_xijk(p)
    opt = held_karp(inst)
    print()
    print(f"fractional cost {fractional_cost(inst, x):.6f}")
    print(f"exact optimum   {opt.length:.6f}")
    print()
    print("every pseudo-tour shortcuts to a tour of identical length:")
    for pt in pseudo_tours(p):
        t = shortcut_tour(pt, inst)
        print(f"  {pt.name:<14} length {tour_length(inst, t):.6f}")


if __name__ == "__main__":
    main()
