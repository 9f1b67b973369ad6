"""Reproduce the published ratio table for the plane embedding.

Each row generates the 1-norm instance, solves the subtour relaxation with
the cutting-plane LP, solves the tour problem exactly, and compares the
certified ratio against the closed form.  Everything is exact to solver
tolerance; the table is tiny because certified mode needs n <= 20.
"""

from tspgap.exact import held_karp
from tspgap.families import IJK, best_partition, closed_form_ratio_I2, gen_I2
from tspgap.lp import solve_subtour_lp

ROWS = [(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 1, 1), (0, 2, 1), (1, 2, 1)]


def main() -> None:
    print(f"{'(i,j,k)':>10} {'n':>3} {'lp cost':>10} {'optimum':>10} {'ratio':>10} {'closed':>10}")
    for trip in ROWS:
        p = IJK(*trip)
        inst = gen_I2(p)
        lp = solve_subtour_lp(inst)
        opt = held_karp(inst)
        ratio = opt.length / lp.cost
        closed = closed_form_ratio_I2(p)
        print(
            f"{str(trip):>10} {inst.n:>3} {lp.cost:>10.6f} {opt.length:>10.6f}"
            f" {ratio:>10.7f} {closed:>10.7f}"
        )
        assert abs(ratio - closed) < 1e-7

    print()
    print("best partition per point count (plane embedding):")
    for n in range(6, 15):
        p = best_partition(n, "rectilinear")
        print(f"  n={n:>2}  (i,j,k)=({p.i},{p.j},{p.k})  ratio={closed_form_ratio_I2(p):.7f}")


if __name__ == "__main__":
    main()
