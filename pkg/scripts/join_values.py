"""M of the two join families against their closed forms as epsilon shrinks.

    python3 scripts/join_values.py --m 3 4 5
"""
import argparse

from qhmspace.generators import join_discrete_space, join_discrete_value, join_circle_space, join_circle_value
from qhmspace.measures import m_value


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--eps", type=float, nargs="+", default=[0.1, 0.01, 0.001, 3e-4])
    args = ap.parse_args()
    print(f"{'family':>8} {'m':>3} {'eps':>8} {'M':>14} {'formula':>14} {'rel err':>9}")
    for m in args.m:
        for eps in args.eps:
            for name, space, value in (("discrete", join_discrete_space, join_discrete_value), ("circle", join_circle_space, join_circle_value)):
                got = m_value(space(m, eps)).value
                want = value(m, eps)
                print(f"{name:>8} {m:3d} {eps:8.1e} {got:14.8f} {want:14.8f} {abs(got - want) / want:9.1e}")


if __name__ == "__main__":
    main()
