"""Size and build time of Σ/N and the splitting check for n-cycles with the abelianisation."""

import argparse
import time

from davis_forge.complex import from_maximal
from davis_forge.coxeter import abelianization_quotient, coxeter_from_flag
from davis_forge.davis import davis_quotient, splitting_maps


def cycle(n):
    names = [f"v{i}" for i in range(n)]
    return from_maximal(names, [tuple(sorted((names[i], names[(i + 1) % n]))) for i in range(n)])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=9)
    args = ap.parse_args()
    print(f"{'n':>3} {'|G|':>6} {'simplices':>10} {'build s':>8} {'split s':>8} ok")
    for n in range(4, args.max_n + 1):
        sys_ = coxeter_from_flag(cycle(n))
        t0 = time.perf_counter()
        D = davis_quotient(sys_, abelianization_quotient(sys_))
        t1 = time.perf_counter()
        ok = all(splitting_maps(D).verify().values())
        t2 = time.perf_counter()
        print(f"{n:>3} {D.quotient.order:>6} {len(D.complex.simplices):>10} {t1 - t0:>8.2f} {t2 - t1:>8.2f} {ok}")


if __name__ == "__main__":
    main()
