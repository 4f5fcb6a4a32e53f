"""Verify both worked examples and print their reports as JSON."""

import argparse
import json
import time
from dataclasses import dataclass

from davis_forge.examples import moore_chain_model, poincare_two_skeleton, verify_moore, verify_poincare


@dataclass
class Config:
    primes: tuple = ((2, 3), (3, 2), (2, 5), (5, 7))
    pi1: bool = True


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-pi1", action="store_true", help="skip coset enumeration")
    cfg = Config(pi1=not ap.parse_args().no_pi1)

    t = time.perf_counter()
    L, act = poincare_two_skeleton()
    rep = verify_poincare(L, act, with_pi1=cfg.pi1)
    rep.pop("relative_cohomology")
    rep["seconds"] = round(time.perf_counter() - t, 3)
    print(json.dumps({"poincare": rep}, indent=2))

    for p, q in cfg.primes:
        r = verify_moore(moore_chain_model(p, q))
        r.pop("relative_cohomology")
        print(json.dumps({"moore": r}))


if __name__ == "__main__":
    main()
