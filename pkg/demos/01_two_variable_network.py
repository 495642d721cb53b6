"""Two binary variables that like to agree.

A small Markov network puts weight 10 on equal values and 1 on unequal
ones, with a unary factor favouring 0. Most of its mass is independent
noise around (0, 0); the rest sits on (1, 1). The exact solver finds how
much of the distribution is a product of Bernoullis.
"""

from __future__ import annotations

import numpy as np

from latentweight import load_fixture, mrf_to_joint, solve_exact
from latentweight.dist import outcome_bits


def main():
    P = mrf_to_joint(load_fixture("pair_mrf"))
    print("joint table (x1, x2): probability")
    for k, p in enumerate(P.probs):
        print(f"  {outcome_bits(k, 2)}: {p:.6f}  (= {p * 54:.0f}/54)")

    rep = solve_exact(P)
    dec = rep.decomposition
    print(f"\nlatent independent weight: {dec.weight:.6f}  (49/60 = {49 / 60:.6f})")
    print(f"independent component q*:  {np.round(dec.q_star.q, 6).tolist()}  (1/21 = {1 / 21:.6f})")
    print(f"residual R:                {np.round(dec.residual.probs, 9).tolist()}")

    # P = lam * Q + (1 - lam) * R, checked entrywise
    err = np.abs(dec.reconstruct() - P.probs).max()
    print(f"reconstruction error:      {err:.1e}")


if __name__ == "__main__":
    main()
