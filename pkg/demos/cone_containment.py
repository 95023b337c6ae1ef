"""Cone containments at rank 4 with their Farkas certificates."""
from __future__ import annotations

from unitary_rds.cones import certificates_valid, containment_check
from unitary_rds.root_weyl import SimpleSubset, case_classify, double_coset_reps, maximal_subsets


def main() -> None:
    m = 4
    omega = SimpleSubset.maximal(m, m // 2)
    for theta in maximal_subsets(m):
        for w in double_coset_reps(theta, omega):
            if case_classify(w, theta, omega) != "Case2":
                continue
            res = containment_check(theta, w, omega, box_bound=4)
            print(f"Theta = {theta.sorted()}, w = {w.one_line()}: holds = {res.holds}, "
                  f"certificates valid = {certificates_valid(res)}, box scan agrees = {res.oracle_agreement}")


if __name__ == "__main__":
    main()
