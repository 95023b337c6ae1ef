"""Certify Ind(St(n, chi) x s(St(n, chi))) for n = 2, 3 and show each coset entry."""
from __future__ import annotations

from unitary_rds.rds import FormalDiscreteSeries, FormalSupercuspidal, InducedDatum, certify_rds


def main() -> None:
    chi = FormalSupercuspidal("chi1", 1, "chi2")
    for n in (2, 3):
        cert = certify_rds(InducedDatum(FormalDiscreteSeries.steinberg(n, chi)))
        print(f"n = {n}: RDS = {cert.rds} ({cert.verdict})")
        for e in cert.entries:
            print(f"  w = {e.w.one_line()}  {e.case}: {e.verdict}")

    # a Galois-invariant factor makes the Case1 entries fail
    fixed = FormalSupercuspidal("r1", 2, "r1")
    cert = certify_rds(InducedDatum(FormalDiscreteSeries.supercuspidal(fixed)))
    print(f"invariant supercuspidal: RDS = {cert.rds}, failures = {len(cert.failures())}")


if __name__ == "__main__":
    main()
