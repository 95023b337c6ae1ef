"""Verification suites and the deterministic JSON report.

Each suite returns a list of records {lemma, status, evidence}.  Every lemma
id used here must have an entry in LEMMA_INDEX.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import __version__
from .cones import (
    certificates_valid,
    containment_check,
    falsified_containment,
    transported_containment,
    witness_is_valid,
)
from .ematrix import EMatrix, orbit_invariant, random_hermitian, random_invertible
from .oracles import double_coset_partition, hilbert_symbol_bruteforce
from .quad_arith import FieldConfig, hilbert_symbol, unramified_preset
from .rds import InducedDatum, certify_rds, parse_sigma_pairs, parse_tau
from .root_weyl import (
    RootDatum,
    SimpleSubset,
    WeylElement,
    case_classify,
    double_coset_reps,
    maximal_subsets,
)
from . import theta as th

SUITES = ("certify", "cones", "cosets", "orbits", "structure")

LEMMA_INDEX: dict[str, str] = {
    "gamma-identity": "star(gamma_r) J_r gamma_r = diag(2, .., [1], .., -2) exactly, r = 1..8",
    "theta-involution": "theta_x o theta_x = id on sampled invertible matrices",
    "fixed-point-unitary-relation": "theta-fixed samples satisfy star(h) x h = x and theta(h) = h",
    "levi-fixed-block-form": "diag(x, J^-1 star(x)^-1 J) is theta-fixed; diag(x, x) generally is not",
    "balanced-parabolic-classification": "theta-stable block parabolics are exactly the balanced ones (support-pattern oracle)",
    "elliptic-levi-flag": "the proper theta-elliptic standard Levi is exactly M_(m/2, m/2) (split-rank oracle)",
    "diagonal-split-criterion": "theta(a) = a^-1 for diagonal a iff a_i = a_{m+1-i}",
    "split-torus-A0": "gamma A_T gamma^-1 consists of theta-split elements",
    "root-action-A0-negation": "theta = -1 on the roots in A_0 coordinates; no theta-fixed roots",
    "theta-base-A0": "every base of Phi_0 is a theta-base for the A_0 action",
    "theta-base-AT-conjugate": "under the A_T reversal action the standard base is not a theta-base (m >= 3) but a Weyl conjugate is",
    "restricted-roots-A0": "the restricted root system for the A_0 action is Phi_0 with multiplicity one",
    "levi-fixed-form": "X_L for g in H T_0 is block diagonal and Hermitian; g = 1 gives (2, -2) blocks; bad g rejected",
    "elliptic-conjugate-criterion": "w L w^-1 theta-elliptic iff w^-1 w_l w in N(L) minus L, against the torus oracle",
    "quasi-split-form-class": "norm class of det(w_l), computed for the configured extension",
    "coset-count": "|W_Theta \\ W / W_Theta| = n + 1 for Theta = Delta minus alpha_n, two of them Case1",
    "coset-transversal": "representatives form a transversal of the orbit partition and are minimal length",
    "coset-traversal-agreement": "weak-order traversal returns the exhaustive representative set",
    "cone-containment": "S_Theta^- minus S^1 S_G lies in A_{Theta cap w Omega}^{-w Omega} minus A^1 A_{w Omega}",
    "cone-falsified-witness": "swapped-role containments fail with a valid witness",
    "cone-transport": "containment verdicts are invariant under coordinate relabeling",
    "norm-class-count": "random Hermitian matrices realize exactly two norm classes",
    "orbit-invariance": "orbit_invariant is constant on x -> star(g) x g",
    "hilbert-symbol-oracle": "hilbert_symbol agrees with the residue search modulo p^3",
    "rds-certificate": "end-to-end certification of Ind(tau' x s(tau'))",
}


@dataclass
class RunConfig:
    field: FieldConfig = field(default_factory=unramified_preset)
    rank: int = 4
    suites: tuple[str, ...] = SUITES
    seed: int = 0
    out: str | None = None
    tau: str | None = None
    sigma_pairs: str | None = None
    samples: int = 100

    def __post_init__(self) -> None:
        self.suites = tuple(sorted(set(self.suites)))
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}")
        if self.rank < 2:
            raise ValueError("rank must be at least 2")
        if "certify" in self.suites and (self.rank % 2 or self.rank < 4):
            raise ValueError("the certify suite needs an even rank >= 4")
        if self.samples < 1:
            raise ValueError("samples must be positive")

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "rank": self.rank,
            "suites": list(self.suites),
            "seed": self.seed,
            "samples": self.samples,
            "tau": self.tau,
            "sigma_pairs": self.sigma_pairs,
        }


def _record(lemma: str, ok: bool, **evidence) -> dict:
    if lemma not in LEMMA_INDEX:
        raise KeyError(f"lemma {lemma!r} missing from the index")
    return {"lemma": lemma, "status": "pass" if ok else "fail", "evidence": evidence}


def _rng(cfg: RunConfig, lemma: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{lemma}")


# structure


def structure_suite(cfg: RunConfig, checks: set[str] | None = None) -> list[dict]:
    m, fcfg, n_samples = cfg.rank, cfg.field, cfg.samples
    recs: list[dict] = []

    def want(lemma: str) -> bool:
        return checks is None or lemma in checks

    if want("gamma-identity"):
        bad = [r for r in range(1, 9) if th.gamma_product(r, fcfg) != EMatrix.diag(th.expected_gamma_diagonal(r), fcfg.d)]
        recs.append(_record("gamma-identity", not bad, sizes=list(range(1, 9)), failures=bad))

    theta = th.ThetaInvolution.quasi_split(m, fcfg)
    if want("theta-involution"):
        rng = _rng(cfg, "theta-involution")
        bad = sum(1 for _ in range(n_samples) if theta(theta(g := random_invertible(rng, m, fcfg, 2))) != g)
        recs.append(_record("theta-involution", bad == 0, seed=cfg.seed, samples=n_samples, failures=bad))

    if want("fixed-point-unitary-relation"):
        rng = _rng(cfg, "fixed-point-unitary-relation")
        bad = 0
        for _ in range(n_samples):
            h = theta.sample_fixed(rng, fcfg)
            bad += not (theta.preserves_form(h) and th.fixed_points_membership(h, theta))
        recs.append(_record("fixed-point-unitary-relation", bad == 0, seed=cfg.seed, samples=n_samples, failures=bad))

    if want("levi-fixed-block-form") and m % 2 == 0:
        rng = _rng(cfg, "levi-fixed-block-form")
        k = m // 2
        fixed_ok = all(
            th.fixed_points_membership(th.levi_block_fixed(random_invertible(rng, k, fcfg, 2), fcfg), theta)
            for _ in range(min(n_samples, 50))
        )
        counter = None
        for _ in range(50):
            x = random_invertible(rng, k, fcfg, 2)
            g = EMatrix.block_diag(x, x)
            if not th.fixed_points_membership(g, theta):
                counter = str(x)
                break
        recs.append(_record("levi-fixed-block-form", fixed_ok and counter is not None, seed=cfg.seed, counterexample=counter))

    if want("balanced-parabolic-classification") or want("elliptic-levi-flag"):
        mism_stable, mism_ell, count = [], [], 0
        for shape in th.partitions(m):
            count += 1
            c = th.classify_parabolic(shape)
            if c["theta_stable"] != th.unipotent_pattern_stable(shape, fcfg):
                mism_stable.append(list(shape.parts))
            if c["theta_elliptic_levi"] != th.elliptic_by_split_rank(shape):
                mism_ell.append(list(shape.parts))
        if want("balanced-parabolic-classification"):
            recs.append(_record("balanced-parabolic-classification", not mism_stable, partitions=count, mismatches=mism_stable))
        if want("elliptic-levi-flag"):
            recs.append(_record("elliptic-levi-flag", not mism_ell, partitions=count, mismatches=mism_ell))

    if want("diagonal-split-criterion"):
        rng = _rng(cfg, "diagonal-split-criterion")
        bad = 0
        for i in range(min(n_samples, 50)):
            a = [fcfg.element(rng.choice([1, 2, 3, -1]), 0) for _ in range(m)]
            if i % 2:
                a = [a[min(j, m - 1 - j)] for j in range(m)]
            palindromic = all(a[j] == a[m - 1 - j] for j in range(m))
            bad += th.is_theta_split_diagonal(a, fcfg) != palindromic
        recs.append(_record("diagonal-split-criterion", bad == 0, seed=cfg.seed, samples=min(n_samples, 50), failures=bad))

    if want("split-torus-A0"):
        rng = _rng(cfg, "split-torus-A0")
        bad = 0
        for _ in range(min(n_samples, 50)):
            t = [fcfg.element(rng.choice([1, 2, 3, -1, Fraction(1, 2)]), 0) for _ in range(m)]
            s = th.A0_element(t, fcfg)
            bad += theta(s) != s.inverse()
        recs.append(_record("split-torus-A0", bad == 0, seed=cfg.seed, samples=min(n_samples, 50), failures=bad))

    if want("root-action-A0-negation"):
        act = th.action_on_A0(m)
        ok = all(act(a) == tuple(-x for x in a) for a in RootDatum(m).roots) and not th.theta_fixed_roots(act)
        recs.append(_record("root-action-A0-negation", ok, roots=m * (m - 1)))

    if want("theta-base-A0"):
        ok = th.is_theta_base(RootDatum(m).simple_roots, th.action_on_A0(m))
        recs.append(_record("theta-base-A0", ok))

    if want("theta-base-AT-conjugate"):
        act = th.action_on_AT(m)
        standard = th.is_theta_base(RootDatum(m).simple_roots, act)
        found = None
        for w in RootDatum(m).weyl_group():
            base = [w.act(a) for a in RootDatum(m).simple_roots]
            if th.is_theta_base(base, act):
                found = w.one_line()
                break
        ok = found is not None and standard == (m <= 2)
        recs.append(_record("theta-base-AT-conjugate", ok, standard_base_is_theta_base=standard, conjugating_w=found))

    if want("restricted-roots-A0"):
        rs = th.restricted_roots(RootDatum(m).simple_roots, th.action_on_A0(m))
        phi = {tuple(Fraction(x) for x in a) for a in RootDatum(m).roots}
        ok = set(rs.roots) == phi and set(rs.roots.values()) <= {1} and rs.kernel_rank == 0
        recs.append(_record("restricted-roots-A0", ok, count=len(rs.roots), kernel_rank=rs.kernel_rank))

    if want("levi-fixed-form") and m % 2 == 0:
        rng = _rng(cfg, "levi-fixed-form")
        x1, x2 = th.levi_fixed_form(EMatrix.identity(m, fcfg.d), fcfg)
        k = m // 2
        ok = x1 == EMatrix.scalar(k, 2, fcfg.d) and x2 == EMatrix.scalar(k, -2, fcfg.d)
        samples = min(n_samples, 20)
        classes = set()
        for _ in range(samples):
            g = th.sample_HT0(rng, m, fcfg)
            y1, y2 = th.levi_fixed_form(g, fcfg)
            classes.add((orbit_invariant(y1, fcfg).class_id, orbit_invariant(y2, fcfg).class_id))
        rejected = False
        for _ in range(20):
            try:
                th.levi_fixed_form(random_invertible(rng, m, fcfg, 2), fcfg)
            except ValueError:
                rejected = True
                break
        recs.append(
            _record(
                "levi-fixed-form",
                ok and rejected,
                seed=cfg.seed,
                samples=samples,
                identity_blocks=[str(x1), str(x2)],
                block_classes=sorted(list(c) for c in classes),
                invalid_g_rejected=rejected,
            )
        )

    if want("elliptic-conjugate-criterion") and m % 2 == 0 and m <= 6:
        bad = [
            w.one_line()
            for w in RootDatum(m).weyl_group()
            if th.theta_elliptic_conjugate(w) != th.theta_elliptic_conjugate_oracle(w)
        ]
        recs.append(_record("elliptic-conjugate-criterion", not bad, permutations=math.factorial(m), mismatches=bad))

    if want("quasi-split-form-class"):
        cls = orbit_invariant(th.antidiagonal(m, fcfg), fcfg)
        recs.append(_record("quasi-split-form-class", True, det=str(th.antidiagonal(m, fcfg).det()), norm_class=cls.class_id))
    return recs


# cosets


def cosets_suite(cfg: RunConfig) -> list[dict]:
    m = cfg.rank
    recs = []
    if m % 2 == 0:
        n = m // 2
        theta = SimpleSubset.maximal(m, n)
        reps = double_coset_reps(theta, theta)
        cases = [case_classify(w, theta, theta) for w in reps]
        ok = len(reps) == n + 1 and cases.count("Case1") == 2
        recs.append(
            _record(
                "coset-count",
                ok,
                theta=theta.sorted(),
                representatives=[w.one_line() for w in reps],
                cases=cases,
            )
        )
    if m <= 6:
        bad = []
        for theta, omega in itertools.product(maximal_subsets(m), repeat=2):
            reps = set(double_coset_reps(theta, omega, "exhaustive"))
            parts = double_coset_partition(theta, omega)
            hits = [len(reps & p) for p in parts]
            minimal = all(min(p, key=lambda w: w.length()) in reps for p in parts)
            total = sum(len(p) for p in parts)
            if any(h != 1 for h in hits) or not minimal or total != math.factorial(m):
                bad.append([theta.sorted(), omega.sorted()])
        recs.append(_record("coset-transversal", not bad, pairs=(m - 1) ** 2, failures=bad))
    if m <= 8:
        bad = [
            [t.sorted(), o.sorted()]
            for t, o in itertools.product(maximal_subsets(m), repeat=2)
            if double_coset_reps(t, o, "exhaustive") != double_coset_reps(t, o, "traversal")
        ]
        recs.append(_record("coset-traversal-agreement", not bad, pairs=(m - 1) ** 2, failures=bad))
    return recs


# cones


def cone_records(m: int, all_omegas: bool = True, box: bool = True) -> list[dict]:
    """Per-(Theta, Omega, w) containment records for every Case2 representative."""
    out = []
    omegas = maximal_subsets(m) if all_omegas or m % 2 else [SimpleSubset.maximal(m, m // 2)]
    for omega in omegas:
        for theta in maximal_subsets(m):
            for w in double_coset_reps(theta, omega):
                if case_classify(w, theta, omega) == "Case1":
                    continue
                res = containment_check(theta, w, omega, box_bound=4 if box else None)
                out.append(
                    {
                        "theta": theta.sorted(),
                        "omega": omega.sorted(),
                        "w": w.one_line(),
                        "verdict": res.holds,
                        "certificate_valid": certificates_valid(res),
                        "certificate": [c.to_json() for c in res.certificates],
                        "strictness": [s.to_json() for s in res.strictness],
                        "oracle_agreement": res.oracle_agreement,
                        "box_scan": res.box_scan,
                    }
                )
    return out


def cones_suite(cfg: RunConfig) -> list[dict]:
    m = cfg.rank
    recs = []
    rows = cone_records(m)
    ok = all(r["verdict"] and r["certificate_valid"] and r["oracle_agreement"] is not False for r in rows)
    compact = [
        {k: r[k] for k in ("theta", "omega", "w", "verdict", "certificate_valid", "oracle_agreement")} for r in rows
    ]
    recs.append(_record("cone-containment", ok, instances=compact))

    bad = []
    for omega in maximal_subsets(m):
        for theta in maximal_subsets(m):
            for w in double_coset_reps(theta, omega):
                if case_classify(w, theta, omega) == "Case2":
                    f = falsified_containment(theta, w, omega)
                    if f.holds or not witness_is_valid(f):
                        bad.append([theta.sorted(), omega.sorted(), w.one_line()])
    recs.append(_record("cone-falsified-witness", not bad, failures=bad))

    rng = _rng(cfg, "cone-transport")
    n_perm = 20
    bad = []
    omega = SimpleSubset.maximal(m, m // 2) if m >= 2 else None
    for theta in maximal_subsets(m):
        for w in double_coset_reps(theta, omega):
            if case_classify(w, theta, omega) != "Case2":
                continue
            base = containment_check(theta, w, omega, box_bound=None).holds
            for _ in range(n_perm):
                perm = list(range(m))
                rng.shuffle(perm)
                res = transported_containment(theta, w, omega, WeylElement(tuple(perm)))
                if res.holds != base or not certificates_valid(res):
                    bad.append([theta.sorted(), w.one_line(), perm])
    recs.append(_record("cone-transport", not bad, seed=cfg.seed, permutations_per_instance=n_perm, failures=bad))
    return recs


# orbits


def orbits_suite(cfg: RunConfig) -> list[dict]:
    fcfg, m = cfg.field, max(2, min(cfg.rank, 3))
    recs = []
    rng = _rng(cfg, "norm-class-count")
    classes = {orbit_invariant(random_hermitian(rng, m, fcfg), fcfg).class_id for _ in range(cfg.samples)}
    recs.append(_record("norm-class-count", len(classes) == 2, seed=cfg.seed, samples=cfg.samples, classes=sorted(classes), size=m))

    rng = _rng(cfg, "orbit-invariance")
    bad = 0
    for _ in range(cfg.samples):
        x = random_hermitian(rng, m, fcfg)
        g = random_invertible(rng, m, fcfg, 2)
        bad += orbit_invariant(x, fcfg).class_id != orbit_invariant(x.act(g), fcfg).class_id
    recs.append(_record("orbit-invariance", bad == 0, seed=cfg.seed, samples=cfg.samples, failures=bad))

    rng = _rng(cfg, "hilbert-symbol-oracle")
    bad = []
    pairs = 100
    for _ in range(pairs):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 300), rng.randint(1, 20))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 300), rng.randint(1, 20))
        if hilbert_symbol(a, b, fcfg.p) != hilbert_symbol_bruteforce(a, b, fcfg.p):
            bad.append([str(a), str(b)])
    recs.append(_record("hilbert-symbol-oracle", not bad, seed=cfg.seed, pairs=pairs, failures=bad))
    return recs


# certify


def default_tau(n: int) -> tuple[str, str]:
    return f"steinberg:k={n},rho=chi1", "chi1:chi2"


def certify_suite(cfg: RunConfig) -> list[dict]:
    n = cfg.rank // 2
    tau_spec, pairs = default_tau(n)
    if cfg.tau is not None:
        tau_spec, pairs = cfg.tau, cfg.sigma_pairs or ""
    elif cfg.sigma_pairs is not None:
        pairs = cfg.sigma_pairs
    tau = parse_tau(tau_spec, parse_sigma_pairs(pairs), n)
    if tau.size != n:
        raise ValueError(f"tau has size {tau.size}, expected n = {n}")
    cert = certify_rds(InducedDatum(tau))
    return [_record("rds-certificate", cert.rds, tau=tau_spec, sigma_pairs=pairs, certificate=cert.to_json())]


SUITE_RUNNERS: dict[str, Callable[[RunConfig], list[dict]]] = {
    "certify": certify_suite,
    "cones": cones_suite,
    "cosets": cosets_suite,
    "orbits": orbits_suite,
    "structure": structure_suite,
}


def run(cfg: RunConfig) -> dict:
    """Run the configured suites in name order and assemble the report."""
    suites = {}
    for name in cfg.suites:
        records = sorted(SUITE_RUNNERS[name](cfg), key=lambda r: r["lemma"])
        suites[name] = {"status": "pass" if all(r["status"] == "pass" for r in records) else "fail", "records": records}
    status = "pass" if all(s["status"] == "pass" for s in suites.values()) else "fail"
    return {"tool": "unitary-rds", "version": __version__, "config": cfg.to_json(), "suites": suites, "status": status}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def summary_lines(report: dict) -> list[str]:
    lines = []
    for name, suite in report["suites"].items():
        for r in suite["records"]:
            lines.append(f"{r['status'].upper():4}  {name}/{r['lemma']}")
    lines.append(f"overall: {report['status']}")
    return lines
