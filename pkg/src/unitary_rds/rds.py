"""Formal discrete series of GL_n(E) and the certifier for pi = Ind(tau' x s(tau')).

Representations are labels.  Equivalence, the Galois twist and the
distinction criteria are rules of the model, encoded below and recorded in
each certificate; only exponent bookkeeping and cone inequalities are
computed.

Exponents are real parts of unramified characters on the valuation lattice:
c in Q^m means |chi(a)| = q^(-<c, v(a)>).  nu^s on a GL_r block therefore
contributes s to each of its r coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cones import (
    _dot,
    containment_check,
    split_dominant_part,
    target_cone,
)
from .root_weyl import (
    PartitionShape,
    RootDatum,
    SimpleSubset,
    WeylElement,
    block_swap,
    case_classify,
    double_coset_reps,
    levi_intersection,
    maximal_subsets,
    subset_to_partition,
)

ExponentVector = tuple[Fraction, ...]

STRICT_DECAY = "StrictDecay"
NON_DISTINGUISHED = "NonDistinguished"
FAIL = "FAIL"
NOT_CERTIFIED = "not certified by this criterion route"
CERTIFIED = "relative discrete series, not in the discrete series of G"

# Rules the certificate relies on without recomputing them.
RULES = {
    "galois_invariance_iff_unitary_distinction": (
        "a discrete series of GL_r(E) is distinguished by a unitary group iff it is Galois invariant"
    ),
    "multiplicity_at_most_one": "dim Hom_H(pi, 1) <= 1 for unitary H; recorded, not used by any check",
    "levi_distinction_iff_twisted_pair": "pi_1 x pi_2 is L^theta-distinguished iff pi_2 is the Galois twist of pi_1",
    "regular_unitary_induction_irreducible": "Ind(tau' x s(tau')) is irreducible (Bruhat theory); assumed",
    "nondistinguished_eigenspace_vanishing": (
        "the invariant form restricted to a non-distinguished generalized eigenspace is zero"
    ),
    "steinberg_galois_invariance": "St(k, rho) is Galois invariant iff rho is",
    "case2_discharge_via_levi_casselman": (
        "Case2 exponents decay on the Levi dominant cone; the cited Levi-exponent lemma is assumed to "
        "cover the passage to Exp_{S_M}"
    ),
    "nonstandard_parabolics_by_transport": (
        "theta-split parabolics that are not gamma-standard are reduced to standard ones by conjugation transport"
    ),
    "properly_induced_not_discrete_series": "a representation induced from a proper parabolic is not in the discrete series of G",
}


# formal representations


@dataclass(frozen=True)
class FormalSupercuspidal:
    """An opaque supercuspidal of GL_size(E).

    ``unitary_central_twist`` is the (imaginary) exponent t of a unitary twist
    |det|^{it}; it contributes nothing to real exponents.
    """

    label: str
    size: int
    sigma_label: str
    unitary_central_twist: float = 0.0

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("size must be positive")

    def twist(self) -> FormalSupercuspidal:
        return FormalSupercuspidal(self.sigma_label, self.size, self.label, self.unitary_central_twist)

    def galois_invariant(self) -> bool:
        return self.label == self.sigma_label

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "size": self.size,
            "sigma_label": self.sigma_label,
            "unitary_central_twist": self.unitary_central_twist,
        }


@dataclass(frozen=True)
class FormalDiscreteSeries:
    """St(k, rho), the unique irreducible quotient of Ind(nu^{(1-k)/2} rho x ... x nu^{(k-1)/2} rho).

    k = 1 is rho itself (a bare supercuspidal).  A twisted Steinberg chi.St_k
    is St(k, chi) with chi of size one.
    """

    rho: FormalSupercuspidal
    k: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("segment length must be positive")

    @classmethod
    def supercuspidal(cls, rho: FormalSupercuspidal) -> FormalDiscreteSeries:
        return cls(rho, 1)

    @classmethod
    def steinberg(cls, k: int, rho: FormalSupercuspidal) -> FormalDiscreteSeries:
        return cls(rho, k)

    @property
    def kind(self) -> str:
        return "supercuspidal" if self.k == 1 else "steinberg"

    @property
    def size(self) -> int:
        return self.k * self.rho.size

    @property
    def label(self) -> str:
        return self.rho.label if self.k == 1 else f"St({self.k},{self.rho.label})"

    def twist(self) -> FormalDiscreteSeries:
        return FormalDiscreteSeries(self.rho.twist(), self.k)

    def segment(self) -> list[Fraction]:
        """Exponents of nu along the segment, increasing by one: (1-k)/2, ..., (k-1)/2."""
        return [Fraction(1 - self.k, 2) + i for i in range(self.k)]

    def base_exponent(self) -> ExponentVector:
        """Exponent of the minimal nonzero Jacquet module, along (r, ..., r).

        Blocks carry the segment in decreasing order ((k-1)/2 first), each
        value repeated r = size(rho) times.
        """
        r = self.rho.size
        return tuple(s for s in reversed(self.segment()) for _ in range(r))

    def jacquet_exponent(self, parts: Sequence[int]) -> ExponentVector | None:
        """Central exponent of the Jacquet module along the standard parabolic of shape ``parts``.

        None when the Jacquet module vanishes (some part is not a multiple of r).
        """
        if sum(parts) != self.size:
            raise ValueError("shape does not match the size")
        r = self.rho.size
        if any(p % r for p in parts):
            return None
        base = self.base_exponent()
        out: list[Fraction] = []
        k = 0
        for p in parts:
            avg = sum(base[k : k + p], Fraction(0)) / p
            out.extend([avg] * p)
            k += p
        return tuple(out)

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "rho": self.rho.to_json(), "label": self.label}


def galois_invariant(tau: FormalDiscreteSeries | FormalSupercuspidal) -> bool:
    if isinstance(tau, FormalSupercuspidal):
        return tau.galois_invariant()
    return tau.rho.galois_invariant()


def equivalent(a: FormalDiscreteSeries, b: FormalDiscreteSeries) -> bool:
    return a.k == b.k and a.rho == b.rho


def ltheta_distinguished(pi1: FormalDiscreteSeries, pi2: FormalDiscreteSeries) -> bool:
    """pi1 x pi2 is L^theta-distinguished iff pi2 is the Galois twist of pi1."""
    if pi1.size != pi2.size:
        raise ValueError("L^theta distinction needs factors of equal size")
    return equivalent(pi2, pi1.twist())


@dataclass(frozen=True)
class InducedDatum:
    """tau = tau' x s(tau') on L = M_(n,n) of GL_2n(E)."""

    tau_prime: FormalDiscreteSeries

    @property
    def n(self) -> int:
        return self.tau_prime.size

    @property
    def rank(self) -> int:
        return 2 * self.n

    @property
    def twisted(self) -> FormalDiscreteSeries:
        return self.tau_prime.twist()

    def factors(self) -> tuple[FormalDiscreteSeries, FormalDiscreteSeries]:
        return self.tau_prime, self.twisted

    def omega(self) -> SimpleSubset:
        return SimpleSubset.maximal(self.rank, self.n)

    def swapped(self) -> InducedDatum:
        return InducedDatum(self.twisted)

    def to_json(self) -> dict:
        return {"n": self.n, "tau_prime": self.tau_prime.to_json(), "twist": self.twisted.to_json()}


# case analysis


def _levi_rep(datum: InducedDatum, w: WeylElement) -> str:
    if w.is_identity():
        return "identity"
    if w == block_swap(datum.n):
        return "w_L"
    raise ValueError(f"{w.one_line()} is neither the identity nor the block swap")


def case1_subquotients(
    datum: InducedDatum, w: WeylElement, theta: SimpleSubset | None = None
) -> tuple[FormalDiscreteSeries, FormalDiscreteSeries]:
    """The subquotient of the Jacquet module attached to a Case1 representative.

    The identity gives tau' x s(tau'); the block swap w_L gives s(tau') x tau'.
    """
    omega = datum.omega()
    theta = theta if theta is not None else omega
    if case_classify(w, theta, omega) != "Case1":
        raise ValueError("case1_subquotients needs a Case1 representative")
    tau, stau = datum.factors()
    return (tau, stau) if _levi_rep(datum, w) == "identity" else (stau, tau)


def case1_central_exponent(datum: InducedDatum, w: WeylElement) -> ExponentVector:
    """Real central exponent of the Case1 subquotient on A_Theta: zero (unitary)."""
    a, b = case1_subquotients(datum, w)
    n = datum.n
    first = a.jacquet_exponent([n])
    second = b.jacquet_exponent([n])
    return tuple(first) + tuple(second)


def mtheta_distinguished(pi1: FormalDiscreteSeries, pi2: FormalDiscreteSeries) -> bool:
    """pi1 x pi2 is distinguished by U_{x1} x U_{x2} iff both factors are Galois invariant."""
    return galois_invariant(pi1) and galois_invariant(pi2)


def case1_mtheta_distinguished(
    datum: InducedDatum, w: WeylElement, orbit_data: object | None = None
) -> bool:
    """M^theta-distinction of the Case1 subquotient.

    ``orbit_data`` (the Hermitian classes of M^theta) is accepted for the
    record; the rule does not depend on it.
    """
    pi1, pi2 = case1_subquotients(datum, w)
    return mtheta_distinguished(pi1, pi2)


def restricted_to_omega(w: WeylElement, theta: SimpleSubset, omega: SimpleSubset) -> SimpleSubset:
    """Omega' = {j in Omega : w alpha_j in Theta}, so M_Omega cap w^-1 M_Theta w = M_Omega'."""
    rd = RootDatum(theta.m)
    theta_roots = set(theta.roots())
    return SimpleSubset(theta.m, frozenset(j for j in omega.sorted() if w.act(rd.simple_root(j)) in theta_roots))


def case2_exponents(
    datum: InducedDatum, theta: SimpleSubset, w: WeylElement, omega: SimpleSubset | None = None
) -> list[ExponentVector]:
    """Exponents along A_{Theta cap w Omega} contributed by a Case2 representative.

    Take the Jacquet module of tau along M_Omega' (per factor), move it by w
    (c'_{w(i)} = c_i) and restrict to A_{Theta cap w Omega} by block averages.
    Empty when the Jacquet module vanishes.
    """
    omega = omega if omega is not None else datum.omega()
    if omega != datum.omega():
        raise ValueError("Omega must be the inducing subset Delta minus alpha_n")
    if case_classify(w, theta, omega) != "Case2":
        raise ValueError("case2_exponents needs a Case2 representative")
    n = datum.n
    parts = subset_to_partition(restricted_to_omega(w, theta, omega)).parts
    # the cut at n is never in Omega', so the parts split between the two factors
    first, acc = [], 0
    for p in parts:
        if acc >= n:
            break
        first.append(p)
        acc += p
    second = list(parts[len(first) :])
    tau, stau = datum.factors()
    c1 = tau.jacquet_exponent(first)
    c2 = stau.jacquet_exponent(second)
    if c1 is None or c2 is None:
        return []
    c = c1 + c2
    moved = [Fraction(0)] * datum.rank
    for i, x in enumerate(c):
        moved[w.perm[i]] = x
    blocks = levi_intersection(w, theta, omega).blocks()
    out = [Fraction(0)] * datum.rank
    for blk in blocks:
        avg = sum((moved[i] for i in blk), Fraction(0)) / len(blk)
        for i in blk:
            out[i] = avg
    return [tuple(out)]


# certificate


@dataclass
class CertificateEntry:
    theta: SimpleSubset
    w: WeylElement
    case: str
    verdict: str
    evidence: dict

    def to_json(self) -> dict:
        return {
            "theta": self.theta.sorted(),
            "partition": list(subset_to_partition(self.theta).parts),
            "w": self.w.one_line(),
            "case": self.case,
            "verdict": self.verdict,
            "evidence": self.evidence,
        }


@dataclass
class RdsCertificate:
    datum: InducedDatum
    entries: list[CertificateEntry]
    regular: bool
    relatively_supercuspidal: bool
    metadata: dict = field(default_factory=dict)

    @property
    def rds(self) -> bool:
        return all(e.verdict != FAIL for e in self.entries)

    @property
    def verdict(self) -> str:
        return CERTIFIED if self.rds else NOT_CERTIFIED

    def failures(self) -> list[CertificateEntry]:
        return [e for e in self.entries if e.verdict == FAIL]

    def to_json(self) -> dict:
        return {
            "datum": self.datum.to_json(),
            "rds": self.rds,
            "verdict": self.verdict,
            "regular": self.regular,
            "relatively_supercuspidal": self.relatively_supercuspidal,
            "entries": [e.to_json() for e in self.entries],
            "metadata": self.metadata,
        }


def _fmt(vec: Iterable[Fraction]) -> list[str]:
    return [str(x) for x in vec]


def _case2_entry(datum: InducedDatum, theta: SimpleSubset, w: WeylElement, omega: SimpleSubset) -> CertificateEntry:
    exps = case2_exponents(datum, theta, w, omega)
    containment = containment_check(theta, w, omega, box_bound=None)
    source_rays = split_dominant_part(theta).extreme_rays()
    target_rays = target_cone(theta, w, omega).extreme_rays()
    evidence: dict = {
        "containment_holds": containment.holds,
        "exponents": [_fmt(c) for c in exps],
        "source_rays": [list(r) for r in source_rays],
        "target_rays": [list(r) for r in target_rays],
    }
    if not exps:
        evidence["reason"] = "Jacquet module vanishes"
        return CertificateEntry(theta, w, "Case2", STRICT_DECAY, evidence)
    pairings = []
    ok = containment.holds
    for c in exps:
        src = [_dot(c, r) for r in source_rays]
        tgt = [_dot(c, r) for r in target_rays]
        pairings.append({"source": _fmt(src), "target": _fmt(tgt), "central_sum": str(sum(c))})
        ok = ok and all(x > 0 for x in src) and all(x > 0 for x in tgt)
    evidence["pairings"] = pairings
    return CertificateEntry(theta, w, "Case2", STRICT_DECAY if ok else FAIL, evidence)


def _case1_entry(datum: InducedDatum, theta: SimpleSubset, w: WeylElement, omega: SimpleSubset, orbit_data) -> CertificateEntry:
    pi1, pi2 = case1_subquotients(datum, w, theta)
    central = case1_central_exponent(datum, w)
    rays = split_dominant_part(theta).extreme_rays()
    distinguished = case1_mtheta_distinguished(datum, w, orbit_data)
    evidence = {
        "subquotient": [pi1.label, pi2.label],
        "galois_invariant": [galois_invariant(pi1), galois_invariant(pi2)],
        "central_exponent": _fmt(central),
        "ray_pairings": _fmt(_dot(central, r) for r in rays),
        "mtheta_distinguished": distinguished,
    }
    if orbit_data is not None:
        evidence["orbit_data"] = orbit_data
    verdict = FAIL if distinguished else NON_DISTINGUISHED
    return CertificateEntry(theta, w, "Case1", verdict, evidence)


def certify_rds(datum: InducedDatum, orbit_data: object | None = None) -> RdsCertificate:
    """Replay the relative Casselman check over all maximal standard parabolics."""
    if datum.rank < 4:
        raise ValueError("certification needs rank 2n >= 4")
    omega = datum.omega()
    entries: list[CertificateEntry] = []
    for theta in maximal_subsets(datum.rank):
        for w in double_coset_reps(theta, omega):
            if case_classify(w, theta, omega) == "Case1":
                entries.append(_case1_entry(datum, theta, w, omega, orbit_data))
            else:
                entries.append(_case2_entry(datum, theta, w, omega))
    regular = not equivalent(datum.tau_prime, datum.twisted)
    relatively_sc = all(
        (e.case == "Case2" and not e.evidence["exponents"]) or (e.case == "Case1" and e.verdict == NON_DISTINGUISHED)
        for e in entries
    )
    metadata = {
        "rules": dict(sorted(RULES.items())),
        "assumed": ["regular_unitary_induction_irreducible", "case2_discharge_via_levi_casselman"],
        "recorded_only": ["multiplicity_at_most_one"],
        "omega": omega.sorted(),
        "valuation_convention": "|chi(a)| = q^(-<c, v(a)>)",
    }
    return RdsCertificate(datum, entries, regular, relatively_sc, metadata)


def parse_tau(spec: str, sigma_pairs: Mapping[str, str] | None = None, n: int | None = None) -> FormalDiscreteSeries:
    """Parse 'steinberg:k=2,rho=chi1' or 'supercuspidal:rho=rho1[,size=r]'.

    Steinberg factors default to rho of size n/k; supercuspidals to size n.
    """
    sigma = dict(sigma_pairs or {})
    try:
        kind, _, rest = spec.partition(":")
        fields = dict(item.split("=", 1) for item in rest.split(",") if item)
    except ValueError as exc:
        raise ValueError(f"cannot parse tau {spec!r}") from exc
    label = fields.get("rho")
    if not label:
        raise ValueError(f"tau {spec!r} names no rho")
    twist = float(fields.get("twist", 0.0))
    sigma_label = sigma.get(label, label)
    if kind == "steinberg":
        k = int(fields.get("k", 1))
        if "size" in fields:
            size = int(fields["size"])
        elif n is not None:
            if n % k:
                raise ValueError(f"k = {k} does not divide n = {n}")
            size = n // k
        else:
            size = 1
        return FormalDiscreteSeries.steinberg(k, FormalSupercuspidal(label, size, sigma_label, twist))
    if kind == "supercuspidal":
        size = int(fields.get("size", n if n is not None else 1))
        return FormalDiscreteSeries.supercuspidal(FormalSupercuspidal(label, size, sigma_label, twist))
    raise ValueError(f"unknown representation kind {kind!r}")


def parse_sigma_pairs(text: str | Sequence[str] | None) -> dict[str, str]:
    """'chi1:chi2,rho1:rho2' -> the involution swapping each pair."""
    if not text:
        return {}
    items = text.split(",") if isinstance(text, str) else list(text)
    out: dict[str, str] = {}
    for item in items:
        a, sep, b = item.strip().partition(":")
        if not sep or not a or not b:
            raise ValueError(f"bad sigma pair {item!r}")
        for x, y in ((a, b), (b, a)):
            if out.get(x, y) != y:
                raise ValueError(f"label {x!r} is paired twice")
            out[x] = y
    return out


def relabel(tau: FormalDiscreteSeries, mapping: Mapping[str, str]) -> FormalDiscreteSeries:
    rho = tau.rho
    new = replace(rho, label=mapping.get(rho.label, rho.label), sigma_label=mapping.get(rho.sigma_label, rho.sigma_label))
    return FormalDiscreteSeries(new, tau.k)


def strip_labels(cert_json: dict) -> dict:
    """The certificate with opaque labels removed, for relabeling comparisons."""
    out = dict(cert_json)
    out.pop("datum", None)
    entries = []
    for e in out["entries"]:
        e = dict(e)
        ev = dict(e["evidence"])
        ev.pop("subquotient", None)
        e["evidence"] = ev
        entries.append(e)
    out["entries"] = entries
    return out


def block_shape(n: int) -> PartitionShape:
    return PartitionShape((n, n))
