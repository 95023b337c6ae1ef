"""Valuation-lattice cones of split tori and exact containment certificates.

A diagonal element a is recorded by its valuation vector v(a) in Z^m.  The
normalization is |chi(a)| = q^(-<c, v(a)>), so

    |alpha(a)| <= 1  <=>  <alpha, v> >= 0
    |chi(a)|   <  1  <=>  <c, v> > 0.

A cone is {v : E v = 0, F v >= 0}; its excluded part (units times the
relevant center) is the lineality space {E v = 0, F v = 0}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .ematrix import EMatrix
from .fourier_motzkin import Feasible, check_point, solve_homogeneous
from .linalg import nullspace, rank, solve
from .oracles import box_scan_containment
from .root_weyl import (
    RootDatum,
    SimpleSubset,
    Vector,
    WeylElement,
    case_classify,
    image_of_subset,
    levi_intersection,
)

BOX_BOUND = 4
BOX_SCAN_MAX_RANK = 6


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def _primitive(vec: Sequence[Fraction]) -> Vector:
    scale = lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * scale) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


@dataclass(frozen=True)
class ValuationCone:
    """{v in Z^m : <e, v> = 0 for e in equalities, <f, v> >= depth for f in inequalities}.

    ``depth`` > 0 models the shrunken dominant part |alpha| <= q^-depth; only
    depth 0 is a cone, and certificates require it.
    """

    m: int
    equalities: tuple[Vector, ...]
    inequalities: tuple[Vector, ...]
    depth: int = 0
    label: str = ""

    def __post_init__(self) -> None:
        for row in self.equalities + self.inequalities:
            if len(row) != self.m:
                raise ValueError("functional of the wrong length")

    def contains(self, v: Sequence[int]) -> bool:
        return all(_dot(e, v) == 0 for e in self.equalities) and all(
            _dot(f, v) >= self.depth for f in self.inequalities
        )

    def in_exclusion(self, v: Sequence[int]) -> bool:
        """v lies in the lineality space, where all defining functionals vanish."""
        return all(_dot(r, v) == 0 for r in self.equalities + self.inequalities)

    def contains_strict(self, v: Sequence[int]) -> bool:
        return self.contains(v) and not self.in_exclusion(v)

    def lineality_basis(self) -> list[tuple[Fraction, ...]]:
        return nullspace(list(self.equalities + self.inequalities), self.m)

    def negate(self) -> ValuationCone:
        return ValuationCone(self.m, self.equalities, tuple(tuple(-x for x in f) for f in self.inequalities), self.depth)

    def relabel(self, w: WeylElement) -> ValuationCone:
        """The cone {w.v : v in self}: functionals transform as c -> w.c."""
        return ValuationCone(
            self.m,
            tuple(w.act(e) for e in self.equalities),
            tuple(w.act(f) for f in self.inequalities),
            self.depth,
            self.label,
        )

    def is_simplicial(self) -> bool:
        """The inequalities stay independent modulo the equalities."""
        return rank(list(self.equalities + self.inequalities)) == rank(list(self.equalities)) + len(
            self.inequalities
        )

    def extreme_rays(self) -> list[Vector]:
        """Primitive generators of the cone modulo its lineality space.

        Ray j solves E r = 0, F r = e_j and is orthogonal to the lineality
        space; only simplicial cones are supported.
        """
        if not self.is_simplicial():
            raise NotImplementedError("extreme rays are implemented for simplicial cones only")
        lineality = self.lineality_basis()
        # drop dependent equalities so the system below is square
        eqs: list[Vector] = []
        for e in self.equalities:
            if rank(eqs + [e]) > len(eqs):
                eqs.append(e)
        rays = []
        for j in range(len(self.inequalities)):
            rows = list(eqs) + list(self.inequalities) + [list(b) for b in lineality]
            rhs = [0] * len(eqs) + [int(k == j) for k in range(len(self.inequalities))] + [0] * len(lineality)
            rays.append(_primitive(solve(rows, rhs)))
        return rays

    def as_pair(self) -> tuple[list[Vector], list[Vector]]:
        return list(self.equalities), list(self.inequalities)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "label": self.label,
            "equalities": [list(e) for e in self.equalities],
            "inequalities": [list(f) for f in self.inequalities],
            "depth": self.depth,
        }


def cone_from_roots(
    m: int, tied: Sequence[Vector], dominant: Sequence[Vector], label: str = "", depth: int = 0
) -> ValuationCone:
    return ValuationCone(m, tuple(tuple(r) for r in tied), tuple(tuple(r) for r in dominant), depth, label)


def dominant_part(theta: SimpleSubset, within: SimpleSubset | None = None, depth: int = 0) -> ValuationCone:
    """A_Theta^{-within}: the center of M_Theta, dominant for the roots of within minus Theta.

    ``within`` defaults to all of Delta (dominance in G); Theta must be
    contained in it.
    """
    m = theta.m
    outer = within if within is not None else SimpleSubset.full(m)
    if outer.m != m or not theta <= outer:
        raise ValueError("dominant_part needs Theta contained in the ambient subset")
    rd = RootDatum(m)
    tied = [rd.simple_root(i) for i in theta.sorted()]
    dominant = [rd.simple_root(i) for i in outer.sorted() if i not in theta]
    label = f"A_{theta.sorted()}^-{outer.sorted()}"
    return cone_from_roots(m, tied, dominant, label, depth)


def split_dominant_part(theta: SimpleSubset, depth: int = 0) -> ValuationCone:
    """S_Theta^-: in the gamma-conjugated coordinates the split torus is all of A_0,

    so S_Theta carries the same lattice as A_Theta.
    """
    cone = dominant_part(theta, depth=depth)
    return ValuationCone(cone.m, cone.equalities, cone.inequalities, depth, f"S_{theta.sorted()}^-")


def target_cone(theta: SimpleSubset, w: WeylElement, omega: SimpleSubset) -> ValuationCone:
    """A_{Theta cap w Omega}^{-w Omega}: ties from Theta cap w Omega, dominance for the rest of w Omega."""
    m = theta.m
    inter = levi_intersection(w, theta, omega)
    tied = inter.roots()
    tied_set = set(tied)
    dominant = [r for r in image_of_subset(w, omega) if r not in tied_set]
    return cone_from_roots(m, tied, dominant, f"A_{inter.sorted()}^-w{omega.sorted()}")


@dataclass
class FarkasCertificate:
    """target = sum_i ineq_mult_i F_i + sum_j eq_mult_j E_j with ineq_mult >= 0."""

    target: Vector
    ineq_mult: tuple[Fraction, ...]
    eq_mult: tuple[Fraction, ...]

    def verify(self, source: ValuationCone) -> bool:
        if any(x < 0 for x in self.ineq_mult):
            return False
        combo = [Fraction(0)] * source.m
        for lam, f in zip(self.ineq_mult, source.inequalities):
            combo = [c + lam * x for c, x in zip(combo, f)]
        for mu, e in zip(self.eq_mult, source.equalities):
            combo = [c + mu * x for c, x in zip(combo, e)]
        return tuple(combo) == tuple(Fraction(x) for x in self.target)

    def to_json(self) -> dict:
        return {
            "target": list(self.target),
            "inequality_multipliers": [str(x) for x in self.ineq_mult],
            "equality_multipliers": [str(x) for x in self.eq_mult],
        }


def implied_functional(source: ValuationCone, target: Sequence[int]) -> FarkasCertificate | tuple[int, ...]:
    """Certificate that <target, v> >= 0 on the source cone, or an integer point violating it."""
    if source.depth:
        raise ValueError("certificates need a depth-0 cone")
    neg = tuple(-x for x in target)
    result = solve_homogeneous(source.m, source.equalities, source.inequalities, [neg])
    if isinstance(result, Feasible):
        return result.point
    mult = result.multipliers
    ne, ni = len(source.equalities), len(source.inequalities)
    kappa = mult[ne + ni]
    # sum mu E + lam F - kappa target = 0
    cert = FarkasCertificate(
        tuple(target),
        tuple(x / kappa for x in mult[ne : ne + ni]),
        tuple(x / kappa for x in mult[:ne]),
    )
    if not cert.verify(source):
        raise AssertionError("Fourier-Motzkin produced an invalid certificate")
    return cert


@dataclass
class StrictnessWitness:
    ray: Vector
    functional: Vector | None
    value: Fraction | None

    def to_json(self) -> dict:
        return {
            "ray": list(self.ray),
            "functional": list(self.functional) if self.functional is not None else None,
            "value": str(self.value) if self.value is not None else None,
        }


@dataclass
class ContainmentResult:
    holds: bool
    inclusion_holds: bool
    strict_holds: bool
    certificates: list[FarkasCertificate]
    strictness: list[StrictnessWitness]
    witness: tuple[int, ...] | None = None
    box_scan: dict | None = None
    source: ValuationCone | None = None
    target: ValuationCone | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def oracle_agreement(self) -> bool | None:
        if self.box_scan is None:
            return None
        return (self.box_scan["violations"] == 0) == self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "inclusion_holds": self.inclusion_holds,
            "strict_holds": self.strict_holds,
            "certificate": [c.to_json() for c in self.certificates],
            "strictness": [s.to_json() for s in self.strictness],
            "witness": list(self.witness) if self.witness is not None else None,
            "box_scan": self.box_scan,
            "oracle_agreement": self.oracle_agreement,
            "source": self.source.to_json() if self.source else None,
            "target": self.target.to_json() if self.target else None,
        }


def cone_containment(
    source: ValuationCone, target: ValuationCone, box_bound: int | None = BOX_BOUND
) -> ContainmentResult:
    """Check source minus its lineality inside target minus its lineality.

    (i) Each target functional (both signs for equalities) is implied by the
    source system: Farkas certificate or integer witness.
    (ii) Each extreme ray of the source pairs strictly positively with some
    target inequality, so nothing outside the source lineality lands in the
    target lineality.
    """
    if source.m != target.m:
        raise ValueError("cones of different rank")
    certs: list[FarkasCertificate] = []
    witness = None
    goals = [e for e in target.equalities] + [tuple(-x for x in e) for e in target.equalities]
    goals += list(target.inequalities)
    for goal in goals:
        out = implied_functional(source, goal)
        if isinstance(out, FarkasCertificate):
            certs.append(out)
        elif witness is None:
            witness = out
    inclusion = witness is None

    strictness = []
    for ray in source.extreme_rays():
        best = next(((f, _dot(f, ray)) for f in target.inequalities if _dot(f, ray) > 0), None)
        strictness.append(StrictnessWitness(ray, *(best if best else (None, None))))
    strict = all(s.functional is not None for s in strictness)
    if inclusion and not strict and witness is None:
        witness = next(s.ray for s in strictness if s.functional is None)

    box = None
    if box_bound is not None and source.m <= BOX_SCAN_MAX_RANK:
        checked, violations, point = box_scan_containment(
            source.m, source.as_pair(), target.as_pair(), box_bound
        )
        box = {"bound": box_bound, "checked": checked, "violations": violations, "witness": point}
    return ContainmentResult(inclusion and strict, inclusion, strict, certs, strictness, witness, box, source, target)


def containment_check(
    theta: SimpleSubset, w: WeylElement, omega: SimpleSubset, box_bound: int | None = BOX_BOUND
) -> ContainmentResult:
    """S_Theta^- minus S_Theta^1 S_G inside A_{Theta cap w Omega}^{-w Omega} minus A^1 A_{w Omega}."""
    if not theta.is_maximal():
        raise ValueError("Theta must be a maximal subset of Delta")
    if case_classify(w, theta, omega) == "Case1":
        raise ValueError("containment is stated for Case2 representatives only")
    return cone_containment(split_dominant_part(theta), target_cone(theta, w, omega), box_bound)


def falsified_containment(theta: SimpleSubset, w: WeylElement, omega: SimpleSubset) -> ContainmentResult:
    """The roles swapped (target into source); expected to fail with a witness."""
    return cone_containment(target_cone(theta, w, omega), split_dominant_part(theta))


# transport by conjugation


def permutation_of(g: EMatrix) -> WeylElement:
    """The permutation pi of a monomial g (g e_j is a multiple of e_pi(j)).

    Diagonal and central g give the identity: they fix every root.
    """
    n = g.n
    perm = []
    for j in range(n):
        rows = [i for i in range(n) if g[i, j]]
        if len(rows) != 1:
            raise ValueError("g is not monomial")
        perm.append(rows[0])
    return WeylElement(tuple(perm))


def conjugation_transport(g: EMatrix | WeylElement, cone: ValuationCone) -> ValuationCone:
    """The cone of g A g^-1: v(g a g^-1) = pi.v(a), and roots transform as g.alpha = alpha o Int(g^-1)."""
    w = g if isinstance(g, WeylElement) else permutation_of(g)
    return cone.relabel(w)


def transported_containment(
    theta: SimpleSubset, w: WeylElement, omega: SimpleSubset, g: EMatrix | WeylElement, box_bound: int | None = None
) -> ContainmentResult:
    source = conjugation_transport(g, split_dominant_part(theta))
    target = conjugation_transport(g, target_cone(theta, w, omega))
    return cone_containment(source, target, box_bound)


def certificates_valid(result: ContainmentResult) -> bool:
    src = result.source
    return src is not None and all(c.verify(src) for c in result.certificates)


def witness_is_valid(result: ContainmentResult) -> bool:
    """The witness lies strictly in the source and outside the strict target."""
    if result.witness is None:
        return False
    v = result.witness
    return result.source.contains_strict(v) and not result.target.contains_strict(v)


def pairs_strictly_positive(c: Sequence, rays: Sequence[Vector]) -> bool:
    return all(_dot(c, r) > 0 for r in rays)


__all__ = [
    "ValuationCone",
    "FarkasCertificate",
    "ContainmentResult",
    "dominant_part",
    "split_dominant_part",
    "target_cone",
    "containment_check",
    "cone_containment",
    "falsified_containment",
    "conjugation_transport",
    "transported_containment",
    "check_point",
]
