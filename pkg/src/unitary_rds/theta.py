"""The involution theta_x(g) = x^-1 star(g)^-1 x of GL_m(E) and its structure.

Here star is the conjugate transpose.  The quasi-split involution is
theta = theta_{w_l} with w_l the antidiagonal permutation matrix.  Two tori
carry root coordinates: the diagonal torus A_T (on which theta reverses and
inverts) and A_0 = gamma A_T gamma^-1 (on which theta is inversion).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ematrix import EMatrix, HermitianMatrix, random_unitary
from .linalg import left_inverse, rank
from .quad_arith import FieldConfig, NormClass
from .root_weyl import PartitionShape, RootDatum, Vector, WeylElement, longest_element


def antidiagonal(m: int, cfg: FieldConfig) -> EMatrix:
    """J_m, the permutation matrix with unit antidiagonal (this is w_l)."""
    return EMatrix.antidiagonal(m, cfg.d)


def gamma_matrix(r: int, cfg: FieldConfig) -> EMatrix:
    """gamma_r, with star(gamma_r) J_r gamma_r diagonal over F.

    Rows i < r//2 carry (1 at i, 1 at r-1-i); rows past the middle carry
    (1 at r-1-i, -1 at i); for odd r the middle row is the unit vector.
    """
    if r < 1:
        raise ValueError("r must be positive")
    half = r // 2
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        j = r - 1 - i
        if i < half:
            rows[i][i] = 1
            rows[i][j] = 1
        elif i == j:
            rows[i][i] = 1
        else:
            rows[i][j] = 1
            rows[i][i] = -1
    return EMatrix.from_entries(rows, cfg.d)


def gamma_product(r: int, cfg: FieldConfig) -> EMatrix:
    g = gamma_matrix(r, cfg)
    return g.star() @ antidiagonal(r, cfg) @ g


def expected_gamma_diagonal(r: int) -> list[int]:
    """(2, ..., 2, [1 if r odd], -2, ..., -2) with floor(r/2) entries on each side."""
    half = r // 2
    return [2] * half + ([1] if r % 2 else []) + [-2] * half


def _permutation_of(x: EMatrix) -> list[int] | None:
    """pi with x[i][pi(i)] = 1 if x is a symmetric permutation matrix, else None."""
    pi = []
    for i in range(x.n):
        if any(x.im[i]):
            return None
        cols = [j for j, v in enumerate(x.re[i]) if v]
        if len(cols) != 1 or x.re[i][cols[0]] != 1:
            return None
        pi.append(cols[0])
    if any(pi[pi[i]] != i for i in range(x.n)):
        return None
    return pi


@dataclass
class ThetaInvolution:
    """theta_x for a Hermitian x."""

    x: EMatrix

    def __post_init__(self) -> None:
        if not self.x.is_hermitian():
            raise ValueError("theta_x needs a Hermitian x")
        self._xinv = self.x.inverse()
        self._perm = _permutation_of(self.x)

    @classmethod
    def quasi_split(cls, m: int, cfg: FieldConfig) -> ThetaInvolution:
        return cls(antidiagonal(m, cfg))

    @property
    def m(self) -> int:
        return self.x.n

    def apply(self, g: EMatrix) -> EMatrix:
        a = g.star().inverse()
        if self._perm is not None:
            # x is a symmetric permutation matrix, so x^-1 a x just reindexes a
            pi = self._perm
            idx = range(a.n)
            return EMatrix([[a.re[pi[i]][pi[j]] for j in idx] for i in idx],
                           [[a.im[pi[i]][pi[j]] for j in idx] for i in idx], a.d)
        return self._xinv @ a @ self.x

    __call__ = apply

    def is_fixed(self, g: EMatrix) -> bool:
        return self.apply(g) == g

    def preserves_form(self, h: EMatrix) -> bool:
        """The unitary relation star(h) x h = x."""
        return h.star() @ self.x @ h == self.x

    def sample_fixed(self, rng: random.Random, cfg: FieldConfig, bound: int = 2) -> EMatrix:
        return random_unitary(rng, self.x, cfg, bound)


def fixed_points_membership(g: EMatrix, theta: ThetaInvolution) -> bool:
    """True iff theta(g) = g exactly."""
    if not g.det():
        raise ValueError("singular matrix")
    return theta.is_fixed(g)


def levi_block_fixed(x: EMatrix, cfg: FieldConfig) -> EMatrix:
    """diag(x, theta_J(x)): the generic theta-fixed element of M_(k,k), k = size of x."""
    k = x.n
    j = antidiagonal(k, cfg)
    return EMatrix.block_diag(x, j.inverse() @ x.star().inverse() @ j)


# root actions


@dataclass(frozen=True)
class RootAction:
    """theta on X*(torus) as a signed permutation: theta(eps_i) = sign_i eps_{target_i}.

    Indices are 0-based.
    """

    target: tuple[int, ...]
    sign: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.target) != list(range(len(self.target))):
            raise ValueError("target is not a permutation")
        if len(self.sign) != len(self.target) or any(s not in (1, -1) for s in self.sign):
            raise ValueError("signs must be +1 or -1")

    @property
    def m(self) -> int:
        return len(self.target)

    def __call__(self, chi: Sequence) -> tuple:
        out = [0] * self.m
        for i, c in enumerate(chi):
            out[self.target[i]] += self.sign[i] * c
        return tuple(out)

    def is_involution(self) -> bool:
        return all(self(self(e)) == tuple(e) for e in _unit_vectors(self.m))


def _unit_vectors(m: int) -> list[Vector]:
    return [tuple(1 if k == i else 0 for k in range(m)) for i in range(m)]


def action_on_AT(m: int) -> RootAction:
    """theta(eps_i) = -eps_{m+1-i}: theta reverses and inverts A_T."""
    return RootAction(tuple(m - 1 - i for i in range(m)), (-1,) * m)


def action_on_A0(m: int) -> RootAction:
    """theta = -1 on X*(A_0), since A_0 is (theta, F)-split."""
    return RootAction(tuple(range(m)), (-1,) * m)


def theta_on_AT_character(chi: Sequence[int]) -> Vector:
    return action_on_AT(len(chi))(chi)


def theta_on_A0_root(alpha: Sequence[int]) -> Vector:
    return action_on_A0(len(alpha))(alpha)


def theta_on_diagonal(a: Sequence, cfg: FieldConfig) -> EMatrix:
    """theta(diag(a)) computed with matrices (a independent check of the root action)."""
    theta = ThetaInvolution.quasi_split(len(a), cfg)
    return theta(EMatrix.diag(a, cfg.d))


def is_theta_split_diagonal(a: Sequence, cfg: FieldConfig) -> bool:
    """theta(a) = a^-1 for a diagonal a."""
    diag = EMatrix.diag(a, cfg.d)
    return theta_on_diagonal(a, cfg) == diag.inverse()


def A0_element(t: Sequence, cfg: FieldConfig) -> EMatrix:
    """gamma t gamma^-1 for t = diag(t) in A_T."""
    g = gamma_matrix(len(t), cfg)
    return g @ EMatrix.diag(t, cfg.d) @ g.inverse()


# theta-bases and restricted roots


def positive_system(base: Sequence[Sequence[int]], m: int) -> set[Vector]:
    """Roots of GL_m that are nonnegative combinations of ``base``."""
    out = set()
    linv = left_inverse(base)
    for alpha in RootDatum(m).roots:
        coeffs = [sum(l * a for l, a in zip(row, alpha)) for row in linv]
        if any(sum(c * b[i] for c, b in zip(coeffs, base)) != alpha[i] for i in range(m)):
            raise ValueError("not a base: a root lies outside the span")
        if any(c != int(c) for c in coeffs):
            raise ValueError("not a base: non-integral coefficients")
        if all(c >= 0 for c in coeffs):
            out.add(alpha)
        elif not all(c <= 0 for c in coeffs):
            raise ValueError("not a base: mixed-sign coefficients")
    return out


def is_theta_base(base: Sequence[Sequence[int]], action: RootAction) -> bool:
    """Every positive root not fixed by theta is sent to a negative root."""
    m = action.m
    pos = positive_system(base, m)
    for alpha in pos:
        image = action(alpha)
        if image != alpha and image in pos:
            return False
    return True


def theta_fixed_roots(action: RootAction) -> list[Vector]:
    return [a for a in RootDatum(action.m).roots if action(a) == a]


@dataclass(frozen=True)
class RestrictedRootSystem:
    roots: dict[tuple[Fraction, ...], int]  # restricted root -> multiplicity
    base: list[tuple[Fraction, ...]]
    kernel_rank: int  # rank of the theta-fixed characters

    def is_reduced(self) -> bool:
        return not any(tuple(2 * c for c in r) in self.roots for r in self.roots)


def restriction(chi: Sequence, action: RootAction) -> tuple[Fraction, ...]:
    """Restriction to the (theta, F)-split part: the projection (chi - theta chi)/2.

    Its kernel is exactly the theta-fixed characters (over Q).
    """
    image = action(chi)
    return tuple(Fraction(c - t, 2) for c, t in zip(chi, image))


def restricted_roots(base: Sequence[Sequence[int]], action: RootAction) -> RestrictedRootSystem:
    if not is_theta_base(base, action):
        raise ValueError("input is not a theta-base")
    m = action.m
    counts: dict[tuple[Fraction, ...], int] = {}
    for alpha in RootDatum(m).roots:
        r = restriction(alpha, action)
        if any(r):
            counts[r] = counts.get(r, 0) + 1
    rbase = []
    for alpha in base:
        r = restriction(alpha, action)
        if any(r) and r not in rbase:
            rbase.append(r)
    fixed = [e for e in _unit_vectors(m)]
    kernel_rank = m - rank([restriction(e, action) for e in fixed])
    if rank(rbase) != len(rbase):
        raise AssertionError("restricted simple roots are linearly dependent")
    return RestrictedRootSystem(counts, rbase, kernel_rank)


# parabolic classification


def unipotent_support(shape: PartitionShape) -> frozenset[tuple[int, int]]:
    owner = [b for b, blk in enumerate(shape.blocks()) for _ in blk]
    m = shape.m
    return frozenset((i, j) for i in range(m) for j in range(m) if owner[i] < owner[j])


def unipotent_pattern_stable(shape: PartitionShape, cfg: FieldConfig) -> bool:
    """Support-pattern test N = w_l^-1 N^op w_l, by conjugating a generic pattern matrix."""
    m = shape.m
    support = unipotent_support(shape)
    rows = [[1 if (j, i) in support else 0 for j in range(m)] for i in range(m)]
    n_op = EMatrix.from_entries(rows, cfg.d)
    w = antidiagonal(m, cfg)
    return (w.inverse() @ n_op @ w).support() == support


def split_component_rank(shape: PartitionShape) -> int:
    """Rank of S_M: vectors constant on blocks with v_i = v_{m+1-i}."""
    m = shape.m
    owner = [b for b, blk in enumerate(shape.blocks()) for _ in blk]
    # union-find over coordinates tied by block membership and by reversal
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(m):
            if owner[i] == owner[j] or j == m - 1 - i:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(m)})


def classify_parabolic(shape: PartitionShape) -> dict[str, bool]:
    """theta-stability of P_shape, and whether its Levi is a proper theta-elliptic Levi.

    Every gamma-conjugated standard parabolic is theta-split, so
    ``theta_split_conjugate`` is always true.
    """
    m = shape.m
    balanced = shape.is_balanced()
    elliptic = m % 2 == 0 and shape.parts == (m // 2, m // 2)
    return {"theta_stable": balanced, "theta_split_conjugate": True, "theta_elliptic_levi": elliptic}


def elliptic_by_split_rank(shape: PartitionShape) -> bool:
    """Oracle: a proper, theta-stable Levi whose split component is central (rank one)."""
    return (
        len(shape.parts) > 1
        and shape.is_balanced()
        and split_component_rank(shape) == 1
    )


def partitions(m: int):
    """All ordered partitions (compositions) of m."""
    for cuts in itertools.product((0, 1), repeat=m - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield PartitionShape(tuple(parts))


# semi-standard conjugates of L = M_(k,k)


def _normalizes_halves(u: WeylElement, k: int) -> tuple[bool, bool]:
    """(u normalizes M_(k,k), u lies in M_(k,k)) for a permutation u."""
    first = {u.perm[i] for i in range(k)}
    low = set(range(k))
    high = set(range(k, 2 * k))
    in_l = first == low
    return in_l or first == high, in_l


def theta_elliptic_conjugate(w: WeylElement) -> bool:
    """w L w^-1 is theta-stable and theta-elliptic iff w^-1 w_l w is in N(L) but not in L."""
    m = w.m
    if m % 2:
        raise ValueError("L = M_(k,k) needs even m")
    u = w.inverse() * longest_element(m) * w
    normal, inside = _normalizes_halves(u, m // 2)
    return normal and not inside


def theta_elliptic_conjugate_oracle(w: WeylElement) -> bool:
    """Same question via tori: blocks w(B1), w(B2) stable under reversal and S_M central."""
    m = w.m
    k = m // 2
    blocks = [frozenset(w.perm[i] for i in range(k)), frozenset(w.perm[i] for i in range(k, m))]
    rev = [frozenset(m - 1 - i for i in b) for b in blocks]
    if set(rev) != set(blocks):
        return False
    owner = {i: b for b, blk in enumerate(blocks) for i in blk}
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(m):
            if owner[i] == owner[j] or j == m - 1 - i:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(m)}) == 1


def semistandard_maximal_levis_elliptic(m: int) -> list[tuple[tuple[int, ...], WeylElement]]:
    """All theta-stable, theta-elliptic conjugates w M_(a, m-a) w^-1 of maximal standard Levis."""
    found = []
    for a in range(1, m):
        seen = set()
        for p in itertools.permutations(range(m)):
            blocks = (frozenset(p[:a]), frozenset(p[a:]))
            if blocks in seen:
                continue
            seen.add(blocks)
            rev = {frozenset(m - 1 - i for i in b) for b in blocks}
            if rev != set(blocks):
                continue
            owner = {i: b for b, blk in enumerate(blocks) for i in blk}
            tied = {frozenset((i, m - 1 - i)) for i in range(m)}
            # S_M is central iff the block graph plus reversal edges is connected
            comp = {0}
            changed = True
            while changed:
                changed = False
                for i in range(m):
                    if i in comp:
                        continue
                    if any(owner[i] == owner[j] for j in comp) or any(frozenset((i, j)) in tied for j in comp):
                        comp.add(i)
                        changed = True
            if len(comp) == m:
                found.append(((a, m - a), WeylElement(p)))
    return found


# fixed points of the Levi of a theta-split parabolic


def levi_fixed_form(g: EMatrix, cfg: FieldConfig) -> tuple[HermitianMatrix, HermitianMatrix]:
    """Hermitian blocks (x_1, x_2) with M^theta = g gamma (U_{x_1} x U_{x_2}) (g gamma)^-1.

    Here M = g gamma M_(k,k) (g gamma)^-1.  Conjugating theta by g gamma gives
    theta_X on L with X = star(g gamma) w_l (g gamma); X must lie in L.
    """
    m = g.n
    if m % 2:
        raise ValueError("the (k, k) Levi needs even m")
    k = m // 2
    y = g @ gamma_matrix(m, cfg)
    x = y.star() @ antidiagonal(m, cfg) @ y
    if not x.is_block_diagonal((k, k)):
        raise ValueError("g^-1 theta(g) does not lie in the Levi; g is not in (H T_0)(F)")
    return HermitianMatrix.of(x.block(0, k, 0, k)), HermitianMatrix.of(x.block(k, m, k, m))


def levi_fixed_form_normalized(g: EMatrix, cfg: FieldConfig) -> EMatrix:
    """gamma^-1 g^-1 theta(g) gamma, the other normalization of the same datum."""
    m = g.n
    theta = ThetaInvolution.quasi_split(m, cfg)
    gam = gamma_matrix(m, cfg)
    return gam.inverse() @ g.inverse() @ theta(g) @ gam


def sample_HT0(rng: random.Random, m: int, cfg: FieldConfig, bound: int = 2) -> EMatrix:
    """g = h t with h theta-fixed (Cayley sample) and t in T_0 = gamma T gamma^-1."""
    theta = ThetaInvolution.quasi_split(m, cfg)
    h = theta.sample_fixed(rng, cfg, bound)
    while True:
        diag = [cfg.element(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(m)]
        if all(diag):
            break
    gam = gamma_matrix(m, cfg)
    t = gam @ EMatrix.diag(diag, cfg.d) @ gam.inverse()
    return h @ t


def block_orbit_classes(g: EMatrix, cfg: FieldConfig) -> tuple[NormClass, NormClass]:
    from .ematrix import orbit_invariant

    x1, x2 = levi_fixed_form(g, cfg)
    return orbit_invariant(x1, cfg), orbit_invariant(x2, cfg)
