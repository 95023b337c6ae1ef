"""Square matrices over E = F(sqrt d), Hermitian forms and their orbit classes.

An EMatrix stores the rational and irrational coordinate matrices separately,
M = re + im * sqrt(d), as nested lists of gmpy2 rationals (exact, and an order
of magnitude faster than Fraction).  Instances are treated as immutable.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .quad_arith import FieldConfig, NormClass, QuadExtElement, norm_class

_ZERO = mpq(0)
_ONE = mpq(1)


def _pair(value, d) -> tuple[mpq, mpq]:
    if isinstance(value, QuadExtElement):
        if value.d != d:
            raise ValueError("entry from a different extension")
        return mpq(value.a), mpq(value.b)
    if isinstance(value, tuple):
        return mpq(value[0]), mpq(value[1])
    return mpq(value), _ZERO


class EMatrix:
    __slots__ = ("d", "re", "im", "n")

    def __init__(self, re: list[list[mpq]], im: list[list[mpq]], d):
        self.d = mpq(d)
        self.re = re
        self.im = im
        self.n = len(re)

    # construction

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence], d) -> EMatrix:
        d = mpq(d)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        re = [[_ZERO] * n for _ in range(n)]
        im = [[_ZERO] * n for _ in range(n)]
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                re[i][j], im[i][j] = _pair(v, d)
        return cls(re, im, d)

    @classmethod
    def identity(cls, n: int, d) -> EMatrix:
        return cls.scalar(n, 1, d)

    @classmethod
    def scalar(cls, n: int, c, d) -> EMatrix:
        d = mpq(d)
        a, b = _pair(c, d)
        re = [[a if i == j else _ZERO for j in range(n)] for i in range(n)]
        im = [[b if i == j else _ZERO for j in range(n)] for i in range(n)]
        return cls(re, im, d)

    @classmethod
    def diag(cls, values: Iterable, d) -> EMatrix:
        values = list(values)
        n = len(values)
        d = mpq(d)
        re = [[_ZERO] * n for _ in range(n)]
        im = [[_ZERO] * n for _ in range(n)]
        for i, v in enumerate(values):
            re[i][i], im[i][i] = _pair(v, d)
        return cls(re, im, d)

    @classmethod
    def permutation(cls, perm: Sequence[int], d) -> EMatrix:
        """Permutation matrix sending e_j to e_perm[j] (0-based one-line notation)."""
        n = len(perm)
        re = [[_ZERO] * n for _ in range(n)]
        for j, i in enumerate(perm):
            re[i][j] = _ONE
        return cls(re, [[_ZERO] * n for _ in range(n)], mpq(d))

    @classmethod
    def antidiagonal(cls, n: int, d) -> EMatrix:
        return cls.permutation([n - 1 - j for j in range(n)], d)

    @classmethod
    def block_diag(cls, *blocks: EMatrix) -> EMatrix:
        d = blocks[0].d
        n = sum(b.n for b in blocks)
        re = [[_ZERO] * n for _ in range(n)]
        im = [[_ZERO] * n for _ in range(n)]
        off = 0
        for b in blocks:
            if b.d != d:
                raise ValueError("blocks over different extensions")
            for i in range(b.n):
                re[off + i][off:off + b.n] = b.re[i]
                im[off + i][off:off + b.n] = b.im[i]
            off += b.n
        return cls(re, im, d)

    # access

    def __getitem__(self, ij: tuple[int, int]) -> QuadExtElement:
        i, j = ij
        return QuadExtElement(Fraction(self.re[i][j]), Fraction(self.im[i][j]), Fraction(self.d))

    def rows(self) -> list[list[QuadExtElement]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> EMatrix:
        if r1 - r0 != c1 - c0:
            raise ValueError("only square blocks are supported")
        return EMatrix(
            [row[c0:c1] for row in self.re[r0:r1]],
            [row[c0:c1] for row in self.im[r0:r1]],
            self.d,
        )

    # algebra

    def _check(self, other: EMatrix) -> None:
        if other.d != self.d or other.n != self.n:
            raise ValueError("incompatible matrices")

    def __matmul__(self, other: EMatrix) -> EMatrix:
        self._check(other)
        n, d = self.n, self.d
        ar, ai, br, bi = self.re, self.im, other.re, other.im
        cols_r = list(zip(*br))
        cols_i = list(zip(*bi))
        re = [[_ZERO] * n for _ in range(n)]
        im = [[_ZERO] * n for _ in range(n)]
        for i in range(n):
            xr, xi = ar[i], ai[i]
            for j in range(n):
                yr, yi = cols_r[j], cols_i[j]
                s_rr = s_ii = s_ri = s_ir = _ZERO
                for k in range(n):
                    a, b, c, e = xr[k], xi[k], yr[k], yi[k]
                    if a:
                        if c:
                            s_rr += a * c
                        if e:
                            s_ri += a * e
                    if b:
                        if e:
                            s_ii += b * e
                        if c:
                            s_ir += b * c
                re[i][j] = s_rr + d * s_ii
                im[i][j] = s_ri + s_ir
        return EMatrix(re, im, d)

    def __add__(self, other: EMatrix) -> EMatrix:
        self._check(other)
        n = self.n
        return EMatrix(
            [[self.re[i][j] + other.re[i][j] for j in range(n)] for i in range(n)],
            [[self.im[i][j] + other.im[i][j] for j in range(n)] for i in range(n)],
            self.d,
        )

    def __sub__(self, other: EMatrix) -> EMatrix:
        return self + (-other)

    def __neg__(self) -> EMatrix:
        return EMatrix([[-x for x in r] for r in self.re], [[-x for x in r] for r in self.im], self.d)

    def scale(self, c) -> EMatrix:
        a, b = _pair(c, self.d)
        d = self.d
        return EMatrix(
            [[a * x + d * b * y for x, y in zip(rr, ri)] for rr, ri in zip(self.re, self.im)],
            [[a * y + b * x for x, y in zip(rr, ri)] for rr, ri in zip(self.re, self.im)],
            d,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, EMatrix):
            return NotImplemented
        return self.d == other.d and self.re == other.re and self.im == other.im

    __hash__ = None

    def conj(self) -> EMatrix:
        """Entrywise Galois conjugate."""
        return EMatrix([list(r) for r in self.re], [[-x for x in r] for r in self.im], self.d)

    def transpose(self) -> EMatrix:
        return EMatrix([list(c) for c in zip(*self.re)], [list(c) for c in zip(*self.im)], self.d)

    def star(self) -> EMatrix:
        """Conjugate transpose."""
        return EMatrix([list(c) for c in zip(*self.re)], [[-x for x in c] for c in zip(*self.im)], self.d)

    def _echelon(self, rhs: EMatrix | None):
        """Gauss-Jordan over E; returns (det, solution) with solution None if rhs is None."""
        n, d = self.n, self.d
        ar = [list(r) for r in self.re]
        ai = [list(r) for r in self.im]
        if rhs is not None:
            br = [list(r) for r in rhs.re]
            bi = [list(r) for r in rhs.im]
        det_r, det_i = _ONE, _ZERO
        for col in range(n):
            piv = next((r for r in range(col, n) if ar[r][col] or ai[r][col]), None)
            if piv is None:
                return (_ZERO, _ZERO), None
            if piv != col:
                ar[col], ar[piv] = ar[piv], ar[col]
                ai[col], ai[piv] = ai[piv], ai[col]
                if rhs is not None:
                    br[col], br[piv] = br[piv], br[col]
                    bi[col], bi[piv] = bi[piv], bi[col]
                det_r, det_i = -det_r, -det_i
            pr, pi = ar[col][col], ai[col][col]
            det_r, det_i = det_r * pr + d * det_i * pi, det_r * pi + det_i * pr
            nrm = pr * pr - d * pi * pi
            ir, ii = pr / nrm, -pi / nrm
            # normalize pivot row
            rr, ri = ar[col], ai[col]
            for j in range(col, n):
                x, y = rr[j], ri[j]
                if x or y:
                    rr[j], ri[j] = x * ir + d * y * ii, x * ii + y * ir
            if rhs is not None:
                sr, si = br[col], bi[col]
                for j in range(n):
                    x, y = sr[j], si[j]
                    if x or y:
                        sr[j], si[j] = x * ir + d * y * ii, x * ii + y * ir
            rows = range(n) if rhs is not None else range(col + 1, n)
            for r in rows:
                if r == col:
                    continue
                fr, fi = ar[r][col], ai[r][col]
                if not (fr or fi):
                    continue
                tr, ti = ar[r], ai[r]
                for j in range(col, n):
                    x, y = rr[j], ri[j]
                    if x or y:
                        tr[j] -= fr * x + d * fi * y
                        ti[j] -= fr * y + fi * x
                if rhs is not None:
                    ur, ui = br[r], bi[r]
                    for j in range(n):
                        x, y = sr[j], si[j]
                        if x or y:
                            ur[j] -= fr * x + d * fi * y
                            ui[j] -= fr * y + fi * x
        sol = EMatrix(br, bi, d) if rhs is not None else None
        return (det_r, det_i), sol

    def det(self) -> QuadExtElement:
        (a, b), _ = self._echelon(None)
        return QuadExtElement(Fraction(a), Fraction(b), Fraction(self.d))

    def inverse(self) -> EMatrix:
        det, sol = self._echelon(EMatrix.identity(self.n, self.d))
        if sol is None:
            raise ZeroDivisionError("singular matrix")
        return sol

    # predicates

    def is_hermitian(self) -> bool:
        return self == self.star()

    def is_diagonal(self) -> bool:
        n = self.n
        return all(
            not (self.re[i][j] or self.im[i][j]) for i in range(n) for j in range(n) if i != j
        )

    def is_block_diagonal(self, sizes: Sequence[int]) -> bool:
        owner = [b for b, s in enumerate(sizes) for _ in range(s)]
        if len(owner) != self.n:
            raise ValueError("block sizes do not add up to the matrix size")
        return all(
            not (self.re[i][j] or self.im[i][j])
            for i in range(self.n)
            for j in range(self.n)
            if owner[i] != owner[j]
        )

    def support(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (i, j) for i in range(self.n) for j in range(self.n) if self.re[i][j] or self.im[i][j]
        )

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows())
        return f"EMatrix[{body}]"


class HermitianMatrix(EMatrix):
    """An EMatrix x with conjugate-transpose equal to x."""

    __slots__ = ()

    def __init__(self, re, im, d):
        super().__init__(re, im, d)
        if not EMatrix.is_hermitian(self):
            raise ValueError("matrix is not Hermitian")

    @classmethod
    def of(cls, m: EMatrix) -> HermitianMatrix:
        return cls([list(r) for r in m.re], [list(r) for r in m.im], m.d)

    def act(self, g: EMatrix) -> HermitianMatrix:
        """Right action x . g = star(g) x g."""
        return HermitianMatrix.of(g.star() @ self @ g)


def orbit_invariant(x: EMatrix, cfg: FieldConfig) -> NormClass:
    """Class of det(x) in F^x / N(E^x); constant on orbits x -> star(g) x g."""
    if x.d != cfg.d:
        raise ValueError("matrix is over a different extension")
    if not x.is_hermitian():
        raise ValueError("matrix is not Hermitian")
    det = x.det()
    if not det:
        raise ValueError("singular Hermitian matrix")
    if det.b != 0:
        raise AssertionError("determinant of a Hermitian matrix left the base field")
    return norm_class(det.a, cfg)


# random sampling


def random_element(rng: random.Random, cfg: FieldConfig, bound: int = 3) -> QuadExtElement:
    return cfg.element(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_matrix(rng: random.Random, n: int, cfg: FieldConfig, bound: int = 3) -> EMatrix:
    re = [[mpq(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
    im = [[mpq(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
    return EMatrix(re, im, cfg.d)


def random_invertible(rng: random.Random, n: int, cfg: FieldConfig, bound: int = 3) -> EMatrix:
    while True:
        g = random_matrix(rng, n, cfg, bound)
        if g.det():
            return g


def random_hermitian(rng: random.Random, n: int, cfg: FieldConfig, bound: int = 3) -> HermitianMatrix:
    """Random invertible Hermitian matrix with small integer coordinates."""
    while True:
        re = [[_ZERO] * n for _ in range(n)]
        im = [[_ZERO] * n for _ in range(n)]
        for i in range(n):
            re[i][i] = mpq(rng.randint(-bound, bound))
            for j in range(i + 1, n):
                a, b = mpq(rng.randint(-bound, bound)), mpq(rng.randint(-bound, bound))
                re[i][j], im[i][j] = a, b
                re[j][i], im[j][i] = a, -b
        x = HermitianMatrix(re, im, cfg.d)
        if x.det():
            return x


def random_skew_hermitian(rng: random.Random, n: int, cfg: FieldConfig, bound: int = 2) -> EMatrix:
    re = [[_ZERO] * n for _ in range(n)]
    im = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        im[i][i] = mpq(rng.randint(-bound, bound))
        for j in range(i + 1, n):
            a, b = mpq(rng.randint(-bound, bound)), mpq(rng.randint(-bound, bound))
            re[i][j], im[i][j] = a, b
            re[j][i], im[j][i] = -a, b
    return EMatrix(re, im, cfg.d)


def random_unitary(rng: random.Random, x: EMatrix, cfg: FieldConfig, bound: int = 2) -> EMatrix:
    """Random h with star(h) x h = x, via the Cayley transform.

    For S skew-Hermitian, A = x^-1 S satisfies star(A) x = -x A, and
    h = (1 - A)^-1 (1 + A) then preserves the form x.
    """
    n = x.n
    one = EMatrix.identity(n, cfg.d)
    xinv = x.inverse()
    while True:
        a = xinv @ random_skew_hermitian(rng, n, cfg, bound)
        left = one - a
        if left.det():
            return left.inverse() @ (one + a)
