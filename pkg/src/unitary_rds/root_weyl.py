"""Type-A root datum of GL_m, Weyl group as permutations, double cosets.

Conventions
-----------
* Characters are integer vectors in Z^m on the basis eps_1..eps_m.
* Simple roots alpha_i = eps_i - eps_{i+1} are indexed 1..m-1.
* A WeylElement stores a permutation of {0..m-1} in one-line notation and
  acts by w(eps_i) = eps_{w(i)}; JSON uses 1-based one-line notation.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class RootDatum:
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("rank parameter must be positive")

    def eps(self, i: int) -> Vector:
        """eps_i for 1 <= i <= m."""
        return tuple(1 if k == i - 1 else 0 for k in range(self.m))

    def root(self, i: int, j: int) -> Vector:
        """eps_i - eps_j (1-based, i != j)."""
        if i == j:
            raise ValueError("eps_i - eps_i is not a root")
        v = [0] * self.m
        v[i - 1] += 1
        v[j - 1] -= 1
        return tuple(v)

    def simple_root(self, i: int) -> Vector:
        if not 1 <= i < self.m:
            raise ValueError(f"simple root index {i} out of range for m={self.m}")
        return self.root(i, i + 1)

    @property
    def simple_roots(self) -> list[Vector]:
        return [self.simple_root(i) for i in range(1, self.m)]

    @property
    def roots(self) -> list[Vector]:
        return [self.root(i, j) for i in range(1, self.m + 1) for j in range(1, self.m + 1) if i != j]

    @property
    def positive_roots(self) -> list[Vector]:
        return [self.root(i, j) for i in range(1, self.m + 1) for j in range(i + 1, self.m + 1)]

    def simple_coordinates(self, chi: Sequence[int]) -> Vector:
        """Coefficients of a degree-zero character in the base of simple roots."""
        if sum(chi) != 0:
            raise ValueError("character is not in the root lattice")
        return tuple(itertools.accumulate(chi[:-1]))

    def is_positive(self, root: Sequence[int]) -> bool:
        """Sign of the first nonzero simple-root coefficient."""
        for c in self.simple_coordinates(root):
            if c:
                return c > 0
        raise ValueError("zero vector is not a root")

    def weyl_group(self) -> Iterator[WeylElement]:
        for p in itertools.permutations(range(self.m)):
            yield WeylElement(p)


def root_pair(root: Sequence[int]) -> tuple[int, int]:
    """(i, j), 1-based, for the root eps_i - eps_j."""
    i = next(k for k, c in enumerate(root) if c == 1)
    j = next(k for k, c in enumerate(root) if c == -1)
    return i + 1, j + 1


@dataclass(frozen=True, order=True)
class WeylElement:
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", tuple(self.perm))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation of 0..m-1")

    @classmethod
    def identity(cls, m: int) -> WeylElement:
        return cls(tuple(range(m)))

    @classmethod
    def from_one_line(cls, one_line: Sequence[int]) -> WeylElement:
        """From 1-based one-line notation."""
        return cls(tuple(i - 1 for i in one_line))

    @classmethod
    def simple_reflection(cls, m: int, i: int) -> WeylElement:
        p = list(range(m))
        p[i - 1], p[i] = p[i], p[i - 1]
        return cls(tuple(p))

    @property
    def m(self) -> int:
        return len(self.perm)

    def one_line(self) -> list[int]:
        return [i + 1 for i in self.perm]

    def __mul__(self, other: WeylElement) -> WeylElement:
        """Composition (self o other)."""
        return WeylElement(tuple(self.perm[i] for i in other.perm))

    def inverse(self) -> WeylElement:
        inv = [0] * self.m
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(tuple(inv))

    def act(self, chi: Sequence[int]) -> Vector:
        """w . chi with w(eps_i) = eps_{w(i)}."""
        out = [0] * self.m
        for i, c in enumerate(chi):
            out[self.perm[i]] += c
        return tuple(out)

    def length(self) -> int:
        """Number of inversions."""
        p = self.perm
        return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))


@dataclass(frozen=True)
class PartitionShape:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        if not self.parts or any(x <= 0 for x in self.parts):
            raise ValueError(f"bad partition {self.parts}")

    @property
    def m(self) -> int:
        return sum(self.parts)

    def blocks(self) -> list[list[int]]:
        """Coordinate blocks (0-based)."""
        out, k = [], 0
        for s in self.parts:
            out.append(list(range(k, k + s)))
            k += s
        return out

    def is_balanced(self) -> bool:
        return self.parts == self.parts[::-1]

    def opposite(self) -> PartitionShape:
        return PartitionShape(self.parts[::-1])


@dataclass(frozen=True)
class SimpleSubset:
    """A subset of the simple roots {alpha_1, ..., alpha_{m-1}}, by index."""

    m: int
    indices: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", frozenset(self.indices))
        if any(not 1 <= i < self.m for i in self.indices):
            raise ValueError(f"indices {sorted(self.indices)} out of range for m={self.m}")

    @classmethod
    def full(cls, m: int) -> SimpleSubset:
        return cls(m, frozenset(range(1, m)))

    @classmethod
    def empty(cls, m: int) -> SimpleSubset:
        return cls(m, frozenset())

    @classmethod
    def maximal(cls, m: int, k: int) -> SimpleSubset:
        """Delta minus {alpha_k}."""
        if not 1 <= k < m:
            raise ValueError(f"alpha_{k} is not a simple root for m={m}")
        return cls(m, frozenset(range(1, m)) - {k})

    @classmethod
    def from_partition(cls, shape: PartitionShape) -> SimpleSubset:
        cuts = set(itertools.accumulate(shape.parts[:-1]))
        return cls(shape.m, frozenset(range(1, shape.m)) - cuts)

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.indices))

    def __len__(self) -> int:
        return len(self.indices)

    def __le__(self, other: SimpleSubset) -> bool:
        return self.m == other.m and self.indices <= other.indices

    def __lt__(self, other: SimpleSubset) -> bool:
        return self.m == other.m and self.indices < other.indices

    def sorted(self) -> list[int]:
        return sorted(self.indices)

    def roots(self) -> list[Vector]:
        rd = RootDatum(self.m)
        return [rd.simple_root(i) for i in self.sorted()]

    def blocks(self) -> list[list[int]]:
        return subset_to_partition(self).blocks()

    def is_maximal(self) -> bool:
        return len(self.indices) == self.m - 2


def subset_to_partition(theta: SimpleSubset) -> PartitionShape:
    """Block sizes of the standard Levi M_Theta: gaps between excluded indices."""
    cuts = [i for i in range(1, theta.m) if i not in theta.indices]
    edges = [0, *cuts, theta.m]
    return PartitionShape(tuple(b - a for a, b in zip(edges, edges[1:])))


def partition_to_subset(shape: PartitionShape) -> SimpleSubset:
    return SimpleSubset.from_partition(shape)


def maximal_subsets(m: int) -> list[SimpleSubset]:
    return [SimpleSubset.maximal(m, k) for k in range(1, m)]


def all_subsets(m: int) -> Iterator[SimpleSubset]:
    idx = range(1, m)
    for r in range(m):
        for c in itertools.combinations(idx, r):
            yield SimpleSubset(m, frozenset(c))


def _maps_subset_positive(w: Sequence[int], subset: Iterable[int]) -> bool:
    # w(alpha_j) = eps_{w(j)} - eps_{w(j+1)} is positive iff w(j) < w(j+1)
    return all(w[j - 1] < w[j] for j in subset)


def is_double_coset_rep(w: WeylElement, theta: SimpleSubset, omega: SimpleSubset) -> bool:
    """w Omega and w^-1 Theta are both sets of positive roots."""
    return _maps_subset_positive(w.perm, omega.indices) and _maps_subset_positive(
        w.inverse().perm, theta.indices
    )


def _reps_exhaustive(theta: SimpleSubset, omega: SimpleSubset) -> list[WeylElement]:
    m = theta.m
    return [w for w in RootDatum(m).weyl_group() if is_double_coset_rep(w, theta, omega)]


def minimal_left_coset_reps(omega: SimpleSubset) -> list[WeylElement]:
    """{w : w Omega > 0} by breadth-first ascent in the left weak order.

    This set is an order ideal for the left weak order, so every member is
    reached from the identity through members.
    """
    m = omega.m
    start = WeylElement.identity(m)
    seen = {start}
    queue = deque([start])
    gens = [WeylElement.simple_reflection(m, i) for i in range(1, m)]
    while queue:
        w = queue.popleft()
        for i, s in enumerate(gens, start=1):
            # s_i w is longer iff w^-1(i) < w^-1(i+1)
            winv = w.inverse().perm
            if winv[i - 1] > winv[i]:
                continue
            sw = s * w
            if sw not in seen and _maps_subset_positive(sw.perm, omega.indices):
                seen.add(sw)
                queue.append(sw)
    return sorted(seen, key=lambda w: (w.length(), w.perm))


def _reps_traversal(theta: SimpleSubset, omega: SimpleSubset) -> list[WeylElement]:
    return [
        w
        for w in minimal_left_coset_reps(omega)
        if _maps_subset_positive(w.inverse().perm, theta.indices)
    ]


EXHAUSTIVE_LIMIT = 8


def double_coset_reps(
    theta: SimpleSubset, omega: SimpleSubset, method: str = "auto"
) -> list[WeylElement]:
    """The minimal-length representatives [W_Theta \\ W_0 / W_Omega].

    ``method`` is "exhaustive" (scan all of W_0), "traversal" (weak-order
    ascent through minimal coset representatives) or "auto" (exhaustive up to
    rank EXHAUSTIVE_LIMIT).
    """
    if theta.m != omega.m:
        raise ValueError("subsets of different rank")
    if method == "auto":
        method = "exhaustive" if theta.m <= EXHAUSTIVE_LIMIT else "traversal"
    if method == "exhaustive":
        reps = _reps_exhaustive(theta, omega)
    elif method == "traversal":
        reps = _reps_traversal(theta, omega)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(reps, key=lambda w: (w.length(), w.perm))


def image_of_subset(w: WeylElement, omega: SimpleSubset) -> list[Vector]:
    """The roots w(alpha_j), j in Omega."""
    rd = RootDatum(omega.m)
    return [w.act(rd.simple_root(j)) for j in omega.sorted()]


def case_classify(w: WeylElement, theta: SimpleSubset, omega: SimpleSubset) -> str:
    """"Case1" iff w Omega is contained in Theta, else "Case2"."""
    if not is_double_coset_rep(w, theta, omega):
        raise ValueError(f"{w.one_line()} is not a minimal double coset representative")
    theta_roots = set(theta.roots())
    return "Case1" if all(r in theta_roots for r in image_of_subset(w, omega)) else "Case2"


def levi_intersection(w: WeylElement, theta: SimpleSubset, omega: SimpleSubset) -> SimpleSubset:
    """Theta intersected with w Omega, as a subset of the simple roots."""
    image = set(image_of_subset(w, omega))
    rd = RootDatum(theta.m)
    return SimpleSubset(theta.m, frozenset(i for i in theta.indices if rd.simple_root(i) in image))


def parabolic_subgroup(subset: SimpleSubset) -> list[WeylElement]:
    """W_Theta, generated by the simple reflections in Theta."""
    m = subset.m
    gens = [WeylElement.simple_reflection(m, i) for i in subset.sorted()]
    start = WeylElement.identity(m)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = w * s
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return sorted(seen)


def block_swap(n: int) -> WeylElement:
    """The permutation exchanging the two halves of {1..2n}."""
    return WeylElement(tuple(list(range(n, 2 * n)) + list(range(n))))


def longest_element(m: int) -> WeylElement:
    return WeylElement(tuple(range(m - 1, -1, -1)))
