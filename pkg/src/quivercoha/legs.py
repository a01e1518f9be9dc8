"""The leg construction: eigenvalue data, the extended quiver, and genericity.

Attaching a leg of length gamma^i - 1 to each vertex i of a doubled quiver
turns moment-map fibers over a semisimple orbit into fibers over a scalar
lambda on the extended quiver; the scalar is built from eigenvalue
differences, and the extended dimension vector pairs to zero with it.
Eigenvalue data is generic when the eigenvalues at each vertex are pairwise
distinct and no proper sub-selection (across all vertices) sums to zero;
that keeps every hyperplane of decompositions away.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iproduct

from .errors import DimensionMismatchError, DomainError, LimitExceededError
from .quiver import DimVector, Quiver, dim_abs, double

GENERICITY_SIZE_LIMIT = 8


@dataclass(frozen=True)
class EigenData:
    """Per-vertex ordered eigenvalue lists, total trace zero."""

    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "values",
                           tuple(tuple(Fraction(v) for v in vs) for vs in self.values))
        if sum((sum(vs) for vs in self.values), Fraction(0)) != 0:
            raise DomainError("eigenvalue data must have total trace zero")

    def gamma(self) -> DimVector:
        return tuple(len(vs) for vs in self.values)

    def to_dict(self) -> dict:
        return {"t": [[str(v) for v in vs] for vs in self.values]}

    @classmethod
    def from_dict(cls, data: dict) -> "EigenData":
        return cls(tuple(tuple(Fraction(v) for v in vs) for vs in data["t"]))


@dataclass(frozen=True)
class LegData:
    """The leg-extended quiver, its dimension vector, and the vertex map."""

    tilde_quiver: Quiver
    tilde_gamma: DimVector
    vertex_labels: tuple[tuple[int, int], ...]   # flat index -> (i, j)
    half_quiver: Quiver

    def flat_index(self, i: int, j: int) -> int:
        return self.vertex_labels.index((i, j))


def attach_legs(q: Quiver, q0: Quiver, gamma: DimVector) -> LegData:
    """Extend the double of q0 by a leg of length gamma^i - 1 at each vertex.

    Vertices are labeled [i, j], j = 0..gamma^i - 1 (vertex [i, 0] is i
    itself and is kept even when gamma^i = 0); the extended dimension vector
    is gamma^i - j.  The half quiver is q0 plus one arrow per leg edge, and
    the extended quiver is its double.
    """
    if q != double(q0):
        raise DomainError("quiver is not the double of the given half quiver")
    q.check_dim(gamma)
    n = q0.vertex_count
    labels = [(i, 0) for i in range(n)]
    for i in range(n):
        for j in range(1, max(gamma[i], 1)):
            labels.append((i, j))
    index = {lab: v for v, lab in enumerate(labels)}
    size = len(labels)
    half = [[0] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            half[i][j] = q0.arrows[i][j]
    for i in range(n):
        for j in range(max(gamma[i], 1) - 1):
            half[index[(i, j)]][index[(i, j + 1)]] += 1
    half_quiver = Quiver.from_lists(half)
    tilde_gamma = tuple(gamma[i] - j for (i, j) in labels)
    return LegData(double(half_quiver), tilde_gamma, tuple(labels), half_quiver)


def lambda_from_eigenvalues(t: EigenData, legs: LegData):
    """The scalar on the extended quiver: -t_{i,1} at [i,0] and
    t_{i,j} - t_{i,j+1} along the leg, eigenvalues taken in decreasing order.

    Asserts the pairing tilde_gamma . lambda = 0.
    """
    gamma = t.gamma()
    expected = tuple(g for (i, j), g in zip(legs.vertex_labels, legs.tilde_gamma)
                     if j == 0)
    if gamma != expected:
        raise DimensionMismatchError(
            f"eigenvalue data sized {gamma}, leg data built for {expected}")
    ordered = [sorted(vs, reverse=True) for vs in t.values]
    lam = []
    for (i, j) in legs.vertex_labels:
        if not ordered[i]:
            lam.append(Fraction(0))
        elif j == 0:
            lam.append(-ordered[i][0])
        else:
            lam.append(ordered[i][j - 1] - ordered[i][j])
    pairing = sum(g * l for g, l in zip(legs.tilde_gamma, lam))
    assert pairing == 0, "tilde_gamma . lambda must vanish"
    return tuple(lam)


@dataclass(frozen=True)
class GenericityCertificate:
    generic: bool
    colliding_pair: tuple[int, int, int] | None = None     # (vertex, r, s)
    violating_subset: tuple[tuple[int, ...], ...] | None = None

    def to_dict(self) -> dict:
        out: dict = {"generic": self.generic}
        if self.colliding_pair is not None:
            out["colliding_pair"] = list(self.colliding_pair)
        if self.violating_subset is not None:
            out["violating_subset"] = [list(s) for s in self.violating_subset]
        return out


def is_generic(t: EigenData, q: Quiver, gamma: DimVector) -> tuple[bool, GenericityCertificate]:
    """Regular (distinct per vertex) and no proper sub-selection sums to zero.

    Exhaustive over per-vertex subsets; |gamma| is capped at
    GENERICITY_SIZE_LIMIT because the search is exponential.
    """
    q.check_dim(gamma)
    if t.gamma() != tuple(gamma):
        raise DimensionMismatchError("eigenvalue data does not match gamma")
    if dim_abs(gamma) > GENERICITY_SIZE_LIMIT:
        raise LimitExceededError(
            f"genericity test is exhaustive; |gamma| <= {GENERICITY_SIZE_LIMIT}")
    for i, vs in enumerate(t.values):
        for r, s in combinations(range(len(vs)), 2):
            if vs[r] == vs[s]:
                return False, GenericityCertificate(False, colliding_pair=(i, r, s))
    per_vertex = [[c for size in range(len(vs) + 1)
                   for c in combinations(range(len(vs)), size)] for vs in t.values]
    total = dim_abs(gamma)
    for pick in iproduct(*per_vertex):
        chosen = sum(len(p) for p in pick)
        if chosen == 0 or chosen == total:
            continue
        s = sum((t.values[i][r] for i, p in enumerate(pick) for r in p), Fraction(0))
        if s == 0:
            return False, GenericityCertificate(False, violating_subset=tuple(pick))
    return True, GenericityCertificate(True)


def sample_generic(q: Quiver, gamma: DimVector, seed) -> EigenData:
    """Deterministic-from-seed generic eigenvalue data; widens the sampling
    range until the genericity test passes (the generic locus misses only
    finitely many hyperplanes, so this terminates)."""
    q.check_dim(gamma)
    gamma = tuple(gamma)
    if not any(gamma):
        raise DomainError("cannot sample eigenvalues for gamma = 0")
    rng = random.Random(repr((seed, gamma)))
    spread = 8 * max(1, dim_abs(gamma))
    while True:
        flat = [Fraction(rng.randint(-spread, spread),
                         rng.choice((1, 1, 1, 2, 3)))
                for _ in range(dim_abs(gamma) - 1)]
        flat.append(-sum(flat, Fraction(0)))
        values = []
        pos = 0
        for size in gamma:
            values.append(tuple(flat[pos:pos + size]))
            pos += size
        candidate = EigenData(tuple(values))
        ok, _ = is_generic(candidate, q, gamma)
        if ok:
            return candidate
        spread *= 2
