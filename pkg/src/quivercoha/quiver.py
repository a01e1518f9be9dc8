"""Quivers, dimension vectors, and the bilinear forms attached to them.

A quiver is stored as its arrow-multiplicity matrix ``arrows[i][j]`` = number
of arrows i -> j, vertices indexed 0..n-1.  Everything downstream (Euler form,
doubling, the mod-2 sign form twisting the Hall product, stack dimensions) is
a pure function of this matrix, so all types here are frozen and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionMismatchError, DomainError, QuiverFormatError

DimVector = tuple[int, ...]


def dim_add(g1: DimVector, g2: DimVector) -> DimVector:
    return tuple(a + b for a, b in zip(g1, g2))


def dim_sub(g1: DimVector, g2: DimVector) -> DimVector:
    return tuple(a - b for a, b in zip(g1, g2))


def dim_abs(g: DimVector) -> int:
    """Total dimension |gamma| = sum of the entries."""
    return sum(g)


def dim_leq(g1: DimVector, g2: DimVector) -> bool:
    """Componentwise partial order."""
    return all(a <= b for a, b in zip(g1, g2))


def zero_dim(n: int) -> DimVector:
    return (0,) * n


def unit_dim(n: int, i: int) -> DimVector:
    return tuple(1 if j == i else 0 for j in range(n))


def enumerate_dim_vectors(gamma_max: DimVector, abs_max: int | None = None,
                          include_zero: bool = False):
    """All 0 <= gamma <= gamma_max (componentwise), sorted by (|gamma|, lex).

    This ordering is the canonical report / extraction order everywhere.
    """
    def rec(prefix, rest):
        if not rest:
            yield tuple(prefix)
            return
        for v in range(rest[0] + 1):
            yield from rec(prefix + [v], rest[1:])

    out = [g for g in rec([], list(gamma_max))
           if abs_max is None or dim_abs(g) <= abs_max]
    out.sort(key=lambda g: (dim_abs(g), g))
    if not include_zero:
        out = [g for g in out if any(g)]
    return out


@dataclass(frozen=True)
class Quiver:
    """A quiver given by its arrow-multiplicity matrix."""

    arrows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.arrows)
        for row in self.arrows:
            if len(row) != n:
                raise DimensionMismatchError("arrow matrix must be square")
            if any(a < 0 for a in row):
                raise DomainError("arrow multiplicities must be >= 0")

    @property
    def vertex_count(self) -> int:
        return len(self.arrows)

    @classmethod
    def from_lists(cls, rows) -> "Quiver":
        return cls(tuple(tuple(int(a) for a in row) for row in rows))

    @classmethod
    def from_arrow_list(cls, vertices: int, arrow_list) -> "Quiver":
        """Build from ``[(i, j, mult), ...]``; duplicate (i, j) entries sum."""
        mat = [[0] * vertices for _ in range(vertices)]
        for i, j, m in arrow_list:
            mat[i][j] += m
        return cls.from_lists(mat)

    @classmethod
    def loop_quiver(cls, loops: int) -> "Quiver":
        """One vertex carrying ``loops`` loops."""
        return cls(((loops,),))

    def is_symmetric(self) -> bool:
        a = self.arrows
        n = self.vertex_count
        return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))

    def check_dim(self, g: DimVector) -> None:
        if len(g) != self.vertex_count:
            raise DimensionMismatchError(
                f"dimension vector of length {len(g)} on a "
                f"{self.vertex_count}-vertex quiver")
        if any(x < 0 for x in g):
            raise DomainError("dimension vector entries must be >= 0")

    def to_spec_dict(self) -> dict:
        """The JSON wire form: ``{"vertices": n, "arrows": [[i, j, m], ...]}``."""
        arrs = [[i, j, self.arrows[i][j]]
                for i in range(self.vertex_count)
                for j in range(self.vertex_count)
                if self.arrows[i][j]]
        return {"vertices": self.vertex_count, "arrows": arrs}


def double(q0: Quiver) -> Quiver:
    """The double: every arrow plus its reversal.  Always symmetric."""
    n = q0.vertex_count
    return Quiver(tuple(tuple(q0.arrows[i][j] + q0.arrows[j][i]
                              for j in range(n)) for i in range(n)))


def euler_form(q: Quiver, g1: DimVector, g2: DimVector) -> int:
    """chi_Q(g1, g2) = sum_i g1^i g2^i - sum_{ij} a_ij g1^i g2^j."""
    q.check_dim(g1)
    q.check_dim(g2)
    n = q.vertex_count
    diag = sum(g1[i] * g2[i] for i in range(n))
    arr = sum(q.arrows[i][j] * g1[i] * g2[j]
              for i in range(n) for j in range(n))
    return diag - arr


@dataclass(frozen=True)
class SignForm:
    """Mod-2 bilinear form psi with
    psi(x, y) + psi(y, x) = chi(x, y) + chi(x, x) chi(y, y)  (mod 2),
    which makes the twisted Hall product supercommutative."""

    psi: tuple[tuple[int, ...], ...]

    def value(self, g1: DimVector, g2: DimVector) -> int:
        n = len(self.psi)
        if len(g1) != n or len(g2) != n:
            raise DimensionMismatchError("sign form size mismatch")
        total = sum(g1[i] * self.psi[i][j] * g2[j]
                    for i in range(n) for j in range(n))
        return total % 2


@lru_cache(maxsize=None)
def sign_form(q: Quiver) -> SignForm:
    """Canonical solution: psi[i][j] = rhs(e_i, e_j) for i < j, else 0.

    Valid because rhs(e_i, e_i) is even for every symmetric quiver (it is a
    product of consecutive integers); asserted at construction.
    """
    if not q.is_symmetric():
        raise DomainError("sign form is defined for symmetric quivers only")
    n = q.vertex_count

    def rhs(i, j):
        e = [unit_dim(n, v) for v in range(n)]
        return (euler_form(q, e[i], e[j])
                + euler_form(q, e[i], e[i]) * euler_form(q, e[j], e[j])) % 2

    for i in range(n):
        assert rhs(i, i) == 0, "diagonal obstruction: quiver not symmetric?"
    psi = tuple(tuple(rhs(i, j) if i < j else 0 for j in range(n))
                for i in range(n))
    return SignForm(psi)


def moduli_dimensions(q: Quiver, g: DimVector) -> tuple[int, int, int]:
    """(dim M_gamma, dim G_gamma, d_gamma) with d = dim M - dim G + 1,
    the dimension of the representation stack modulo the global scalar."""
    q.check_dim(g)
    n = q.vertex_count
    dim_m = sum(q.arrows[i][j] * g[i] * g[j] for i in range(n) for j in range(n))
    dim_g = sum(x * x for x in g)
    return dim_m, dim_g, dim_m - dim_g + 1


def quiver_from_spec(obj) -> Quiver:
    """Parse the JSON wire form ``{"vertices": n, "arrows": [[i, j, m], ...]}``.

    Duplicate (i, j) entries sum.  Raises QuiverFormatError with a location.
    """
    if not isinstance(obj, dict):
        raise QuiverFormatError("quiver spec must be a JSON object", "top level")
    if "vertices" not in obj:
        raise QuiverFormatError("missing 'vertices'", "top level")
    n = obj["vertices"]
    if not isinstance(n, int) or n <= 0:
        raise QuiverFormatError("'vertices' must be a positive integer", "vertices")
    entries = obj.get("arrows", [])
    if not isinstance(entries, list):
        raise QuiverFormatError("'arrows' must be a list", "arrows")
    mat = [[0] * n for _ in range(n)]
    for idx, ent in enumerate(entries):
        loc = f"arrows[{idx}]"
        if (not isinstance(ent, list) or len(ent) != 3
                or not all(isinstance(x, int) for x in ent)):
            raise QuiverFormatError("arrow entry must be [i, j, mult] of ints", loc)
        i, j, m = ent
        if not (0 <= i < n and 0 <= j < n):
            raise QuiverFormatError(f"vertex index out of range 0..{n - 1}", loc)
        if m < 0:
            raise QuiverFormatError("arrow multiplicity must be >= 0", loc)
        mat[i][j] += m
    return Quiver.from_lists(mat)
