"""Truncated Laurent series in q^(1/2), and series with formal x^gamma symbols.

Exponents are integers in units of q^(1/2): stored exponent k means q^(k/2).
Every series carries an exactness window [lo, hi]:

  * below lo the series is guaranteed zero (a hard order bound),
  * on [lo, hi] the stored coefficients are exactly right,
  * above hi nothing is claimed.

hi = None means the series is exact everywhere (a Laurent polynomial).
Arithmetic propagates windows: sums certify up to min(hi), products obey the
convolution rule hi = min(hi1 + lo2, hi2 + lo1), and division/inversion
shifts by twice the leading order.  Recomputing with a wider window always
agrees on the narrower one; tests rely on that.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatchError, DomainError
from .quiver import DimVector, dim_abs, dim_sub, dim_leq, enumerate_dim_vectors, zero_dim


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _min_hi(h1, h2):
    if h1 is None:
        return h2
    if h2 is None:
        return h1
    return min(h1, h2)


def _hi_plus(h, k):
    return None if h is None else h + k


class HalfSeries:
    """One Laurent series in q^(1/2) with an exactness window."""

    __slots__ = ("coeffs", "lo", "hi")

    def __init__(self, coeffs, lo: int, hi: int | None):
        self.lo = lo
        self.hi = hi
        self.coeffs = {}
        for k, c in coeffs.items():
            if k < lo:
                raise DomainError(f"stored exponent {k} below window start {lo}")
            if hi is not None and k > hi:
                continue
            c = _norm_coeff(c)
            if c:
                self.coeffs[k] = c

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, lo: int = 0, hi: int | None = None) -> "HalfSeries":
        return cls({}, lo, hi)

    @classmethod
    def one(cls, hi: int | None = None) -> "HalfSeries":
        return cls({0: 1}, 0, hi)

    @classmethod
    def monomial(cls, k: int, c=1) -> "HalfSeries":
        """The exact Laurent monomial c * q^(k/2)."""
        return cls({k: c}, k, None)

    # -- inspection ----------------------------------------------------------

    def items(self):
        return sorted(self.coeffs.items())

    def known(self, k: int) -> bool:
        return self.hi is None or k <= self.hi

    def coeff(self, k: int):
        """Coefficient of q^(k/2); raises outside the certified window."""
        if not self.known(k):
            raise DomainError(f"exponent {k} is beyond the certified window {self.window()}")
        return self.coeffs.get(k, 0)

    def window(self) -> tuple[int, int | None]:
        return (self.lo, self.hi)

    def order(self) -> int | None:
        """Lowest exponent with nonzero coefficient, None if zero on window."""
        return min(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def window_empty(self) -> bool:
        return self.hi is not None and self.hi < self.lo

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HalfSeries.monomial(0, other) if other else HalfSeries.zero()
        lo = min(self.lo, other.lo)
        hi = _min_hi(self.hi, other.hi)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        if hi is not None:
            out = {k: c for k, c in out.items() if k <= hi}
        return HalfSeries(out, lo, hi)

    __radd__ = __add__

    def __neg__(self):
        s = HalfSeries.zero(self.lo, self.hi)
        s.coeffs = {k: -c for k, c in self.coeffs.items()}
        return s

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HalfSeries.monomial(0, other) if other else HalfSeries.zero()
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            s = HalfSeries.zero(self.lo, self.hi)
            if other:
                s.coeffs = {k: _norm_coeff(c * other) for k, c in self.coeffs.items()}
            return s
        lo = self.lo + other.lo
        hi = _min_hi(_hi_plus(self.hi, other.lo), _hi_plus(other.hi, self.lo))
        out: dict = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if hi is not None and k > hi:
                    continue
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return HalfSeries({k: _norm_coeff(c) for k, c in out.items()}, lo, hi)

    __rmul__ = __mul__

    def shifted(self, dk: int) -> "HalfSeries":
        return HalfSeries({k + dk: c for k, c in self.coeffs.items()},
                          self.lo + dk, _hi_plus(self.hi, dk))

    def truncated(self, lo: int | None = None, hi: int | None = None) -> "HalfSeries":
        """Narrow the window; never widens certainty."""
        new_lo = self.lo if lo is None or lo < self.lo else lo
        new_hi = self.hi if hi is None else _min_hi(self.hi, hi)
        kept = {k: c for k, c in self.coeffs.items() if k >= new_lo}
        if new_lo > self.lo and any(k < new_lo for k in self.coeffs):
            # raising lo would forget known nonzero terms; that changes meaning
            raise DomainError("cannot raise the order bound past nonzero terms")
        return HalfSeries(kept, new_lo, new_hi)

    def divide(self, other: "HalfSeries") -> "HalfSeries":
        """Exact series division within the provable window."""
        m = other.order()
        if m is None:
            raise DomainError("division by a series that is zero on its window")
        bm = other.coeffs[m]
        lo = self.lo - m
        if other.hi is None:
            hi = _hi_plus(self.hi, -m)
        else:
            hi = _min_hi(_hi_plus(self.hi, -m), other.hi + self.lo - 2 * m)
        if hi is None:
            if len(other.coeffs) != 1:
                raise DomainError(
                    "cannot divide by an exact multi-term series without truncating")
            return HalfSeries({k - m: _norm_coeff(Fraction(c) / bm)
                               for k, c in self.coeffs.items()}, lo, None)
        out: dict = {}
        for e in range(lo, hi + 1):
            acc = self.coeffs.get(e + m, 0)
            for i, ci in out.items():
                acc -= ci * other.coeffs.get(e + m - i, 0)
            if acc:
                q = acc / bm if isinstance(acc, Fraction) or isinstance(bm, Fraction) \
                    else Fraction(acc, bm)
                q = _norm_coeff(q)
                if q:
                    out[e] = q
        return HalfSeries(out, lo, hi)

    def inverse(self) -> "HalfSeries":
        """Multiplicative inverse; needs a nonzero leading coefficient."""
        return HalfSeries.one().divide(self)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, HalfSeries):
            return NotImplemented
        return (self.lo == other.lo and self.hi == other.hi
                and self.coeffs == other.coeffs)

    __hash__ = None

    def agrees_with(self, other: "HalfSeries") -> bool:
        """Coefficientwise equality on the overlap of the two windows."""
        hi = _min_hi(self.hi, other.hi)
        lo = min(self.lo, other.lo)
        if hi is None:
            keys = set(self.coeffs) | set(other.coeffs)
            return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0)
                   for k in range(lo, hi + 1))

    def canonical_str(self) -> str:
        """Terms ascending, coefficients 'p/q', exponents 'q^{k/2}'."""
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.items():
            body = f"{abs(Fraction(c))}*q^{{{k}/2}}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        hi = "inf" if self.hi is None else self.hi
        return f"HalfSeries([{self.lo},{hi}]: {self.canonical_str()})"


class MultiSeries:
    """A series sum_gamma (HalfSeries in q) * x^gamma, truncated to a box.

    The domain is {gamma <= gamma_max componentwise} intersected with
    {|gamma| <= abs_max} when abs_max is set.  A missing piece means the
    coefficient of x^gamma is exactly zero.  Pieces outside the domain are
    neither stored nor claimed.
    """

    __slots__ = ("gamma_max", "abs_max", "pieces")

    def __init__(self, gamma_max: DimVector, pieces=None, abs_max: int | None = None):
        self.gamma_max = tuple(gamma_max)
        self.abs_max = abs_max
        self.pieces: dict[DimVector, HalfSeries] = {}
        if pieces:
            for g, s in pieces.items():
                g = tuple(g)
                if not self.in_domain(g):
                    raise DomainError(f"piece at {g} outside the declared box")
                if not s.is_zero() or s.hi is not None:
                    self.pieces[g] = s

    def in_domain(self, g: DimVector) -> bool:
        return dim_leq(g, self.gamma_max) and \
            (self.abs_max is None or dim_abs(g) <= self.abs_max)

    def domain(self):
        return enumerate_dim_vectors(self.gamma_max, self.abs_max, include_zero=True)

    def piece(self, g: DimVector) -> HalfSeries:
        g = tuple(g)
        if not self.in_domain(g):
            raise DomainError(f"{g} is outside the truncation box")
        return self.pieces.get(g, HalfSeries.zero())

    @classmethod
    def unit(cls, gamma_max, abs_max=None) -> "MultiSeries":
        return cls(gamma_max, {zero_dim(len(gamma_max)): HalfSeries.one()}, abs_max)

    def _check_compatible(self, other):
        if self.gamma_max != other.gamma_max or self.abs_max != other.abs_max:
            raise DimensionMismatchError("mismatched truncation boxes")

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_compatible(other)
        out = MultiSeries(self.gamma_max, None, self.abs_max)
        for g in self.domain():
            acc = None
            for d, s1 in self.pieces.items():
                if not dim_leq(d, g):
                    continue
                s2 = other.pieces.get(dim_sub(g, d))
                if s2 is None:
                    continue
                term = s1 * s2
                acc = term if acc is None else acc + term
            if acc is not None:
                out.pieces[g] = acc
        return out

    def inverse(self) -> "MultiSeries":
        """Inverse of a series whose x^0 piece has a nonzero leading term."""
        n = len(self.gamma_max)
        g0 = zero_dim(n)
        inv0 = self.piece(g0).inverse()
        out = MultiSeries(self.gamma_max, {g0: inv0}, self.abs_max)
        for g in self.domain():
            if g == g0:
                continue
            acc = None
            for d, s in self.pieces.items():
                if d == g0 or not dim_leq(d, g):
                    continue
                rest = out.pieces.get(dim_sub(g, d))
                if rest is None:
                    continue
                term = s * rest
                acc = term if acc is None else acc + term
            if acc is not None:
                out.pieces[g] = (-acc) * inv0
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        if self.gamma_max != other.gamma_max or self.abs_max != other.abs_max:
            return False
        keys = set(self.pieces) | set(other.pieces)
        return all(self.pieces.get(k, HalfSeries.zero())
                   == other.pieces.get(k, HalfSeries.zero()) for k in keys)

    __hash__ = None

    def agrees_with(self, other: "MultiSeries") -> bool:
        keys = set(self.pieces) | set(other.pieces)
        return all(self.pieces.get(k, HalfSeries.zero())
                   .agrees_with(other.pieces.get(k, HalfSeries.zero()))
                   for k in keys)
