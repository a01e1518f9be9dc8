"""Sparse multivariate polynomials over exact rationals, in colored variables.

The variable set is declared by a dimension vector gamma: one block of
variables x_{i,1}, ..., x_{i,gamma^i} per vertex i, flattened in (vertex,
slot) order.  Exponent vectors are packed into a single integer, 7 bits per
variable with the first variable most significant, so that monomial
multiplication is integer addition and lexicographic comparison is integer
comparison.  Coefficients are ints or Fractions; Fractions that reduce to
integers are normalized back to int.

No floating point appears anywhere in this module.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction

from .errors import DimensionMismatchError, DivisibilityError, DomainError
from .quiver import DimVector

_BITS = 7
_MAXEXP = (1 << _BITS) - 1


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _pack(exps, nvars):
    key = 0
    for e in exps:
        if not 0 <= e <= _MAXEXP:
            raise DomainError(f"exponent {e} out of supported range 0..{_MAXEXP}")
    for e in exps:
        key = (key << _BITS) | e
    return key


def _unpack(key, nvars):
    out = [0] * nvars
    for v in range(nvars - 1, -1, -1):
        out[v] = key & _MAXEXP
        key >>= _BITS
    return tuple(out)


class ColoredPoly:
    """A polynomial in the variable set declared by ``gamma``."""

    __slots__ = ("gamma", "nvars", "_terms")

    def __init__(self, gamma: DimVector, terms=None):
        self.gamma = tuple(gamma)
        self.nvars = sum(self.gamma)
        self._terms = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != self.nvars:
                    raise DimensionMismatchError(
                        f"exponent vector of length {len(exps)}, expected {self.nvars}")
                c = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                if c:
                    key = _pack(exps, self.nvars)
                    self._terms[key] = self._terms.get(key, 0) + c
            self._prune()

    @classmethod
    def _make(cls, gamma, packed):
        p = cls.__new__(cls)
        p.gamma = tuple(gamma)
        p.nvars = sum(gamma)
        p._terms = packed
        return p

    def _prune(self):
        dead = [k for k, c in self._terms.items() if not c]
        for k in dead:
            del self._terms[k]

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, gamma) -> "ColoredPoly":
        return cls._make(gamma, {})

    @classmethod
    def constant(cls, gamma, c) -> "ColoredPoly":
        c = _norm_coeff(c if isinstance(c, (int, Fraction)) else Fraction(c))
        return cls._make(gamma, {0: c} if c else {})

    @classmethod
    def variable(cls, gamma, vertex: int, slot: int) -> "ColoredPoly":
        """x_{vertex, slot}, slot 1-based within the color block."""
        gamma = tuple(gamma)
        if not (0 <= vertex < len(gamma)) or not (1 <= slot <= gamma[vertex]):
            raise DomainError(f"no variable x{vertex}_{slot} for gamma={gamma}")
        flat = sum(gamma[:vertex]) + slot - 1
        exps = [0] * sum(gamma)
        exps[flat] = 1
        return cls._make(gamma, {_pack(exps, sum(gamma)): 1})

    @classmethod
    def monomial(cls, gamma, exps, coeff=1) -> "ColoredPoly":
        return cls(gamma, {tuple(exps): coeff})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def terms(self):
        """(exponent tuple, coefficient) pairs, leading (lex-descending) first."""
        for key in sorted(self._terms, reverse=True):
            yield _unpack(key, self.nvars), self._terms[key]

    def coefficient(self, exps) -> Fraction | int:
        return self._terms.get(_pack(tuple(exps), self.nvars), 0)

    def degree(self) -> int | None:
        """Total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(_unpack(k, self.nvars)) for k in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(_unpack(k, self.nvars)) for k in self._terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[int, "ColoredPoly"]:
        comps: dict[int, dict] = {}
        for k, c in self._terms.items():
            comps.setdefault(sum(_unpack(k, self.nvars)), {})[k] = c
        return {d: ColoredPoly._make(self.gamma, t) for d, t in sorted(comps.items())}

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other):
        if self.gamma != other.gamma:
            raise DimensionMismatchError(
                f"variable sets differ: gamma {self.gamma} vs {other.gamma}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ColoredPoly.constant(self.gamma, other)
        self._check_compatible(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm_coeff(s)
            else:
                out.pop(k, None)
        return ColoredPoly._make(self.gamma, out)

    __radd__ = __add__

    def __neg__(self):
        return ColoredPoly._make(self.gamma, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ColoredPoly.constant(self.gamma, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            if not other:
                return ColoredPoly.zero(self.gamma)
            return ColoredPoly._make(
                self.gamma, {k: _norm_coeff(c * other) for k, c in self._terms.items()})
        self._check_compatible(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        da, db = self.degree(), other.degree()
        if da is not None and db is not None and da + db > _MAXEXP:
            raise DomainError("product degree exceeds packed-exponent capacity")
        out: dict = {}
        get = out.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                s = get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        for k, c in out.items():
            out[k] = _norm_coeff(c)
        return ColoredPoly._make(self.gamma, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        result = ColoredPoly.constant(self.gamma, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ColoredPoly.constant(self.gamma, other)
        if not isinstance(other, ColoredPoly):
            return NotImplemented
        return self.gamma == other.gamma and self._terms == other._terms

    __hash__ = None

    # -- substitution and symmetry -----------------------------------------

    def reindex(self, new_gamma: DimVector, var_map) -> "ColoredPoly":
        """Map variable v of self to variable var_map[v] of the new set.

        The map must be injective; this is the substitution used to place a
        factor's variables into chosen slots of a product.
        """
        new_gamma = tuple(new_gamma)
        nv_new = sum(new_gamma)
        var_map = tuple(var_map)
        if len(var_map) != self.nvars:
            raise DimensionMismatchError("variable map length mismatch")
        if len(set(var_map)) != len(var_map):
            raise DomainError("variable substitution must be injective")
        if any(not 0 <= v < nv_new for v in var_map):
            raise DomainError("variable map target out of range")
        out = {}
        for k, c in self._terms.items():
            exps = _unpack(k, self.nvars)
            new_exps = [0] * nv_new
            for v, e in enumerate(exps):
                new_exps[var_map[v]] = e
            out[_pack(new_exps, nv_new)] = c
        return ColoredPoly._make(new_gamma, out)

    def swap_variables(self, v1: int, v2: int) -> "ColoredPoly":
        var_map = list(range(self.nvars))
        var_map[v1], var_map[v2] = var_map[v2], var_map[v1]
        return self.reindex(self.gamma, var_map)

    def is_block_symmetric(self) -> bool:
        """Invariance under permuting variables within each color block.

        Checked on adjacent transpositions, which generate each block's
        symmetric group.
        """
        offset = 0
        for size in self.gamma:
            for r in range(size - 1):
                if self.swap_variables(offset + r, offset + r + 1) != self:
                    return False
            offset += size
        return True

    # -- rendering ----------------------------------------------------------

    def var_name(self, flat: int) -> str:
        offset = 0
        for i, size in enumerate(self.gamma):
            if flat < offset + size:
                return f"x{i}_{flat - offset + 1}"
            offset += size
        raise DomainError(f"no variable with flat index {flat}")

    def canonical_str(self) -> str:
        """Deterministic rendering: terms in descending lex order."""
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms():
            factors = [f"{self.var_name(v)}" + (f"^{e}" if e > 1 else "")
                       for v, e in enumerate(exps) if e]
            mag = abs(c)
            body = "*".join(([] if mag == 1 and factors else [str(mag)]) + factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"ColoredPoly(gamma={self.gamma}, {self.canonical_str()})"


def exact_divide(num: ColoredPoly, den: ColoredPoly) -> ColoredPoly:
    """Return q with q * den == num, or raise DivisibilityError.

    Leading-term division in lex order; for exact inputs the loop terminates
    with remainder zero, otherwise the error carries the remainder reached.
    """
    if den.is_zero():
        raise DomainError("division by the zero polynomial")
    num._check_compatible(den)
    if num.is_zero():
        return ColoredPoly.zero(num.gamma)
    nvars = num.nvars
    r = dict(num._terms)
    kd = max(den._terms)
    cd = den._terms[kd]
    kd_exps = _unpack(kd, nvars)
    den_items = list(den._terms.items())
    q: dict = {}
    heap = [-k for k in r]
    heapq.heapify(heap)
    while heap:
        kr = -heapq.heappop(heap)
        if kr not in r:
            continue
        kr_exps = _unpack(kr, nvars)
        if any(a < b for a, b in zip(kr_exps, kd_exps)):
            raise DivisibilityError(
                "polynomial division left a nonzero remainder",
                remainder=ColoredPoly._make(num.gamma, r))
        t = kr - kd
        c = r[kr] / cd if isinstance(r[kr], Fraction) or isinstance(cd, Fraction) \
            else Fraction(r[kr], cd)
        c = _norm_coeff(c)
        q[t] = c
        for k, v in den_items:
            kk = t + k
            s = r.get(kk, 0) - c * v
            if s:
                r[kk] = s
                heapq.heappush(heap, -kk)
            else:
                r.pop(kk, None)
    if r:
        raise DivisibilityError(
            "polynomial division left a nonzero remainder",
            remainder=ColoredPoly._make(num.gamma, r))
    return ColoredPoly._make(num.gamma, {k: _norm_coeff(c) for k, c in q.items()})


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(x\d+_\d+|x|\d+|\^|\*|\+|-|/|\(|\))")


class _Parser:
    def __init__(self, gamma, text):
        self.gamma = tuple(gamma)
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise DomainError(f"cannot tokenize polynomial at: {text[pos:pos + 10]!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> ColoredPoly:
        p = self.expr()
        if self.peek() is not None:
            raise DomainError(f"unexpected token {self.peek()!r} in polynomial")
        return p

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            p = p + self.term() * sign
        return p

    def term(self):
        p = self.factor()
        while self.peek() == "*":
            self.next()
            p = p * self.factor()
        return p

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            if tok is None or not tok.isdigit():
                raise DomainError("expected integer exponent after '^'")
            base = base ** int(tok)
        return base

    def atom(self):
        tok = self.next()
        if tok is None:
            raise DomainError("unexpected end of polynomial")
        if tok == "(":
            p = self.expr()
            if self.next() != ")":
                raise DomainError("unbalanced parenthesis in polynomial")
            return p
        if tok.isdigit():
            value = int(tok)
            if self.peek() == "/":
                self.next()
                den = self.next()
                if den is None or not den.isdigit():
                    raise DomainError("expected integer denominator after '/'")
                return ColoredPoly.constant(self.gamma, Fraction(value, int(den)))
            return ColoredPoly.constant(self.gamma, value)
        if tok == "x":
            if sum(self.gamma) != 1:
                raise DomainError("bare 'x' is only allowed with a single variable")
            vertex = next(i for i, s in enumerate(self.gamma) if s)
            return ColoredPoly.variable(self.gamma, vertex, 1)
        m = re.fullmatch(r"x(\d+)_(\d+)", tok)
        if m:
            return ColoredPoly.variable(self.gamma, int(m.group(1)), int(m.group(2)))
        raise DomainError(f"unexpected token {tok!r} in polynomial")


def parse_colored_poly(gamma, text: str) -> ColoredPoly:
    """Parse the canonical rendering back into a polynomial.

    Grammar: sums of '*'-separated factors; factors are integers, rational
    literals p/q, variables ``x<vertex>_<slot>`` (1-based slot), or a bare
    ``x`` when the variable set has a single member; '^' takes powers.
    """
    return _Parser(gamma, text).parse()
