"""Exact coefficient tower: Gaussian rationals, Laurent polynomials in one
variable ``z``, canonical rational functions in ``z`` and truncated series in
``q^(1/2)`` over any coefficient ring.

All values are immutable.  Every operation returns a new object in canonical
form, so equality of values is equality of representations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping

from .errors import DomainError, PrefactorMismatch

__all__ = [
    "GaussRat",
    "LaurentPolyZ",
    "RatFunZ",
    "QSeries",
    "scalar_arith",
    "laurent_arith",
    "ratfun_normalize",
    "qseries_arith",
    "qseries_inverse",
]


def _frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class GaussRat:
    """Exact Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Any = 0, im: Any = 0):
        if isinstance(re, GaussRat):
            if im != 0:
                raise TypeError("GaussRat(GaussRat, im) is ambiguous")
            re, im = re.re, re.im
        elif isinstance(re, complex):
            if im != 0:
                raise TypeError("GaussRat(complex, im) is ambiguous")
            re, im = re.real, re.imag
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, x: Any) -> "GaussRat":
        return x if isinstance(x, GaussRat) else cls(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re^2 + im^2``."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = GaussRat(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison / conversion ---------------------------------------------
    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        if self.im == 0:
            return _fmt_rat(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        elif self.im.denominator == 1:
            im = f"{self.im.numerator}i"
        else:
            im = f"({_fmt_rat(self.im)})i"
        if self.re == 0:
            return im
        sep = "" if im.startswith("-") else "+"
        return f"{_fmt_rat(self.re)}{sep}{im}"


def _scalar_parts(x: Any) -> tuple[int, int, int]:
    """Return integers (a, b, den) with x = (a + b*i) / den."""
    if isinstance(x, int):
        return x, 0, 1
    g = GaussRat.coerce(x)
    den = g.re.denominator * g.im.denominator // math.gcd(g.re.denominator, g.im.denominator)
    return int(g.re * den), int(g.im * den), den


class LaurentPolyZ:
    """Finitely supported Laurent polynomial in ``z`` with ``GaussRat``
    coefficients.

    Stored as integer pairs over one positive common denominator, reduced so
    that the gcd of all integers and the denominator is 1.
    """

    __slots__ = ("_re", "_im", "_den", "_hash")

    def __init__(self, coeffs: Mapping[int, Any] | None = None):
        re: dict[int, int] = {}
        im: dict[int, int] = {}
        den = 1
        if coeffs:
            parts = {e: _scalar_parts(c) for e, c in coeffs.items()}
            for _, _, d in parts.values():
                den = den * d // math.gcd(den, d)
            for e, (a, b, d) in parts.items():
                f = den // d
                re[int(e)] = a * f
                im[int(e)] = b * f
        self._set(re, im, den)

    def _set(self, re: dict, im: dict, den: int) -> None:
        keys = [e for e in re if re[e] or im.get(e, 0)]
        keys.extend(e for e in im if im[e] and e not in re)
        r = {e: re.get(e, 0) for e in keys}
        i = {e: im.get(e, 0) for e in keys}
        if not keys:
            den = 1
        elif den != 1:
            g = den
            for v in r.values():
                if g == 1:
                    break
                g = math.gcd(g, v)
            for v in i.values():
                if g == 1:
                    break
                g = math.gcd(g, v)
            if g != 1:
                r = {e: v // g for e, v in r.items()}
                i = {e: v // g for e, v in i.items()}
                den //= g
        object.__setattr__(self, "_re", r)
        object.__setattr__(self, "_im", i)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, re: dict, im: dict, den: int) -> "LaurentPolyZ":
        obj = cls.__new__(cls)
        obj._set(re, im, den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolyZ is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "LaurentPolyZ":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolyZ":
        return cls({0: 1})

    @classmethod
    def constant(cls, c: Any) -> "LaurentPolyZ":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, c: Any = 1) -> "LaurentPolyZ":
        return cls({exponent: c})

    @classmethod
    def z(cls) -> "LaurentPolyZ":
        return cls({1: 1})

    # inspection -----------------------------------------------------------
    def coeff(self, e: int) -> GaussRat:
        if e not in self._re:
            return GaussRat(0)
        return GaussRat(Fraction(self._re[e], self._den), Fraction(self._im[e], self._den))

    def exponents(self) -> list[int]:
        return sorted(self._re)

    def items(self) -> Iterator[tuple[int, GaussRat]]:
        for e in self.exponents():
            yield e, self.coeff(e)

    def to_dict(self) -> dict[int, GaussRat]:
        return dict(self.items())

    def __len__(self):
        return len(self._re)

    def is_zero(self) -> bool:
        return not self._re

    def __bool__(self):
        return bool(self._re)

    @property
    def min_degree(self) -> int:
        if not self._re:
            raise ValueError("zero polynomial has no degree")
        return min(self._re)

    @property
    def max_degree(self) -> int:
        if not self._re:
            raise ValueError("zero polynomial has no degree")
        return max(self._re)

    def is_monomial(self) -> bool:
        return len(self._re) == 1

    def is_constant(self) -> bool:
        return not self._re or (len(self._re) == 1 and 0 in self._re)

    def is_one(self) -> bool:
        return self._den == 1 and self._re == {0: 1} and self._im == {0: 0}

    def constant_term(self) -> GaussRat:
        return self.coeff(0)

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(x: Any) -> "LaurentPolyZ | None":
        if isinstance(x, LaurentPolyZ):
            return x
        if isinstance(x, (int, Fraction, GaussRat, complex)):
            return LaurentPolyZ.constant(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._re:
            return self
        if not self._re:
            return o
        d1, d2 = self._den, o._den
        den = d1 * d2 // math.gcd(d1, d2)
        f1, f2 = den // d1, den // d2
        re = {e: v * f1 for e, v in self._re.items()}
        im = {e: v * f1 for e, v in self._im.items()}
        for e, v in o._re.items():
            re[e] = re.get(e, 0) + v * f2
            im[e] = im.get(e, 0) + o._im[e] * f2
        return LaurentPolyZ._raw(re, im, den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolyZ._raw(
            {e: -v for e, v in self._re.items()}, {e: -v for e, v in self._im.items()}, self._den
        )

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPolyZ()
            return LaurentPolyZ._raw(
                {e: v * other for e, v in self._re.items()},
                {e: v * other for e, v in self._im.items()},
                self._den,
            )
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._re or not o._re:
            return LaurentPolyZ()
        re: dict[int, int] = {}
        im: dict[int, int] = {}
        a_items = [(e, self._re[e], self._im[e]) for e in self._re]
        b_items = [(e, o._re[e], o._im[e]) for e in o._re]
        for e1, a1, b1 in a_items:
            if b1 == 0:
                for e2, a2, b2 in b_items:
                    e = e1 + e2
                    re[e] = re.get(e, 0) + a1 * a2
                    im[e] = im.get(e, 0) + a1 * b2
            elif a1 == 0:
                for e2, a2, b2 in b_items:
                    e = e1 + e2
                    re[e] = re.get(e, 0) - b1 * b2
                    im[e] = im.get(e, 0) + b1 * a2
            else:
                for e2, a2, b2 in b_items:
                    e = e1 + e2
                    re[e] = re.get(e, 0) + a1 * a2 - b1 * b2
                    im[e] = im.get(e, 0) + a1 * b2 + b1 * a2
        return LaurentPolyZ._raw(re, im, self._den * o._den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = LaurentPolyZ.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Any) -> "LaurentPolyZ":
        return self * LaurentPolyZ.constant(c)

    def shift(self, k: int) -> "LaurentPolyZ":
        """Multiply by ``z**k``."""
        return LaurentPolyZ._raw(
            {e + k: v for e, v in self._re.items()}, {e + k: v for e, v in self._im.items()}, self._den
        )

    def reflect(self) -> "LaurentPolyZ":
        """Substitute ``z -> 1/z``."""
        return LaurentPolyZ._raw(
            {-e: v for e, v in self._re.items()}, {-e: v for e, v in self._im.items()}, self._den
        )

    def inverse(self) -> "LaurentPolyZ":
        """Inverse in the Laurent ring; only monomials are units."""
        if not self.is_monomial():
            raise DomainError("only nonzero monomials are invertible Laurent polynomials")
        (e, c), = self.items()
        return LaurentPolyZ.monomial(-e, c.inverse())

    def __truediv__(self, other):
        if isinstance(other, LaurentPolyZ):
            if other.is_monomial():
                return self * other.inverse()
            return NotImplemented
        if isinstance(other, (int, Fraction, GaussRat, complex)):
            c = GaussRat.coerce(other)
            if not c:
                raise ZeroDivisionError("division of a Laurent polynomial by zero")
            return self * LaurentPolyZ.constant(c.inverse())
        return NotImplemented

    # evaluation / comparison ---------------------------------------------
    def evaluate(self, z: complex) -> complex:
        z = complex(z)
        den = self._den
        total = 0j
        for e, a in self._re.items():
            b = self._im[e]
            total += complex(a / den, b / den) * z**e
        return total

    def __call__(self, z: complex) -> complex:
        return self.evaluate(z)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._den == o._den and self._re == o._re and self._im == o._im

    def __hash__(self):
        if self._hash is None:
            h = hash((frozenset(self._re.items()), frozenset(self._im.items()), self._den))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        return f"LaurentPolyZ({self.to_text()})"

    def __str__(self):
        return self.to_text()

    def to_text(self, var: str = "z") -> str:
        """Terms in descending exponent order, e.g. ``2i*z^2-z+1/2+z^-1``."""
        if not self._re:
            return "0"
        out = []
        for e in sorted(self._re, reverse=True):
            c = self.coeff(e)
            cs = str(c)
            compound = c.re != 0 and c.im != 0
            if e == 0:
                term = f"({cs})" if compound else cs
            else:
                mono = var if e == 1 else f"{var}^{e}"
                if c == 1:
                    term = mono
                elif c == -1:
                    term = f"-{mono}"
                elif compound:
                    term = f"({cs})*{mono}"
                else:
                    term = f"{cs}*{mono}"
            if out and not term.startswith("-"):
                out.append("+")
            out.append(term)
        return "".join(out)

    # dense polynomial view (used for gcd) --------------------------------
    def _dense(self) -> tuple[int, list[GaussRat]]:
        lo, hi = self.min_degree, self.max_degree
        return lo, [self.coeff(e) for e in range(lo, hi + 1)]

    @classmethod
    def _from_dense(cls, lo: int, coeffs: list[GaussRat]) -> "LaurentPolyZ":
        return cls({lo + k: c for k, c in enumerate(coeffs) if c})


# ---------------------------------------------------------------------------
# dense polynomial helpers over Q(i), coefficient lists low -> high


def _trim(p: list[GaussRat]) -> list[GaussRat]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[GaussRat], b: list[GaussRat]) -> tuple[list[GaussRat], list[GaussRat]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = b[-1].inverse()
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    quot = [GaussRat(0)] * (len(a) - db)
    rem = list(a)
    for k in range(len(a) - 1 - db, -1, -1):
        c = rem[k + db] * inv_lead
        quot[k] = c
        if c:
            for j in range(db + 1):
                rem[k + j] = rem[k + j] - c * b[j]
    return _trim(quot), _trim(rem[:db])


def _poly_monic(p: list[GaussRat]) -> list[GaussRat]:
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _poly_gcd(a: list[GaussRat], b: list[GaussRat]) -> list[GaussRat]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, (_poly_monic(r) if r else r)
    return _poly_monic(a) if a else a


class RatFunZ:
    """Rational function ``num/den`` in ``z`` in canonical form.

    Canonical form: ``den`` is an ordinary polynomial with constant term 1,
    ``num`` and ``den`` share no nonunit factor.  Monomials are units of the
    Laurent ring, so they always live in ``num``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Any = 0, den: Any = 1):
        n = LaurentPolyZ._coerce(num)
        d = LaurentPolyZ._coerce(den)
        if n is None or d is None:
            raise TypeError("RatFunZ expects Laurent polynomials or scalars")
        n, d = _normalize(n, d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def _canonical(cls, num: LaurentPolyZ, den: LaurentPolyZ) -> "RatFunZ":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("RatFunZ is immutable")

    @staticmethod
    def _coerce(x: Any) -> "RatFunZ | None":
        if isinstance(x, RatFunZ):
            return x
        p = LaurentPolyZ._coerce(x)
        if p is None:
            return None
        return RatFunZ._canonical(p, LaurentPolyZ.one())

    # predicates -----------------------------------------------------------
    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.is_laurent() and self.num.is_constant()

    def constant_value(self) -> GaussRat | None:
        return self.num.constant_term() if self.is_constant() else None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFunZ(self.num + o.num, self.den)
        if self.den.is_one():
            # gcd(n1*d2 + n2, d2) = gcd(n2, d2) = 1
            return RatFunZ._canonical(self.num * o.den + o.num, o.den)
        if o.den.is_one():
            return RatFunZ._canonical(o.num * self.den + self.num, self.den)
        return RatFunZ(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunZ._canonical(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return RatFunZ()
            return RatFunZ._canonical(self.num * other, self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFunZ()
        if self.den.is_one() and o.den.is_one():
            return RatFunZ._canonical(self.num * o.num, self.den)
        if o.den.is_one() and o.num.is_monomial():
            return RatFunZ._canonical(self.num * o.num, self.den)
        if self.den.is_one() and self.num.is_monomial():
            return RatFunZ._canonical(self.num * o.num, o.den)
        return RatFunZ(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunZ":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunZ(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunZ._canonical(self.num**n, self.den**n)

    # evaluation / comparison ---------------------------------------------
    def evaluate(self, z: complex) -> complex:
        return self.num.evaluate(z) / self.den.evaluate(z)

    def __call__(self, z: complex) -> complex:
        return self.evaluate(z)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def to_text(self, var: str = "z") -> str:
        if self.den.is_one():
            return self.num.to_text(var)
        return f"({self.num.to_text(var)})/({self.den.to_text(var)})"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"RatFunZ({self.to_text()})"


def _normalize(num: LaurentPolyZ, den: LaurentPolyZ) -> tuple[LaurentPolyZ, LaurentPolyZ]:
    if den.is_zero():
        raise DomainError("zero denominator")
    if num.is_zero():
        return LaurentPolyZ(), LaurentPolyZ.one()
    s = den.min_degree
    num = num.shift(-s)
    den = den.shift(-s)
    if den.max_degree > 0:
        m = num.min_degree
        nlo, ncoef = num._dense()
        _, dcoef = den._dense()
        g = _poly_gcd(ncoef, dcoef)
        if len(g) > 1:
            ncoef, r1 = _poly_divmod(ncoef, g)
            dcoef, r2 = _poly_divmod(dcoef, g)
            assert not r1 and not r2
            num = LaurentPolyZ._from_dense(m, ncoef)
            den = LaurentPolyZ._from_dense(0, dcoef)
    c0 = den.coeff(0)
    if c0 != 1:
        inv = LaurentPolyZ.constant(c0.inverse())
        num = num * inv
        den = den * inv
    return num, den


# ---------------------------------------------------------------------------
# truncated q-series


def _zero_like(x: Any) -> Any:
    return x - x


def _ring_inverse(c: Any) -> Any:
    if hasattr(c, "inverse"):
        try:
            return c.inverse()
        except ZeroDivisionError as exc:
            raise DomainError(str(exc)) from None
    if c == 0:
        raise DomainError("leading coefficient is not invertible")
    if isinstance(c, (int, Fraction)):
        return Fraction(1) / c
    return 1 / c


@dataclass(frozen=True)
class QSeries:
    """Truncated series ``q^(e/8) * sum_k coeffs[k] * q^(k/2)``.

    ``coeffs`` has ``order + 1`` entries and nothing beyond ``q^(order/2)`` is
    known.  Coefficients may live in any commutative ring supporting ``+``,
    ``-`` and ``*`` (complex numbers, ``GaussRat``, ``LaurentPolyZ``,
    ``RatFunZ``).
    """

    coeffs: tuple
    prefactor_eighths: int = 0

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a QSeries needs at least the q^0 coefficient")

    @classmethod
    def constant(cls, c: Any, order: int, zero: Any = 0, prefactor_eighths: int = 0) -> "QSeries":
        return cls((c,) + (zero,) * order, prefactor_eighths)

    @classmethod
    def from_terms(cls, terms: Mapping[int, Any], order: int, zero: Any = 0,
                   prefactor_eighths: int = 0) -> "QSeries":
        """Build from ``{k: coefficient of q^(k/2)}``; terms past ``order`` are dropped."""
        return cls(tuple(terms.get(k, zero) for k in range(order + 1)), prefactor_eighths)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    truncation_order = order

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1], self.prefactor_eighths)

    def map(self, fn: Callable[[Any], Any]) -> "QSeries":
        return QSeries(tuple(fn(c) for c in self.coeffs), self.prefactor_eighths)

    def __add__(self, other):
        if isinstance(other, QSeries):
            if other.prefactor_eighths != self.prefactor_eighths:
                raise PrefactorMismatch(
                    f"prefactors q^({self.prefactor_eighths}/8) and q^({other.prefactor_eighths}/8) differ"
                )
            k = min(self.order, other.order)
            return QSeries(
                tuple(a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])),
                self.prefactor_eighths,
            )
        if self.prefactor_eighths != 0:
            raise PrefactorMismatch("adding a scalar to a series with a q^(1/8) prefactor")
        return QSeries((self.coeffs[0] + other,) + self.coeffs[1:], 0)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(tuple(-c for c in self.coeffs), self.prefactor_eighths)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries(tuple(c * other for c in self.coeffs), self.prefactor_eighths)
        k = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        nz_a = [j for j in range(k + 1) if a[j]]
        zero = _zero_like(a[0] * b[0])
        out = []
        for n in range(k + 1):
            acc = None
            for i in nz_a:
                if i > n:
                    break
                if b[n - i]:
                    term = a[i] * b[n - i]
                    acc = term if acc is None else acc + term
            out.append(zero if acc is None else acc)
        return QSeries(tuple(out), self.prefactor_eighths + other.prefactor_eighths)

    def __rmul__(self, other):
        return QSeries(tuple(other * c for c in self.coeffs), self.prefactor_eighths)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        zero = _zero_like(self.coeffs[0])
        out = QSeries.constant(zero + 1, self.order, zero)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self, order: int | None = None) -> "QSeries":
        k = self.order if order is None else order
        if k > self.order:
            raise ValueError(f"series known only to order {self.order}")
        a = self.coeffs
        b0 = _ring_inverse(a[0])
        out = [b0]
        for n in range(1, k + 1):
            acc = None
            for j in range(1, n + 1):
                if a[j]:
                    term = a[j] * out[n - j]
                    acc = term if acc is None else acc + term
            out.append(_zero_like(b0) if acc is None else -(b0 * acc))
        return QSeries(tuple(out), -self.prefactor_eighths)

    def evaluate(self, tau: complex, coeff_eval: Callable[[Any], complex] | None = None) -> complex:
        """Sum the truncated series at ``q = exp(2*pi*i*tau)``.

        ``coeff_eval`` turns a coefficient into a complex number (for example
        ``lambda c: c.evaluate(z)`` for ``RatFunZ`` coefficients).
        """
        import cmath

        qh = cmath.exp(1j * math.pi * tau)
        total = 0j
        p = 1 + 0j
        for c in self.coeffs:
            v = complex(c) if coeff_eval is None else coeff_eval(c)
            total += v * p
            p *= qh
        return total * cmath.exp(1j * math.pi * tau * self.prefactor_eighths / 4)

    def max_abs_diff(self, other: "QSeries") -> float:
        """Largest coefficient gap for complex-valued series of equal prefactor."""
        if self.prefactor_eighths != other.prefactor_eighths:
            raise PrefactorMismatch("series prefactors differ")
        k = min(self.order, other.order)
        return max(abs(complex(a) - complex(b)) for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1]))


# ---------------------------------------------------------------------------
# functional entry points

_SCALAR_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def scalar_arith(a: Any, b: Any, op: str) -> GaussRat:
    a, b = GaussRat.coerce(a), GaussRat.coerce(b)
    if op not in _SCALAR_OPS:
        raise ValueError(f"unknown op {op!r}")
    if op == "div" and not b:
        raise DomainError("division by zero")
    return _SCALAR_OPS[op](a, b)


def laurent_arith(a: LaurentPolyZ, b: LaurentPolyZ, op: str) -> LaurentPolyZ:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ratfun_normalize(num: LaurentPolyZ, den: LaurentPolyZ) -> RatFunZ:
    return RatFunZ(num, den)


def qseries_arith(a: QSeries, b: QSeries, op: str) -> QSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def qseries_inverse(a: QSeries, order: int | None = None) -> QSeries:
    return a.inverse(order)


def poly_from_ints(coeffs: Iterable[int], lo: int = 0) -> LaurentPolyZ:
    """``coeffs[k]`` is the coefficient of ``z^(lo + k)``."""
    return LaurentPolyZ({lo + k: c for k, c in enumerate(coeffs) if c})
