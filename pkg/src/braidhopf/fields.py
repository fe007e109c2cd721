"""Exact scalar fields: rationals and cyclotomic extensions.

A field object owns parsing, formatting, and JSON encoding of its scalars.
Rational scalars are `fractions.Fraction`; cyclotomic scalars are CycElt
residues modulo the N-th cyclotomic polynomial. Both are immutable and
hashable, so they can be shared freely across threads.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldMismatch, ParseError

# ---------------------------------------------------------------------------
# polynomial helpers (coefficient lists, low degree first, Fraction entries)


def _p_trim(p):
    n = len(p)
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return p[:n]


def _p_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj != 0:
                out[i + j] += ai * bj
    return _p_trim(out)


def _p_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _p_trim(out)


def _p_divmod(a, b):
    """Exact division with remainder in Q[x]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = Fraction(1) / b[-1]
    while len(_p_trim(a)) >= len(b):
        a = _p_trim(a)
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] -= coef * bi
    return _p_trim(q), _p_trim(a)


_CYCLO_CACHE = {}


def cyclotomic_coeffs(n):
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    cached = _CYCLO_CACHE.get(n)
    if cached is not None:
        return cached
    # x^n - 1 divided by the product of all lower-order factors
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            q, r = _p_divmod(poly, cyclotomic_coeffs(d))
            assert not r
            poly = q
    result = tuple(poly)
    _CYCLO_CACHE[n] = result
    return result


# ---------------------------------------------------------------------------
# scalar element for cyclotomic fields


class CycElt:
    """Residue in Q[z]/(Phi_N(z)), coefficients stored reduced."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs  # tuple of Fractions, length = field.degree

    def _check(self, other):
        if isinstance(other, CycElt):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(
                    f"cannot mix {self.field.name} and {other.field.name}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return CycElt(
            self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return CycElt(
            self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycElt(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        prod = _p_mul(list(self.coeffs), list(o.coeffs))
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        # extended Euclid against the (irreducible) modulus
        r0 = list(self.field.modulus)
        r1 = _p_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _p_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _p_sub(s0, _p_mul(q, s1))
        # r0 is the gcd, a nonzero constant since the modulus is irreducible
        scale = Fraction(1) / r0[0]
        return self.field._reduce([c * scale for c in s0])

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = self.field.one
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return self.field.format_scalar(self)


# ---------------------------------------------------------------------------
# field objects


class RationalField:
    kind = "rationals"
    order = None

    @property
    def name(self):
        return "Q"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return self.parse_scalar(v)
        raise FieldMismatch(f"cannot coerce {v!r} into Q")

    def parse_scalar(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {text!r}: {exc}") from None

    def format_scalar(self, x):
        return str(x)

    def scalar_to_json(self, x):
        return str(x)

    def scalar_from_json(self, v):
        if isinstance(v, str):
            return self.parse_scalar(v)
        if isinstance(v, int):
            return Fraction(v)
        raise ParseError(f"expected a rational string, got {v!r}")

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Field(Q)"


_TERM_RE = re.compile(
    r"""(?P<coef>\d+(?:/\d+)?)?              # optional rational coefficient
        (?P<star>\*)?
        (?P<z>z(?:\^(?P<exp>\d+))?)?         # optional power of the generator
        """,
    re.VERBOSE,
)


class CyclotomicField:
    kind = "cyclotomic"

    def __init__(self, order):
        if order < 3:
            raise ValueError("use make_field; orders 1 and 2 are rational")
        self.order = order
        self.modulus = cyclotomic_coeffs(order)
        self.degree = len(self.modulus) - 1

    @property
    def name(self):
        return f"Q(z_{self.order})"

    def _reduce(self, poly):
        _, r = _p_divmod(_p_trim(list(poly)), list(self.modulus))
        coeffs = list(r) + [Fraction(0)] * (self.degree - len(r))
        return CycElt(self, tuple(coeffs))

    @property
    def zero(self):
        return CycElt(self, (Fraction(0),) * self.degree)

    @property
    def one(self):
        return self._reduce([Fraction(1)])

    @property
    def gen(self):
        return self._reduce([Fraction(0), Fraction(1)])

    def coerce(self, v):
        if isinstance(v, CycElt):
            if v.field != self:
                raise FieldMismatch(
                    f"cannot coerce element of {v.field.name} into {self.name}"
                )
            return v
        if isinstance(v, (int, Fraction)):
            return self._reduce([Fraction(v)])
        if isinstance(v, str):
            return self.parse_scalar(v)
        raise FieldMismatch(f"cannot coerce {v!r} into {self.name}")

    def parse_scalar(self, text):
        """Parse sums of terms like '2/3*z^2', '-z', '5'."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty scalar literal")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ParseError(f"malformed scalar literal {text!r}")
        out = self.zero
        for pos, term in enumerate(terms):
            body = term
            sign = 1
            if body[0] in "+-":
                if body[0] == "-":
                    sign = -1
                body = body[1:]
            m = _TERM_RE.fullmatch(body)
            if (
                not m
                or (m.group("coef") is None and m.group("z") is None)
                or (m.group("star") and not (m.group("coef") and m.group("z")))
            ):
                raise ParseError(f"bad term {term!r} in {text!r}", position=pos)
            coef = Fraction(m.group("coef")) * sign if m.group("coef") else Fraction(sign)
            if m.group("z"):
                exp = int(m.group("exp")) if m.group("exp") else 1
                out = out + self.gen ** exp * coef
            else:
                out = out + self.coerce(coef)
        return out

    def format_scalar(self, x):
        x = self.coerce(x)
        parts = []
        for k, c in enumerate(x.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                zpow = "z" if k == 1 else f"z^{k}"
                body = zpow if abs(c) == 1 else f"{abs(c)}*{zpow}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) if parts else "0"

    def scalar_to_json(self, x):
        x = self.coerce(x)
        return [str(c) for c in x.coeffs]

    def scalar_from_json(self, v):
        if isinstance(v, str):
            return self.parse_scalar(v)
        if isinstance(v, int):
            return self.coerce(v)
        if isinstance(v, list):
            if len(v) != self.degree:
                raise ParseError(
                    f"coefficient list length {len(v)} != field degree {self.degree}"
                )
            coeffs = []
            for entry in v:
                if isinstance(entry, int):
                    coeffs.append(Fraction(entry))
                elif isinstance(entry, str):
                    try:
                        coeffs.append(Fraction(entry))
                    except (ValueError, ZeroDivisionError) as exc:
                        raise ParseError(
                            f"bad rational literal {entry!r}: {exc}"
                        ) from None
                else:
                    raise ParseError(f"bad coefficient {entry!r}")
            return CycElt(self, tuple(coeffs))
        raise ParseError(f"expected scalar string or coefficient list, got {v!r}")

    def to_json(self):
        return {"cyclotomic": self.order}

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("cyclotomic", self.order))

    def __repr__(self):
        return f"Field({self.name})"


def make_field(spec):
    """Build a field from 'Q', {'cyclotomic': N}, or an integer order N.

    Orders 1 and 2 collapse to the rationals since their roots of unity
    are already rational.
    """
    if isinstance(spec, (RationalField, CyclotomicField)):
        return spec
    if spec == "Q" or spec == "rationals":
        return RationalField()
    if isinstance(spec, dict) and set(spec) == {"cyclotomic"}:
        spec = spec["cyclotomic"]
    if isinstance(spec, int):
        if spec < 1:
            raise ParseError(f"cyclotomic order must be >= 1, got {spec}")
        if spec <= 2:
            return RationalField()
        return CyclotomicField(spec)
    raise ParseError(f"unrecognized field spec {spec!r}")
