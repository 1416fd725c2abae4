"""Exact coefficient arithmetic.

Every structure constant in this library lives in the ring Q(i, r2)[t, u, v]:
polynomials in three central formal parameters t, u, v whose coefficients lie
in the degree-4 number field Q(i, sqrt(2)).  Two classes implement this:

* ``QExt``    -- one field element  a + b*r2 + c*i + d*i*r2  (Fractions a..d),
* ``Scalar``  -- a sparse polynomial {(deg_t, deg_u, deg_v): QExt}.

Both are immutable value types with exact equality; there is no floating
point anywhere.  Text rendering uses ``i`` for sqrt(-1), ``r2`` for sqrt(2)
and plain ``p/q`` rationals, matching the expression grammar of the CLI.
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


def _frac(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class QExt:
    """An element a + b*sqrt(2) + c*i + d*i*sqrt(2) of Q(i, sqrt(2)).

    The four coordinates are Fractions; the basis (1, r2, i, i*r2) is a
    Q-vector space basis, so equality of coordinates is equality of numbers.

    >>> x = QExt(1, 0, 0, 1)   # 1 + i*r2
    >>> y = QExt(1, 0, 0, -1)  # 1 - i*r2
    >>> x * y == QExt(3)
    True
    >>> (x * x.inverse()) == QExt.one()
    True
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=_F0, b=_F0, c=_F0, d=_F0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))
        object.__setattr__(self, "c", _frac(c))
        object.__setattr__(self, "d", _frac(d))

    def __setattr__(self, name, value):
        raise AttributeError("QExt is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "QExt":
        return _QZERO

    @staticmethod
    def one() -> "QExt":
        return _QONE

    @staticmethod
    def i() -> "QExt":
        return _QI

    @staticmethod
    def r2() -> "QExt":
        return _QR2

    @staticmethod
    def rational(x) -> "QExt":
        return QExt(_frac(x))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "QExt") -> "QExt":
        return QExt(self.a + other.a, self.b + other.b,
                    self.c + other.c, self.d + other.d)

    def __sub__(self, other: "QExt") -> "QExt":
        return QExt(self.a - other.a, self.b - other.b,
                    self.c - other.c, self.d - other.d)

    def __neg__(self) -> "QExt":
        return QExt(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other) -> "QExt":
        if not isinstance(other, QExt):
            other = QExt.rational(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # rational factors are by far the most common case
        if not (b1 or c1 or d1):
            if a1 == 1:
                return other
            if a1 == -1:
                return QExt(-a2, -b2, -c2, -d2)
            return QExt(a1 * a2, a1 * b2, a1 * c2, a1 * d2)
        if not (b2 or c2 or d2):
            if a2 == 1:
                return self
            if a2 == -1:
                return QExt(-a1, -b1, -c1, -d1)
            return QExt(a1 * a2, b1 * a2, c1 * a2, d1 * a2)
        # r2*r2 = 2, i*i = -1, (i*r2)^2 = -2, r2*(i*r2) = 2i, i*(i*r2) = -r2
        return QExt(
            a1 * a2 + 2 * b1 * b2 - c1 * c2 - 2 * d1 * d2,
            a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def conj_i(self) -> "QExt":
        """Galois conjugate sending i -> -i (fixes r2)."""
        return QExt(self.a, self.b, -self.c, -self.d)

    def conj_r2(self) -> "QExt":
        """Galois conjugate sending r2 -> -r2 (fixes i)."""
        return QExt(self.a, -self.b, self.c, -self.d)

    def inverse(self) -> "QExt":
        # kill i first, then r2; the final norm is a plain rational
        m = self * self.conj_i()          # lies in Q(r2): m = p + q*r2
        p, q = m.a, m.b
        norm = p * p - 2 * q * q
        if norm == 0:
            raise ZeroDivisionError("QExt inverse of zero")
        inv_norm = 1 / norm
        # inverse = conj_i(self) * (p - q*r2) / norm
        w = self.conj_i() * QExt(p, -q)
        return QExt(w.a * inv_norm, w.b * inv_norm, w.c * inv_norm, w.d * inv_norm)

    def __truediv__(self, other: "QExt") -> "QExt":
        if not isinstance(other, QExt):
            other = QExt.rational(other)
        return self * other.inverse()

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExt):
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def coords(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    # -- rendering ---------------------------------------------------------

    def text(self) -> str:
        """Grammar-compatible rendering, e.g. ``-1/2``, ``i*r2``, ``(1+r2)``.

        >>> QExt(0, 0, 0, Fraction(-3, 2)).text()
        '-3/2*i*r2'
        >>> QExt(1, 1).text()
        '(1+r2)'
        """
        parts = []
        for coef, unit in ((self.a, ""), (self.b, "r2"), (self.c, "i"),
                           (self.d, "i*r2")):
            if not coef:
                continue
            if unit and abs(coef) == 1:
                body = unit
            elif unit:
                body = f"{abs(coef)}*{unit}"
            else:
                body = str(abs(coef))
            parts.append(("-" if coef < 0 else "+", body))
        if not parts:
            return "0"
        if len(parts) == 1:
            sign, body = parts[0]
            return body if sign == "+" else "-" + body
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return "(" + out + ")"

    def __repr__(self):
        return f"QExt({self.a}, {self.b}, {self.c}, {self.d})"

    def to_json(self) -> list:
        return [str(self.a), str(self.b), str(self.c), str(self.d)]

    @staticmethod
    def from_json(data) -> "QExt":
        a, b, c, d = data
        return QExt(Fraction(a), Fraction(b), Fraction(c), Fraction(d))


_QZERO = QExt()
_QONE = QExt(1)
_QI = QExt(0, 0, 1)
_QR2 = QExt(0, 1)

_PARAM_NAMES = ("t", "u", "v")


class Scalar:
    """A polynomial in the central formal parameters t, u, v over QExt.

    Stored sparsely as {(deg_t, deg_u, deg_v): QExt} with no zero values;
    instances are value-immutable (the dict is never mutated after
    construction).  Supports exact ring arithmetic, substitution of rational
    values for the parameters, and grammar-compatible text rendering.

    >>> s = Scalar.t() + Scalar.u() * Scalar.u()
    >>> s.text()
    't+u^2'
    >>> (s - s).is_zero()
    True
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        if terms:
            for deg, q in terms.items():
                if q:
                    clean[deg] = q
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Scalar":
        return Scalar()

    @staticmethod
    def one() -> "Scalar":
        return Scalar({(0, 0, 0): _QONE})

    @staticmethod
    def from_qext(q: QExt) -> "Scalar":
        return Scalar({(0, 0, 0): q})

    @staticmethod
    def rational(x) -> "Scalar":
        return Scalar({(0, 0, 0): QExt.rational(x)})

    @staticmethod
    def i() -> "Scalar":
        return Scalar.from_qext(_QI)

    @staticmethod
    def r2() -> "Scalar":
        return Scalar.from_qext(_QR2)

    @staticmethod
    def t() -> "Scalar":
        return Scalar({(1, 0, 0): _QONE})

    @staticmethod
    def u() -> "Scalar":
        return Scalar({(0, 1, 0): _QONE})

    @staticmethod
    def v() -> "Scalar":
        return Scalar({(0, 0, 1): _QONE})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        out = dict(self.terms)
        for deg, q in other.terms.items():
            cur = out.get(deg)
            out[deg] = q if cur is None else cur + q
        return Scalar(out)

    def __sub__(self, other: "Scalar") -> "Scalar":
        out = dict(self.terms)
        for deg, q in other.terms.items():
            cur = out.get(deg)
            out[deg] = -q if cur is None else cur - q
        return Scalar(out)

    def __neg__(self) -> "Scalar":
        return Scalar({deg: -q for deg, q in self.terms.items()})

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, QExt):
            return self.scale(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(QExt.rational(other))
        out: dict = {}
        for (t1, u1, v1), q1 in self.terms.items():
            for (t2, u2, v2), q2 in other.terms.items():
                deg = (t1 + t2, u1 + u2, v1 + v2)
                prod = q1 * q2
                cur = out.get(deg)
                out[deg] = prod if cur is None else cur + prod
        return Scalar(out)

    __rmul__ = __mul__

    def scale(self, q: QExt) -> "Scalar":
        if not q:
            return Scalar()
        return Scalar({deg: c * q for deg, c in self.terms.items()})

    def div_qext(self, q: QExt) -> "Scalar":
        return self.scale(q.inverse())

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            raise ValueError("negative Scalar power")
        out = Scalar.one()
        for _ in range(k):
            out = out * self
        return out

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def degree(self) -> int:
        """Total degree in t, u, v (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(sum(deg) for deg in self.terms)

    def constant_part(self) -> QExt:
        return self.terms.get((0, 0, 0), _QZERO)

    def is_constant(self) -> bool:
        return all(deg == (0, 0, 0) for deg in self.terms)

    def substitute(self, values: dict) -> "Scalar":
        """Replace parameters by rationals: values maps 't'/'u'/'v' -> Fraction.

        Parameters absent from ``values`` stay formal.
        """
        vals = [None, None, None]
        for name, x in values.items():
            vals[_PARAM_NAMES.index(name)] = _frac(x)
        out = Scalar.zero()
        for deg, q in self.terms.items():
            coef = q
            new_deg = [0, 0, 0]
            for k in range(3):
                if vals[k] is None:
                    new_deg[k] = deg[k]
                else:
                    coef = coef * (vals[k] ** deg[k])
            out = out + Scalar({tuple(new_deg): coef})
        return out

    # -- rendering ---------------------------------------------------------

    def text(self) -> str:
        """Render as a grammar-parseable string, e.g. ``t+2*u^2-i*r2*v``."""
        if not self.terms:
            return "0"
        chunks = []
        for deg in sorted(self.terms, reverse=True):
            q = self.terms[deg]
            mono = []
            for d, name in zip(deg, _PARAM_NAMES):
                if d == 1:
                    mono.append(name)
                elif d > 1:
                    mono.append(f"{name}^{d}")
            qt = q.text()
            neg = False
            if mono and qt == "1":
                body = "*".join(mono)
            elif mono and qt == "-1":
                body, neg = "*".join(mono), True
            elif mono:
                if qt.startswith("-") and not qt.startswith("(-"):
                    qt, neg = qt[1:], True
                body = qt + "*" + "*".join(mono)
            else:
                if qt.startswith("-") and not qt.startswith("(-"):
                    qt, neg = qt[1:], True
                body = qt
            chunks.append(("-" if neg else "+", body))
        sign0, body0 = chunks[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in chunks[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"Scalar<{self.text()}>"

    def to_json(self) -> list:
        return [{"deg": list(deg), "qext": q.to_json()}
                for deg, q in sorted(self.terms.items())]

    @staticmethod
    def from_json(data) -> "Scalar":
        return Scalar({tuple(item["deg"]): QExt.from_json(item["qext"])
                       for item in data})


# Shared constants (Scalars are immutable, sharing is safe.)
ZERO = Scalar.zero()
ONE = Scalar.one()
T = Scalar.t()
U = Scalar.u()
V = Scalar.v()
I = Scalar.i()
R2 = Scalar.r2()
MINUS_ONE = Scalar.rational(-1)
HALF = Scalar.rational(Fraction(1, 2))
