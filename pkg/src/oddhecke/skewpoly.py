"""Polynomial rings attached to the reflection representations.

``SkewPoly`` models C[xi_1..xi_n] with xi_i xi_j = -xi_j xi_i for i != j
(squares are NOT zero: xi_i^2 is a central polynomial generator).  Monomials
are exponent tuples in the fixed order xi_1^{a_1} ... xi_n^{a_n}; the single
source of truth for reordering signs is ``skew_sign``:

    xi^a * xi^b = (-1)^{sum_{k > i} a_k b_i} xi^{a+b}.

Two group actions are exposed and deliberately kept apart:

* ``signed_act``   -- the # action of signed permutations, xi_i -> +-xi_{|w(i)|}
  (an operator notion; any signed images tuple is accepted, so tau_i# and
  barred-swap# exist even where the group element would not),
* ``unsigned_act`` -- the module action through the sign-forgetting
  projection, xi_i -> xi_{|w(i)|} with all signs dropped.

``XPoly`` is the plain commutative ring C[x_1..x_n] with the same pair of
actions plus the divided differences used by Dunkl operators.  Exact
division (by 2*xi_i and by the central xi_i^2 - xi_k^2, and the commutative
binomials x_i -+ x_k) raises ValueError when the division is not exact.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QExt, Scalar
from .weyl import GroupElement

_HALF = QExt(Fraction(1, 2))


def _images_of(w) -> tuple:
    if isinstance(w, GroupElement):
        return w.images
    return tuple(w)


def sharp_swap(n: int, i: int, k: int) -> tuple:
    images = list(range(1, n + 1))
    images[i - 1], images[k - 1] = k, i
    return tuple(images)


def sharp_barred(n: int, i: int, k: int) -> tuple:
    images = list(range(1, n + 1))
    images[i - 1], images[k - 1] = -k, -i
    return tuple(images)


def sharp_tau(n: int, i: int) -> tuple:
    images = list(range(1, n + 1))
    images[i - 1] = -i
    return tuple(images)


def skew_sign(a: tuple, b: tuple) -> int:
    """The reordering sign of xi^a * xi^b (single source of truth)."""
    sign = 0
    total = 0          # running sum of a_k for k > i, built from the right
    for i in range(len(a) - 1, -1, -1):
        sign += total * b[i]
        total += a[i]
    return -1 if sign & 1 else 1


def _act_images(alpha: tuple, images: tuple, signed: bool):
    """Common worker: returns (sign, new exponent tuple)."""
    n = len(alpha)
    new = [0] * n
    sign = 0
    targets = []
    for i in range(n):
        if not alpha[i]:
            targets.append(0)
            continue
        img = images[i]
        if img < 0:
            if signed and alpha[i] & 1:
                sign += 1
            img = -img
        targets.append(img)
        new[img - 1] += alpha[i]
    # reordering sign: letters keep their source order; count crossings of
    # distinct target letters that end up inverted
    for i in range(n):
        if not alpha[i]:
            continue
        for k in range(i + 1, n):
            if alpha[k] and targets[i] > targets[k]:
                sign += alpha[i] * alpha[k]
    return (-1 if sign & 1 else 1), tuple(new)


class SkewPoly:
    """Sparse skew polynomial {exponent tuple: Scalar}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        clean = {}
        if terms:
            for alpha, s in terms.items():
                if s:
                    clean[alpha] = s
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SkewPoly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "SkewPoly":
        return SkewPoly(n)

    @staticmethod
    def one(n: int) -> "SkewPoly":
        return SkewPoly(n, {(0,) * n: Scalar.one()})

    @staticmethod
    def xi(n: int, i: int, power: int = 1) -> "SkewPoly":
        if not 1 <= i <= n:
            raise ValueError(f"xi_{i} out of range for n={n}")
        alpha = [0] * n
        alpha[i - 1] = power
        return SkewPoly(n, {tuple(alpha): Scalar.one()})

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        out = dict(self.terms)
        for alpha, s in other.terms.items():
            cur = out.get(alpha)
            out[alpha] = s if cur is None else cur + s
        return SkewPoly(self.n, out)

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.n, {a: -s for a, s in self.terms.items()})

    def scale(self, s) -> "SkewPoly":
        if isinstance(s, (QExt, int, Fraction)):
            s = Scalar.from_qext(s if isinstance(s, QExt) else QExt.rational(s))
        return SkewPoly(self.n, {a: v * s for a, v in self.terms.items()})

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        out: dict = {}
        for a, s1 in self.terms.items():
            for b, s2 in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                val = s1 * s2
                if skew_sign(a, b) < 0:
                    val = -val
                cur = out.get(key)
                out[key] = val if cur is None else cur + val
        return SkewPoly(self.n, out)

    # -- structure ----------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, SkewPoly)
                and self.n == other.n and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def parity(self) -> int | None:
        pars = {sum(a) & 1 for a in self.terms}
        if not pars:
            return 0
        if len(pars) > 1:
            return None
        return pars.pop()

    def __repr__(self):
        return f"SkewPoly({self.n}; {len(self.terms)} terms)"

    # -- group actions ---------------------------------------------------------------

    def signed_act(self, w) -> "SkewPoly":
        """The # action: xi_i -> sign * xi_{|w(i)|} for signed images w."""
        images = _images_of(w)
        out: dict = {}
        for alpha, s in self.terms.items():
            sign, key = _act_images(alpha, images, signed=True)
            val = -s if sign < 0 else s
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
        return SkewPoly(self.n, out)

    def unsigned_act(self, w) -> "SkewPoly":
        """The module action through the sign-forgetting projection."""
        images = _images_of(w)
        out: dict = {}
        for alpha, s in self.terms.items():
            sign, key = _act_images(alpha, images, signed=False)
            val = -s if sign < 0 else s
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
        return SkewPoly(self.n, out)

    # -- derivations and division -------------------------------------------------------

    def super_derive(self, i: int) -> "SkewPoly":
        """The odd derivation d_i with d_i(xi_j) = delta_ij and signed Leibniz;
        on monomials it equals (f - f^{tau_i#}) / (2 xi_i)."""
        out: dict = {}
        for alpha, s in self.terms.items():
            if not alpha[i - 1] & 1:
                continue
            key = list(alpha)
            key[i - 1] -= 1
            crossings = sum(alpha[k] for k in range(i - 1))
            val = -s if crossings & 1 else s
            key = tuple(key)
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
        return SkewPoly(self.n, out)

    def div_2xi(self, i: int) -> "SkewPoly":
        """Exact division on the left by 2*xi_i."""
        out: dict = {}
        for alpha, s in self.terms.items():
            if alpha[i - 1] < 1:
                raise ValueError(f"not divisible by xi_{i}")
            key = list(alpha)
            key[i - 1] -= 1
            crossings = sum(alpha[k] for k in range(i - 1))
            val = s * _HALF
            if crossings & 1:
                val = -val
            out[tuple(key)] = val
        return SkewPoly(self.n, out)

    def div_sq_diff(self, i: int, k: int) -> "SkewPoly":
        """Exact division by the central element xi_i^2 - xi_k^2."""
        if i == k:
            raise ValueError("need distinct indices")
        sign = Scalar.one()
        a, b = i, k
        if a > b:
            a, b = b, a
            sign = -sign      # xi_i^2 - xi_k^2 = -(xi_k^2 - xi_i^2)
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            lead = max(rem)
            coef = rem.pop(lead)
            if lead[a - 1] < 2:
                raise ValueError(f"not divisible by xi_{i}^2 - xi_{k}^2")
            qkey = list(lead)
            qkey[a - 1] -= 2
            qkey = tuple(qkey)
            quo[qkey] = quo.get(qkey, Scalar.zero()) + coef
            # subtract (xi_a^2 - xi_b^2) * coef * xi^qkey  (central, no signs)
            okey = list(qkey)
            okey[b - 1] += 2
            okey = tuple(okey)
            cur = rem.get(okey, Scalar.zero()) + coef
            if cur:
                rem[okey] = cur
            elif okey in rem:
                del rem[okey]
        return SkewPoly(self.n, quo).scale(sign.constant_part())


def exact_divide(f: SkewPoly, d: SkewPoly) -> SkewPoly:
    """Divide by a recognized divisor: q*xi_i (constant q) or xi_i^2 - xi_k^2."""
    items = sorted(d.terms.items())
    if len(items) == 1:
        (alpha, coef), = items
        live = [i for i, a in enumerate(alpha) if a]
        if len(live) == 1 and alpha[live[0]] == 1 and coef.is_constant():
            q = f.div_2xi(live[0] + 1)
            return q.scale((QExt(2) * coef.constant_part().inverse()))
    if len(items) == 2:
        (a1, c1), (a2, c2) = items
        live1 = [i for i, a in enumerate(a1) if a]
        live2 = [i for i, a in enumerate(a2) if a]
        if (len(live1) == 1 and len(live2) == 1 and a1[live1[0]] == 2
                and a2[live2[0]] == 2 and c1 == -c2
                and c2 == Scalar.one()):
            # the negated square sorts first: d = -(xi_{v1}^2 - xi_{v2}^2)
            return -f.div_sq_diff(live1[0] + 1, live2[0] + 1)
        if (len(live1) == 1 and len(live2) == 1 and a1[live1[0]] == 2
                and a2[live2[0]] == 2 and c1 == -c2
                and c1 == Scalar.one()):
            return f.div_sq_diff(live1[0] + 1, live2[0] + 1)
    raise ValueError("unrecognized divisor (need q*xi_i or xi_i^2 - xi_k^2)")


class XPoly:
    """Sparse commutative polynomial {exponent tuple: Scalar} in x_1..x_n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        clean = {}
        if terms:
            for alpha, s in terms.items():
                if s:
                    clean[alpha] = s
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @staticmethod
    def zero(n: int) -> "XPoly":
        return XPoly(n)

    @staticmethod
    def one(n: int) -> "XPoly":
        return XPoly(n, {(0,) * n: Scalar.one()})

    @staticmethod
    def x(n: int, i: int, power: int = 1) -> "XPoly":
        if not 1 <= i <= n:
            raise ValueError(f"x_{i} out of range for n={n}")
        alpha = [0] * n
        alpha[i - 1] = power
        return XPoly(n, {tuple(alpha): Scalar.one()})

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self.terms)
        for alpha, s in other.terms.items():
            cur = out.get(alpha)
            out[alpha] = s if cur is None else cur + s
        return XPoly(self.n, out)

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __neg__(self) -> "XPoly":
        return XPoly(self.n, {a: -s for a, s in self.terms.items()})

    def scale(self, s) -> "XPoly":
        if isinstance(s, (QExt, int, Fraction)):
            s = Scalar.from_qext(s if isinstance(s, QExt) else QExt.rational(s))
        return XPoly(self.n, {a: v * s for a, v in self.terms.items()})

    def __mul__(self, other: "XPoly") -> "XPoly":
        out: dict = {}
        for a, s1 in self.terms.items():
            for b, s2 in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                val = s1 * s2
                cur = out.get(key)
                out[key] = val if cur is None else cur + val
        return XPoly(self.n, out)

    def __eq__(self, other):
        return (isinstance(other, XPoly)
                and self.n == other.n and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def __repr__(self):
        return f"XPoly({self.n}; {len(self.terms)} terms)"

    # -- actions -----------------------------------------------------------------

    def signed_act(self, w) -> "XPoly":
        """x_i -> sign * x_{|w(i)|} (the # action; commutative, so only the
        per-letter signs matter)."""
        images = _images_of(w)
        out: dict = {}
        for alpha, s in self.terms.items():
            new = [0] * self.n
            neg = 0
            for i, a in enumerate(alpha):
                if not a:
                    continue
                img = images[i]
                if img < 0:
                    neg += a
                    img = -img
                new[img - 1] += a
            val = -s if neg & 1 else s
            key = tuple(new)
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
        return XPoly(self.n, out)

    def unsigned_act(self, w) -> "XPoly":
        images = tuple(abs(k) for k in _images_of(w))
        return self.signed_act(images)

    # -- divided differences ---------------------------------------------------------

    def _div_binomial(self, i: int, k: int, sign: int) -> "XPoly":
        """Exact division by x_i - sign*x_k."""
        flip = Scalar.one()
        a, b = i, k
        if a > b:
            # x_i - s x_k = -s (x_k - s x_i)
            a, b = b, a
            if sign > 0:
                flip = -flip
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            lead = max(rem)
            coef = rem.pop(lead)
            if lead[a - 1] < 1:
                raise ValueError("binomial division not exact")
            qkey = list(lead)
            qkey[a - 1] -= 1
            qkey = tuple(qkey)
            quo[qkey] = quo.get(qkey, Scalar.zero()) + coef
            okey = list(qkey)
            okey[b - 1] += 1
            okey = tuple(okey)
            other = coef if sign > 0 else -coef
            cur = rem.get(okey, Scalar.zero()) + other
            if cur:
                rem[okey] = cur
            elif okey in rem:
                del rem[okey]
        out = XPoly(self.n, quo)
        return out if flip == Scalar.one() else -out

    def dd_swap(self, i: int, k: int) -> "XPoly":
        """(f - f^{s_ik#}) / (x_i - x_k)."""
        num = self - self.signed_act(sharp_swap(self.n, i, k))
        return num._div_binomial(i, k, 1)

    def dd_barred(self, i: int, k: int) -> "XPoly":
        """(f - f^{barred s_ik#}) / (x_i + x_k)."""
        num = self - self.signed_act(sharp_barred(self.n, i, k))
        return num._div_binomial(i, k, -1)

    def dd_tau(self, i: int) -> "XPoly":
        """(f - f^{tau_i#}) / (2 x_i)."""
        num = self - self.signed_act(sharp_tau(self.n, i))
        out: dict = {}
        for alpha, s in num.terms.items():
            if alpha[i - 1] < 1:
                raise ValueError("tau divided difference not exact")
            key = list(alpha)
            key[i - 1] -= 1
            out[tuple(key)] = s * _HALF
        return XPoly(self.n, out)
