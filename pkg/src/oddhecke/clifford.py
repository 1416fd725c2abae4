"""Clifford algebras on 2n anticommuting generators and their smash products.

The big Clifford algebra C_{2n} has generators c_1..c_n, e_1..e_n with
g^2 = 1 and g h = -h g for distinct generators.  Monomials are kept in the
canonical order c_1 < ... < c_n < e_1 < ... < e_n and encoded as a single
bitmask (c-letters in the low n bits, e-letters in the high n bits), so a
product of basis monomials is a popcount exercise.

The Weyl group acts by signed permutation of indices within each letter
species (c_i -> sign * c_{|w(i)|}, same for e).  Three smash products with
the (spin) group algebra are provided through ``SmashElement``:

* ``plain``: w c = c^w w            (group algebra of W, W even),
* ``minus``: t_i c = -c^{s_i} t_i   (spin basis, t_i odd),
* ``plus`` : t_i c = +c^{s_i} t_i   (spin basis, t_i even).

The spin kinds multiply group parts through the 2-cocycle of ``spinweyl``
(imported lazily; ``plain`` has no such dependency and is what ``spinweyl``
itself is built on).

Distinguished odd vectors: beta_i (in the c letters) and nu_i (same formula
in the e letters) satisfy beta_i^2 = 1 and realize the simple reflections:

* families A and B, i < n:  beta_i = (c_i - c_{i+1})/r2,
* family B, i = n:          beta_n = c_n,
* family D, i = n:          beta_n = (c_{n-1} + c_n)/r2.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QExt, Scalar
from . import weyl
from .weyl import GroupElement, WeylType

_HALF_R2 = QExt(0, Fraction(1, 2))          # 1/r2 = r2/2


def mono_mul_bits(a: int, b: int) -> tuple:
    """Multiply two canonical monomials given as bitmasks.

    Returns (sign, mask).  Each letter of b is merged into a from the left
    end of b; crossing a strictly greater letter costs -1, a repeated letter
    squares to +1.

    >>> mono_mul_bits(0b01, 0b01)   # c1 * c1 = 1
    (1, 0)
    >>> mono_mul_bits(0b10, 0b01)   # c2 * c1 = -c1 c2
    (-1, 3)
    """
    sign = 1
    acc = a
    rest = b
    while rest:
        low = rest & -rest
        bit = low.bit_length() - 1
        if (acc >> (bit + 1)).bit_count() & 1:
            sign = -sign
        acc ^= low
        rest ^= low
    return sign, acc


def act_mask(w: GroupElement, mask: int, n: int) -> tuple:
    """Apply the signed index action to a monomial bitmask.

    Both letter species are permuted by the same w; returns (sign, mask).
    """
    sign = 1
    letters = []
    rest = mask
    while rest:
        low = rest & -rest
        bit = low.bit_length() - 1
        rest ^= low
        species, idx = divmod(bit, n)          # species 0 = c, 1 = e
        img = w.act_index(idx + 1)
        if img < 0:
            sign = -sign
            img = -img
        letters.append(species * n + img - 1)
    # count inversions of the image word (letters are distinct)
    out = 0
    for k, bit in enumerate(letters):
        for other in letters[:k]:
            if other > bit:
                sign = -sign
        out |= 1 << bit
    return sign, out


def mask_parity(mask: int) -> int:
    return mask.bit_count() & 1


class CliffordElement:
    """An element of C_{2n}: sparse {bitmask: Scalar} with exact arithmetic."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        clean = {}
        if terms:
            for key, s in terms.items():
                if s:
                    clean[key] = s
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("CliffordElement is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def one(n: int) -> "CliffordElement":
        return CliffordElement(n, {0: Scalar.one()})

    @staticmethod
    def zero(n: int) -> "CliffordElement":
        return CliffordElement(n)

    @staticmethod
    def c(n: int, i: int) -> "CliffordElement":
        if not 1 <= i <= n:
            raise ValueError(f"c_{i} out of range for n={n}")
        return CliffordElement(n, {1 << (i - 1): Scalar.one()})

    @staticmethod
    def e(n: int, i: int) -> "CliffordElement":
        if not 1 <= i <= n:
            raise ValueError(f"e_{i} out of range for n={n}")
        return CliffordElement(n, {1 << (n + i - 1): Scalar.one()})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        out = dict(self.terms)
        for key, s in other.terms.items():
            cur = out.get(key)
            out[key] = s if cur is None else cur + s
        return CliffordElement(self.n, out)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        out = dict(self.terms)
        for key, s in other.terms.items():
            cur = out.get(key)
            out[key] = -s if cur is None else cur - s
        return CliffordElement(self.n, out)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.n, {k: -s for k, s in self.terms.items()})

    def scale(self, s) -> "CliffordElement":
        if isinstance(s, QExt):
            s = Scalar.from_qext(s)
        return CliffordElement(self.n, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        out: dict = {}
        for k1, s1 in self.terms.items():
            for k2, s2 in other.terms.items():
                sign, key = mono_mul_bits(k1, k2)
                prod = s1 * s2
                if sign < 0:
                    prod = -prod
                cur = out.get(key)
                out[key] = prod if cur is None else cur + prod
        return CliffordElement(self.n, out)

    # -- structure ---------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, CliffordElement)
                and self.n == other.n and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        """0/1 if homogeneous, None for mixed parity (0 for the zero element)."""
        pars = {mask_parity(k) for k in self.terms}
        if not pars:
            return 0
        if len(pars) > 1:
            return None
        return pars.pop()

    def weyl_act(self, w: GroupElement) -> "CliffordElement":
        """The automorphism x -> w x w^{-1}; (x^u)^v = x^{vu}."""
        out: dict = {}
        for key, s in self.terms.items():
            sign, nk = act_mask(w, key, self.n)
            val = -s if sign < 0 else s
            cur = out.get(nk)
            out[nk] = val if cur is None else cur + val
        return CliffordElement(self.n, out)

    def __repr__(self):
        return f"Cliff({self.n}; {len(self.terms)} terms)"


def beta(wt: WeylType, i: int) -> CliffordElement:
    """The odd vector realizing s_i inside C_n (c letters)."""
    n = wt.n
    if i not in wt.gen_indices():
        raise ValueError(f"no beta_{i} for {wt!r}")
    if wt.family != "A" and i == n:
        if wt.family == "B":
            return CliffordElement.c(n, n)
        both = CliffordElement.c(n, n - 1) + CliffordElement.c(n, n)
        return both.scale(_HALF_R2)
    diff = CliffordElement.c(n, i) - CliffordElement.c(n, i + 1)
    return diff.scale(_HALF_R2)


def nu(wt: WeylType, i: int) -> CliffordElement:
    """Same vector as beta_i but in the e letters."""
    n = wt.n
    if i not in wt.gen_indices():
        raise ValueError(f"no nu_{i} for {wt!r}")
    if wt.family != "A" and i == n:
        if wt.family == "B":
            return CliffordElement.e(n, n)
        both = CliffordElement.e(n, n - 1) + CliffordElement.e(n, n)
        return both.scale(_HALF_R2)
    diff = CliffordElement.e(n, i) - CliffordElement.e(n, i + 1)
    return diff.scale(_HALF_R2)


_KINDS = ("plain", "minus", "plus")


class SmashElement:
    """An element of C_{2n} # (C W or C W^-), basis {(mask, w): Scalar}.

    kind 'plain' crosses w past Clifford letters by the signed index action;
    kinds 'minus'/'plus' use the spin basis sigma_w for the group slot
    (multiplying group parts through the 2-cocycle) and cross with an extra
    (-1)^{l(w) * deg} for 'minus', no extra sign for 'plus'.
    """

    __slots__ = ("wt", "kind", "terms")

    def __init__(self, wt: WeylType, kind: str, terms: dict | None = None):
        if kind not in _KINDS:
            raise ValueError(f"unknown smash kind {kind!r}")
        clean = {}
        if terms:
            for key, s in terms.items():
                if s:
                    clean[key] = s
        object.__setattr__(self, "wt", wt)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SmashElement is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def one(wt: WeylType, kind: str) -> "SmashElement":
        return SmashElement(wt, kind, {(0, weyl.identity(wt)): Scalar.one()})

    @staticmethod
    def from_clifford(wt: WeylType, kind: str, a: CliffordElement) -> "SmashElement":
        if a.n != wt.n:
            raise ValueError("rank mismatch")
        e = weyl.identity(wt)
        return SmashElement(wt, kind, {(k, e): s for k, s in a.terms.items()})

    @staticmethod
    def from_group(wt: WeylType, kind: str, w: GroupElement) -> "SmashElement":
        return SmashElement(wt, kind, {(0, w): Scalar.one()})

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "SmashElement") -> "SmashElement":
        self._check(other)
        out = dict(self.terms)
        for key, s in other.terms.items():
            cur = out.get(key)
            out[key] = s if cur is None else cur + s
        return SmashElement(self.wt, self.kind, out)

    def __sub__(self, other: "SmashElement") -> "SmashElement":
        return self + (-other)

    def __neg__(self) -> "SmashElement":
        return SmashElement(self.wt, self.kind,
                            {k: -s for k, s in self.terms.items()})

    def scale(self, s) -> "SmashElement":
        if isinstance(s, QExt):
            s = Scalar.from_qext(s)
        return SmashElement(self.wt, self.kind,
                            {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other: "SmashElement") -> "SmashElement":
        self._check(other)
        return smash_mul(self.kind, self, other)

    def _check(self, other):
        if self.wt != other.wt or self.kind != other.kind:
            raise ValueError("mixed smash algebras")

    def __eq__(self, other):
        return (isinstance(other, SmashElement) and self.wt == other.wt
                and self.kind == other.kind and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Smash[{self.kind}]({self.wt!r}; {len(self.terms)} terms)"


def smash_mul(kind: str, a: SmashElement, b: SmashElement) -> SmashElement:
    if kind not in _KINDS:
        raise ValueError(f"unknown smash kind {kind!r}")
    wt = a.wt
    n = wt.n
    if kind == "plain":
        phi_fn = None
    else:
        from .spinweyl import cocycle   # lazy: spinweyl is built on 'plain'
        phi_fn = cocycle
    out: dict = {}
    for (m1, u), s1 in a.terms.items():
        lu = u.length() & 1
        for (m2, v), s2 in b.terms.items():
            sign, m2u = act_mask(u, m2, n)
            if kind == "minus" and lu and mask_parity(m2):
                sign = -sign
            msign, mask = mono_mul_bits(m1, m2u)
            sign *= msign
            if phi_fn is not None:
                sign *= phi_fn(u, v)
            w = u * v
            val = s1 * s2
            if sign < 0:
                val = -val
            key = (mask, w)
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
    return SmashElement(wt, kind, out)
