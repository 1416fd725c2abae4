"""Normal-form arithmetic for the three Hecke-type algebra families.

Families over a classical Weyl group W of rank n, with parameters t, u
(and v when W has type B):

=======  =============================  ==============================
family   generators                     normal-form monomial
=======  =============================  ==============================
``H``    x_i, y_i, c_i, e_i, W          x^alpha c^eps w e^eps' y^gamma
``sH``   x_i, eta_i, c_i, spin W        eta^alpha c^eps sigma_w x^gamma
``oH``   xi_i, eta_i, W                 xi^alpha w eta^gamma
=======  =============================  ==============================

Every :class:`AlgebraElement` is stored in normal form as a sparse map
from the five-slot key ``(alpha, cmask, w, emask, gamma)`` to a Scalar;
slots a family does not use stay at their neutral value.  Multiplication
peels the left factor into generator letters and pushes each one through
the right factor with the defining relations.  The commutator (H, sH)
and anticommutator (oH) bracket tables in :func:`bracket_tokens` are the
single source of truth shared by the rewriting engine, the relation list
:func:`defining_relations`, and the operator realizations.
"""

from __future__ import annotations

from .scalars import MINUS_ONE, ONE, Scalar
from . import weyl
from .weyl import GroupElement, WeylType
from .clifford import act_mask, mono_mul_bits
from .skewpoly import SkewPoly, XPoly, _act_images, skew_sign
from . import spinweyl
from .spinweyl import spin_bar_tau, spin_barred, spin_transposition

_FAMILIES = ("H", "sH", "oH")


class AlgebraSpec:
    """Which family, which Weyl group, which parameter values.

    t, u (and v over type B) are Scalars and default to the formal
    parameter generators, so computations stay exact and symbolic unless
    numeric values are substituted in.

    ``corrupt=True`` flips the sign of the barred part of the off-diagonal
    bracket (of the whole off-diagonal bracket in type A, which has no
    barred part).  It exists so the self-check suites can demonstrate that
    they would notice a wrong relation table; see the negative-control
    modes of the ``check`` command.
    """

    def __init__(self, family: str, wt: WeylType, t=None, u=None, v=None,
                 corrupt: bool = False):
        if family not in _FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.wt = wt
        self.t = Scalar.t() if t is None else t
        self.u = Scalar.u() if u is None else u
        if wt.family == "B":
            self.v = Scalar.v() if v is None else v
        else:
            if v is not None:
                raise ValueError("parameter v exists only over type B")
            self.v = None
        self.corrupt = bool(corrupt)
        self._brackets: dict = {}

    @property
    def n(self) -> int:
        return self.wt.n

    def __eq__(self, other):
        return (isinstance(other, AlgebraSpec)
                and self.family == other.family and self.wt == other.wt
                and self.t == other.t and self.u == other.u
                and self.v == other.v and self.corrupt == other.corrupt)

    def __repr__(self):
        return f"AlgebraSpec({self.family!r}, {self.wt!r})"


# -- key plumbing ------------------------------------------------------------


def ident_key(spec: AlgebraSpec) -> tuple:
    z = (0,) * spec.n
    return (z, 0, weyl.identity(spec.wt), 0, z)


def key_parity(spec: AlgebraSpec, key: tuple) -> int:
    """Super-degree of a normal-form monomial.

    H: c, e odd; x, y, W even.  sH: eta, c, spin letters odd; x even.
    oH: xi, eta odd; W even.
    """
    alpha, cm, w, em, gamma = key
    if spec.family == "H":
        return (cm.bit_count() + em.bit_count()) & 1
    if spec.family == "sH":
        return (sum(alpha) + cm.bit_count() + w.length()) & 1
    return (sum(alpha) + sum(gamma)) & 1


def _sort_key(key: tuple) -> tuple:
    alpha, cm, w, em, gamma = key
    return (alpha, cm, w.images, em, gamma)


def _first_letter(alpha: tuple) -> int | None:
    for i, a in enumerate(alpha):
        if a:
            return i + 1
    return None


def _mask_indices(mask: int) -> list:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _acc(d: dict, key: tuple, sc: Scalar) -> None:
    cur = d.get(key)
    if cur is None:
        if sc:
            d[key] = sc
    else:
        cur = cur + sc
        if cur:
            d[key] = cur
        else:
            del d[key]


# -- left multiplication by one slot of the left key -------------------------
#
# A product a*b peels the left key right-to-left: gamma letters, the e
# block, the group slot, the c block, the alpha block.  Only the gamma
# letters (y in H, x in sH, eta in oH) can collide with the alpha letters
# of the right key; that collision is resolved through the bracket table
# and is the one recursive stage.


def _act_x_exps(alpha: tuple, g: GroupElement):
    """Signed action on a commutative exponent tuple: (sign, new tuple)."""
    sign = 1
    new = [0] * len(alpha)
    for i0, a in enumerate(alpha):
        if not a:
            continue
        img = g.act_index(i0 + 1)
        if img < 0:
            if a & 1:
                sign = -sign
            img = -img
        new[img - 1] += a
    return sign, tuple(new)


def _stage_alpha(spec, block, terms):
    out: dict = {}
    plain = spec.family == "H"
    for key, sc in terms.items():
        alpha = key[0]
        a2 = tuple(x + y for x, y in zip(block, alpha))
        if not plain and skew_sign(block, alpha) < 0:
            sc = -sc
        _acc(out, (a2,) + key[1:], sc)
    return out


def _stage_cmask(spec, block, terms):
    idxs = _mask_indices(block)
    nblock = len(idxs)
    sh = spec.family == "sH"
    out: dict = {}
    for (alpha, cm, w, em, gamma), sc in terms.items():
        if sh:
            neg = (nblock * sum(alpha)) & 1      # c anticommutes with every eta
        else:
            neg = sum(alpha[i - 1] for i in idxs) & 1   # c_i flips only x_i
        s2, cm2 = mono_mul_bits(block, cm)
        if s2 < 0:
            neg ^= 1
        _acc(out, (alpha, cm2, w, em, gamma), -sc if neg else sc)
    return out


def _stage_w(spec, g, terms):
    """Group letter for H (signed on x and c) and oH (unsigned on xi)."""
    n = spec.n
    out: dict = {}
    if spec.family == "H":
        for (alpha, cm, w, em, gamma), sc in terms.items():
            s1, a2 = _act_x_exps(alpha, g)
            s2, cm2 = act_mask(g, cm, n)
            _acc(out, (a2, cm2, g * w, em, gamma), -sc if s1 * s2 < 0 else sc)
        return out
    imgs = tuple(abs(g.act_index(i)) for i in range(1, n + 1))
    for (alpha, cm, w, em, gamma), sc in terms.items():
        s1, a2 = _act_images(alpha, imgs, False)
        _acc(out, (a2, cm, g * w, em, gamma), -sc if s1 < 0 else sc)
    return out


def _stage_sigma(spec, u, terms):
    """Spin basis letter sigma_u (sH): unsigned on eta, signed on c, and a
    parity sign per crossing since every spin letter is odd."""
    n = spec.n
    lodd = u.length() & 1
    imgs = tuple(abs(u.act_index(i)) for i in range(1, n + 1))
    out: dict = {}
    for (alpha, cm, w, em, gamma), sc in terms.items():
        s1, a2 = _act_images(alpha, imgs, False)
        neg = 1 if s1 < 0 else 0
        if lodd and sum(alpha) & 1:
            neg ^= 1
        s2, cm2 = act_mask(u, cm, n)
        if s2 < 0:
            neg ^= 1
        if lodd and cm.bit_count() & 1:
            neg ^= 1
        if not w.is_identity() and spinweyl.cocycle(u, w) < 0:
            neg ^= 1
        _acc(out, (a2, cm2, u * w, em, gamma), -sc if neg else sc)
    return out


def _stage_emask(spec, block, terms):
    n = spec.n
    nblock = block.bit_count()
    out: dict = {}
    for (alpha, cm, w, em, gamma), sc in terms.items():
        neg = (nblock * cm.bit_count()) & 1      # e anticommutes with every c
        s2, eimg = act_mask(w.inverse(), block, n)
        if s2 < 0:
            neg ^= 1
        s3, em2 = mono_mul_bits(eimg, em)
        if s3 < 0:
            neg ^= 1
        _acc(out, (alpha, cm, w, em2, gamma), -sc if neg else sc)
    return out


def _ly(spec, j, terms):
    """Left-multiply by y_j (family H)."""
    out: dict = {}
    for key, sc in terms.items():
        alpha, cm, w, em, gamma = key
        i = _first_letter(alpha)
        if i is None:
            # y_j commutes with c, remaps through w, flips on e_k
            k = w.inverse().act_index(j)
            neg = 0
            if k < 0:
                neg = 1
                k = -k
            if (em >> (k - 1)) & 1:
                neg ^= 1
            g2 = list(gamma)
            g2[k - 1] += 1
            _acc(out, (alpha, cm, w, em, tuple(g2)), -sc if neg else sc)
            continue
        # y_j x_i rest = x_i (y_j rest) + [y_j, x_i] rest
        a2 = list(alpha)
        a2[i - 1] -= 1
        key2 = (tuple(a2),) + key[1:]
        for k3, s3 in _ly(spec, j, {key2: ONE}).items():
            a3 = list(k3[0])
            a3[i - 1] += 1
            _acc(out, (tuple(a3),) + k3[1:], sc * s3)
        for kb, sb in bracket(spec, j, i).terms.items():
            coef = sc * sb
            for k4, s4 in _apply_key(spec, kb, {key2: ONE}).items():
                _acc(out, k4, coef * s4)
    return out


def _lx(spec, j, terms):
    """Left-multiply by x_j (family sH)."""
    out: dict = {}
    for key, sc in terms.items():
        alpha, cm, w, em, gamma = key
        i = _first_letter(alpha)
        if i is None:
            neg = (cm >> (j - 1)) & 1
            k = w.inverse().act_index(j)
            if k < 0:
                neg ^= 1
                k = -k
            g2 = list(gamma)
            g2[k - 1] += 1
            _acc(out, (alpha, cm, w, em, tuple(g2)), -sc if neg else sc)
            continue
        # x_j eta_i rest = eta_i (x_j rest) - [eta_i, x_j] rest
        a2 = list(alpha)
        a2[i - 1] -= 1
        key2 = (tuple(a2),) + key[1:]
        for k3, s3 in _lx(spec, j, {key2: ONE}).items():
            a3 = list(k3[0])
            neg = sum(a3[: i - 1]) & 1
            a3[i - 1] += 1
            val = sc * s3
            _acc(out, (tuple(a3),) + k3[1:], -val if neg else val)
        for kb, sb in bracket(spec, i, j).terms.items():
            coef = sc * sb
            for k4, s4 in _apply_key(spec, kb, {key2: ONE}).items():
                _acc(out, k4, -(coef * s4))
    return out


def _leta(spec, j, terms):
    """Left-multiply by eta_j (family oH)."""
    out: dict = {}
    for key, sc in terms.items():
        alpha, cm, w, em, gamma = key
        i = _first_letter(alpha)
        if i is None:
            k = abs(w.inverse().act_index(j))
            neg = sum(gamma[: k - 1]) & 1
            g2 = list(gamma)
            g2[k - 1] += 1
            _acc(out, (alpha, cm, w, em, tuple(g2)), -sc if neg else sc)
            continue
        # eta_j xi_i rest = -xi_i (eta_j rest) + [eta_j, xi_i]_+ rest
        a2 = list(alpha)
        a2[i - 1] -= 1
        key2 = (tuple(a2),) + key[1:]
        for k3, s3 in _leta(spec, j, {key2: ONE}).items():
            a3 = list(k3[0])
            neg = (sum(a3[: i - 1]) & 1) ^ 1
            a3[i - 1] += 1
            val = sc * s3
            _acc(out, (tuple(a3),) + k3[1:], -val if neg else val)
        for kb, sb in bracket(spec, j, i).terms.items():
            coef = sc * sb
            for k4, s4 in _apply_key(spec, kb, {key2: ONE}).items():
                _acc(out, k4, coef * s4)
    return out


_GAMMA_LMUL = {"H": _ly, "sH": _lx, "oH": _leta}


def _apply_key(spec, key, terms):
    """Multiply the normal-form monomial ``key`` onto a terms dict."""
    if not terms:
        return {}
    alpha, cm, w, em, gamma = key
    if any(gamma):
        lmul = _GAMMA_LMUL[spec.family]
        for i in range(spec.n, 0, -1):
            for _ in range(gamma[i - 1]):
                terms = lmul(spec, i, terms)
                if not terms:
                    return {}
    if em:
        terms = _stage_emask(spec, em, terms)
    if not w.is_identity():
        if spec.family == "sH":
            terms = _stage_sigma(spec, w, terms)
        else:
            terms = _stage_w(spec, w, terms)
    if cm:
        terms = _stage_cmask(spec, cm, terms)
    if any(alpha):
        terms = _stage_alpha(spec, alpha, terms)
    return terms


def _mul_terms(spec, t1, t2):
    out: dict = {}
    for k1, s1 in t1.items():
        for k2, s2 in _apply_key(spec, k1, t2).items():
            _acc(out, k2, s1 * s2)
    return out


# -- elements ----------------------------------------------------------------


class AlgebraElement:
    """A normal-form element: sparse {five-slot key: Scalar}."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict | None = None):
        clean = {}
        if terms:
            for key, sc in terms.items():
                if sc:
                    clean[key] = sc
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @staticmethod
    def zero(spec: AlgebraSpec) -> "AlgebraElement":
        return AlgebraElement(spec)

    @staticmethod
    def one(spec: AlgebraSpec) -> "AlgebraElement":
        return AlgebraElement(spec, {ident_key(spec): ONE})

    @staticmethod
    def from_scalar(spec: AlgebraSpec, sc: Scalar) -> "AlgebraElement":
        return AlgebraElement(spec, {ident_key(spec): sc})

    def _check(self, other):
        if self.spec != other.spec:
            raise ValueError("mixed algebra specs")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for key, sc in other.terms.items():
            _acc(out, key, sc)
        return AlgebraElement(self.spec, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for key, sc in other.terms.items():
            _acc(out, key, -sc)
        return AlgebraElement(self.spec, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.spec, {k: -s for k, s in self.terms.items()})

    def scale(self, sc) -> "AlgebraElement":
        if not isinstance(sc, Scalar):
            sc = Scalar.rational(sc)
        return AlgebraElement(self.spec,
                              {k: s * sc for k, s in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.spec,
                              _mul_terms(self.spec, self.terms, other.terms))

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.spec == other.spec
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        """0/1 if homogeneous for the family's super-grading, else None."""
        pars = {key_parity(self.spec, k) for k in self.terms}
        if len(pars) == 1:
            return pars.pop()
        return None

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __repr__(self):
        if not self.terms:
            return "<0>"
        bits = []
        for key, sc in self.sorted_terms()[:6]:
            bits.append(f"({sc.text()})*{_debug_key(self.spec, key)}")
        if len(self.terms) > 6:
            bits.append(f"... {len(self.terms)} terms")
        return "<" + " + ".join(bits) + ">"


def _debug_key(spec, key) -> str:
    alpha, cm, w, em, gamma = key
    names = {"H": ("x", "c", "e", "y"), "sH": ("eta", "c", "", "x"),
             "oH": ("xi", "", "", "eta")}[spec.family]
    parts = []
    for i, a in enumerate(alpha):
        if a:
            parts.append(f"{names[0]}{i + 1}" + (f"^{a}" if a > 1 else ""))
    for i in _mask_indices(cm):
        parts.append(f"{names[1]}{i}")
    if not w.is_identity():
        parts.append("w" + str(tuple(w.images)))
    for i in _mask_indices(em):
        parts.append(f"{names[2]}{i}")
    for i, a in enumerate(gamma):
        if a:
            parts.append(f"{names[3]}{i + 1}" + (f"^{a}" if a > 1 else ""))
    return "*".join(parts) if parts else "1"


# -- generators ---------------------------------------------------------------


def _need(spec, fams, what):
    if spec.family not in fams:
        raise ValueError(f"{what} is not a generator of family {spec.family}")


def _unit_tuple(n, i):
    t = [0] * n
    t[i - 1] = 1
    return tuple(t)


def x(spec: AlgebraSpec, i: int) -> AlgebraElement:
    _need(spec, ("H", "sH"), "x")
    z = (0,) * spec.n
    e_i = _unit_tuple(spec.n, i)
    if spec.family == "H":
        key = (e_i, 0, weyl.identity(spec.wt), 0, z)
    else:
        key = (z, 0, weyl.identity(spec.wt), 0, e_i)
    return AlgebraElement(spec, {key: ONE})


def y(spec: AlgebraSpec, i: int) -> AlgebraElement:
    _need(spec, ("H",), "y")
    z = (0,) * spec.n
    return AlgebraElement(
        spec, {(z, 0, weyl.identity(spec.wt), 0, _unit_tuple(spec.n, i)): ONE})


def c(spec: AlgebraSpec, i: int) -> AlgebraElement:
    _need(spec, ("H", "sH"), "c")
    if not 1 <= i <= spec.n:
        raise ValueError(f"c_{i} out of range")
    z = (0,) * spec.n
    return AlgebraElement(
        spec, {(z, 1 << (i - 1), weyl.identity(spec.wt), 0, z): ONE})


def e(spec: AlgebraSpec, i: int) -> AlgebraElement:
    _need(spec, ("H",), "e")
    if not 1 <= i <= spec.n:
        raise ValueError(f"e_{i} out of range")
    z = (0,) * spec.n
    return AlgebraElement(
        spec, {(z, 0, weyl.identity(spec.wt), 1 << (i - 1), z): ONE})


def xi(spec: AlgebraSpec, i: int) -> AlgebraElement:
    _need(spec, ("oH",), "xi")
    z = (0,) * spec.n
    return AlgebraElement(
        spec, {(_unit_tuple(spec.n, i), 0, weyl.identity(spec.wt), 0, z): ONE})


def eta(spec: AlgebraSpec, i: int) -> AlgebraElement:
    _need(spec, ("sH", "oH"), "eta")
    z = (0,) * spec.n
    e_i = _unit_tuple(spec.n, i)
    if spec.family == "sH":
        key = (e_i, 0, weyl.identity(spec.wt), 0, z)
    else:
        key = (z, 0, weyl.identity(spec.wt), 0, e_i)
    return AlgebraElement(spec, {key: ONE})


def w_elem(spec: AlgebraSpec, g: GroupElement) -> AlgebraElement:
    _need(spec, ("H", "oH"), "a plain group element")
    z = (0,) * spec.n
    return AlgebraElement(spec, {(z, 0, g, 0, z): ONE})


def s(spec: AlgebraSpec, i: int) -> AlgebraElement:
    return w_elem(spec, weyl.generator(spec.wt, i))


def sigma(spec: AlgebraSpec, w: GroupElement) -> AlgebraElement:
    _need(spec, ("sH",), "a spin basis element")
    z = (0,) * spec.n
    return AlgebraElement(spec, {(z, 0, w, 0, z): ONE})


def t(spec: AlgebraSpec, i: int) -> AlgebraElement:
    return sigma(spec, weyl.generator(spec.wt, i))


def atoms(spec: AlgebraSpec) -> list:
    """Ordered (name, element) list of the family's generators."""
    n = spec.n
    out = []
    if spec.family == "H":
        kinds = (("x", x), ("y", y), ("c", c), ("e", e))
    elif spec.family == "sH":
        kinds = (("x", x), ("eta", eta), ("c", c))
    else:
        kinds = (("xi", xi), ("eta", eta))
    for name, ctor in kinds:
        for i in range(1, n + 1):
            out.append((f"{name}{i}", ctor(spec, i)))
    if spec.family == "sH":
        for i in spec.wt.gen_indices():
            out.append((f"t{i}", t(spec, i)))
    else:
        for i in spec.wt.gen_indices():
            out.append((f"s{i}", s(spec, i)))
    return out


# -- the bracket table ---------------------------------------------------------
#
# bracket(spec, a, b) is [y_a, x_b] (H), [eta_a, x_b] (sH) or the
# anticommutator [eta_a, xi_b]+ (oH), i.e. exactly what is left over when
# the engine swaps a gamma letter past an alpha letter.  Token form first,
# so the relation list, the engine, the operator realizations and the
# homomorphism checks all consume the same table.


def bracket_tokens(spec: AlgebraSpec, a: int, b: int) -> list:
    """The bracket as [(Scalar coeff, (token, ...)), ...].

    Tokens are ("c", i), ("e", i), ("w", GroupElement) and, for sH,
    ("sigma", GroupElement); the sum of the words equals the bracket.
    """
    fam, wt, n = spec.family, spec.wt, spec.n
    u, tt, v = spec.u, spec.t, spec.v
    bd = wt.family in ("B", "D")
    out = []
    if fam == "H":
        if a != b:
            uu = -u if (spec.corrupt and not bd) else u
            sw = ("w", weyl.transposition(wt, a, b))
            out += [(uu, (sw,)), (uu, (("c", a), ("c", b), sw)),
                    (uu, (("e", b), ("e", a), sw)),
                    (uu, (("c", a), ("c", b), ("e", b), ("e", a), sw))]
            if bd:
                ub = u if spec.corrupt else -u
                bw = ("w", weyl.barred_transposition(wt, a, b))
                out += [(ub, (bw,)), (-ub, (("c", a), ("c", b), bw)),
                        (-ub, (("e", b), ("e", a), bw)),
                        (ub, (("c", a), ("c", b), ("e", b), ("e", a), bw))]
            return out
        out.append((tt, (("c", a), ("e", a))))
        for k in range(1, n + 1):
            if k == a:
                continue
            sw = ("w", weyl.transposition(wt, k, a))
            out += [(-u, (sw,)), (-u, (("c", k), ("c", a), sw)),
                    (-u, (("e", k), ("e", a), sw)),
                    (-u, (("c", k), ("c", a), ("e", k), ("e", a), sw))]
            if bd:
                bw = ("w", weyl.barred_transposition(wt, k, a))
                out += [(-u, (bw,)), (u, (("c", k), ("c", a), bw)),
                        (u, (("e", k), ("e", a), bw)),
                        (-u, (("c", k), ("c", a), ("e", k), ("e", a), bw))]
        if wt.family == "B":
            out.append((-v, (("w", weyl.tau(wt, a)),)))
        return out

    if fam == "sH":
        if a != b:
            uu = -u if (spec.corrupt and not bd) else u
            for wlab, sc in spin_transposition(wt, a, b).terms.items():
                sg = ("sigma", wlab)
                out += [(uu * sc, (sg,)),
                        (uu * sc, (("c", a), ("c", b), sg))]
            if bd:
                ub = u if spec.corrupt else -u
                for wlab, sc in spin_barred(wt, a, b).terms.items():
                    sg = ("sigma", wlab)
                    out += [(ub * sc, (sg,)),
                            (-(ub * sc), (("c", a), ("c", b), sg))]
            return out
        out.append((tt, (("c", a),)))
        for k in range(1, n + 1):
            if k == a:
                continue
            for wlab, sc in spin_transposition(wt, k, a).terms.items():
                sg = ("sigma", wlab)
                out += [(u * sc, (sg,)), (u * sc, (("c", k), ("c", a), sg))]
            if bd:
                for wlab, sc in spin_barred(wt, k, a).terms.items():
                    sg = ("sigma", wlab)
                    out += [(-(u * sc), (sg,)),
                            (u * sc, (("c", k), ("c", a), sg))]
        if wt.family == "B":
            for wlab, sc in spin_bar_tau(wt, a).terms.items():
                out.append((v * sc, (("sigma", wlab),)))
        return out

    # oH
    if a != b:
        uu = -u if (spec.corrupt and not bd) else u
        out.append((uu, (("w", weyl.transposition(wt, a, b)),)))
        if bd:
            ub = -u if spec.corrupt else u
            out.append((ub, (("w", weyl.barred_transposition(wt, a, b)),)))
        return out
    out.append((tt, ()))
    for k in range(1, n + 1):
        if k == a:
            continue
        out.append((u, (("w", weyl.transposition(wt, k, a)),)))
        if bd:
            out.append((u, (("w", weyl.barred_transposition(wt, k, a)),)))
    if wt.family == "B":
        out.append((v, (("w", weyl.tau(wt, a)),)))
    return out


_TOKEN_CTORS = {"x": x, "y": y, "c": c, "e": e, "xi": xi, "eta": eta,
                "s": s, "t": t}


def eval_token(spec: AlgebraSpec, token: tuple) -> AlgebraElement:
    kind, arg = token
    if kind == "w":
        return w_elem(spec, arg)
    if kind == "sigma":
        return sigma(spec, arg)
    return _TOKEN_CTORS[kind](spec, arg)


def eval_tokens(spec: AlgebraSpec, tokens) -> AlgebraElement:
    out = AlgebraElement.one(spec)
    for token in tokens:
        out = out * eval_token(spec, token)
    return out


def eval_relation_terms(spec: AlgebraSpec, terms) -> AlgebraElement:
    out = AlgebraElement.zero(spec)
    for coeff, tokens in terms:
        out = out + eval_tokens(spec, tokens).scale(coeff)
    return out


def bracket(spec: AlgebraSpec, a: int, b: int) -> AlgebraElement:
    got = spec._brackets.get((a, b))
    if got is None:
        got = eval_relation_terms(spec, bracket_tokens(spec, a, b))
        spec._brackets[(a, b)] = got
    return got


def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b - b * a


def anticommutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b + b * a


# -- conjugation invariance of the bracket table --------------------------------


def _conjugators(spec: AlgebraSpec) -> list:
    """(label, element, transport) for every conjugating generator.

    transport(i, j) -> (sign, i2, j2) predicts, by bookkeeping alone, how
    conjugation moves the bracket of lhs_i against rhs_j: it lands on
    sign * bracket(i2, j2).  The rules are read off the cross relations:
    c_l flips x_j iff l == j and commutes with y; e_l flips y_i iff l == i;
    Weyl generators act on H indices with signs, on the odd family without
    signs, and t_l moves x with signs but eta through the plain permutation
    with one global sign.  Every conjugator squares to 1.
    """
    n = spec.n
    out = []
    if spec.family == "H":
        for l in range(1, n + 1):
            out.append((f"c{l}", c(spec, l),
                        lambda i, j, l=l: (-1 if j == l else 1, i, j)))
            out.append((f"e{l}", e(spec, l),
                        lambda i, j, l=l: (-1 if i == l else 1, i, j)))
    elif spec.family == "sH":
        for l in range(1, n + 1):
            out.append((f"c{l}", c(spec, l),
                        lambda i, j, l=l: (1 if j == l else -1, i, j)))
    for k in spec.wt.gen_indices():
        g = weyl.generator(spec.wt, k)
        if spec.family == "H":
            def tr(i, j, g=g):
                si, sj = g.act_index(i), g.act_index(j)
                return (1 if (si < 0) == (sj < 0) else -1), abs(si), abs(sj)
            out.append((f"s{k}", s(spec, k), tr))
        elif spec.family == "sH":
            def tr(i, j, g=g):
                sj = g.act_index(j)
                return (1 if sj < 0 else -1), abs(g.act_index(i)), abs(sj)
            out.append((f"t{k}", t(spec, k), tr))
        else:
            def tr(i, j, g=g):
                return 1, abs(g.act_index(i)), abs(g.act_index(j))
            out.append((f"s{k}", s(spec, k), tr))
    return out


def conjugation_report(spec: AlgebraSpec, corrupt: bool = False) -> list:
    """Conjugate every bracket relation by every conjugating generator and
    compare two independent routes.  Returns [(label, ok)].

    Route one works inside the engine: it re-normalizes g*bracket(i,j)*g and
    also the bracket of the conjugated generators g*lhs_i*g, g*rhs_j*g.
    Route two never multiplies: it predicts sign * bracket(i2, j2) from the
    transport table in _conjugators.  corrupt=True conjugates the
    sign-corrupted bracket table against the honest predictions; the
    corrupted off-diagonal entries keep their defect under conjugation, so
    the report must go red.
    """
    src = spec
    if corrupt:
        src = AlgebraSpec(spec.family, spec.wt, spec.t, spec.u, spec.v,
                          corrupt=True)
    lhs_gen, rhs_gen, lname, rname = {
        "H": (y, x, "y", "x"),
        "sH": (eta, x, "eta", "x"),
        "oH": (eta, xi, "eta", "xi"),
    }[spec.family]
    comb = anticommutator if spec.family == "oH" else commutator
    out = []
    for label, gcon, transport in _conjugators(src):
        for i in range(1, spec.n + 1):
            for j in range(1, spec.n + 1):
                sign, i2, j2 = transport(i, j)
                pred = bracket(spec, i2, j2)
                if sign < 0:
                    pred = -pred
                table = gcon * bracket(src, i, j) * gcon
                direct = comb(gcon * lhs_gen(src, i) * gcon,
                              gcon * rhs_gen(src, j) * gcon)
                ok = (table.terms == pred.terms
                      and direct.terms == pred.terms)
                out.append((f"{label}.{lname}{i}.{rname}{j}", ok))
    return out


# -- the defining relations, as token words ------------------------------------


def defining_relations(spec: AlgebraSpec) -> list:
    """Every defining relation as (name, [(coeff, token word), ...]) with
    the convention that the weighted sum of the words is zero.

    The same list drives the engine consistency tests, the homomorphism
    checks and the operator-realization checks.
    """
    wt, n = spec.wt, spec.n
    rels = []
    one_w: tuple = ()

    def add(name, terms):
        rels.append((name, terms))

    def gen_img(l, j):
        img = weyl.generator(wt, l).act_index(j)
        return (abs(img), 1 if img > 0 else -1)

    fam = spec.family
    if fam == "H":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                add(f"x{i}.x{j}", [(ONE, (("x", i), ("x", j))),
                                   (MINUS_ONE, (("x", j), ("x", i)))])
                add(f"y{i}.y{j}", [(ONE, (("y", i), ("y", j))),
                                   (MINUS_ONE, (("y", j), ("y", i)))])
                add(f"c{i}.c{j}", [(ONE, (("c", i), ("c", j))),
                                   (ONE, (("c", j), ("c", i)))])
                add(f"e{i}.e{j}", [(ONE, (("e", i), ("e", j))),
                                   (ONE, (("e", j), ("e", i)))])
        for i in range(1, n + 1):
            add(f"c{i}^2", [(ONE, (("c", i), ("c", i))), (MINUS_ONE, one_w)])
            add(f"e{i}^2", [(ONE, (("e", i), ("e", i))), (MINUS_ONE, one_w)])
            for j in range(1, n + 1):
                add(f"c{i}.e{j}", [(ONE, (("c", i), ("e", j))),
                                   (ONE, (("e", j), ("c", i)))])
                add(f"e{i}.x{j}", [(ONE, (("e", i), ("x", j))),
                                   (MINUS_ONE, (("x", j), ("e", i)))])
                add(f"c{i}.y{j}", [(ONE, (("c", i), ("y", j))),
                                   (MINUS_ONE, (("y", j), ("c", i)))])
                sg = MINUS_ONE if i == j else ONE
                add(f"c{i}.x{j}", [(ONE, (("c", i), ("x", j))),
                                   (-sg, (("x", j), ("c", i)))])
                add(f"e{i}.y{j}", [(ONE, (("e", i), ("y", j))),
                                   (-sg, (("y", j), ("e", i)))])
        for l in wt.gen_indices():
            add(f"s{l}^2", [(ONE, (("s", l), ("s", l))), (MINUS_ONE, one_w)])
            for m in wt.gen_indices():
                if m <= l:
                    continue
                word = (("s", l), ("s", m)) * wt.m(l, m)
                add(f"braid_s{l}.s{m}", [(ONE, word), (MINUS_ONE, one_w)])
            for letter in ("x", "y", "c", "e"):
                for j in range(1, n + 1):
                    j2, sg = gen_img(l, j)
                    add(f"s{l}.{letter}{j}",
                        [(ONE, (("s", l), (letter, j))),
                         (MINUS_ONE if sg > 0 else ONE,
                          ((letter, j2), ("s", l)))])
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                terms = [(ONE, (("y", i), ("x", j))),
                         (MINUS_ONE, (("x", j), ("y", i)))]
                terms += [(-cf, toks) for cf, toks in bracket_tokens(spec, i, j)]
                add(f"bracket_y{i}.x{j}", terms)
        return rels

    if fam == "sH":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                add(f"x{i}.x{j}", [(ONE, (("x", i), ("x", j))),
                                   (MINUS_ONE, (("x", j), ("x", i)))])
                add(f"eta{i}.eta{j}", [(ONE, (("eta", i), ("eta", j))),
                                       (ONE, (("eta", j), ("eta", i)))])
                add(f"c{i}.c{j}", [(ONE, (("c", i), ("c", j))),
                                   (ONE, (("c", j), ("c", i)))])
        for i in range(1, n + 1):
            add(f"c{i}^2", [(ONE, (("c", i), ("c", i))), (MINUS_ONE, one_w)])
            for j in range(1, n + 1):
                add(f"c{i}.eta{j}", [(ONE, (("c", i), ("eta", j))),
                                     (ONE, (("eta", j), ("c", i)))])
                sg = MINUS_ONE if i == j else ONE
                add(f"c{i}.x{j}", [(ONE, (("c", i), ("x", j))),
                                   (-sg, (("x", j), ("c", i)))])
        for l in wt.gen_indices():
            add(f"t{l}^2", [(ONE, (("t", l), ("t", l))), (MINUS_ONE, one_w)])
            for m in wt.gen_indices():
                if m <= l:
                    continue
                mm = wt.m(l, m)
                word = (("t", l), ("t", m)) * mm
                sg = MINUS_ONE if mm & 1 else ONE   # -(-1)^{m+1} = (-1)^m
                add(f"braid_t{l}.t{m}", [(ONE, word), (sg, one_w)])
            for j in range(1, n + 1):
                j2, sg = gen_img(l, j)
                add(f"t{l}.x{j}",
                    [(ONE, (("t", l), ("x", j))),
                     (MINUS_ONE if sg > 0 else ONE, (("x", j2), ("t", l)))])
                add(f"t{l}.eta{j}",
                    [(ONE, (("t", l), ("eta", j))),
                     (ONE, (("eta", j2), ("t", l)))])
                add(f"t{l}.c{j}",
                    [(ONE, (("t", l), ("c", j))),
                     (ONE if sg > 0 else MINUS_ONE, (("c", j2), ("t", l)))])
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                terms = [(ONE, (("eta", i), ("x", j))),
                         (MINUS_ONE, (("x", j), ("eta", i)))]
                terms += [(-cf, toks) for cf, toks in bracket_tokens(spec, i, j)]
                add(f"bracket_eta{i}.x{j}", terms)
        return rels

    # oH
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            add(f"xi{i}.xi{j}", [(ONE, (("xi", i), ("xi", j))),
                                 (ONE, (("xi", j), ("xi", i)))])
            add(f"eta{i}.eta{j}", [(ONE, (("eta", i), ("eta", j))),
                                   (ONE, (("eta", j), ("eta", i)))])
    for l in wt.gen_indices():
        add(f"s{l}^2", [(ONE, (("s", l), ("s", l))), (MINUS_ONE, one_w)])
        for m in wt.gen_indices():
            if m <= l:
                continue
            word = (("s", l), ("s", m)) * wt.m(l, m)
            add(f"braid_s{l}.s{m}", [(ONE, word), (MINUS_ONE, one_w)])
        for j in range(1, n + 1):
            j2, _sg = gen_img(l, j)
            add(f"s{l}.xi{j}", [(ONE, (("s", l), ("xi", j))),
                                (MINUS_ONE, (("xi", j2), ("s", l)))])
            add(f"s{l}.eta{j}", [(ONE, (("s", l), ("eta", j))),
                                 (MINUS_ONE, (("eta", j2), ("s", l)))])
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms = [(ONE, (("eta", i), ("xi", j))),
                     (ONE, (("xi", j), ("eta", i)))]
            terms += [(-cf, toks) for cf, toks in bracket_tokens(spec, i, j)]
            add(f"bracket_eta{i}.xi{j}", terms)
    return rels


# -- token factorization (used by the homomorphisms and realizations) ----------


def key_tokens(spec: AlgebraSpec, key: tuple, expand_group: bool = True) -> list:
    """Factor a normal-form key into generator tokens, left to right.

    With ``expand_group`` the group slot becomes simple letters along its
    lexicographically least reduced word (for sH: the spin letters of the
    canonical lift, which is exactly how the basis element is defined);
    otherwise it stays one ("w", g) / ("sigma", g) token.
    """
    alpha, cm, w, em, gamma = key
    fam = spec.family
    toks = []
    first = {"H": "x", "sH": "eta", "oH": "xi"}[fam]
    last = {"H": "y", "sH": "x", "oH": "eta"}[fam]
    for i, a in enumerate(alpha):
        toks += [(first, i + 1)] * a
    for i in _mask_indices(cm):
        toks.append(("c", i))
    if not w.is_identity():
        if expand_group:
            letter = "t" if fam == "sH" else "s"
            toks += [(letter, l) for l in w.lex_least_word()]
        else:
            toks.append(("sigma" if fam == "sH" else "w", w))
    for i in _mask_indices(em):
        toks.append(("e", i))
    for i, a in enumerate(gamma):
        toks += [(last, i + 1)] * a
    return toks


# -- polynomial imports ---------------------------------------------------------


def from_xpoly(spec: AlgebraSpec, p: XPoly) -> AlgebraElement:
    """Embed a commutative polynomial into the x-block of family H."""
    _need(spec, ("H",), "an x-polynomial block")
    z = (0,) * spec.n
    ident = weyl.identity(spec.wt)
    return AlgebraElement(
        spec, {(exps, 0, ident, 0, z): sc for exps, sc in p.terms.items()})


def from_skewpoly(spec: AlgebraSpec, p: SkewPoly) -> AlgebraElement:
    """Embed a skew polynomial into the xi-block of family oH."""
    _need(spec, ("oH",), "a xi-polynomial block")
    z = (0,) * spec.n
    ident = weyl.identity(spec.wt)
    return AlgebraElement(
        spec, {(exps, 0, ident, 0, z): sc for exps, sc in p.terms.items()})


# -- the square automorphism of family H ----------------------------------------


def varpi(a: AlgebraElement) -> AlgebraElement:
    """The order-four automorphism of H:
    x_i -> y_i, y_i -> -x_i, c_i -> e_i, e_i -> -c_i, w -> w."""
    spec = a.spec
    _need(spec, ("H",), "the square automorphism")
    z = (0,) * spec.n
    ident = weyl.identity(spec.wt)
    out = AlgebraElement.zero(spec)
    for (alpha, cm, w, em, gamma), sc in a.terms.items():
        if (em.bit_count() + sum(gamma)) & 1:
            sc = -sc
        img = AlgebraElement(spec, {(z, 0, ident, 0, alpha): sc})
        if cm:
            img = img * AlgebraElement(spec, {(z, 0, ident, cm, z): ONE})
        if not w.is_identity():
            img = img * AlgebraElement(spec, {(z, 0, w, 0, z): ONE})
        if em:
            img = img * AlgebraElement(spec, {(z, em, ident, 0, z): ONE})
        if any(gamma):
            img = img * AlgebraElement(spec, {(gamma, 0, ident, 0, z): ONE})
        out = out + img
    return out


# -- closed forms for brackets against powers ------------------------------------


def bracket_y_xpow(spec: AlgebraSpec, i: int, j: int, l: int) -> AlgebraElement:
    """[y_i, x_j^l] in closed form (family H), assembled from divided
    differences rather than by iterated rewriting."""
    _need(spec, ("H",), "the y-x^l closed form")
    wt, n, u = spec.wt, spec.n, spec.u
    bd = wt.family in ("B", "D")
    X = XPoly.x
    one = AlgebraElement.one(spec)

    def xp(p):
        return from_xpoly(spec, p)

    if i != j:
        p1 = XPoly.zero(n)
        p2 = XPoly.zero(n)
        for a in range(l):
            mono = X(n, j, l - 1 - a) * X(n, i, a)
            p1 = p1 + mono
            p2 = (p2 + mono) if a % 2 == 0 else (p2 - mono)
        out = (xp(p1) + xp(p2) * c(spec, i) * c(spec, j)) \
            * (one - e(spec, i) * e(spec, j)) \
            * w_elem(spec, weyl.transposition(wt, i, j))
        out = out.scale(u)
        if bd:
            extra = (xp(p2) - xp(p1) * c(spec, i) * c(spec, j)) \
                * (one + e(spec, i) * e(spec, j)) \
                * w_elem(spec, weyl.barred_transposition(wt, i, j))
            out = out - extra.scale(u)
        return out

    out = AlgebraElement.zero(spec)
    if l % 2 == 1:
        q = xp(X(n, i, l - 1))
        out = out + (q * c(spec, i) * e(spec, i)).scale(spec.t)
        if wt.family == "B":
            out = out - (q * w_elem(spec, weyl.tau(wt, i))).scale(spec.v)
    for k in range(1, n + 1):
        if k == i:
            continue
        r1 = XPoly.zero(n)
        r2 = XPoly.zero(n)
        for a in range(l):
            mono = X(n, i, l - 1 - a) * X(n, k, a)
            r1 = r1 + mono
            r2 = (r2 + mono) if a % 2 == 0 else (r2 - mono)
        part = (xp(r1) + xp(r2) * c(spec, k) * c(spec, i)) \
            * (one + e(spec, k) * e(spec, i)) \
            * w_elem(spec, weyl.transposition(wt, k, i))
        out = out - part.scale(u)
        if bd:
            part = (xp(r2) - xp(r1) * c(spec, k) * c(spec, i)) \
                * (one - e(spec, k) * e(spec, i)) \
                * w_elem(spec, weyl.barred_transposition(wt, k, i))
            out = out - part.scale(u)
    return out


def bracket_eta_xipow(spec: AlgebraSpec, i: int, j: int, l: int,
                      corrupt: bool = False) -> AlgebraElement:
    """[eta_i, xi_j^l]+ in closed form (family oH): the alternating-sum
    version of the exact quotient by xi_i^2 - xi_j^2.

    ``corrupt=True`` flips one interior term so the closed-form suite can
    show a wrong formula is caught.
    """
    _need(spec, ("oH",), "the eta-xi^l closed form")
    wt, n, u = spec.wt, spec.n, spec.u
    bd = wt.family in ("B", "D")
    Xi = SkewPoly.xi

    def refl_sum(a, b):
        out = w_elem(spec, weyl.transposition(wt, a, b))
        if bd:
            out = out + w_elem(spec, weyl.barred_transposition(wt, a, b))
        return out

    def alt_sum(hi, lo, ll):
        # xi_hi^{ll-1} - xi_lo xi_hi^{ll-2} + ... + (-1)^{ll-1} xi_lo^{ll-1}
        p = SkewPoly.zero(n)
        for a in range(ll):
            mono = Xi(n, lo, a) * Xi(n, hi, ll - 1 - a)
            if corrupt and a == 1:
                mono = -mono
            p = (p + mono) if a % 2 == 0 else (p - mono)
        return p

    if i != j:
        return (from_skewpoly(spec, alt_sum(i, j, l)) * refl_sum(i, j)).scale(u)

    out = AlgebraElement.zero(spec)
    if l % 2 == 1:
        q = from_skewpoly(spec, Xi(n, i, l - 1))
        out = out + q.scale(spec.t)
        if wt.family == "B":
            out = out + (q * w_elem(spec, weyl.tau(wt, i))).scale(spec.v)
    for k in range(1, n + 1):
        if k == i:
            continue
        # diagonal case swaps the roles: xi_k^{l-1} - xi_i xi_k^{l-2} + ...
        out = out + (from_skewpoly(spec, alt_sum(k, i, l))
                     * refl_sum(i, k)).scale(u)
    return out


# -- serialization ---------------------------------------------------------------


_SLOT_NAMES = {"H": ("x", "c", "w", "e", "y"),
               "sH": ("eta", "c", "w", None, "x"),
               "oH": ("xi", None, "w", None, "eta")}


def element_to_json(a: AlgebraElement) -> dict:
    spec = a.spec
    names = _SLOT_NAMES[spec.family]
    terms = []
    for key, sc in a.sorted_terms():
        alpha, cm, w, em, gamma = key
        mono = {}
        mono[names[0]] = list(alpha)
        if names[1]:
            mono[names[1]] = _mask_indices(cm)
        mono["w"] = list(w.images)
        if names[3]:
            mono[names[3]] = _mask_indices(em)
        mono[names[4]] = list(gamma)
        terms.append({"coeff": sc.to_json(), "monomial": mono})
    return {"family": spec.family, "type": spec.wt.family, "rank": spec.n,
            "terms": terms}


def element_from_json(spec: AlgebraSpec, data: dict) -> AlgebraElement:
    if data["family"] != spec.family or data["type"] != spec.wt.family \
            or data["rank"] != spec.n:
        raise ValueError("element data does not match the algebra spec")
    names = _SLOT_NAMES[spec.family]
    terms = {}
    for item in data["terms"]:
        mono = item["monomial"]
        alpha = tuple(mono[names[0]])
        cm = 0
        for i in mono.get(names[1], []) if names[1] else []:
            cm |= 1 << (i - 1)
        w = GroupElement(spec.wt, tuple(mono["w"]))
        em = 0
        for i in mono.get(names[3], []) if names[3] else []:
            em |= 1 << (i - 1)
        gamma = tuple(mono[names[4]])
        _acc(terms, (alpha, cm, w, em, gamma), Scalar.from_json(item["coeff"]))
    return AlgebraElement(spec, terms)
