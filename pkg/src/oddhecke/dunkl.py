"""Verma-type modules with Dunkl-operator actions for the three families,
plus the affine Hecke subalgebra and centrality checks.

Each family acts on polynomials tensored with a small carrier:

  H   C[x_1..x_n] (x) C_2n       y_i by a divided-difference operator
  sH  C[x_1..x_n] (x) C_n        eta_i likewise; the spin cover acts
                                 through the beta letters (omega)
  oH  C[xi_1..xi_n] (trivial)    eta_i by a super derivation plus
                                 reflection-difference terms; the group
                                 acts through the sign-forgetting
                                 projection onto plain permutations

The default carriers are the left-regular Clifford modules below; any
object offering the same five methods (base, keys, letter, mul_cliff,
act_group/act_spin) can be passed in their place.
"""

import itertools

from . import pbw, weyl
from .clifford import CliffordElement, act_mask, mono_mul_bits
from .pbw import AlgebraElement, AlgebraSpec
from .scalars import MINUS_ONE, ONE, Scalar
from .skewpoly import (
    SkewPoly,
    XPoly,
    sharp_swap,
    sharp_tau,
)
from .spinweyl import SpinElement, omega, spin_bar_tau, spin_barred, \
    spin_transposition
from .weyl import WeylType

TWO = ONE + ONE


# -- carriers -------------------------------------------------------------------


class CliffordCarrier:
    """Left-regular Clifford carrier; keys are letter bitmasks.

    species 2 gives C_2n with the diagonal Weyl action (family H);
    species 1 gives C_n acted on by the spin cover through the beta
    letters (family sH).
    """

    def __init__(self, wt: WeylType, species: int):
        self.wt = wt
        self.n = wt.n
        self.species = species
        self.base = 0

    def keys(self):
        return range(1 << (self.species * self.n))

    def letter(self, kind: str, i: int, key: int) -> list:
        if kind == "e" and self.species == 1:
            raise ValueError("this carrier has no e letters")
        bit = (i - 1) if kind == "c" else (self.n + i - 1)
        sign, mask = mono_mul_bits(1 << bit, key)
        return [(mask, MINUS_ONE if sign < 0 else ONE)]

    def mul_cliff(self, cl: CliffordElement, key: int) -> list:
        out = []
        for m2, s2 in cl.terms.items():
            sign, mask = mono_mul_bits(m2, key)
            out.append((mask, -s2 if sign < 0 else s2))
        return out

    def act_group(self, g, key: int) -> list:
        sign, mask = act_mask(g, key, self.n)
        return [(mask, MINUS_ONE if sign < 0 else ONE)]

    def act_spin(self, sp: SpinElement, key: int) -> list:
        return self.mul_cliff(omega(sp), key)


def default_carrier(spec: AlgebraSpec):
    if spec.family == "H":
        return CliffordCarrier(spec.wt, 2)
    if spec.family == "sH":
        return CliffordCarrier(spec.wt, 1)
    return None


def carrier_compatibility_report(wt: WeylType) -> list:
    """Check the spin carrier respects the cross rule t_i c_j = -c_j^{s_i} t_i.

    Left beta_i-multiplication is only a legitimate spin action if it
    intertwines the c letters this way on every basis element.
    """
    from .clifford import beta

    car = CliffordCarrier(wt, 1)
    n = wt.n
    out = []
    for i in wt.gen_indices():
        b = beta(wt, i)
        g = weyl.generator(wt, i)
        for j in range(1, n + 1):
            img = g.act_index(j)
            cj = CliffordElement.c(n, j)
            cimg = CliffordElement.c(n, abs(img))
            if img < 0:
                cimg = -cimg
            ok = all(
                b * (cj * CliffordElement(n, {key: ONE}))
                == -(cimg * (b * CliffordElement(n, {key: ONE})))
                for key in car.keys())
            out.append((f"t{i}.c{j}", ok))
    return out


# -- module vectors --------------------------------------------------------------


class ModuleVector:
    """Sparse module element {(x-exponent tuple, carrier key): Scalar}."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict | None = None):
        object.__setattr__(self, "spec", spec)
        clean = {}
        for key, s in (terms or {}).items():
            if s:
                clean[(tuple(key[0]), key[1])] = s
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleVector is immutable")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.terms)
        for key, s in other.terms.items():
            cur = out.get(key)
            out[key] = s if cur is None else cur + s
        return ModuleVector(self.spec, out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(self.spec,
                            {k: -s for k, s in self.terms.items()})

    def scale(self, s) -> "ModuleVector":
        if not isinstance(s, Scalar):
            s = Scalar.from_qext(s)
        if s == ONE:
            return self
        if s == MINUS_ONE:
            return -self
        return ModuleVector(self.spec,
                            {k: v * s for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, ModuleVector)
                and self.spec.family == other.spec.family
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(a) for a, _ in self.terms), default=0)

    def __repr__(self):
        return f"ModuleVector({self.spec.family}; {len(self.terms)} terms)"


def vacuum(spec: AlgebraSpec, carrier=None):
    """The cyclic vector 1 (x) 1 (a plain SkewPoly for the odd family)."""
    if spec.family == "oH":
        return SkewPoly.one(spec.n)
    if carrier is None:
        carrier = default_carrier(spec)
    return ModuleVector(spec, {((0,) * spec.n, carrier.base): ONE})


def module_basis(spec: AlgebraSpec, degree: int, carrier=None) -> list:
    """All basis vectors of polynomial degree up to the bound."""
    n = spec.n
    exps = [a for a in itertools.product(range(degree + 1), repeat=n)
            if sum(a) <= degree]
    if spec.family == "oH":
        return [SkewPoly(n, {a: ONE}) for a in exps]
    if carrier is None:
        carrier = default_carrier(spec)
    return [ModuleVector(spec, {(a, key): ONE})
            for a in exps for key in carrier.keys()]


# -- Dunkl operators --------------------------------------------------------------
#
# y_i and eta_i lower degree through divided differences; each operator is
# assembled from pieces (parameter coefficient, polynomial factor, Clifford
# dressing, reflection) read off the closed commutator formulas, with the
# reflection acting on the carrier first and the dressing multiplied on the
# left afterwards.  Pieces depend only on (i, exponent), so they are cached
# on the spec (specs are unhashable by design, and a global id-keyed table
# would go stale once an id is reused).


def _piece_cache(spec: AlgebraSpec) -> dict:
    cache = getattr(spec, "_dunkl_pieces", None)
    if cache is None:
        cache = {}
        spec._dunkl_pieces = cache
    return cache


def _y_pieces(spec: AlgebraSpec, i: int, alpha: tuple, corrupt: bool) -> list:
    cache = _piece_cache(spec)
    ck = ("y", i, alpha, corrupt)
    got = cache.get(ck)
    if got is not None:
        return got
    wt, n = spec.wt, spec.n
    f = XPoly(n, {alpha: ONE})
    u = -spec.u if corrupt else spec.u
    one = CliffordElement.one(n)
    pieces = []
    h = f.dd_tau(i)
    if h:
        pieces.append((spec.t, h,
                       CliffordElement.c(n, i) * CliffordElement.e(n, i),
                       None, False))
    for k in range(1, n + 1):
        if k == i:
            continue
        g1 = f.dd_swap(i, k)
        g2 = f.dd_barred(i, k)
        cc = CliffordElement.c(n, k) * CliffordElement.c(n, i)
        ee = CliffordElement.e(n, k) * CliffordElement.e(n, i)
        sw = weyl.transposition(wt, k, i)
        if g1:
            pieces.append((-u, g1, one + ee, sw, False))
        if g2:
            pieces.append((-u, g2, cc * (one + ee), sw, False))
        if wt.family in ("B", "D"):
            bw = weyl.barred_transposition(wt, k, i)
            if g2:
                pieces.append((-u, g2, one - ee, bw, False))
            if g1:
                pieces.append((u, g1, cc * (one - ee), bw, False))
    if wt.family == "B" and h:
        pieces.append((-spec.v, h, one, weyl.tau(wt, i), False))
    cache[ck] = pieces
    return pieces


def _eta_pieces(spec: AlgebraSpec, i: int, alpha: tuple,
                corrupt: bool) -> list:
    cache = _piece_cache(spec)
    ck = ("eta", i, alpha, corrupt)
    got = cache.get(ck)
    if got is not None:
        return got
    wt, n = spec.wt, spec.n
    f = XPoly(n, {alpha: ONE})
    u = -spec.u if corrupt else spec.u
    one = CliffordElement.one(n)
    pieces = []
    h = f.dd_tau(i)
    if h:
        pieces.append((spec.t, h, CliffordElement.c(n, i), None, True))
    for k in range(1, n + 1):
        if k == i:
            continue
        g1 = f.dd_swap(i, k)
        g2 = f.dd_barred(i, k)
        cc = CliffordElement.c(n, k) * CliffordElement.c(n, i)
        sp = spin_transposition(wt, k, i)
        if g1:
            pieces.append((u, g1, one, sp, True))
        if g2:
            pieces.append((u, g2, cc, sp, True))
        if wt.family in ("B", "D"):
            bsp = spin_barred(wt, k, i)
            if g2:
                pieces.append((-u, g2, one, bsp, True))
            if g1:
                pieces.append((u, g1, cc, bsp, True))
    if wt.family == "B" and h:
        pieces.append((spec.v, h, one, spin_bar_tau(wt, i), True))
    cache[ck] = pieces
    return pieces


def _apply_pieces(pieces, key, carrier) -> dict:
    out: dict = {}
    for pref, xp, dress, refl, spin in pieces:
        if refl is None:
            stage = [(key, ONE)]
        elif spin:
            stage = carrier.act_spin(refl, key)
        else:
            stage = carrier.act_group(refl, key)
        acc: dict = {}
        for k1, s1 in stage:
            for k2, s2 in carrier.mul_cliff(dress, k1):
                val = s1 * s2
                cur = acc.get(k2)
                acc[k2] = val if cur is None else cur + val
        for beta_exp, bs in xp.terms.items():
            base = pref * bs
            for k2, s2 in acc.items():
                val = base * s2
                mk = (beta_exp, k2)
                cur = out.get(mk)
                out[mk] = val if cur is None else cur + val
    return out


def _acc_scaled(out: dict, terms: dict, coeff) -> None:
    if coeff == ONE:
        for mk, val in terms.items():
            cur = out.get(mk)
            out[mk] = val if cur is None else cur + val
    elif coeff == MINUS_ONE:
        for mk, val in terms.items():
            cur = out.get(mk)
            out[mk] = -val if cur is None else cur - val
    else:
        for mk, val in terms.items():
            sv = coeff * val
            cur = out.get(mk)
            out[mk] = sv if cur is None else cur + sv


def _dunkl_terms(spec, kind, i, alpha, key, carrier, corrupt) -> dict:
    """One Dunkl operator on one basis vector, memoized for default carriers."""
    pieces_fn = _y_pieces if kind == "y" else _eta_pieces
    if type(carrier) is not CliffordCarrier:
        return _apply_pieces(pieces_fn(spec, i, alpha, corrupt), key, carrier)
    cache = _piece_cache(spec)
    ck = (kind, i, alpha, key, corrupt)
    got = cache.get(ck)
    if got is None:
        got = _apply_pieces(pieces_fn(spec, i, alpha, corrupt), key, carrier)
        cache[ck] = got
    return got


def dunkl_y(spec: AlgebraSpec, i: int, v: ModuleVector,
            carrier=None, corrupt: bool = False) -> ModuleVector:
    """The divided-difference realization of y_i (family H)."""
    if spec.family != "H":
        raise ValueError("y operators live in the polynomial-Clifford family")
    if carrier is None:
        carrier = default_carrier(spec)
    out: dict = {}
    for (alpha, key), coeff in v.terms.items():
        _acc_scaled(out, _dunkl_terms(spec, "y", i, alpha, key, carrier,
                                      corrupt), coeff)
    return ModuleVector(spec, out)


def dunkl_eta_sH(spec: AlgebraSpec, i: int, v: ModuleVector,
                 carrier=None, corrupt: bool = False) -> ModuleVector:
    """The divided-difference realization of eta_i (spin family)."""
    if spec.family != "sH":
        raise ValueError("these eta operators live in the spin family")
    if carrier is None:
        carrier = default_carrier(spec)
    out: dict = {}
    for (alpha, key), coeff in v.terms.items():
        _acc_scaled(out, _dunkl_terms(spec, "eta", i, alpha, key, carrier,
                                      corrupt), coeff)
    return ModuleVector(spec, out)


def dunkl_eta_oH(spec: AlgebraSpec, i: int, f: SkewPoly,
                 corrupt: bool = False) -> SkewPoly:
    """The anti-commuting Dunkl operator on skew polynomials (odd family).

    ``corrupt`` flips the sign of the reflection sum and twists its
    quotient by the tau_i sharp action; a plain sign flip would only
    substitute parameters, which cannot break anticommutativity, while
    the twist stays exactly divisible and wrecks both the relation
    faithfulness and the anticommutativity checks.
    """
    if spec.family != "oH":
        raise ValueError("skew Dunkl operators live in the odd family")
    n, wt = spec.n, spec.wt
    u = -spec.u if corrupt else spec.u
    if wt.family != "A":
        u = u * TWO
    out = f.super_derive(i).scale(spec.t)
    fti = f.signed_act(sharp_tau(n, i))
    for k in range(1, n + 1):
        if k == i:
            continue
        fs = f.signed_act(sharp_swap(n, i, k))
        ftk = f.signed_act(sharp_tau(n, k))
        xi_i = SkewPoly.xi(n, i)
        xi_k = SkewPoly.xi(n, k)
        num = xi_i * fs - xi_k * fs - xi_i * fti + xi_k * ftk
        if num.is_zero():
            continue
        q = num.div_sq_diff(i, k)
        if corrupt:
            q = q.signed_act(sharp_tau(n, i))
        out = out + q.scale(u)
    if wt.family == "B":
        num = f - fti
        if not num.is_zero():
            out = out + num.div_2xi(i).scale(spec.v)
    return out


# -- the full algebra action -------------------------------------------------------


def _perm_alpha(g, alpha: tuple):
    """(sign, new exponents) under the signed index action."""
    new = [0] * len(alpha)
    neg = 0
    for j, a in enumerate(alpha):
        if not a:
            continue
        img = g.act_index(j + 1)
        if img < 0:
            neg += a
            img = -img
        new[img - 1] += a
    return (-1 if neg & 1 else 1, tuple(new))


def _apply_token(spec, carrier, tok, v, corrupt):
    name, arg = tok
    if spec.family == "oH":
        if name == "xi":
            return SkewPoly.xi(spec.n, arg) * v
        if name in ("s", "w"):
            g = weyl.generator(spec.wt, arg) if name == "s" else arg
            return v.unsigned_act(g)
        if name == "eta":
            return dunkl_eta_oH(spec, arg, v, corrupt=corrupt)
        raise ValueError(f"unknown odd-family token {tok}")
    if name == "x":
        out = {}
        for (alpha, key), s in v.terms.items():
            na = list(alpha)
            na[arg - 1] += 1
            out[(tuple(na), key)] = s
        return ModuleVector(spec, out)
    if name == "y":
        return dunkl_y(spec, arg, v, carrier, corrupt)
    if name == "eta":
        return dunkl_eta_sH(spec, arg, v, carrier, corrupt)
    if name in ("c", "e"):
        out = {}
        for (alpha, key), s in v.terms.items():
            val = -s if (name == "c" and alpha[arg - 1] & 1) else s
            for k2, s2 in carrier.letter(name, arg, key):
                mk = (alpha, k2)
                cur = out.get(mk)
                add = val * s2
                out[mk] = add if cur is None else cur + add
        return ModuleVector(spec, out)
    if name in ("s", "w", "t", "sigma"):
        if name in ("s", "t"):
            g = weyl.generator(spec.wt, arg)
        else:
            g = arg
        spin = spec.family == "sH"
        sp = None
        if spin:
            sp = SpinElement.sigma(g) if name == "sigma" \
                else SpinElement.t(spec.wt, arg)
        out = {}
        for (alpha, key), s in v.terms.items():
            sign, na = _perm_alpha(g, alpha)
            val = -s if sign < 0 else s
            moved = carrier.act_spin(sp, key) if spin \
                else carrier.act_group(g, key)
            for k2, s2 in moved:
                mk = (na, k2)
                cur = out.get(mk)
                add = val * s2
                out[mk] = add if cur is None else cur + add
        return ModuleVector(spec, out)
    raise ValueError(f"unknown token {tok} for family {spec.family}")


def act_word(spec: AlgebraSpec, tokens, v, carrier=None,
             corrupt: bool = False):
    """Apply a generator word to a module element, rightmost letter first."""
    if carrier is None and spec.family != "oH":
        carrier = default_carrier(spec)
    for tok in reversed(tokens):
        v = _apply_token(spec, carrier, tok, v, corrupt)
    return v


def act(spec: AlgebraSpec, a: AlgebraElement, v, carrier=None,
        corrupt: bool = False):
    """The module action of a normal-form element."""
    if carrier is None and spec.family != "oH":
        carrier = default_carrier(spec)
    if spec.family == "oH":
        out = SkewPoly.zero(spec.n)
    else:
        out = ModuleVector(spec, {})
    for key, s in a.terms.items():
        cur = act_word(spec, pbw.key_tokens(spec, key, expand_group=False),
                       v, carrier, corrupt)
        out = out + cur.scale(s)
    return out


# -- relation faithfulness ----------------------------------------------------------


def check_relations_on_module(spec: AlgebraSpec, degree: int = 4,
                              carrier=None,
                              corrupt_dunkl: bool = False) -> list:
    """[(relation label, ok)]: every defining relation as a module operator.

    Each relation is applied to every module basis vector of polynomial
    degree up to the bound; ok means the residual vanished on all of them.
    """
    if carrier is None and spec.family != "oH":
        carrier = default_carrier(spec)
    vectors = module_basis(spec, degree, carrier)
    report = []
    for label, terms in pbw.defining_relations(spec):
        ok = True
        for v in vectors:
            res: dict = {}
            for s, tokens in terms:
                piece = act_word(spec, tokens, v, carrier, corrupt_dunkl)
                _acc_scaled(res, piece.terms, s)
            if any(res.values()):
                ok = False
                break
        report.append((label, ok))
    return report


def anticommute_report(spec: AlgebraSpec, degree: int = 5,
                       corrupt_dunkl: bool = False) -> list:
    """[(pair label, ok)]: eta_i eta_j + eta_j eta_i kills skew monomials."""
    if spec.family != "oH":
        raise ValueError("anticommutativity concerns the odd family")
    n = spec.n
    monos = module_basis(spec, degree)
    report = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            ok = True
            for f in monos:
                a = dunkl_eta_oH(spec, i, dunkl_eta_oH(spec, j, f,
                                                       corrupt_dunkl),
                                 corrupt_dunkl)
                b = dunkl_eta_oH(spec, j, dunkl_eta_oH(spec, i, f,
                                                       corrupt_dunkl),
                                 corrupt_dunkl)
                if not (a + b).is_zero():
                    ok = False
                    break
            report.append((f"eta{i}.eta{j}", ok))
    return report


# -- affine Hecke subalgebra ---------------------------------------------------------


def z_element(spec: AlgebraSpec, i: int,
              corrupt: bool = False) -> AlgebraElement:
    """-xi_i eta_i + u sum_{k<i} s_ki (odd family, plain permutations)."""
    if spec.family != "oH" or spec.wt.family != "A":
        raise ValueError("the Hecke generators live in the odd type-A family")
    u = -spec.u if corrupt else spec.u
    out = (pbw.xi(spec, i) * pbw.eta(spec, i)).scale(MINUS_ONE)
    for k in range(1, i):
        out = out + pbw.w_elem(
            spec, weyl.transposition(spec.wt, k, i)).scale(u)
    return out


def jucys_murphy(n: int, i: int, spec: AlgebraSpec | None = None
                 ) -> AlgebraElement:
    """The group-algebra element sum_{k<i} s_ki."""
    if spec is None:
        spec = AlgebraSpec("oH", WeylType("A", n))
    out = AlgebraElement.zero(spec)
    for k in range(1, i):
        out = out + pbw.w_elem(spec, weyl.transposition(spec.wt, k, i))
    return out


def hecke_report(n: int, corrupt: bool = False) -> list:
    """[(label, ok)] for the degenerate affine Hecke identities at rank n."""
    spec = AlgebraSpec("oH", WeylType("A", n))
    z = {i: z_element(spec, i, corrupt) for i in range(1, n + 1)}
    ell = {i: jucys_murphy(n, i, spec) for i in range(1, n + 2)
           if i <= n}
    report = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            report.append((f"z{i}.z{j}.commute",
                           (z[i] * z[j] - z[j] * z[i]).is_zero()))
    one = AlgebraElement.one(spec)
    for i in spec.wt.gen_indices():
        si = pbw.s(spec, i)
        lhs = si * z[i]
        rhs = z[i + 1] * si - one.scale(spec.u)
        report.append((f"s{i}.z{i}.shift", (lhs - rhs).is_zero()))
        for j in range(1, n + 1):
            if j in (i, i + 1):
                continue
            report.append((f"s{i}.z{j}.commute",
                           (si * z[j] - z[j] * si).is_zero()))
        if i + 1 <= n:
            lhs = si * ell[i]
            rhs = ell[i + 1] * si - one
            report.append((f"s{i}.L{i}.shift", (lhs - rhs).is_zero()))
    return report


# -- centers ---------------------------------------------------------------------------


def elementary_symmetric_squares(spec: AlgebraSpec, letter: str,
                                 r: int) -> AlgebraElement:
    """e_r of the squared degree-one generators of one half."""
    ctor = {"x": pbw.x, "y": pbw.y, "xi": pbw.xi, "eta": pbw.eta}[letter]
    squares = [ctor(spec, i) * ctor(spec, i)
               for i in range(1, spec.n + 1)]
    out = AlgebraElement.zero(spec)
    for combo in itertools.combinations(squares, r):
        prod = AlgebraElement.one(spec)
        for q in combo:
            prod = prod * q
        out = out + prod
    return out


def center_candidates(spec: AlgebraSpec) -> list:
    """The (label, element) list of symmetric-square central candidates."""
    letters = {"H": ("x", "y"), "sH": ("x", "eta"),
               "oH": ("xi", "eta")}[spec.family]
    out = []
    for letter in letters:
        for r in range(1, spec.n + 1):
            out.append((f"e{r}({letter}^2)",
                        elementary_symmetric_squares(spec, letter, r)))
    return out


def odd_center_example(spec: AlgebraSpec) -> AlgebraElement:
    """A central element beyond the symmetric-square family, rank-2 type A:

        xi1^2 eta2^2 + xi2^2 eta1^2 - u s1 (xi1-xi2)(eta1-eta2) + u t s1.

    The trailing group term is forced by the defining relations: without
    it the commutator with xi_1 is u t s1 (xi_1 - xi_2), computed both by
    normal-form rewriting and as Dunkl operators on skew polynomials.
    """
    if spec.family != "oH" or spec.wt.family != "A" or spec.n != 2:
        raise ValueError("the example lives in the odd type-A rank-2 family")
    x1, x2 = pbw.xi(spec, 1), pbw.xi(spec, 2)
    h1, h2 = pbw.eta(spec, 1), pbw.eta(spec, 2)
    s1 = pbw.s(spec, 1)
    head = x1 * x1 * h2 * h2 + x2 * x2 * h1 * h1
    tail = s1 * (x1 - x2) * (h1 - h2)
    return head - tail.scale(spec.u) + s1.scale(spec.u * spec.t)


def is_central(spec: AlgebraSpec, a: AlgebraElement):
    """(True, None) or (False, (generator label, nonzero commutator))."""
    if a.parity() != 0:
        raise ValueError("centrality is defined for even elements")
    for name, g in pbw.atoms(spec):
        comm = a * g - g * a
        if not comm.is_zero():
            return (False, (name, comm))
    return (True, None)
