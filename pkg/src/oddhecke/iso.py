"""Generator-defined algebra maps and their mechanical verification.

Each map is stored as a dictionary from generator tokens to elements of the
target algebra, extended to arbitrary elements by factoring basis monomials
into generator words.  Targets are either plain algebras (smash products,
normal-form algebras) or super tensor products C (x) R built here, where C
is a Clifford algebra on bitmasks and the right factor R is described by a
small adapter (group algebra, length-graded group algebra, spin group
algebra, or one of the normal-form algebras).

The maps provided:

  phi_dot    C_n  |x|_ W~   ->  C_n  (x) W        t_i |-> beta_i s_i
  phi_kw     C'_n |x| W     ->  C'_n (x) W~       s_i |-> -i nu_i t_i
  phi_ddot   C_2n |x| W     ->  C_2n (x) W        s_i |-> i beta_i nu_i s_i
  phi_plus   C_n  |x|+ W~   ->  C_n  (x) W'       t_i |-> -i beta_i s_i
  morita_H_to_sH    H(t,u,v)  -> C'_n (x) sH(-t, -i r2 u, i v)
  morita_sH_to_oH   sH(t,u,v) -> C_n  (x) oH(-t, r2 u, -v)

(W~ the spin cover basis, W' the group algebra graded by word length,
C_n the c letters, C'_n the e letters.)  Every map comes with an inverse
(psi_* / morita_*_inv naming) whose target is the forward map's source, so
round trips can be checked on generators, and with the list of its source's
defining relations so preservation can be checked mechanically.
"""

from .clifford import CliffordElement, SmashElement, act_mask, beta, \
    mask_parity, mono_mul_bits, nu
from . import pbw
from .pbw import AlgebraElement, AlgebraSpec
from .scalars import HALF, I, MINUS_ONE, ONE, R2, Scalar, QExt
from .spinweyl import SpinElement, cocycle, spin_bar_tau, spin_barred, \
    spin_transposition
from . import weyl
from .weyl import GroupElement, WeylType

_HALF_R2 = HALF * R2
_NEG_I = -I
_I_R2 = I * R2


# -- right-factor adapters ----------------------------------------------------


class GroupAdapter:
    """Group algebra CW as the right tensor factor, purely even."""

    def __init__(self, wt: WeylType):
        self.wt = wt

    def one_key(self):
        return weyl.identity(self.wt)

    def mul(self, k1, k2):
        return ((k1 * k2, ONE),)

    def parity(self, key) -> int:
        return 0

    def key_tokens(self, key):
        return [("s", i) for i in key.lex_least_word()]

    def sort_key(self, key):
        return key.images

    def __eq__(self, other):
        return type(self) is type(other) and self.wt == other.wt

    def __repr__(self):
        return f"{type(self).__name__}({self.wt!r})"


class GroupLengthParityAdapter(GroupAdapter):
    """Group algebra CW graded by word length (the alpha = +1 target)."""

    def parity(self, key) -> int:
        return key.length() & 1


class SpinAdapter(GroupAdapter):
    """Spin group algebra CW~ in the sigma basis, graded by word length."""

    def mul(self, k1, k2):
        sign = cocycle(k1, k2)
        return ((k1 * k2, ONE if sign > 0 else MINUS_ONE),)

    def parity(self, key) -> int:
        return key.length() & 1

    def key_tokens(self, key):
        return [("t", i) for i in key.lex_least_word()]


class AlgebraAdapter:
    """One of the normal-form algebras as the right tensor factor."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.wt = spec.wt
        self._cache = {}

    def one_key(self):
        return pbw.ident_key(self.spec)

    def mul(self, k1, k2):
        cached = self._cache.get((k1, k2))
        if cached is None:
            prod = AlgebraElement(self.spec, {k1: ONE}) \
                * AlgebraElement(self.spec, {k2: ONE})
            cached = tuple(prod.terms.items())
            self._cache[(k1, k2)] = cached
        return cached

    def parity(self, key) -> int:
        return pbw.key_parity(self.spec, key)

    def key_tokens(self, key):
        return pbw.key_tokens(self.spec, key, expand_group=True)

    def sort_key(self, key):
        alpha, cm, w, em, gamma = key
        return (alpha, cm, w.images, em, gamma)

    def __eq__(self, other):
        return type(self) is type(other) and self.spec == other.spec

    def __repr__(self):
        return f"AlgebraAdapter({self.spec!r})"


# -- super tensor product -----------------------------------------------------


class TensorElement:
    """C_2n (x) R with the sign rule (a(x)b)(a'(x)b') = (-1)^{|b||a'|} aa' (x) bb'.

    terms: {(clifford bitmask, right key): Scalar}.
    """

    __slots__ = ("adapter", "terms")

    def __init__(self, adapter, terms: dict | None = None):
        clean = {}
        if terms:
            for key, s in terms.items():
                if s:
                    clean[key] = s
        object.__setattr__(self, "adapter", adapter)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @staticmethod
    def one(adapter) -> "TensorElement":
        return TensorElement(adapter, {(0, adapter.one_key()): ONE})

    def _check(self, other):
        if self.adapter != other.adapter:
            raise ValueError("mixed tensor algebras")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for key, s in other.terms.items():
            cur = out.get(key)
            out[key] = s if cur is None else cur + s
        return TensorElement(self.adapter, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.adapter,
                             {k: -s for k, s in self.terms.items()})

    def scale(self, s) -> "TensorElement":
        if isinstance(s, QExt):
            s = Scalar.from_qext(s)
        return TensorElement(self.adapter,
                             {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        ad = self.adapter
        out: dict = {}
        for (m1, k1), s1 in self.terms.items():
            p1 = ad.parity(k1)
            for (m2, k2), s2 in other.terms.items():
                coeff = s1 * s2
                if p1 and mask_parity(m2):
                    coeff = -coeff
                msign, mask = mono_mul_bits(m1, m2)
                if msign < 0:
                    coeff = -coeff
                for rk, rs in ad.mul(k1, k2):
                    key = (mask, rk)
                    cur = out.get(key)
                    val = coeff * rs
                    if cur is None:
                        if val:
                            out[key] = val
                    else:
                        cur = cur + val
                        if cur:
                            out[key] = cur
                        else:
                            del out[key]
        return TensorElement(self.adapter, out)

    def __eq__(self, other):
        return (isinstance(other, TensorElement)
                and self.adapter == other.adapter
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        pars = {mask_parity(m) ^ self.adapter.parity(k)
                for m, k in self.terms}
        if not pars:
            return 0
        if len(pars) > 1:
            return None
        return pars.pop()

    def __repr__(self):
        return f"Tensor({self.adapter!r}; {len(self.terms)} terms)"


def tensor_cliff(adapter, a: CliffordElement) -> TensorElement:
    return TensorElement(adapter,
                         {(m, adapter.one_key()): s for m, s in a.terms.items()})


def tensor_group(adapter, w: GroupElement) -> TensorElement:
    return TensorElement(adapter, {(0, w): ONE})


def tensor_spin(adapter, a: SpinElement) -> TensorElement:
    return TensorElement(adapter, {(0, w): s for w, s in a.terms.items()})


def tensor_algebra(adapter, a: AlgebraElement) -> TensorElement:
    if a.spec != adapter.spec:
        raise ValueError("element does not live in the adapter's algebra")
    return TensorElement(adapter, {(0, k): s for k, s in a.terms.items()})


# -- element factorization ----------------------------------------------------


def _mask_tokens(mask: int, n: int) -> list:
    out = []
    bit = 0
    while mask:
        if mask & 1:
            out.append(("c", bit + 1) if bit < n else ("e", bit - n + 1))
        mask >>= 1
        bit += 1
    return out


def smash_from_spin(wt: WeylType, kind: str, a: SpinElement) -> SmashElement:
    return SmashElement(wt, kind, {(0, w): s for w, s in a.terms.items()})


def algebra_from_spin(spec: AlgebraSpec, a: SpinElement) -> AlgebraElement:
    out = AlgebraElement.zero(spec)
    for w, s in a.terms.items():
        out = out + pbw.sigma(spec, w).scale(s)
    return out


# -- the maps -----------------------------------------------------------------


class Morphism:
    """A generator-assignment map, applied by factoring basis monomials.

    images maps generator tokens to target elements; apply() accepts
    SmashElement, TensorElement or AlgebraElement inputs and factors each
    basis key into a generator word (Clifford letters in mask order, then
    the lexicographically least group word, or the normal-form key's own
    token factorization).
    """

    def __init__(self, name, images, one, atoms, relations):
        self.name = name
        self.images = images
        self.one = one
        self.atoms = atoms          # [(label, token, source element)]
        self.relations = relations  # [(label, [(Scalar, token word)])]

    def word_image(self, tokens):
        out = self.one
        for tok in tokens:
            if tok[0] == "w":
                sub = [("s", i) for i in tok[1].lex_least_word()]
            elif tok[0] == "sigma":
                sub = [("t", i) for i in tok[1].lex_least_word()]
            else:
                sub = (tok,)
            for tok2 in sub:
                img = self.images.get(tok2)
                if img is None:
                    raise KeyError(f"{self.name} has no image for {tok2}")
                out = out * img
        return out

    def apply(self, a):
        out = self.one.scale(Scalar.zero())
        for tokens, s in self._factored(a):
            out = out + self.word_image(tokens).scale(s)
        return out

    def _factored(self, a):
        if isinstance(a, SmashElement):
            n = a.wt.n
            gtok = "s" if a.kind == "plain" else "t"
            for (mask, w), s in a.terms.items():
                toks = _mask_tokens(mask, n) \
                    + [(gtok, i) for i in w.lex_least_word()]
                yield toks, s
        elif isinstance(a, TensorElement):
            n = a.adapter.wt.n
            for (mask, key), s in a.terms.items():
                yield _mask_tokens(mask, n) + a.adapter.key_tokens(key), s
        elif isinstance(a, AlgebraElement):
            for key, s in a.terms.items():
                yield pbw.key_tokens(a.spec, key, expand_group=True), s
        else:
            raise TypeError(f"cannot factor {type(a).__name__}")

    def __repr__(self):
        return f"Morphism({self.name})"


def check_homomorphism(m: Morphism) -> list:
    """[(relation label, ok, residual)] for every source relation of m."""
    report = []
    for label, terms in m.relations:
        res = m.one.scale(Scalar.zero())
        for s, tokens in terms:
            res = res + m.word_image(tokens).scale(s)
        report.append((label, res.is_zero(), res))
    return report


def report_ok(report) -> bool:
    return all(ok for _, ok, _ in report)


def check_round_trip(fwd: Morphism, inv: Morphism) -> list:
    """[(label, ok)]: inv(fwd(g)) == g on fwd's atoms, and conversely."""
    out = []
    for label, _tok, el in fwd.atoms:
        out.append((f"{fwd.name}>{inv.name}:{label}",
                    inv.apply(fwd.apply(el)) == el))
    for label, _tok, el in inv.atoms:
        out.append((f"{inv.name}>{fwd.name}:{label}",
                    fwd.apply(inv.apply(el)) == el))
    return out


# -- source relation schemas --------------------------------------------------


def _species_letters(species: str, n: int) -> list:
    out = []
    if "c" in species:
        out += [(("c", i), i - 1) for i in range(1, n + 1)]
    if "e" in species:
        out += [(("e", i), n + i - 1) for i in range(1, n + 1)]
    return out


def smash_relations(wt: WeylType, kind: str, species: str) -> list:
    """Defining relations of C |x| W as (label, [(Scalar, token word)])."""
    n = wt.n
    letters = _species_letters(species, n)
    gtok = "s" if kind == "plain" else "t"
    rels = []
    for (tok, _bit) in letters:
        lbl = f"{tok[0]}{tok[1]}"
        rels.append((f"square.{lbl}", [(ONE, (tok, tok)), (MINUS_ONE, ())]))
    for a in range(len(letters)):
        for b in range(a + 1, len(letters)):
            ta, tb = letters[a][0], letters[b][0]
            rels.append((f"anticommute.{ta[0]}{ta[1]}.{tb[0]}{tb[1]}",
                         [(ONE, (ta, tb)), (ONE, (tb, ta))]))
    gen_idx = list(wt.gen_indices())
    for i in gen_idx:
        rels.append((f"square.{gtok}{i}",
                     [(ONE, ((gtok, i), (gtok, i))), (MINUS_ONE, ())]))
    for ai in range(len(gen_idx)):
        for bi in range(ai + 1, len(gen_idx)):
            i, j = gen_idx[ai], gen_idx[bi]
            m = wt.m(i, j)
            word = ((gtok, i), (gtok, j)) * m
            # spin letters: (t_i t_j)^m = (-1)^{m+1}; plain: = 1
            if kind == "plain":
                const = MINUS_ONE
            else:
                const = MINUS_ONE if m & 1 else ONE
            rels.append((f"braid.{gtok}{i}.{gtok}{j}", [(ONE, word), (const, ())]))
    for i in gen_idx:
        g = weyl.generator(wt, i)
        for (tok, bit) in letters:
            sign, img = act_mask(g, 1 << bit, n)
            if kind == "minus":
                sign = -sign
            itok = _mask_tokens(img, n)[0]
            rels.append((f"cross.{gtok}{i}.{tok[0]}{tok[1]}",
                         [(ONE, ((gtok, i), tok)),
                          (ONE if sign < 0 else MINUS_ONE, (itok, (gtok, i)))]))
    return rels


def tensor_relations(wt: WeylType, gtok: str, gparity: int, species: str) -> list:
    """Relations of C (x) W: as smash_relations but letters cross with no
    index action, only the sign (-1)^{gparity * letter parity}."""
    kind = "plain" if gtok == "s" else "minus"
    rels = [r for r in smash_relations(wt, kind, species)
            if not r[0].startswith("cross.")]
    for i in wt.gen_indices():
        for (tok, _bit) in _species_letters(species, wt.n):
            rels.append((f"cross.{gtok}{i}.{tok[0]}{tok[1]}",
                         [(ONE, ((gtok, i), tok)),
                          (ONE if gparity else MINUS_ONE, (tok, (gtok, i)))]))
    return rels


# -- generator element builders -----------------------------------------------


def _smash_atoms(wt: WeylType, kind: str, species: str) -> list:
    n = wt.n
    gtok = "s" if kind == "plain" else "t"
    out = []
    for (tok, bit) in _species_letters(species, n):
        el = SmashElement.from_clifford(
            wt, kind, CliffordElement(n, {1 << bit: ONE}))
        out.append((f"{tok[0]}{tok[1]}", tok, el))
    for i in wt.gen_indices():
        el = SmashElement.from_group(wt, kind, weyl.generator(wt, i))
        out.append((f"{gtok}{i}", (gtok, i), el))
    return out


def _tensor_atoms(adapter, gtok: str, species: str) -> list:
    wt = adapter.wt
    n = wt.n
    out = []
    for (tok, bit) in _species_letters(species, n):
        el = tensor_cliff(adapter, CliffordElement(n, {1 << bit: ONE}))
        out.append((f"{tok[0]}{tok[1]}", tok, el))
    for i in wt.gen_indices():
        el = tensor_group(adapter, weyl.generator(wt, i))
        out.append((f"{gtok}{i}", (gtok, i), el))
    return out


def _vec_elem(spec: AlgebraSpec, letter, i: int) -> AlgebraElement:
    """beta_i / nu_i built inside a normal-form algebra from its own letters."""
    wt = spec.wt
    n = wt.n
    if i not in wt.gen_indices():
        raise ValueError(f"no reflection vector {i} for {wt!r}")
    if wt.family != "A" and i == n:
        if wt.family == "B":
            return letter(spec, n)
        return (letter(spec, n - 1) + letter(spec, n)).scale(_HALF_R2)
    return (letter(spec, i) - letter(spec, i + 1)).scale(_HALF_R2)


def _shift_gen(wt: WeylType, i: int) -> int:
    """The next generator index, wrapping; used by the corrupted fixtures."""
    idx = list(wt.gen_indices())
    return idx[(idx.index(i) + 1) % len(idx)]


def _corrupt_image(img: TensorElement) -> TensorElement:
    """Wrong normalization for the negative-control fixtures.

    The index shift alone is a diagram automorphism on the symmetric rank-2
    diagrams, so the fixture also multiplies by i, which breaks the square
    relations at every rank and type.
    """
    return img.scale(I)


# -- the four Clifford-cover maps ----------------------------------------------


def phi_dot(wt: WeylType, corrupt: bool = False) -> Morphism:
    """C_n |x|- W~  ->  C_n (x) W;  t_i |-> beta_i s_i, c_i |-> c_i."""
    n = wt.n
    ad = GroupAdapter(wt)
    images = {}
    for i in range(1, n + 1):
        images[("c", i)] = tensor_cliff(ad, CliffordElement.c(n, i))
        images[("e", i)] = tensor_cliff(ad, CliffordElement.e(n, i))
    for i in wt.gen_indices():
        gi = _shift_gen(wt, i) if corrupt else i
        img = tensor_cliff(ad, beta(wt, i)) \
            * tensor_group(ad, weyl.generator(wt, gi))
        images[("t", i)] = _corrupt_image(img) if corrupt else img
    return Morphism("phi_dot", images, TensorElement.one(ad),
                    _smash_atoms(wt, "minus", "c"),
                    smash_relations(wt, "minus", "c"))


def psi_dot(wt: WeylType) -> Morphism:
    """C_n (x) W  ->  C_n |x|- W~;  s_i |-> beta_i t_i."""
    kind = "minus"
    images = {}
    n = wt.n
    for i in range(1, n + 1):
        images[("c", i)] = SmashElement.from_clifford(
            wt, kind, CliffordElement.c(n, i))
    for i in wt.gen_indices():
        images[("s", i)] = SmashElement.from_clifford(wt, kind, beta(wt, i)) \
            * SmashElement.from_group(wt, kind, weyl.generator(wt, i))
    return Morphism("psi_dot", images, SmashElement.one(wt, kind),
                    _tensor_atoms(GroupAdapter(wt), "s", "c"),
                    tensor_relations(wt, "s", 0, "c"))


def phi_kw(wt: WeylType, corrupt: bool = False) -> Morphism:
    """C'_n |x| W  ->  C'_n (x) W~;  s_i |-> -i nu_i t_i, e_i |-> e_i."""
    n = wt.n
    ad = SpinAdapter(wt)
    images = {}
    for i in range(1, n + 1):
        images[("e", i)] = tensor_cliff(ad, CliffordElement.e(n, i))
        images[("c", i)] = tensor_cliff(ad, CliffordElement.c(n, i))
    for i in wt.gen_indices():
        gi = _shift_gen(wt, i) if corrupt else i
        img = (tensor_cliff(ad, nu(wt, i))
               * tensor_group(ad, weyl.generator(wt, gi))).scale(_NEG_I)
        images[("s", i)] = _corrupt_image(img) if corrupt else img
    return Morphism("phi_kw", images, TensorElement.one(ad),
                    _smash_atoms(wt, "plain", "e"),
                    smash_relations(wt, "plain", "e"))


def psi_kw(wt: WeylType) -> Morphism:
    """C'_n (x) W~  ->  C'_n |x| W;  t_i |-> i nu_i s_i."""
    kind = "plain"
    n = wt.n
    images = {}
    for i in range(1, n + 1):
        images[("e", i)] = SmashElement.from_clifford(
            wt, kind, CliffordElement.e(n, i))
    for i in wt.gen_indices():
        images[("t", i)] = (SmashElement.from_clifford(wt, kind, nu(wt, i))
                            * SmashElement.from_group(
                                wt, kind, weyl.generator(wt, i))).scale(I)
    return Morphism("psi_kw", images, SmashElement.one(wt, kind),
                    _tensor_atoms(SpinAdapter(wt), "t", "e"),
                    tensor_relations(wt, "t", 1, "e"))


def phi_ddot(wt: WeylType, corrupt: bool = False) -> Morphism:
    """C_2n |x| W  ->  C_2n (x) W;  s_i |-> i beta_i nu_i s_i; self-inverse."""
    n = wt.n
    ad = GroupAdapter(wt)
    images = {}
    for i in range(1, n + 1):
        images[("c", i)] = tensor_cliff(ad, CliffordElement.c(n, i))
        images[("e", i)] = tensor_cliff(ad, CliffordElement.e(n, i))
    for i in wt.gen_indices():
        gi = _shift_gen(wt, i) if corrupt else i
        img = (tensor_cliff(ad, beta(wt, i) * nu(wt, i))
               * tensor_group(ad, weyl.generator(wt, gi))).scale(I)
        images[("s", i)] = _corrupt_image(img) if corrupt else img
    return Morphism("phi_ddot", images, TensorElement.one(ad),
                    _smash_atoms(wt, "plain", "ce"),
                    smash_relations(wt, "plain", "ce"))


def psi_ddot(wt: WeylType) -> Morphism:
    """C_2n (x) W  ->  C_2n |x| W; the same generator formula (an involution)."""
    kind = "plain"
    n = wt.n
    images = {}
    for i in range(1, n + 1):
        images[("c", i)] = SmashElement.from_clifford(
            wt, kind, CliffordElement.c(n, i))
        images[("e", i)] = SmashElement.from_clifford(
            wt, kind, CliffordElement.e(n, i))
    for i in wt.gen_indices():
        images[("s", i)] = (SmashElement.from_clifford(
            wt, kind, beta(wt, i) * nu(wt, i))
            * SmashElement.from_group(
                wt, kind, weyl.generator(wt, i))).scale(I)
    return Morphism("psi_ddot", images, SmashElement.one(wt, kind),
                    _tensor_atoms(GroupAdapter(wt), "s", "ce"),
                    tensor_relations(wt, "s", 0, "ce"))


def phi_plus(wt: WeylType, corrupt: bool = False) -> Morphism:
    """C_n |x|+ W~  ->  C_n (x) W'; t_i |-> -i beta_i s_i (length-graded W')."""
    n = wt.n
    ad = GroupLengthParityAdapter(wt)
    images = {}
    for i in range(1, n + 1):
        images[("c", i)] = tensor_cliff(ad, CliffordElement.c(n, i))
    for i in wt.gen_indices():
        gi = _shift_gen(wt, i) if corrupt else i
        img = (tensor_cliff(ad, beta(wt, i))
               * tensor_group(ad, weyl.generator(wt, gi))).scale(_NEG_I)
        images[("t", i)] = _corrupt_image(img) if corrupt else img
    return Morphism("phi_plus", images, TensorElement.one(ad),
                    _smash_atoms(wt, "plus", "c"),
                    smash_relations(wt, "plus", "c"))


def psi_plus(wt: WeylType) -> Morphism:
    """C_n (x) W'  ->  C_n |x|+ W~;  s_i |-> i beta_i t_i."""
    kind = "plus"
    n = wt.n
    images = {}
    for i in range(1, n + 1):
        images[("c", i)] = SmashElement.from_clifford(
            wt, kind, CliffordElement.c(n, i))
    for i in wt.gen_indices():
        images[("s", i)] = (SmashElement.from_clifford(wt, kind, beta(wt, i))
                            * SmashElement.from_group(
                                wt, kind, weyl.generator(wt, i))).scale(I)
    return Morphism("psi_plus", images, SmashElement.one(wt, kind),
                    _tensor_atoms(GroupLengthParityAdapter(wt), "s", "c"),
                    tensor_relations(wt, "s", 1, "c"))


# -- the two Morita maps --------------------------------------------------------


def _transform(spec: AlgebraSpec, family: str, tmul, umul, vmul,
               corrupt: bool = False) -> AlgebraSpec:
    t2 = spec.t * tmul if not corrupt else spec.t * (-tmul)
    u2 = spec.u * umul
    v2 = spec.v * vmul if spec.v is not None else None
    return AlgebraSpec(family, spec.wt, t=t2, u=u2, v=v2)


def _morita_inverse_atoms(spec: AlgebraSpec, species: str) -> list:
    """Atoms of C (x) A, the domain of a Morita inverse: the Clifford
    letters of the outer factor plus the generators of A."""
    ad = AlgebraAdapter(spec)
    out = []
    for (tok, bit) in _species_letters(species, spec.n):
        el = tensor_cliff(ad, CliffordElement(spec.n, {1 << bit: ONE}))
        out.append((f"{tok[0]}{tok[1]}~cliff", tok, el))
    for label, tok, el in _pbw_atoms(spec):
        out.append((label, tok, tensor_algebra(ad, el)))
    return out


def _pbw_atoms(spec: AlgebraSpec) -> list:
    toks = {"H": (("x", pbw.x), ("y", pbw.y), ("c", pbw.c), ("e", pbw.e)),
            "sH": (("x", pbw.x), ("eta", pbw.eta), ("c", pbw.c)),
            "oH": (("xi", pbw.xi), ("eta", pbw.eta))}[spec.family]
    out = []
    for name, ctor in toks:
        for i in range(1, spec.n + 1):
            out.append((f"{name}{i}", (name, i), ctor(spec, i)))
    gname, gctor = ("t", pbw.t) if spec.family == "sH" else ("s", pbw.s)
    for i in spec.wt.gen_indices():
        out.append((f"{gname}{i}", (gname, i), gctor(spec, i)))
    return out


def morita_H_to_sH(spec: AlgebraSpec, corrupt: bool = False) -> Morphism:
    """H(t,u,v) -> C'_n (x) sH(-t, -i r2 u, i v); y_i |-> e_i eta_i."""
    if spec.family != "H":
        raise ValueError("source must be the polynomial-Clifford family")
    n = spec.n
    wt = spec.wt
    tgt = _transform(spec, "sH", MINUS_ONE, -_I_R2, I, corrupt=corrupt)
    ad = AlgebraAdapter(tgt)
    images = {}
    for i in range(1, n + 1):
        images[("x", i)] = tensor_algebra(ad, pbw.x(tgt, i))
        images[("c", i)] = tensor_algebra(ad, pbw.c(tgt, i))
        images[("e", i)] = tensor_cliff(ad, CliffordElement.e(n, i))
        images[("y", i)] = tensor_cliff(ad, CliffordElement.e(n, i)) \
            * tensor_algebra(ad, pbw.eta(tgt, i))
    for i in wt.gen_indices():
        images[("s", i)] = (tensor_cliff(ad, nu(wt, i))
                            * tensor_algebra(ad, pbw.t(tgt, i))).scale(_NEG_I)
    return Morphism("morita_H_to_sH", images, TensorElement.one(ad),
                    _pbw_atoms(spec), pbw.defining_relations(spec))


def morita_sH_to_H(spec: AlgebraSpec) -> Morphism:
    """sH(t,u,v) -> H(-t, (i/r2) u, -i v); eta_i |-> e_i y_i, t_i |-> i nu_i s_i."""
    if spec.family != "sH":
        raise ValueError("source must be the spin family")
    tgt = _transform(spec, "H", MINUS_ONE, _I_R2 * HALF, _NEG_I)
    images = {}
    for i in range(1, spec.n + 1):
        images[("x", i)] = pbw.x(tgt, i)
        images[("c", i)] = pbw.c(tgt, i)
        images[("e", i)] = pbw.e(tgt, i)
        images[("eta", i)] = pbw.e(tgt, i) * pbw.y(tgt, i)
    for i in spec.wt.gen_indices():
        images[("t", i)] = (_vec_elem(tgt, pbw.e, i) * pbw.s(tgt, i)).scale(I)
    return Morphism("morita_sH_to_H", images, AlgebraElement.one(tgt),
                    _morita_inverse_atoms(spec, "e"),
                    pbw.defining_relations(spec))


def morita_sH_to_oH(spec: AlgebraSpec, corrupt: bool = False) -> Morphism:
    """sH(t,u,v) -> C_n (x) oH(-t, r2 u, -v); x_i |-> c_i xi_i."""
    if spec.family != "sH":
        raise ValueError("source must be the spin family")
    n = spec.n
    wt = spec.wt
    tgt = _transform(spec, "oH", MINUS_ONE, R2, MINUS_ONE, corrupt=corrupt)
    ad = AlgebraAdapter(tgt)
    images = {}
    for i in range(1, n + 1):
        images[("eta", i)] = tensor_algebra(ad, pbw.eta(tgt, i))
        images[("c", i)] = tensor_cliff(ad, CliffordElement.c(n, i))
        images[("x", i)] = tensor_cliff(ad, CliffordElement.c(n, i)) \
            * tensor_algebra(ad, pbw.xi(tgt, i))
    for i in wt.gen_indices():
        images[("t", i)] = tensor_cliff(ad, beta(wt, i)) \
            * tensor_algebra(ad, pbw.s(tgt, i))
    return Morphism("morita_sH_to_oH", images, TensorElement.one(ad),
                    _pbw_atoms(spec), pbw.defining_relations(spec))


def morita_oH_to_sH(spec: AlgebraSpec) -> Morphism:
    """oH(t,u,v) -> sH(-t, u/r2, -v); xi_i |-> c_i x_i, s_i |-> beta_i t_i."""
    if spec.family != "oH":
        raise ValueError("source must be the odd family")
    tgt = _transform(spec, "sH", MINUS_ONE, R2 * HALF, MINUS_ONE)
    images = {}
    for i in range(1, spec.n + 1):
        images[("eta", i)] = pbw.eta(tgt, i)
        images[("c", i)] = pbw.c(tgt, i)
        images[("xi", i)] = pbw.c(tgt, i) * pbw.x(tgt, i)
    for i in spec.wt.gen_indices():
        images[("s", i)] = _vec_elem(tgt, pbw.c, i) * pbw.t(tgt, i)
    return Morphism("morita_oH_to_sH", images, AlgebraElement.one(tgt),
                    _morita_inverse_atoms(spec, "c"),
                    pbw.defining_relations(spec))


# -- named image identities ------------------------------------------------------
#
# The reflection vectors dress group elements into spin elements and back:
#   (e_k - e_i) s_ik      |->  -i r2 [k,i]        (under phi_kw / H -> sH)
#   (e_k + e_i) sbar_ik   |->  -i r2 [k,i]-bar
#   e_i tau_i             |->  -i   [i]-bar
#   (c_k - c_i) [k,i]     |->   r2  s_ki          (under phi_dot / sH -> oH)
#   (c_k + c_i) [k,i]-bar |->   r2  sbar_ik
#   c_i [i]-bar           |->        tau_i
# checked verbatim for every index pair the type admits.


def _pairs(n):
    return [(k, i) for k in range(1, n + 1) for i in range(1, n + 1) if k != i]


def spin_image_identities(m: Morphism, wt: WeylType, spec=None) -> list:
    """e-dressed group reflections map to spin reflections (phi_kw shape).

    m is phi_kw(wt) (smash source) or morita_H_to_sH(spec) (H source).
    """
    n = wt.n
    checks = []

    def src(cl, w):
        if spec is None:
            return SmashElement.from_clifford(wt, "plain", cl) \
                * SmashElement.from_group(wt, "plain", w)
        el = AlgebraElement.zero(spec)
        for mask, s in cl.terms.items():
            bits = _mask_tokens(mask, n)
            part = AlgebraElement.one(spec)
            for tok in bits:
                part = part * pbw.e(spec, tok[1])
            el = el + part.scale(s)
        return el * pbw.w_elem(spec, w)

    def tgt(sp):
        if spec is None:
            return tensor_spin(m.one.adapter, sp)
        return tensor_algebra(m.one.adapter,
                              algebra_from_spin(m.one.adapter.spec, sp))

    for (k, i) in _pairs(n):
        lhs = m.apply(src(CliffordElement.e(n, k) - CliffordElement.e(n, i),
                          weyl.transposition(wt, i, k)))
        rhs = tgt(spin_transposition(wt, k, i)).scale(-_I_R2)
        checks.append((f"swap.e{k}.e{i}", lhs == rhs))
    if wt.family in ("B", "D"):
        for (k, i) in _pairs(n):
            lhs = m.apply(src(CliffordElement.e(n, k) + CliffordElement.e(n, i),
                              weyl.barred_transposition(wt, i, k)))
            rhs = tgt(spin_barred(wt, k, i)).scale(-_I_R2)
            checks.append((f"barred.e{k}.e{i}", lhs == rhs))
    if wt.family == "B":
        for i in range(1, n + 1):
            lhs = m.apply(src(CliffordElement.e(n, i), weyl.tau(wt, i)))
            rhs = tgt(spin_bar_tau(wt, i)).scale(_NEG_I)
            checks.append((f"tau.e{i}", lhs == rhs))
    return checks


def group_image_identities(m: Morphism, wt: WeylType, spec=None) -> list:
    """c-dressed spin reflections map to group reflections (phi_dot shape).

    m is phi_dot(wt) (smash source) or morita_sH_to_oH(spec) (sH source).
    """
    n = wt.n
    checks = []

    def src(cl, sp):
        if spec is None:
            return SmashElement.from_clifford(wt, "minus", cl) \
                * smash_from_spin(wt, "minus", sp)
        el = AlgebraElement.zero(spec)
        for mask, s in cl.terms.items():
            part = AlgebraElement.one(spec)
            for tok in _mask_tokens(mask, n):
                part = part * pbw.c(spec, tok[1])
            el = el + part.scale(s)
        return el * algebra_from_spin(spec, sp)

    def tgt(w):
        if spec is None:
            return tensor_group(m.one.adapter, w)
        return tensor_algebra(m.one.adapter,
                              pbw.w_elem(m.one.adapter.spec, w))

    for (k, i) in _pairs(n):
        lhs = m.apply(src(CliffordElement.c(n, k) - CliffordElement.c(n, i),
                          spin_transposition(wt, k, i)))
        rhs = tgt(weyl.transposition(wt, k, i)).scale(R2)
        checks.append((f"swap.c{k}.c{i}", lhs == rhs))
    if wt.family in ("B", "D"):
        for (k, i) in _pairs(n):
            lhs = m.apply(src(CliffordElement.c(n, k) + CliffordElement.c(n, i),
                              spin_barred(wt, k, i)))
            rhs = tgt(weyl.barred_transposition(wt, i, k)).scale(R2)
            checks.append((f"barred.c{k}.c{i}", lhs == rhs))
    if wt.family == "B":
        for i in range(1, n + 1):
            lhs = m.apply(src(CliffordElement.c(n, i), spin_bar_tau(wt, i)))
            rhs = tgt(weyl.tau(wt, i))
            checks.append((f"tau.c{i}", lhs == rhs))
    return checks


# -- linear independence of images ----------------------------------------------


def specialize(s: Scalar, tval: QExt, uval: QExt, vval: QExt) -> QExt:
    """Evaluate the parameter polynomial at numeric t, u, v."""
    acc = QExt.zero()
    for (dt, du, dv), q in s.terms.items():
        val = q
        for _ in range(dt):
            val = val * tval
        for _ in range(du):
            val = val * uval
        for _ in range(dv):
            val = val * vval
        acc = acc + val
    return acc


def _vector_of(el, subs):
    tval, uval, vval = subs
    if isinstance(el, TensorElement):
        ad = el.adapter
        return {(m, ad.sort_key(k)): specialize(s, tval, uval, vval)
                for (m, k), s in el.terms.items()}
    if isinstance(el, SmashElement):
        return {(m, w.images): specialize(s, tval, uval, vval)
                for (m, w), s in el.terms.items()}
    raise TypeError(type(el).__name__)


def image_rank(m: Morphism, sources: list, subs=None) -> tuple:
    """(rank of the images, number of sources) after rational specialization."""
    if subs is None:
        subs = (QExt.rational(2), QExt.rational(3), QExt.rational(5))
    pivots = {}
    rank = 0
    for src in sources:
        vec = {k: v for k, v in _vector_of(m.apply(src), subs).items() if v}
        # pivot rows have their minimum at the pivot key, so ascending
        # elimination never reintroduces an already-cleared position
        for pk in sorted(pivots):
            coef = vec.get(pk)
            if not coef:
                continue
            for k2, v2 in pivots[pk].items():
                cur = vec.get(k2, QExt.zero()) - coef * v2
                if cur:
                    vec[k2] = cur
                else:
                    vec.pop(k2, None)
        if vec:
            pk = min(vec)
            inv = vec[pk].inverse()
            pivots[pk] = {k: v * inv for k, v in vec.items()}
            rank += 1
    return rank, len(sources)
