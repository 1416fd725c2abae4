"""Spin group algebras CW^- of the Weyl groups.

CW^- is generated by t_1..t_N (one per simple reflection) subject to
(t_i t_j)^{m_ij} = (-1)^{m_ij + 1}; it is the group algebra of the double
cover twisted by the central character, equivalently the algebra of the
2-cocycle phi below.  A basis is {sigma_w : w in W} where sigma_w is the
product of the t_i along the lexicographically least reduced word of w, and

    sigma_u * sigma_v = phi(u, v) * sigma_{uv},        phi(u, v) in {+1, -1}.

The cocycle is not guessed from sign conventions: it is extracted from the
faithful embedding t_i -> i * nu_i * s_i into the smash product C_n # CW
(plain kind, e letters), where it is forced by associativity.  Every basis
element's embedding is cached; phi(u, v) is read off as the exact ratio of
embed(u) * embed(v) against embed(uv) and verified to be a full +-1
proportionality.

Also here: t-letter words for the odd reflections of W inside CW^-
(``spin_transposition``, ``spin_barred``, ``spin_bar_tau``), and the Morris
homomorphism ``omega``: CW^- -> C_n sending t_i to beta_i.
"""

from __future__ import annotations

from .scalars import QExt, Scalar
from . import weyl
from .weyl import GroupElement, WeylType
from .clifford import CliffordElement, SmashElement, beta, nu

_EAGER_BOUND = 500      # eager embedding cache up to |W(B_4)| = 384


def canonical_lift(w: GroupElement) -> tuple:
    """The reduced word defining the basis element sigma_w (lex-least)."""
    return w.lex_least_word()


class _SpinData:
    """Per-WeylType caches: t_i embeddings, basis embeddings, cocycle, omega."""

    def __init__(self, wt: WeylType):
        self.wt = wt
        i_scalar = Scalar.i()
        self.tgens = {}
        for i in wt.gen_indices():
            smash_nu = SmashElement.from_clifford(wt, "plain", nu(wt, i))
            smash_s = SmashElement.from_group(wt, "plain", weyl.generator(wt, i))
            self.tgens[i] = (smash_nu * smash_s).scale(i_scalar)
        ident = weyl.identity(wt)
        self.embeds = {ident: SmashElement.one(wt, "plain")}
        self.phi = {}
        self.omega_cache = {ident: CliffordElement.one(wt.n)}
        self.betas = {i: beta(wt, i) for i in wt.gen_indices()}
        if wt.order() <= _EAGER_BOUND:
            for w in weyl.enumerate_group(wt):
                self.embed(w)

    def embed(self, w: GroupElement) -> SmashElement:
        stack = []
        cur = w
        while cur not in self.embeds:
            i = cur.first_left_descent()
            stack.append((cur, i))
            cur = weyl.generator(self.wt, i) * cur
        elem = self.embeds[cur]
        while stack:
            node, i = stack.pop()
            elem = self.tgens[i] * elem
            self.embeds[node] = elem
        return elem

    def phi_of(self, u: GroupElement, v: GroupElement) -> int:
        key = (u, v)
        cached = self.phi.get(key)
        if cached is not None:
            return cached
        prod = self.embed(u) * self.embed(v)
        target = self.embed(u * v)
        k0 = next(iter(target.terms))
        num = prod.terms.get(k0)
        if num is None:
            raise AssertionError("cocycle extraction: embeddings not proportional")
        ratio = num.constant_part() * target.terms[k0].constant_part().inverse()
        if ratio == QExt.one():
            sign = 1
        elif ratio == -QExt.one():
            sign = -1
        else:
            raise AssertionError(f"cocycle ratio is not +-1: {ratio!r}")
        if prod != target.scale(ratio):
            raise AssertionError("cocycle extraction: embeddings not proportional")
        self.phi[key] = sign
        return sign

    def omega_of(self, w: GroupElement) -> CliffordElement:
        stack = []
        cur = w
        while cur not in self.omega_cache:
            i = cur.first_left_descent()
            stack.append((cur, i))
            cur = weyl.generator(self.wt, i) * cur
        elem = self.omega_cache[cur]
        while stack:
            node, i = stack.pop()
            elem = self.betas[i] * elem
            self.omega_cache[node] = elem
        return elem


_REGISTRY: dict = {}


def _data(wt: WeylType) -> _SpinData:
    data = _REGISTRY.get(wt)
    if data is None:
        data = _SpinData(wt)
        _REGISTRY[wt] = data
    return data


def embed(w: GroupElement) -> SmashElement:
    """The image of sigma_w under t_i -> i * nu_i * s_i (in C_n # CW)."""
    return _data(w.wt).embed(w)


def cocycle(u: GroupElement, v: GroupElement) -> int:
    """phi(u, v) with sigma_u sigma_v = phi(u, v) sigma_{uv}."""
    if u.wt != v.wt:
        raise ValueError("mixed WeylTypes")
    return _data(u.wt).phi_of(u, v)


class SpinElement:
    """An element of CW^-: sparse {w: Scalar} over the sigma basis."""

    __slots__ = ("wt", "terms")

    def __init__(self, wt: WeylType, terms: dict | None = None):
        clean = {}
        if terms:
            for w, s in terms.items():
                if s:
                    clean[w] = s
        object.__setattr__(self, "wt", wt)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SpinElement is immutable")

    @staticmethod
    def one(wt: WeylType) -> "SpinElement":
        return SpinElement(wt, {weyl.identity(wt): Scalar.one()})

    @staticmethod
    def sigma(w: GroupElement) -> "SpinElement":
        return SpinElement(w.wt, {w: Scalar.one()})

    @staticmethod
    def t(wt: WeylType, i: int) -> "SpinElement":
        return SpinElement.sigma(weyl.generator(wt, i))

    def __add__(self, other: "SpinElement") -> "SpinElement":
        out = dict(self.terms)
        for w, s in other.terms.items():
            cur = out.get(w)
            out[w] = s if cur is None else cur + s
        return SpinElement(self.wt, out)

    def __sub__(self, other: "SpinElement") -> "SpinElement":
        return self + (-other)

    def __neg__(self) -> "SpinElement":
        return SpinElement(self.wt, {w: -s for w, s in self.terms.items()})

    def scale(self, s) -> "SpinElement":
        if isinstance(s, QExt):
            s = Scalar.from_qext(s)
        return SpinElement(self.wt, {w: v * s for w, v in self.terms.items()})

    def __mul__(self, other: "SpinElement") -> "SpinElement":
        return spin_mul(self, other)

    def __eq__(self, other):
        return (isinstance(other, SpinElement)
                and self.wt == other.wt and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def parity(self) -> int | None:
        """sigma_w is odd iff l(w) is odd; None if mixed (0 for zero)."""
        pars = {w.length() & 1 for w in self.terms}
        if not pars:
            return 0
        if len(pars) > 1:
            return None
        return pars.pop()

    def __repr__(self):
        return f"Spin({self.wt!r}; {len(self.terms)} terms)"


def spin_mul(a: SpinElement, b: SpinElement) -> SpinElement:
    if a.wt != b.wt:
        raise ValueError("mixed WeylTypes")
    data = _data(a.wt)
    out: dict = {}
    for u, s1 in a.terms.items():
        for v, s2 in b.terms.items():
            w = u * v
            val = s1 * s2
            if data.phi_of(u, v) < 0:
                val = -val
            cur = out.get(w)
            out[w] = val if cur is None else cur + val
    return SpinElement(a.wt, out)


def _word_product(wt: WeylType, word, sign: int) -> SpinElement:
    out = SpinElement.one(wt)
    for i in word:
        out = spin_mul(out, SpinElement.t(wt, i))
    if sign < 0:
        out = -out
    return out


def _up(a: int, b: int) -> list:
    return list(range(a, b + 1)) if a <= b else []


def _down(a: int, b: int) -> list:
    return list(range(a, b - 1, -1)) if a >= b else []


def spin_transposition(wt: WeylType, i: int, j: int) -> SpinElement:
    """[i,j]: the odd reflection over s_ij; [j,i] = -[i,j].

    For i < j: (-1)^{j-i-1} t_{j-1} ... t_{i+1} t_i t_{i+1} ... t_{j-1}.
    """
    if i == j or not (1 <= i <= wt.n and 1 <= j <= wt.n):
        raise ValueError(f"bad spin transposition indices {i},{j}")
    if i > j:
        return -spin_transposition(wt, j, i)
    word = _down(j - 1, i) + _up(i + 1, j - 1)
    return _word_product(wt, word, -1 if (j - i - 1) & 1 else 1)


def spin_barred(wt: WeylType, i: int, j: int) -> SpinElement:
    """~[i,j]: the odd reflection over the barred transposition; symmetric."""
    if wt.family == "A":
        raise ValueError("barred spin reflections need signs")
    if i == j or not (1 <= i <= wt.n and 1 <= j <= wt.n):
        raise ValueError(f"bad barred spin reflection indices {i},{j}")
    if i > j:
        i, j = j, i
    n = wt.n
    if wt.family == "D":
        word = _up(j, n - 1) + _up(i, n - 2) + [n] + _down(n - 2, i) + _down(n - 1, j)
        sign = -1 if (j - i - 1) & 1 else 1
    else:
        word = (_up(j, n - 1) + _up(i, n - 2) + [n, n - 1, n]
                + _down(n - 2, i) + _down(n - 1, j))
        sign = -1 if (j - i) & 1 else 1
    return _word_product(wt, word, sign)


def spin_bar_tau(wt: WeylType, i: int) -> SpinElement:
    """~[i]: the odd reflection over tau_i (family B only).

    (-1)^{n-i} t_i ... t_{n-1} t_n t_{n-1} ... t_i.
    """
    if wt.family != "B":
        raise ValueError("~[i] lives in family B")
    if not 1 <= i <= wt.n:
        raise ValueError(f"bad index {i}")
    n = wt.n
    word = _up(i, n - 1) + [n] + _down(n - 1, i)
    return _word_product(wt, word, -1 if (n - i) & 1 else 1)


def omega(a: SpinElement) -> CliffordElement:
    """The Morris homomorphism CW^- -> C_n, t_i -> beta_i."""
    data = _data(a.wt)
    out = CliffordElement.zero(a.wt.n)
    for w, s in a.terms.items():
        out = out + data.omega_of(w).scale(s)
    return out


def table1_relations(wt: WeylType) -> list:
    """The defining relations as (name, lhs, rhs) SpinElement pairs.

    Uniformly: (t_i t_j)^{m_ij} = (-1)^{m_ij+1} for every generator pair,
    which specializes to the family's braid/anticommutation table.
    """
    out = []
    one = SpinElement.one(wt)
    for i in wt.gen_indices():
        for j in wt.gen_indices():
            m = wt.m(i, j)
            prod = one
            for _ in range(m):
                prod = spin_mul(prod, spin_mul(SpinElement.t(wt, i),
                                               SpinElement.t(wt, j)))
            rhs = one if (m + 1) % 2 == 0 else -one
            out.append((f"(t{i} t{j})^{m}", prod, rhs))
    return out
