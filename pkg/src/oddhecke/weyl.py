"""Classical Weyl groups as signed permutations.

Family conventions (fixed throughout the library):

* ``A``: the symmetric group acting on n letters (so rank n means W(A_{n-1});
  no signs allowed).
* ``B``: all signed permutations of n letters.  Simple generators are
  s_i = (i, i+1) for i < n and s_n = tau_n, the sign change at position n.
* ``D``: signed permutations with an even number of sign changes.  Simple
  generators are s_i = (i, i+1) for i < n and s_n = the "barred
  transposition" swapping positions n-1, n and negating both.

An element stores ``images``: images[j-1] = w(j) as a signed integer, with
w(-j) = -w(j) understood.  Composition is (u*v)(j) = u(v(j)).  Length is
counted root-theoretically (#{positive roots sent negative}), which pins the
convention with the special node at position n.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class WeylType:
    """A family label 'A'|'B'|'D' together with the number of letters n."""

    __slots__ = ("family", "n", "_hash")

    def __init__(self, family: str, n: int):
        if family not in ("A", "B", "D"):
            raise ValueError(f"unknown family {family!r}")
        if n < 1 or (family == "D" and n < 2):
            raise ValueError(f"rank {n} unsupported for family {family}")
        if n > 6:
            raise ValueError(f"rank {n} above supported bound (n <= 6)")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_hash", hash((family, n)))

    def __setattr__(self, name, value):
        raise AttributeError("WeylType is immutable")

    def __eq__(self, other):
        return (isinstance(other, WeylType)
                and self.family == other.family and self.n == other.n)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"WeylType({self.family!r}, {self.n})"

    # -- Coxeter data --------------------------------------------------------

    def gen_indices(self) -> range:
        if self.family == "A":
            return range(1, self.n)
        return range(1, self.n + 1)

    def m(self, i: int, j: int) -> int:
        """Coxeter matrix entry for simple generators s_i, s_j."""
        if i == j:
            return 1
        i, j = min(i, j), max(i, j)
        n, fam = self.n, self.family
        if fam == "A" or j < n:
            return 3 if j - i == 1 else 2
        if fam == "B":
            return 4 if i == n - 1 else 2
        # D: s_n is attached to s_{n-2} only
        return 3 if i == n - 2 else 2

    def order(self) -> int:
        import math
        n = self.n
        if self.family == "A":
            return math.factorial(n)
        if self.family == "B":
            return math.factorial(n) * 2 ** n
        return math.factorial(n) * 2 ** (n - 1)

    def positive_roots(self) -> tuple:
        """Positive roots as coordinate tuples, for the simple system
        {e_i - e_{i+1}} + (B: e_n | D: e_{n-1}+e_n)."""
        return _positive_roots(self.family, self.n)

    def simple_root(self, i: int):
        n = self.n
        root = [0] * n
        if self.family != "A" and i == n:
            if self.family == "B":
                root[n - 1] = 1
            else:
                root[n - 2] = 1
                root[n - 1] = 1
        else:
            root[i - 1] = 1
            root[i] = -1
        return tuple(root)


@lru_cache(maxsize=None)
def _positive_roots(family: str, n: int) -> tuple:
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0] * n
            r[i], r[j] = 1, -1
            roots.append(tuple(r))
            if family in ("B", "D"):
                r = [0] * n
                r[i], r[j] = 1, 1
                roots.append(tuple(r))
    if family == "B":
        for i in range(n):
            r = [0] * n
            r[i] = 1
            roots.append(tuple(r))
    return tuple(roots)


_LENGTH_CACHE: dict = {}


class GroupElement:
    """One signed permutation of a fixed WeylType.  Immutable and hashable."""

    __slots__ = ("wt", "images", "_hash")

    def __init__(self, wt: WeylType, images):
        images = tuple(images)
        n = wt.n
        if len(images) != n or sorted(abs(k) for k in images) != list(range(1, n + 1)):
            raise ValueError(f"not a signed permutation of 1..{n}: {images}")
        negs = sum(1 for k in images if k < 0)
        if wt.family == "A" and negs:
            raise ValueError("family A admits no sign changes")
        if wt.family == "D" and negs % 2:
            raise ValueError("family D requires an even number of sign changes")
        object.__setattr__(self, "wt", wt)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash((wt, images)))

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.wt == other.wt and self.images == other.images)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{self.wt.family}{self.wt.n}:{','.join(map(str, self.images))}>"

    # -- group structure -----------------------------------------------------

    def act_index(self, i: int) -> int:
        """w(i) as a signed integer; accepts signed input (w(-i) = -w(i))."""
        if i < 0:
            return -self.images[-i - 1]
        return self.images[i - 1]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.wt != other.wt:
            raise ValueError("mixed WeylTypes")
        return GroupElement(self.wt,
                            tuple(self.act_index(k) for k in other.images))

    def inverse(self) -> "GroupElement":
        inv = [0] * self.wt.n
        for j, val in enumerate(self.images, start=1):
            if val < 0:
                inv[-val - 1] = -j
            else:
                inv[val - 1] = j
        return GroupElement(self.wt, inv)

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.wt.n + 1))

    def act_root(self, root: tuple) -> tuple:
        out = [0] * self.wt.n
        for j, coef in enumerate(root, start=1):
            if coef:
                img = self.images[j - 1]
                if img < 0:
                    out[-img - 1] -= coef
                else:
                    out[img - 1] += coef
        return tuple(out)

    def length(self) -> int:
        """Coxeter length = number of positive roots sent negative."""
        cached = _LENGTH_CACHE.get(self)
        if cached is None:
            pos = set(self.wt.positive_roots())
            cached = sum(1 for r in pos if self.act_root(r) not in pos)
            _LENGTH_CACHE[self] = cached
        return cached

    def sign_character(self) -> int:
        return -1 if self.length() % 2 else 1

    # -- words ----------------------------------------------------------------

    def first_left_descent(self) -> int | None:
        """Smallest i with length(s_i * w) < length(w); None for the identity."""
        winv = self.inverse()
        pos = set(self.wt.positive_roots())
        for i in self.wt.gen_indices():
            if winv.act_root(self.wt.simple_root(i)) not in pos:
                return i
        return None

    def lex_least_word(self) -> tuple:
        """The lexicographically least reduced word, via greedy left descents."""
        word = []
        w = self
        while True:
            i = w.first_left_descent()
            if i is None:
                return tuple(word)
            word.append(i)
            w = generator(w.wt, i) * w

    def rho_star(self) -> "GroupElement":
        """Forget signs: the underlying plain permutation (family A, n letters)."""
        return GroupElement(WeylType("A", self.wt.n),
                            tuple(abs(k) for k in self.images))


# -- constructors --------------------------------------------------------------

def identity(wt: WeylType) -> GroupElement:
    return GroupElement(wt, range(1, wt.n + 1))


def generator(wt: WeylType, i: int) -> GroupElement:
    """Simple generator s_i (1-based; i = n is tau_n for B, barred swap for D)."""
    n = wt.n
    if i not in wt.gen_indices():
        raise ValueError(f"no generator s_{i} in {wt!r}")
    images = list(range(1, n + 1))
    if wt.family != "A" and i == n:
        if wt.family == "B":
            images[n - 1] = -n
        else:
            images[n - 2], images[n - 1] = -n, -(n - 1)
    else:
        images[i - 1], images[i] = i + 1, i
    return GroupElement(wt, images)


def transposition(wt: WeylType, i: int, j: int) -> GroupElement:
    """The plain reflection s_ij swapping letters i and j."""
    if i == j or not (1 <= i <= wt.n and 1 <= j <= wt.n):
        raise ValueError(f"bad transposition indices {i},{j}")
    images = list(range(1, wt.n + 1))
    images[i - 1], images[j - 1] = j, i
    return GroupElement(wt, images)


def barred_transposition(wt: WeylType, i: int, j: int) -> GroupElement:
    """The reflection swapping letters i, j and negating both (B and D)."""
    if wt.family == "A":
        raise ValueError("barred reflections need signs")
    if i == j or not (1 <= i <= wt.n and 1 <= j <= wt.n):
        raise ValueError(f"bad barred transposition indices {i},{j}")
    images = list(range(1, wt.n + 1))
    images[i - 1], images[j - 1] = -j, -i
    return GroupElement(wt, images)


def tau(wt: WeylType, i: int) -> GroupElement:
    """The sign change at letter i (family B only as a group element)."""
    if wt.family != "B":
        raise ValueError("tau lives in family B")
    images = list(range(1, wt.n + 1))
    images[i - 1] = -i
    return GroupElement(wt, images)


def word_to_element(wt: WeylType, word) -> GroupElement:
    w = identity(wt)
    for i in word:
        w = w * generator(wt, i)
    return w


def enumerate_group(wt: WeylType, unsafe: bool = False) -> list:
    """All elements of W.  Refuses above order 10000 unless unsafe=True."""
    if wt.order() > 10000 and not unsafe:
        raise ValueError(f"group of order {wt.order()} above enumeration "
                         "budget; pass unsafe=True to override")
    n, fam = wt.n, wt.family
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        if fam == "A":
            out.append(GroupElement(wt, perm))
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if fam == "D" and signs.count(-1) % 2:
                continue
            out.append(GroupElement(wt, tuple(s * p for s, p in zip(signs, perm))))
    return out


def name_element(w: GroupElement) -> str | None:
    """A short reflection name if w is one: '(1,2)', '~(1,3)' or 'tau2'."""
    wt = w.wt
    n = wt.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if w == transposition(wt, i, j):
                return f"({i},{j})"
            if wt.family != "A" and w == barred_transposition(wt, i, j):
                return f"~({i},{j})"
    if wt.family == "B":
        for i in range(1, n + 1):
            if w == tau(wt, i):
                return f"tau{i}"
    return None


def random_element(wt: WeylType, rng) -> GroupElement:
    n, fam = wt.n, wt.family
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    if fam == "A":
        return GroupElement(wt, perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    if fam == "D" and signs.count(-1) % 2:
        signs[0] = -signs[0]
    return GroupElement(wt, tuple(s * p for s, p in zip(signs, perm)))
