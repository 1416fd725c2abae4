"""Command-line front end: expression parser, normal-form calculator,
module-action applicator, and the verification suites.

The grammar accepts sums of juxtaposed factors with ``^`` powers and
parentheses; atoms are family generators (``x1 y2 c1 e2 s1 t1 xi1 eta2
tau1``), reflection names (``(1,3)`` and ``~(1,3)`` for the plain group,
``[1,3]``, ``~[1,3]`` and ``~[2]`` for the spin cover), the parameter
scalars ``t u v``, the ring constants ``i r2`` and rationals ``p/q``.
Whitespace and ``*`` both multiply; precedence is ``^`` above
juxtaposition above ``+``/``-``; noncommutative products read left to
right.  Rendered text parses back to the same element.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import dunkl, iso, pbw, spinweyl, weyl
from .iso import (check_homomorphism, check_round_trip, morita_H_to_sH,
                  morita_oH_to_sH, morita_sH_to_H, morita_sH_to_oH, phi_ddot,
                  phi_dot, phi_kw, phi_plus, psi_ddot, psi_dot, psi_kw,
                  psi_plus)
from .pbw import AlgebraElement, AlgebraSpec
from .scalars import I, R2, QExt, Scalar
from .spinweyl import SpinElement, spin_bar_tau, spin_barred, spin_transposition
from .weyl import WeylType

FAMILIES = ("H", "sH", "oH")
TYPES = ("A", "B", "D")
SUITES = ("pbw", "jacobi", "conj", "dunkl", "anticommute", "iso", "center",
          "hecke", "cocycle", "closedform")

EXHAUSTIVE_BUDGET = 3   # suites that sweep whole bases or relation tables
GROUP_BUDGET = 4        # suites that only walk the group or its cover

_LHS = {"H": "y", "sH": "eta", "oH": "eta"}
_RHS = {"H": "x", "sH": "x", "oH": "xi"}


class CliError(Exception):
    """A usage-level problem: bad expression, bad selectors, bad budget."""


# -- expression language ---------------------------------------------------------


class ExprError(CliError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


def _tokenize(text):
    """Tokens as (kind, value, position); kinds NUM, NAME, OP, END."""
    toks = []
    k = 0
    size = len(text)
    while k < size:
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < size and text[k].isdigit():
                k += 1
            num = int(text[start:k])
            if k < size and text[k] == "/" and k + 1 < size \
                    and text[k + 1].isdigit():
                k += 1
                dstart = k
                while k < size and text[k].isdigit():
                    k += 1
                toks.append(("NUM", Fraction(num, int(text[dstart:k])), start))
            else:
                toks.append(("NUM", Fraction(num), start))
            continue
        if ch.isalpha():
            start = k
            while k < size and text[k].isalpha():
                k += 1
            letters = text[start:k]
            idx = None
            if k < size and text[k].isdigit():
                dstart = k
                while k < size and text[k].isdigit():
                    k += 1
                idx = int(text[dstart:k])
            toks.append(("NAME", (letters, idx), start))
            continue
        if ch in "+-*^()[]~,":
            toks.append(("OP", ch, k))
            k += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", k)
    toks.append(("END", None, size))
    return toks


_GEN_FAMILIES = {
    "x": ("H", "sH"), "y": ("H",), "c": ("H", "sH"), "e": ("H",),
    "xi": ("oH",), "eta": ("sH", "oH"), "s": ("H", "oH"), "t": ("sH",),
    "tau": ("H", "oH"),
}


class _Parser:
    def __init__(self, spec, text):
        self.spec = spec
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def next(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect_op(self, ch):
        kind, val, pos = self.next()
        if kind != "OP" or val != ch:
            raise ExprError(f"expected {ch!r}", pos)

    def parse(self):
        el = self._expr()
        kind, _val, pos = self.peek()
        if kind != "END":
            raise ExprError("trailing input", pos)
        return el

    # expr := ['+'|'-'] term (('+'|'-') term)*
    def _expr(self):
        negate = False
        kind, val, _pos = self.peek()
        if kind == "OP" and val in "+-":
            self.next()
            negate = val == "-"
        el = self._term()
        if negate:
            el = -el
        while True:
            kind, val, _pos = self.peek()
            if kind == "OP" and val in "+-":
                self.next()
                rhs = self._term()
                el = el - rhs if val == "-" else el + rhs
            else:
                return el

    # term := factor (['*'] factor)*
    def _term(self):
        el = self._factor()
        while True:
            kind, val, _pos = self.peek()
            if kind == "OP" and val == "*":
                self.next()
                el = el * self._factor()
            elif kind in ("NUM", "NAME") or (kind == "OP" and val in "([~"):
                el = el * self._factor()
            else:
                return el

    # factor := primary ('^' INT)*
    def _factor(self):
        el = self._primary()
        while True:
            kind, val, _pos = self.peek()
            if kind != "OP" or val != "^":
                return el
            self.next()
            nkind, nval, npos = self.next()
            if nkind != "NUM" or nval.denominator != 1:
                raise ExprError("exponent must be a nonnegative integer", npos)
            power = int(nval)
            out = AlgebraElement.one(self.spec)
            for _ in range(power):
                out = out * el
            el = out

    def _primary(self):
        kind, val, pos = self.next()
        if kind == "NUM":
            return AlgebraElement.one(self.spec).scale(
                Scalar.from_qext(QExt.rational(val)))
        if kind == "NAME":
            letters, idx = val
            return self._atom(letters, idx, pos)
        if kind == "OP" and val == "(":
            got = self._maybe_pair(")")
            if got is not None:
                return self._transposition(got, barred=False, pos=pos)
            el = self._expr()
            self.expect_op(")")
            return el
        if kind == "OP" and val == "[":
            got = self._maybe_pair("]")
            if got is None:
                raise ExprError("expected [i,j] with integer entries", pos)
            return self._spin_atom(got, barred=False, pos=pos)
        if kind == "OP" and val == "~":
            nkind, nval, npos = self.next()
            if nkind == "OP" and nval == "[":
                got = self._maybe_pair("]", allow_single=True)
                if got is None:
                    raise ExprError("expected ~[i,j] or ~[i]", npos)
                return self._spin_atom(got, barred=True, pos=pos)
            if nkind == "OP" and nval == "(":
                got = self._maybe_pair(")")
                if got is None:
                    raise ExprError("expected ~(i,j) with integer entries",
                                    npos)
                return self._transposition(got, barred=True, pos=pos)
            raise ExprError("~ starts a barred reflection: ~(i,j), ~[i,j] "
                            "or ~[i]", pos)
        raise ExprError("expected a factor", pos)

    def _maybe_pair(self, closer, allow_single=False):
        """Read INT ',' INT closer (or INT closer) if present; else rewind."""
        save = self.k
        kind, val, _pos = self.next()
        if kind != "NUM" or val.denominator != 1:
            self.k = save
            return None
        first = int(val)
        kind, val, _pos = self.next()
        if allow_single and kind == "OP" and val == closer:
            return (first,)
        if kind != "OP" or val != ",":
            self.k = save
            return None
        kind, val, pos = self.next()
        if kind != "NUM" or val.denominator != 1:
            raise ExprError("expected an integer index", pos)
        second = int(val)
        self.expect_op(closer)
        return (first, second)

    def _transposition(self, pair, barred, pos):
        spec = self.spec
        if spec.family == "sH":
            raise ExprError("the spin family writes reflections as [i,j], "
                            "~[i,j] and ~[i]", pos)
        a, b = pair
        try:
            if barred:
                g = weyl.barred_transposition(spec.wt, a, b)
            else:
                g = weyl.transposition(spec.wt, a, b)
        except ValueError as err:
            raise ExprError(str(err), pos) from None
        return pbw.w_elem(spec, g)

    def _spin_atom(self, idxs, barred, pos):
        spec = self.spec
        if spec.family != "sH":
            raise ExprError("square-bracket reflections live in the spin "
                            "family; use (i,j), ~(i,j) or tau<i> here", pos)
        try:
            if len(idxs) == 1:
                sp = spin_bar_tau(spec.wt, idxs[0])
            elif barred:
                sp = spin_barred(spec.wt, idxs[0], idxs[1])
            else:
                sp = spin_transposition(spec.wt, idxs[0], idxs[1])
        except ValueError as err:
            raise ExprError(str(err), pos) from None
        return _from_spin(spec, sp)

    def _atom(self, letters, idx, pos):
        spec = self.spec
        if idx is None:
            if letters == "t":
                return AlgebraElement.one(spec).scale(spec.t)
            if letters == "u":
                return AlgebraElement.one(spec).scale(spec.u)
            if letters == "v":
                if spec.v is None:
                    raise ExprError("parameter v exists only over type B",
                                    pos)
                return AlgebraElement.one(spec).scale(spec.v)
            if letters == "i":
                return AlgebraElement.one(spec).scale(I)
            raise ExprError(f"unknown name {letters!r}", pos)
        if letters == "r" and idx == 2:
            return AlgebraElement.one(spec).scale(R2)
        fams = _GEN_FAMILIES.get(letters)
        if fams is None:
            raise ExprError(f"unknown generator {letters}{idx}", pos)
        if spec.family not in fams:
            raise ExprError(
                f"generator {letters}{idx} is not available in family "
                f"{spec.family} (it lives in {'/'.join(fams)})", pos)
        try:
            if letters in ("x", "y", "c", "e", "xi", "eta"):
                if not 1 <= idx <= spec.n:
                    raise ValueError(f"index {idx} outside 1..{spec.n}")
                ctor = {"x": pbw.x, "y": pbw.y, "c": pbw.c, "e": pbw.e,
                        "xi": pbw.xi, "eta": pbw.eta}[letters]
                return ctor(spec, idx)
            if letters == "s":
                return pbw.s(spec, idx)
            if letters == "t":
                return pbw.t(spec, idx)
            return pbw.w_elem(spec, weyl.tau(spec.wt, idx))
        except ValueError as err:
            raise ExprError(str(err), pos) from None


def _from_spin(spec, sp: SpinElement) -> AlgebraElement:
    out = AlgebraElement.zero(spec)
    for g, sc in sp.terms.items():
        out = out + pbw.sigma(spec, g).scale(sc)
    return out


def parse_expr(spec: AlgebraSpec, text: str) -> AlgebraElement:
    """Parse an expression in the ambient algebra, already in normal form."""
    return _Parser(spec, text).parse()


# -- rendering --------------------------------------------------------------------


def _bits(mask):
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _powers(letter, exps):
    out = []
    for i, a in enumerate(exps, start=1):
        if a == 1:
            out.append(f"{letter}{i}")
        elif a:
            out.append(f"{letter}{i}^{a}")
    return out


def _coeff_text(sc: Scalar):
    """(negated, factor text or None): pulls a leading sign, drops 1."""
    if len(sc.terms) == 1:
        txt = sc.text()
        neg = txt.startswith("-")
        if neg:
            txt = txt[1:]
        return neg, (None if txt == "1" else txt)
    return False, "(" + sc.text() + ")"


def _group_factors(w) -> list:
    """Factor a signed permutation into reflection atoms, engine order.

    w = d * p with p the unsigned permutation and d the sign flips; flips
    render as tau_k over type B and as ~(a,b)*(a,b) pairs over type D
    (where single flips do not exist); cycles of p become chains of
    adjacent transpositions applied rightmost first.
    """
    wt = w.wt
    out = []
    flips = sorted(abs(v) for v in w.images if v < 0)
    if wt.family == "B":
        out += [f"tau{k}" for k in flips]
    else:
        for a, b in zip(flips[0::2], flips[1::2]):
            out += [f"~({a},{b})", f"({a},{b})"]
    seen = set()
    for a0 in range(1, wt.n + 1):
        if a0 in seen:
            continue
        cyc = [a0]
        seen.add(a0)
        nxt = abs(w.act_index(a0))
        while nxt != a0:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = abs(w.act_index(nxt))
        for m in range(len(cyc) - 1):
            out.append(f"({cyc[m]},{cyc[m + 1]})")
    return out


def _key_factors(spec, key) -> list:
    alpha, cm, w, em, gamma = key
    first = {"H": "x", "sH": "eta", "oH": "xi"}[spec.family]
    last = {"H": "y", "sH": "x", "oH": "eta"}[spec.family]
    out = _powers(first, alpha)
    out += [f"c{i}" for i in _bits(cm)]
    if not w.is_identity():
        if spec.family == "sH":
            out += [f"t{l}" for l in w.lex_least_word()]
        else:
            out += _group_factors(w)
    out += [f"e{i}" for i in _bits(em)]
    out += _powers(last, gamma)
    return out


def _join_terms(bits) -> str:
    if not bits:
        return "0"
    neg0, body0 = bits[0]
    out = ("- " if neg0 else "") + body0
    for neg, body in bits[1:]:
        out += (" - " if neg else " + ") + body
    return out


def render_element(a: AlgebraElement) -> str:
    """Canonical text; parses back to the same element."""
    bits = []
    for key, sc in a.sorted_terms():
        neg, ctext = _coeff_text(sc)
        factors = _key_factors(a.spec, key)
        if ctext is not None:
            factors = [ctext] + factors
        bits.append((neg, "*".join(factors) if factors else "1"))
    return _join_terms(bits)


def _carrier_letters(spec, key) -> list:
    out = [f"c{i}" for i in _bits(key & ((1 << spec.n) - 1))]
    if spec.family == "H":
        out += [f"e{i}" for i in _bits(key >> spec.n)]
    return out


def render_module(spec: AlgebraSpec, val) -> str:
    """Text for a module element (skew polynomial or dressed vector)."""
    bits = []
    if spec.family == "oH":
        for exps, sc in sorted(val.terms.items()):
            neg, ctext = _coeff_text(sc)
            factors = _powers("xi", exps)
            if ctext is not None:
                factors = [ctext] + factors
            bits.append((neg, "*".join(factors) if factors else "1"))
        return _join_terms(bits)
    for (alpha, key), sc in sorted(val.terms.items()):
        neg, ctext = _coeff_text(sc)
        factors = _powers("x", alpha) + _carrier_letters(spec, key)
        if ctext is not None:
            factors = [ctext] + factors
        bits.append((neg, "*".join(factors) if factors else "1"))
    return _join_terms(bits)


def module_to_json(spec: AlgebraSpec, val) -> dict:
    base = {"family": spec.family, "type": spec.wt.family, "rank": spec.n}
    terms = []
    if spec.family == "oH":
        base["kind"] = "skew"
        for exps, sc in sorted(val.terms.items()):
            terms.append({"coeff": sc.to_json(),
                          "monomial": {"xi": list(exps)}})
    else:
        base["kind"] = "module"
        for (alpha, key), sc in sorted(val.terms.items()):
            terms.append({"coeff": sc.to_json(),
                          "monomial": {"x": list(alpha),
                                       "cliff": _carrier_letters(spec, key)}})
    base["terms"] = terms
    return base


# -- spec construction -------------------------------------------------------------


def build_spec(family, typ, rank, params=None, corrupt=False) -> AlgebraSpec:
    try:
        wt = WeylType(typ, rank)
        params = params or {}
        return AlgebraSpec(family, wt, t=params.get("t"), u=params.get("u"),
                           v=params.get("v"), corrupt=corrupt)
    except ValueError as err:
        raise CliError(str(err)) from None


def _parse_params(text) -> dict:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, eq, val = part.partition("=")
        name, val = name.strip(), val.strip()
        if not eq or name not in ("t", "u", "v") or not val:
            raise CliError(f"bad parameter setting {part!r}; use t=1,u=2/3")
        try:
            out[name] = Scalar.from_qext(QExt.rational(Fraction(val)))
        except (ValueError, ZeroDivisionError):
            raise CliError(f"bad rational {val!r} for parameter {name}") \
                from None
    return out


# -- check suites -------------------------------------------------------------------


def _cfg(family, typ, rank, **extra):
    d = {"family": family, "type": typ, "rank": rank}
    d.update(extra)
    d["cases"] = []
    return d


def _add(cfg, label, ok, counterexample=None):
    case = {"label": label, "ok": bool(ok)}
    if counterexample is not None and not ok:
        case["counterexample"] = counterexample
    cfg["cases"].append(case)


def _rows(cfg, rows):
    for label, ok in rows:
        _add(cfg, label, ok)


def _grid(sel):
    for typ in sel["types"]:
        for rank in sel["ranks"]:
            yield typ, rank


def _word_product(spec, els, names):
    out = AlgebraElement.one(spec)
    for nm in names:
        out = out * els[nm]
    return out


def _suite_pbw(sel, negative):
    out = []
    for family in sel["families"]:
        for typ, rank in _grid(sel):
            spec = build_spec(family, typ, rank, sel["params"],
                              corrupt=negative)
            cfg = _cfg(family, typ, rank)
            els = dict(pbw.atoms(spec))
            names = sorted(els)
            lhs, rhs = _LHS[family], _RHS[family]
            probes = ((f"{lhs}1", f"{rhs}2", f"{rhs}1"),
                      (f"{rhs}2", f"{rhs}1", f"{lhs}1"))
            for pi, (na, nb, nc) in enumerate(probes, start=1):
                a, b, c = els[na], els[nb], els[nc]
                ok = (a * b) * c == a * (b * c)
                _add(cfg, f"probe{pi}", ok, {"word": [na, nb, nc]})
            rng = random.Random(f"{sel['seed']}:pbw:{family}:{typ}:{rank}")
            for k in range(200):
                length = rng.randint(3, 4)
                word = [rng.choice(names) for _ in range(length)]
                cut1 = rng.randint(1, length - 2)
                cut2 = rng.randint(cut1 + 1, length - 1)
                a = _word_product(spec, els, word[:cut1])
                b = _word_product(spec, els, word[cut1:cut2])
                c = _word_product(spec, els, word[cut2:])
                ok = (a * b) * c == a * (b * c)
                _add(cfg, f"word{k:03d}", ok,
                     {"word": word, "splits": [cut1, cut2]})
            out.append(cfg)
    return out


def _suite_jacobi(sel, negative):
    out = []
    for typ, rank in _grid(sel):
        spec = build_spec("H", typ, rank, sel["params"], corrupt=negative)
        cfg = _cfg("H", typ, rank)
        pool = [(f"x{i}", pbw.x(spec, i)) for i in range(1, rank + 1)]
        pool += [(f"y{i}", pbw.y(spec, i)) for i in range(1, rank + 1)]
        comm = pbw.commutator
        for na, a in pool:
            for nb, b in pool:
                for nc, c in pool:
                    j = comm(comm(a, b), c) + comm(comm(b, c), a) \
                        + comm(comm(c, a), b)
                    _add(cfg, f"{na}.{nb}.{nc}", j.is_zero(),
                         {"residual": render_element(j)})
        out.append(cfg)
    return out


def _suite_conj(sel, negative):
    out = []
    for family in sel["families"]:
        for typ, rank in _grid(sel):
            spec = build_spec(family, typ, rank, sel["params"])
            cfg = _cfg(family, typ, rank)
            _rows(cfg, pbw.conjugation_report(spec, corrupt=negative))
            out.append(cfg)
    return out


def _suite_dunkl(sel, negative):
    degree = sel["degree"] if sel["degree"] is not None else 4
    out = []
    for family in sel["families"]:
        for typ, rank in _grid(sel):
            spec = build_spec(family, typ, rank, sel["params"])
            cfg = _cfg(family, typ, rank, degree=degree)
            _rows(cfg, dunkl.check_relations_on_module(
                spec, degree=degree, corrupt_dunkl=negative))
            out.append(cfg)
    return out


def _suite_anticommute(sel, negative):
    degree = sel["degree"] if sel["degree"] is not None else 5
    out = []
    for typ, rank in _grid(sel):
        spec = build_spec("oH", typ, rank, sel["params"])
        cfg = _cfg("oH", typ, rank, degree=degree)
        _rows(cfg, dunkl.anticommute_report(spec, degree=degree,
                                            corrupt_dunkl=negative))
        out.append(cfg)
    return out


def _suite_iso(sel, negative):
    out = []
    smash = ((phi_dot, psi_dot), (phi_kw, psi_kw), (phi_ddot, psi_ddot),
             (phi_plus, psi_plus))
    morita = ((morita_H_to_sH, morita_sH_to_H, "H"),
              (morita_sH_to_oH, morita_oH_to_sH, "sH"))
    for typ, rank in _grid(sel):
        wt = WeylType(typ, rank)
        cfg = _cfg("all", typ, rank)
        for mk, inv in smash:
            fwd = mk(wt, corrupt=negative)
            for label, ok, res in check_homomorphism(fwd):
                _add(cfg, f"{mk.__name__}.{label}", ok, str(res))
            for label, ok in check_round_trip(fwd, inv(wt)):
                _add(cfg, f"{mk.__name__}.round.{label}", ok)
        for mk, inv, family in morita:
            spec = build_spec(family, typ, rank)
            fwd = mk(spec, corrupt=negative)
            for label, ok, res in check_homomorphism(fwd):
                _add(cfg, f"{mk.__name__}.{label}", ok, str(res))
            back = inv(fwd.one.adapter.spec)
            for label, ok in check_round_trip(fwd, back):
                _add(cfg, f"{mk.__name__}.round.{label}", ok)
        for label, ok in iso.spin_image_identities(
                phi_kw(wt, corrupt=negative), wt):
            _add(cfg, f"phi_kw.image.{label}", ok)
        for label, ok in iso.group_image_identities(
                phi_dot(wt, corrupt=negative), wt):
            _add(cfg, f"phi_dot.image.{label}", ok)
        out.append(cfg)
    return out


def _suite_center(sel, negative):
    out = []
    for family in sel["families"]:
        for typ, rank in _grid(sel):
            spec = build_spec(family, typ, rank, sel["params"],
                              corrupt=negative)
            cfg = _cfg(family, typ, rank)
            candidates = dunkl.center_candidates(spec)
            if family == "oH" and typ == "A" and rank == 2:
                candidates.append(("odd_quartic_example",
                                   dunkl.odd_center_example(spec)))
            for name, el in candidates:
                ok, witness = dunkl.is_central(spec, el)
                ce = None
                if not ok:
                    ce = {"atom": witness[0],
                          "commutator": render_element(witness[1])}
                _add(cfg, name, ok, ce)
            out.append(cfg)
    return out


def _suite_hecke(sel, negative):
    out = []
    for rank in sel["ranks"]:
        cfg = _cfg("oH", "A", rank)
        _rows(cfg, dunkl.hecke_report(rank, corrupt=negative))
        out.append(cfg)
    return out


def _suite_cocycle(sel, negative):
    out = []
    for typ, rank in _grid(sel):
        wt = WeylType(typ, rank)
        cfg = _cfg("spin", typ, rank)
        rng = random.Random(f"{sel['seed']}:cocycle:{typ}:{rank}")

        def phi(a, b):
            sgn = spinweyl.cocycle(a, b)
            if negative and a.length() == 1:
                return -sgn
            return sgn

        for k in range(500):
            u = weyl.random_element(wt, rng)
            v = weyl.random_element(wt, rng)
            w = weyl.random_element(wt, rng)
            ok = phi(u, v) * phi(u * v, w) == phi(v, w) * phi(u, v * w)
            _add(cfg, f"triple{k:03d}", ok,
                 {"u": list(u.images), "v": list(v.images),
                  "w": list(w.images)})
        out.append(cfg)
    return out


def _suite_closedform(sel, negative):
    out = []
    for family in sel["families"]:
        for typ, rank in _grid(sel):
            spec = build_spec(family, typ, rank, sel["params"])
            engine_spec = spec if not negative else \
                build_spec(family, typ, rank, sel["params"], corrupt=True)
            cfg = _cfg(family, typ, rank)
            lhs = pbw.y if family == "H" else pbw.eta
            rhs = pbw.x if family == "H" else pbw.xi
            closed = pbw.bracket_y_xpow if family == "H" \
                else pbw.bracket_eta_xipow
            lname, rname = _LHS[family], _RHS[family]
            for j in range(1, rank + 1):
                xp = AlgebraElement.one(engine_spec)
                for power in range(1, 6):
                    xp = xp * rhs(engine_spec, j)
                    for i in range(1, rank + 1):
                        li = lhs(engine_spec, i)
                        if family == "H" or power % 2 == 0:
                            got = li * xp - xp * li
                        else:
                            got = li * xp + xp * li
                        want = closed(spec, i, j, power)
                        _add(cfg, f"{lname}{i}.{rname}{j}^{power}",
                             got.terms == want.terms)
            out.append(cfg)
    return out


_SUITE_FNS = {
    "pbw": _suite_pbw, "jacobi": _suite_jacobi, "conj": _suite_conj,
    "dunkl": _suite_dunkl, "anticommute": _suite_anticommute,
    "iso": _suite_iso, "center": _suite_center, "hecke": _suite_hecke,
    "cocycle": _suite_cocycle, "closedform": _suite_closedform,
}

# family choices a suite accepts; None means the selector does not apply
_SUITE_FAMILIES = {
    "pbw": FAMILIES, "jacobi": ("H",), "conj": FAMILIES, "dunkl": FAMILIES,
    "anticommute": ("oH",), "iso": None, "center": FAMILIES,
    "hecke": ("oH",), "cocycle": None, "closedform": ("H", "oH"),
}

_DEFAULT_RANKS = {"anticommute": (3,), "hecke": (2, 3, 4),
                  "cocycle": (2, 3, 4)}


def _selectors(args) -> dict:
    suite = args.suite
    allowed = _SUITE_FAMILIES[suite]
    if args.family is not None:
        if allowed is None:
            raise CliError(f"--family does not apply to the {suite} suite")
        if args.family not in allowed:
            raise CliError(f"the {suite} suite covers families "
                           f"{'/'.join(allowed)}")
        families = (args.family,)
    else:
        families = allowed or ()
    if suite == "hecke":
        if args.type is not None and args.type != "A":
            raise CliError("the hecke suite is specific to type A")
        types = ("A",)
    elif args.type is not None:
        types = (args.type,)
    else:
        types = TYPES
    budget = GROUP_BUDGET if suite in ("hecke", "cocycle") \
        else EXHAUSTIVE_BUDGET
    if args.rank is not None:
        if args.rank < 2:
            raise CliError("verification suites need rank at least 2")
        if args.rank > budget and not args.unsafe_rank:
            raise CliError(f"rank {args.rank} is over the {suite} budget "
                           f"(n <= {budget}); pass --unsafe-rank to force")
        ranks = (args.rank,)
    else:
        ranks = _DEFAULT_RANKS.get(suite, (2, 3))
    return {"families": families, "types": types, "ranks": ranks,
            "seed": args.seed, "degree": args.degree,
            "params": _parse_params(args.params) if args.params else {}}


def run_check(args) -> tuple:
    """(report dict, elapsed seconds)."""
    sel = _selectors(args)
    start = time.perf_counter()
    configs = _SUITE_FNS[args.suite](sel, args.negative_control)
    elapsed = time.perf_counter() - start
    total = sum(len(cfg["cases"]) for cfg in configs)
    failures = sum(1 for cfg in configs for case in cfg["cases"]
                   if not case["ok"])
    report = {"suite": args.suite,
              "negative_control": bool(args.negative_control),
              "seed": args.seed, "configs": configs, "cases": total,
              "failures": failures, "pass": failures == 0}
    return report, elapsed


def report_text(report) -> str:
    lines = [f"suite: {report['suite']}"]
    if report["negative_control"]:
        lines.append("negative-control: on (the corrupted fixture is "
                     "expected to fail)")
    lines.append(f"seed: {report['seed']}")
    for cfg in report["configs"]:
        extra = f" degree {cfg['degree']}" if "degree" in cfg else ""
        bad = [case for case in cfg["cases"] if not case["ok"]]
        lines.append(f"config {cfg['family']} {cfg['type']} "
                     f"rank {cfg['rank']}{extra}: {len(cfg['cases'])} cases, "
                     f"{len(bad)} failures")
        for case in bad:
            lines.append(f"  FAIL {case['label']}")
            ce = case.get("counterexample")
            if ce is not None:
                lines.append("       counterexample: "
                             + json.dumps(ce, sort_keys=True))
    verdict = "PASS" if report["pass"] else "FAIL"
    lines.append(f"result: {verdict} ({report['cases']} cases, "
                 f"{report['failures']} failures)")
    return "\n".join(lines)


# -- verbs -------------------------------------------------------------------------


def _calc_spec(args) -> AlgebraSpec:
    params = _parse_params(args.params) if args.params else {}
    return build_spec(args.family, args.type, args.rank, params)


def _run_nf(args) -> int:
    spec = _calc_spec(args)
    el = parse_expr(spec, args.expr)
    if args.json:
        print(json.dumps(pbw.element_to_json(el)))
    else:
        print(render_element(el))
    return 0


def _run_mul(args) -> int:
    spec = _calc_spec(args)
    el = parse_expr(spec, args.lhs) * parse_expr(spec, args.rhs)
    if args.json:
        print(json.dumps(pbw.element_to_json(el)))
    else:
        print(render_element(el))
    return 0


def _run_apply(args) -> int:
    spec = _calc_spec(args)
    op = parse_expr(spec, args.op)
    start = dunkl.act(spec, parse_expr(spec, args.input),
                      dunkl.vacuum(spec))
    result = dunkl.act(spec, op, start)
    if args.json:
        print(json.dumps(module_to_json(spec, result)))
    else:
        print(render_module(spec, result))
    return 0


def _run_check(args) -> int:
    report, elapsed = run_check(args)
    if args.json:
        print(json.dumps(report))
    else:
        print(report_text(report))
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    if args.negative_control and report["pass"]:
        print("warning: the corrupted fixture did not fail", file=sys.stderr)
    return 0 if report["pass"] else 1


def _run_list(args) -> int:
    print("families:", " ".join(FAMILIES))
    print("types:", " ".join(TYPES))
    print("suites:", " ".join(SUITES))
    if args.family:
        spec = build_spec(args.family, args.type, args.rank)
        names = [name for name, _ in pbw.atoms(spec)]
        print(f"atoms for {args.family} {args.type} rank {args.rank}:",
              " ".join(names))
        if args.family == "sH":
            print("reflections: [i,j] ~[i,j]"
                  + (" ~[i]" if args.type == "B" else ""))
        else:
            extra = " ~(i,j)" if args.type in ("B", "D") else ""
            extra += " tau<i>" if args.type == "B" else ""
            print(f"reflections: (i,j){extra}")
        print("scalars: t u" + (" v" if args.type == "B" else "")
              + " i r2 and rationals p/q")
    return 0


# -- argument plumbing ---------------------------------------------------------------


def _add_algebra_args(sp, with_defaults=True):
    sp.add_argument("--family", choices=FAMILIES,
                    default="H" if with_defaults else None)
    sp.add_argument("--type", choices=TYPES,
                    default="A" if with_defaults else None)
    sp.add_argument("--rank", type=int,
                    default=2 if with_defaults else None)
    sp.add_argument("--params", default=None,
                    help="rational parameter values, e.g. t=1,u=2/3")
    sp.add_argument("--json", action="store_true")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="oddhecke",
        description="Exact computations and machine verification for the "
                    "three double affine Hecke algebra families over "
                    "classical Weyl groups.")
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("nf", help="normal form of an expression")
    sp.add_argument("expr")
    _add_algebra_args(sp)

    sp = sub.add_parser("mul", help="product of two expressions")
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    _add_algebra_args(sp)

    sp = sub.add_parser("apply", help="act on the polynomial module")
    sp.add_argument("--op", required=True,
                    help="operator expression, applied second")
    sp.add_argument("--input", required=True,
                    help="expression applied to the vacuum first")
    _add_algebra_args(sp)

    sp = sub.add_parser("check", help="run a verification suite")
    sp.add_argument("suite", choices=SUITES)
    _add_algebra_args(sp, with_defaults=False)
    sp.add_argument("--degree", type=int, default=None)
    sp.add_argument("--seed", type=int, default=2026)
    sp.add_argument("--unsafe-rank", action="store_true",
                    help="allow ranks over the suite budget")
    sp.add_argument("--negative-control", action="store_true",
                    help="run the corrupted fixture; it must fail")

    sp = sub.add_parser("list", help="families, suites and atoms")
    _add_algebra_args(sp, with_defaults=False)
    sp.set_defaults(family=None, type="A", rank=2)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        if args.verb == "nf":
            return _run_nf(args)
        if args.verb == "mul":
            return _run_mul(args)
        if args.verb == "apply":
            return _run_apply(args)
        if args.verb == "check":
            return _run_check(args)
        return _run_list(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
