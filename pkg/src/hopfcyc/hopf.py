"""Commutative polynomial Hopf algebras F, Lie-Hopf data and bicrossed products F >< U(g).

An element of the bicrossed product is a dict {(fmono, umono): Fraction}, read
as f >< u with the polynomial part on the left.  Tensor powers use tuples of
such pairs as keys.
"""

from fractions import Fraction
from itertools import permutations

from .exactcore import Q, Report, vadd, vscale
from .lie import LieAlgebra, gl_aff
from .pbw import DEFAULT_MAX_DEGREE, DegreeCapError, EnvelopingAlgebra, _tensor_expand


def _perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


class PolyHopf:
    """Polynomial algebra on named generators with a Hopf structure given on generators."""

    def __init__(self, gens, coproduct=None, antipode=None, counit=None, max_degree=DEFAULT_MAX_DEGREE):
        self.gens = list(gens)
        self.m = len(self.gens)
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.max_degree = max_degree
        self.zero = (0,) * self.m
        prim = {a: self._primitive(a) for a in range(self.m)}
        self.coproduct_gen = {a: (coproduct or {}).get(a, prim[a]) for a in range(self.m)}
        self.antipode_gen = {a: (antipode or {}).get(a, {self.gen_mono(a): Fraction(-1)}) for a in range(self.m)}
        self.counit_gen = {a: Q((counit or {}).get(a, 0)) for a in range(self.m)}
        self._dcache = {}
        self._scache = {}

    def gen_mono(self, a):
        e = [0] * self.m
        e[a] = 1
        return tuple(e)

    def gen(self, a):
        if isinstance(a, str):
            a = self.index[a]
        return {self.gen_mono(a): Fraction(1)}

    def one(self):
        return {self.zero: Fraction(1)}

    def _primitive(self, a):
        g = self.gen_mono(a)
        return {(g, self.zero): Fraction(1), (self.zero, g): Fraction(1)}

    def _check(self, deg):
        if deg > self.max_degree:
            raise DegreeCapError(f"F degree {deg} exceeds cap {self.max_degree}")

    def mono_mul(self, a, b):
        m = tuple(x + y for x, y in zip(a, b))
        self._check(sum(m))
        return m

    def mul(self, f, g):
        out = {}
        for a, c in f.items():
            for b, d in g.items():
                m = self.mono_mul(a, b)
                v = out.get(m, 0) + c * d
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def power(self, f, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, f)
        return out

    def tensor_mul(self, a, b):
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                key = tuple(self.mono_mul(x, y) for x, y in zip(ka, kb))
                v = out.get(key, 0) + ca * cb
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def mono_coproduct(self, m):
        hit = self._dcache.get(m)
        if hit is not None:
            return hit
        out = {(self.zero, self.zero): Fraction(1)}
        for a, e in enumerate(m):
            for _ in range(e):
                out = self.tensor_mul(out, self.coproduct_gen[a])
        self._dcache[m] = out
        return out

    def coproduct(self, f):
        out = {}
        for m, c in f.items():
            vadd(out, self.mono_coproduct(m), c)
        return out

    def mono_antipode(self, m):
        hit = self._scache.get(m)
        if hit is not None:
            return hit
        out = self.one()
        for a, e in enumerate(m):
            for _ in range(e):
                out = self.mul(out, self.antipode_gen[a])
        self._scache[m] = out
        return out

    def antipode(self, f):
        out = {}
        for m, c in f.items():
            vadd(out, self.mono_antipode(m), c)
        return out

    def mono_counit(self, m):
        out = Fraction(1)
        for a, e in enumerate(m):
            if e:
                out *= self.counit_gen[a] ** e
        return out

    def counit(self, f):
        return sum((c * self.mono_counit(m) for m, c in f.items()), Fraction(0))

    def mono_str(self, m):
        parts = [self.gens[a] + (f"^{e}" if e > 1 else "") for a, e in enumerate(m) if e]
        return "*".join(parts) if parts else "1"

    def fmt(self, f):
        if not f:
            return "0"
        return " + ".join(f"{c}*{self.mono_str(m)}" for m, c in sorted(f.items()))


class LieHopf:
    """A commutative Hopf algebra F with a g-action by derivations and a coaction on g.

    action[(i, a)] = X_i |> f_a (an F-polynomial); coaction[(i, j)] = f^i_j with
    Delta(X_j) = sum_i X_i (x) f^i_j.
    """

    def __init__(self, F, g, action, coaction):
        self.F, self.g = F, g
        self.action = {k: dict(v) for k, v in action.items() if v}
        n = g.dim
        self.coaction = {}
        for i in range(n):
            for j in range(n):
                v = coaction.get((i, j), F.one() if i == j else {})
                if v:
                    self.coaction[(i, j)] = dict(v)
        self._act = {}

    def fij(self, i, j):
        return self.coaction.get((i, j), {})

    def act_gen_mono(self, i, m):
        """X_i |> monomial, extended as a derivation."""
        key = (i, m)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        F = self.F
        out = {}
        for a, e in enumerate(m):
            if not e:
                continue
            rest = list(m)
            rest[a] -= 1
            der = self.action.get((i, a))
            if der:
                vadd(out, F.mul({tuple(rest): Fraction(e)}, der))
        self._act[key] = out
        return out

    def act_gen(self, i, f):
        out = {}
        for m, c in f.items():
            vadd(out, self.act_gen_mono(i, m), c)
        return out

    def act_word(self, word, f):
        for i in reversed(word):
            f = self.act_gen(i, f)
            if not f:
                break
        return f

    def act_umono(self, U, u, f):
        return self.act_word(U.word(u), f)


def validate_lie_hopf(L):
    """Structure identity, action by derivations forming a Lie action, and equivariance."""
    rep = Report("lie-hopf")
    F, g = L.F, L.g
    n = g.dim
    # the action is a Lie action
    for i in range(n):
        for j in range(n):
            for a in range(F.m):
                f = F.gen(a)
                r = vadd(L.act_gen(i, L.act_gen(j, f)), L.act_gen(j, L.act_gen(i, f)), -1)
                for k, c in g.bracket(i, j).items():
                    vadd(r, L.act_gen(k, f), -c)
                if r:
                    rep.fail("action is not a Lie action", pair=(g.basis[i], g.basis[j]),
                             generator=F.gens[a], residual=F.fmt(r))
                    return rep
    # structure identity
    for k in range(n):
        for i in range(n):
            for j in range(n):
                lhs = vadd(L.act_gen(i, L.fij(k, j)), L.act_gen(j, L.fij(k, i)), -1)
                rhs = {}
                for (s, r_, kk), c in g.constants.items():
                    if kk == k:
                        vadd(rhs, F.mul(L.fij(r_, i), L.fij(s, j)), c)
                for l in range(n):
                    c = g.C(i, j, l)
                    if c:
                        vadd(rhs, L.fij(k, l), c)
                res = vadd(lhs, rhs, -1)
                if res:
                    rep.fail("structure identity", indices=(g.basis[k], g.basis[i], g.basis[j]),
                             residual=F.fmt(res))
                    return rep
    # coaction matrix is multiplicative: Delta(f^i_j) = sum_k f^i_k (x) f^k_j
    for i in range(n):
        for j in range(n):
            lhs = F.coproduct(L.fij(i, j))
            for k in range(n):
                a, b = L.fij(i, k), L.fij(k, j)
                for ma, ca in a.items():
                    for mb, cb in b.items():
                        vadd(lhs, {(ma, mb): ca * cb}, -1)
            if lhs:
                rep.fail("coaction matrix not multiplicative", entry=(g.basis[i], g.basis[j]))
                return rep
            if F.counit(L.fij(i, j)) != (1 if i == j else 0):
                rep.fail("coaction matrix not counital", entry=(g.basis[i], g.basis[j]))
                return rep
    # equivariance on generators: eps(X|>f) = 0 and Delta(X_j|>f) = X_j . Delta(f)
    for j in range(n):
        for a in range(F.m):
            f = F.gen(a)
            xf = L.act_gen(j, f)
            if F.counit(xf):
                rep.fail("counit equivariance", pair=(g.basis[j], F.gens[a]))
                return rep
            lhs = F.coproduct(xf)
            for (m1, m2), c in F.coproduct(f).items():
                # X_j . (f1 (x) f2) = sum_i X_i|>f1 (x) f^i_j f2 + f1 (x) X_j|>f2
                for i in range(n):
                    x1 = L.act_gen(i, {m1: Fraction(1)})
                    rhs2 = F.mul(L.fij(i, j), {m2: Fraction(1)})
                    for p, cp in x1.items():
                        for q, cq in rhs2.items():
                            vadd(lhs, {(p, q): cp * cq}, -c)
                for q, cq in L.act_gen(j, {m2: Fraction(1)}).items():
                    vadd(lhs, {(m1, q): cq}, -c)
            if lhs:
                rep.fail("coproduct equivariance", pair=(g.basis[j], F.gens[a]))
                return rep
    return rep


class Bicrossed:
    """The Hopf algebra F >< U(g) determined by Lie-Hopf data."""

    def __init__(self, L, max_degree=DEFAULT_MAX_DEGREE, name=""):
        self.L = L
        self.F = L.F
        self.g = L.g
        self.name = name
        self.max_degree = max_degree
        self.F.max_degree = max_degree
        self.U = EnvelopingAlgebra(L.g, max_degree)
        self.fzero = self.F.zero
        self.uzero = self.U.zero_mono
        self._ucoact = {}
        self._swap = {}
        self._delta = {}
        self._anti = {}
        self._mm = {}

    # -- elements
    def one(self):
        return {(self.fzero, self.uzero): Fraction(1)}

    def f_el(self, f):
        return {(m, self.uzero): c for m, c in f.items()}

    def u_el(self, u):
        return {(self.fzero, m): c for m, c in u.items()}

    def gen(self, name):
        if name in self.F.index:
            return self.f_el(self.F.gen(name))
        return self.u_el(self.U.gen(name))

    def degree(self, h):
        return max((sum(f) + sum(u) for f, u in h), default=-1)

    def _check(self, key):
        d = sum(key[0]) + sum(key[1])
        if d > self.max_degree:
            raise DegreeCapError(f"Hopf degree {d} exceeds cap {self.max_degree}")

    # -- U-coaction extended to U(g): u -> u<0> (x) u<1>
    def ucoaction_mono(self, m):
        hit = self._ucoact.get(m)
        if hit is not None:
            return hit
        U, F, L = self.U, self.F, self.L
        if not any(m):
            res = {(self.uzero, self.fzero): Fraction(1)}
        else:
            j = max(t for t, e in enumerate(m) if e)
            mp = list(m)
            mp[j] -= 1
            res = self.coaction_of_product({tuple(mp): Fraction(1)}, U.gen(j))
        self._ucoact[m] = res
        return res

    def ucoaction(self, u):
        out = {}
        for m, c in u.items():
            vadd(out, self.ucoaction_mono(m), c)
        return out

    def coaction_of_product(self, u, v):
        """u(1)<0> v<0> (x) u(1)<1> (u(2) |> v<1>), the multiplicative extension rule."""
        U, F, L = self.U, self.F, self.L
        out = {}
        du = U.coproduct(u)
        nv = self._gen_coaction(v) if _is_single_gen(v) else self.ucoaction(v)
        for (a, b), c in du.items():
            for (a0, a1), ca in self.ucoaction_mono(a).items():
                for (v0, v1), cv in nv.items():
                    left = U._mono_mul(a0, v0)
                    right = F.mul({a1: Fraction(1)}, L.act_umono(U, b, {v1: Fraction(1)}))
                    for p, cp in left.items():
                        for q, cq in right.items():
                            key = (p, q)
                            val = out.get(key, 0) + c * ca * cv * cp * cq
                            if val:
                                out[key] = val
                            else:
                                out.pop(key, None)
        return out

    def _gen_coaction(self, v):
        ((m, c),) = v.items()
        j = m.index(1)
        out = {}
        for i in range(self.g.dim):
            for fm, fc in self.L.fij(i, j).items():
                out[(self.U.gen_mono(i) if hasattr(self.U, "gen_mono") else _unit(self.U.n, i), fm)] = c * fc
        return out

    # -- product
    def _swap_mono(self, u, f):
        """u * (f >< 1) = sum (u(1) |> f) >< u(2)."""
        key = (u, f)
        hit = self._swap.get(key)
        if hit is not None:
            return hit
        out = {}
        for (a, b), c in self.U.mono_coproduct(u).items():
            for fm, fc in self.L.act_umono(self.U, a, {f: Fraction(1)}).items():
                k = (fm, b)
                v = out.get(k, 0) + c * fc
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        self._swap[key] = out
        return out

    def mono_mul(self, x, y):
        hit = self._mm.get((x, y))
        if hit is not None:
            return hit
        (f, u), (g, v) = x, y
        out = {}
        for (fm, um), c in self._swap_mono(u, g).items():
            ff = self.F.mono_mul(f, fm)
            for w, d in self.U._mono_mul(um, v).items():
                key = (ff, w)
                self._check(key)
                val = out.get(key, 0) + c * d
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        self._mm[(x, y)] = out
        return out

    def mul(self, a, b):
        out = {}
        for x, c in a.items():
            for y, d in b.items():
                vadd(out, self.mono_mul(x, y), c * d)
        return out

    def prod(self, *els):
        out = self.one()
        for e in els:
            out = self.mul(out, e)
        return out

    # -- coproduct, counit, antipode
    def mono_coproduct(self, x):
        """Delta(f >< u) = f(1) >< u(1)<0> (x) f(2) u(1)<1> >< u(2)."""
        hit = self._delta.get(x)
        if hit is not None:
            return hit
        f, u = x
        out = {}
        for (f1, f2), cf in self.F.mono_coproduct(f).items():
            for (u1, u2), cu in self.U.mono_coproduct(u).items():
                for (u10, u11), cc in self.ucoaction_mono(u1).items():
                    ff = self.F.mono_mul(f2, u11)
                    key = ((f1, u10), (ff, u2))
                    val = out.get(key, 0) + cf * cu * cc
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        self._delta[x] = out
        return out

    def coproduct(self, h):
        out = {}
        for x, c in h.items():
            vadd(out, self.mono_coproduct(x), c)
        return out

    def counit(self, h):
        return sum((c * self.F.mono_counit(f) * (1 if not any(u) else 0) for (f, u), c in h.items()),
                   Fraction(0))

    def mono_antipode(self, x):
        """S(f >< u) = (1 >< S(u<0>)) (S(f u<1>) >< 1)."""
        hit = self._anti.get(x)
        if hit is not None:
            return hit
        f, u = x
        out = {}
        for (u0, u1), c in self.ucoaction_mono(u).items():
            su = self.u_el(self.U.mono_antipode(u0))
            sf = self.f_el(self.F.antipode({self.F.mono_mul(f, u1): Fraction(1)}))
            vadd(out, self.mul(su, sf), c)
        self._anti[x] = out
        return out

    def antipode(self, h):
        out = {}
        for x, c in h.items():
            vadd(out, self.mono_antipode(x), c)
        return out

    # -- tensor helpers
    def iterated_coproduct(self, h, k):
        """Delta^(k-1)(h) as a dict over k-tuples of monomials (k >= 1)."""
        cur = {(x,): c for x, c in h.items()}
        for _ in range(k - 1):
            nxt = {}
            for key, c in cur.items():
                for (a, b), d in self.mono_coproduct(key[-1]).items():
                    kk = key[:-1] + (a, b)
                    val = nxt.get(kk, 0) + c * d
                    if val:
                        nxt[kk] = val
                    else:
                        nxt.pop(kk, None)
            cur = nxt
        return cur

    def tensor_mul(self, a, b):
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                parts = [self.mono_mul(x, y) for x, y in zip(ka, kb)]
                _tensor_expand(out, parts, ca * cb)
        return out

    def act_on_F(self, h, f):
        """(g >< u) |> f = g (u |> f)."""
        out = {}
        for (g, u), c in h.items():
            uf = self.L.act_umono(self.U, u, f)
            if uf:
                vadd(out, self.F.mul({g: Fraction(1)}, uf), c)
        return out

    def to_U(self, h):
        """The quotient map f >< u -> eps(f) u onto U(g)."""
        out = {}
        for (f, u), c in h.items():
            e = self.F.mono_counit(f)
            if e:
                vadd(out, {u: Fraction(1)}, c * e)
        return out

    # -- printing / parsing
    def mono_str(self, x):
        f, u = x
        fs, us = self.F.mono_str(f), self.U.mono_str(u)
        if fs == "1":
            return us
        if us == "1":
            return fs
        return f"{fs}*{us}"

    def fmt(self, h):
        if not h:
            return "0"
        items = sorted(h.items(), key=lambda t: (sum(t[0][0]) + sum(t[0][1]), t[0]))
        return " + ".join(f"{c}*{self.mono_str(x)}" for x, c in items).replace("+ -", "- ")

    def parse(self, text):
        """Parse products of generators, e.g. 'd1*X - 1/2*d1^2 + Y^2'."""
        import re
        s = text.replace(" ", "")
        if s in ("", "0"):
            return {}
        out = {}
        for tok in re.findall(r"[+-]?[^+-]+", s):
            coef = Fraction(-1 if tok.startswith("-") else 1)
            cur = self.one()
            for factor in tok.lstrip("+-").split("*"):
                name, _, exp = factor.partition("^")
                if name in self.F.index or name in self.g.index:
                    for _ in range(int(exp) if exp else 1):
                        cur = self.mul(cur, self.gen(name))
                else:
                    coef *= Q(factor)
            vadd(out, cur, coef)
        return out


def _is_single_gen(v):
    if len(v) != 1:
        return False
    ((m, c),) = v.items()
    return sum(m) == 1


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


EnvelopingAlgebra.gen_mono = lambda self, i: _unit(self.n, i)


# ---------------------------------------------------------------- matched-pair identities

def check_matched_pair_identities(H, samples_u=None, samples_f=None):
    """The five compatibilities between U-action on F and F-coaction on U."""
    rep = Report("hopf-matched-pair")
    U, F, L = H.U, H.F, H.L
    if samples_u is None:
        gens = [U.gen(i) for i in range(U.n)]
        samples_u = gens + [U.mul(a, b) for a in gens for b in gens]
    if samples_f is None:
        gens = [F.gen(a) for a in range(F.m)]
        samples_f = gens + [F.mul(a, b) for a in gens for b in gens]
    # (1) eps(u |> f) = eps(u) eps(f)
    for u in samples_u:
        for f in samples_f:
            lhs = F.counit(_act(H, u, f))
            if lhs != U.counit(u) * F.counit(f):
                rep.fail("eps(u|>f)", u=U.fmt(u), f=F.fmt(f))
    # (2) Delta(u |> f) = u(1)<0> |> f(1) (x) u(1)<1> (u(2) |> f(2))
    for u in samples_u:
        for f in samples_f:
            lhs = F.coproduct(_act(H, u, f))
            for (a, b), c in U.coproduct(u).items():
                for (a0, a1), ca in H.ucoaction_mono(a).items():
                    for (f1, f2), cf in F.coproduct(f).items():
                        left = L.act_umono(U, a0, {f1: Fraction(1)})
                        right = F.mul({a1: Fraction(1)}, L.act_umono(U, b, {f2: Fraction(1)}))
                        for p, cp in left.items():
                            for q, cq in right.items():
                                vadd(lhs, {(p, q): cp * cq}, -c * ca * cf)
            if lhs:
                rep.fail("Delta(u|>f)", u=U.fmt(u), f=F.fmt(f))
    # (3) coaction of 1
    if H.ucoaction(U.one()) != {(H.uzero, H.fzero): 1}:
        rep.fail("coaction(1)")
    # (4) coaction of products equals the multiplicative rule (well-definedness)
    for u in samples_u:
        for v in samples_u:
            lhs = H.ucoaction(U.mul(u, v))
            rhs = H.coaction_of_product(u, v)
            if vadd(lhs, rhs, -1):
                rep.fail("coaction(uv)", u=U.fmt(u), v=U.fmt(v))
    # (5) u(2)<0> (x) (u(1) |> f) u(2)<1> = u(1)<0> (x) u(1)<1> (u(2) |> f)
    for u in samples_u:
        for f in samples_f:
            diff = {}
            for (a, b), c in U.coproduct(u).items():
                for (b0, b1), cb in H.ucoaction_mono(b).items():
                    for q, cq in F.mul(L.act_umono(U, a, f), {b1: Fraction(1)}).items():
                        vadd(diff, {(b0, q): cq}, c * cb)
                for (a0, a1), ca in H.ucoaction_mono(a).items():
                    for q, cq in F.mul({a1: Fraction(1)}, L.act_umono(U, b, f)).items():
                        vadd(diff, {(a0, q): cq}, -c * ca)
            if diff:
                rep.fail("cross relation", u=U.fmt(u), f=F.fmt(f))
    return rep


def _act(H, u, f):
    out = {}
    for m, c in u.items():
        vadd(out, H.L.act_umono(H.U, m, f), c)
    return out


def check_hopf_axioms(H, samples):
    """Associativity, coassociativity, counit and antipode laws on sample elements."""
    rep = Report("hopf-axioms")
    one = H.one()
    for a in samples:
        d = H.coproduct(a)
        # coassociativity
        left, right = {}, {}
        for (x, y), c in d.items():
            for (x1, x2), e in H.mono_coproduct(x).items():
                vadd(left, {(x1, x2, y): c * e})
            for (y1, y2), e in H.mono_coproduct(y).items():
                vadd(right, {(x, y1, y2): c * e})
        if vadd(left, right, -1):
            rep.fail("coassociativity", element=H.fmt(a))
        # counit
        l1, r1 = {}, {}
        for (x, y), c in d.items():
            vadd(l1, {y: c * H.counit({x: Fraction(1)})})
            vadd(r1, {x: c * H.counit({y: Fraction(1)})})
        if vadd(l1, a, -1) or vadd(r1, a, -1):
            rep.fail("counit", element=H.fmt(a))
        # antipode
        s1, s2 = {}, {}
        for (x, y), c in d.items():
            vadd(s1, H.mul(H.mono_antipode(x), {y: Fraction(1)}), c)
            vadd(s2, H.mul({x: Fraction(1)}, H.mono_antipode(y)), c)
        eps = vscale(one, H.counit(a))
        if vadd(s1, eps, -1) or vadd(s2, eps, -1):
            rep.fail("antipode", element=H.fmt(a))
        # multiplicativity of Delta and associativity against the others
        for b in samples:
            if vadd(H.coproduct(H.mul(a, b)), H.tensor_mul(H.coproduct(a), H.coproduct(b)), -1):
                rep.fail("Delta multiplicative", a=H.fmt(a), b=H.fmt(b))
            for c in samples[:4]:
                if vadd(H.mul(H.mul(a, b), c), H.mul(a, H.mul(b, c)), -1):
                    rep.fail("associativity", a=H.fmt(a), b=H.fmt(b), c=H.fmt(c))
    return rep


# ---------------------------------------------------------------- modular pair in involution

class Mpi:
    def __init__(self, H):
        self.H = H
        g = H.g
        self.delta_g = [sum((g.C(i, k, k) for k in range(g.dim)), Fraction(0)) for i in range(g.dim)]
        self.sigma = determinant_F(H)

    def delta_umono(self, u):
        out = Fraction(1)
        for i, e in enumerate(u):
            if e:
                out *= self.delta_g[i] ** e
        return out

    def delta(self, h):
        """delta(f >< u) = eps(f) delta(u)."""
        return sum((c * self.H.F.mono_counit(f) * self.delta_umono(u) for (f, u), c in h.items()),
                   Fraction(0))

    def twisted_antipode(self, h):
        """S_delta(h) = delta(h(1)) S(h(2))."""
        out = {}
        for (x, y), c in self.H.coproduct(h).items():
            d = self.delta({x: Fraction(1)})
            if d:
                vadd(out, self.H.mono_antipode(y), c * d)
        return out

    def verify(self):
        H = self.H
        rep = Report("mpi")
        sig = H.f_el(self.sigma)
        sig_inv = H.antipode(sig)
        if H.coproduct(sig) != {(a, b): c * d for a, c in sig.items() for b, d in sig.items()}:
            rep.fail("sigma is not group-like", sigma=H.F.fmt(self.sigma))
        if self.delta(sig) != 1:
            rep.fail("delta(sigma) != 1")
        if vadd(H.mul(sig, sig_inv), H.one(), -1):
            rep.fail("sigma not invertible")
        gens = [H.gen(a) for a in H.F.gens] + [H.gen(b) for b in H.g.basis]
        for h in gens:
            lhs = self.twisted_antipode(self.twisted_antipode(h))
            rhs = H.prod(sig, h, sig_inv)
            res = vadd(lhs, rhs, -1)
            if res:
                rep.fail("S_delta^2 != Ad_sigma", generator=H.fmt(h), residual=H.fmt(res))
        rep.info = {"sigma": H.F.fmt(self.sigma),
                    "delta": {b: self.delta_g[i] for i, b in enumerate(H.g.basis)}}
        return rep


def determinant_F(H):
    """det [f^i_j] in the commutative algebra F."""
    n = H.g.dim
    F = H.F
    out = {}
    for p in permutations(range(n)):
        term = F.one()
        for j in range(n):
            term = F.mul(term, H.L.fij(p[j], j))
            if not term:
                break
        if term:
            vadd(out, term, _perm_sign(p))
    return out


def canonical_mpi(H):
    m = Mpi(H)
    return m, m.verify()


# ---------------------------------------------------------------- presets

def hn_proj_data(n, half=Fraction(1, 2), names=None, max_degree=DEFAULT_MAX_DEGREE):
    """Lie-Hopf data of the projective Hopf algebra over gl(n)^aff; `half` is the coefficient 1/2."""
    g = gl_aff(n)
    if names:
        g = LieAlgebra([names.get(b, b) for b in g.basis], g.constants, g.name)
    fnames = [names.get(f"f{k}", f"f{k}") if names else f"f{k}" for k in range(1, n + 1)]
    F = PolyHopf(fnames, max_degree=max_degree)
    base = gl_aff(n).index
    action = {}
    coaction = {}
    for l in range(1, n + 1):
        for k in range(1, n + 1):
            i, a = base[f"X{l}"], k - 1
            action[(i, a)] = {F.mul(F.gen(k - 1), F.gen(l - 1)).popitem()[0]: Fraction(half)}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if j == k:
                    action[(base[f"X{i}^{j}"], k - 1)] = F.gen(i - 1)
    for k in range(1, n + 1):
        j = base[f"X{k}"]
        col = {j: F.one()}
        for a in range(1, n + 1):
            vadd(col.setdefault(base[f"X{k}^{a}"], {}), F.gen(a - 1), Fraction(1, 2))
            vadd(col.setdefault(base[f"X{a}^{a}"], {}), F.gen(k - 1), Fraction(1, 2))
        for i, v in col.items():
            if v:
                coaction[(i, j)] = v
    return LieHopf(F, g, action, coaction)


def hn_proj(n, max_degree=DEFAULT_MAX_DEGREE):
    return Bicrossed(hn_proj_data(n, max_degree=max_degree), max_degree, f"H{n}Proj")


def h1s_cop(max_degree=DEFAULT_MAX_DEGREE):
    """The Schwarzian Hopf algebra: generators d1, X, Y with [Y,X]=X, [X,d1]=d1^2/2, [Y,d1]=d1."""
    L = hn_proj_data(1, names={"X1": "X", "X1^1": "Y", "f1": "d1"}, max_degree=max_degree)
    return Bicrossed(L, max_degree, "H1S-cop")


BUILTIN_HOPF = ("H1S-cop", "HnProj")


def builtin_hopf(name, n=None, max_degree=DEFAULT_MAX_DEGREE):
    if name == "H1S-cop":
        return h1s_cop(max_degree)
    if name in ("HnProj", "Hproj") or (name.startswith("H") and name.endswith("Proj")):
        if name not in ("HnProj", "Hproj"):
            n = int(name[1:-4])
        if not n:
            raise KeyError("HnProj needs n >= 1")
        return hn_proj(n, max_degree)
    raise KeyError(f"unknown builtin Hopf algebra {name!r}")
