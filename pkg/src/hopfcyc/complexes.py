"""Cochain complexes and the chain maps between them.

Lie side: W(g,V) = wedge g* (x) V with d_CE and the Koszul differential d_K,
C(g,V) = wedge g (x) V with the homology-side pair, relative subcomplexes,
Poincare duality and the Weil map W(pgl(n), C) -> W(gl(n), V_nProj).

Hopf side: the cocyclic module C(H,V) = V (x) H^q, the mixed total complex
Tot(F,U,V) = V (x) F^p (x) U^q, the Alexander-Whitney map, the diagonal map
Psi and the weight operator.

Element keys:
  W, C           (wedge tuple, v index)
  C(H,V)         (v index, (hmono, ...))
  Tot            (v index, (fmono, ...), (umono, ...))
"""

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

from .exactcore import Q, Report, SparseMatrix, vadd


# ---------------------------------------------------------------- wedge monomials

def sort_sign(seq):
    """(sign, sorted tuple) for a sequence of indices; (0, None) on a repeat."""
    seq = list(seq)
    if len(set(seq)) < len(seq):
        return 0, None
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def wedge(a, b):
    return sort_sign(tuple(a) + tuple(b))


def contract(i, t):
    """Left contraction by the dual element: iota(e_i) on a wedge monomial."""
    if i not in t:
        return 0, None
    r = t.index(i)
    return (-1) ** r, t[:r] + t[r + 1:]


def wedge_basis(n, q):
    return list(combinations(range(n), q))


def wedge_str(t, names):
    return "^".join(names[i] for i in t) or "1"


def wedge_elements(a, b):
    """Product of two wedge elements {tuple: c}."""
    out = {}
    for s, c in a.items():
        for t, d in b.items():
            sg, u = wedge(s, t)
            if sg:
                vadd(out, {u: c * d * sg})
    return out


# ---------------------------------------------------------------- Chevalley-Eilenberg / Koszul on W(g,V)

def d_dr_theta(g, i):
    """d theta^i = -1/2 sum C^i_jk theta^j theta^k, as {(j,k): c} with j < k."""
    out = {}
    for (j, k, l), c in g.constants.items():
        if l == i and j < k:
            vadd(out, {(j, k): -c})
    return out


def d_dr(g, t):
    """Exterior derivative of a wedge monomial of g*, as {tuple: c}."""
    out = {}
    for r, a in enumerate(t):
        for two, c in d_dr_theta(g, a).items():
            sg, u = sort_sign(t[:r] + two + t[r + 1:])
            if sg:
                vadd(out, {u: (-1) ** r * c * sg})
    return out


def d_ce(g, V, omega):
    """d_CE(beta (x) v) = d beta (x) v - sum_i theta^i beta (x) v.X_i."""
    out = {}
    for (t, k), c in omega.items():
        for u, e in d_dr(g, t).items():
            vadd(out, {(u, k): c * e})
        v = {k: Fraction(1)}
        for i in range(g.dim):
            sg, u = sort_sign((i,) + t)
            if not sg:
                continue
            for kk, e in V.act(v, i).items():
                vadd(out, {(u, kk): -c * e * sg})
    return out


def d_k(V, omega):
    """d_K(alpha (x) v) = sum_j iota(X_j) alpha (x) v <| theta^j."""
    out = {}
    for (t, k), c in omega.items():
        v = {k: Fraction(1)}
        for r, j in enumerate(t):
            u = t[:r] + t[r + 1:]
            for kk, e in V.act_theta(v, j).items():
                vadd(out, {(u, kk): c * e * (-1) ** r})
    return out


def d_total(g, V, omega):
    return vadd(d_ce(g, V, omega), d_k(V, omega))


def w_basis(g, V, q):
    return [(t, k) for t in wedge_basis(g.dim, q) for k in range(V.dim)]


def w_str(g, V, omega):
    if not omega:
        return "0"
    items = sorted(omega.items(), key=lambda kv: (len(kv[0][0]), kv[0]))
    return " + ".join(f"{c}*{wedge_str(t, ['th^' + b for b in g.basis])}(x){V.names[k]}"
                      for (t, k), c in items).replace("+ -", "- ")


# ---------------------------------------------------------------- homology side on C(g,V)

def del_ce(g, V, xi):
    """Lie algebra homology boundary on wedge g (x) V with right action:
    sum_j (-1)^j Y_0..^j..Y_n (x) v.Y_j + sum_{j<k} (-1)^(j+k) [Y_j,Y_k] Y_0..^j..^k.. (x) v."""
    out = {}
    for (t, k), c in xi.items():
        v = {k: Fraction(1)}
        for j, a in enumerate(t):
            rest = t[:j] + t[j + 1:]
            for kk, e in V.act(v, a).items():
                vadd(out, {(rest, kk): c * e * (-1) ** j})
        for j in range(len(t)):
            for l in range(j + 1, len(t)):
                rest = tuple(x for r, x in enumerate(t) if r not in (j, l))
                for m, e in g.bracket(t[j], t[l]).items():
                    sg, u = sort_sign((m,) + rest)
                    if sg:
                        vadd(out, {(u, k): c * e * sg * (-1) ** (j + l)})
    return out


def del_k(V, xi):
    """Koszul-style raising map: xi (x) v -> sum_i X_i ^ xi (x) v <| theta^i."""
    out = {}
    for (t, k), c in xi.items():
        v = {k: Fraction(1)}
        for i in range(V.g.dim):
            sg, u = sort_sign((i,) + t)
            if not sg:
                continue
            for kk, e in V.act_theta(v, i).items():
                vadd(out, {(u, kk): c * e * sg})
    return out


def del_total(g, V, xi):
    return vadd(del_ce(g, V, xi), del_k(V, xi))


# ---------------------------------------------------------------- relative subcomplex

def relative_conditions(g, V, h_vectors, omega):
    """Stacked values of iota(Y) omega and iota(Y) d_CE omega for Y in h (all zero on basic cochains)."""
    out = {}
    dw = d_ce(g, V, omega)
    for n, y in enumerate(h_vectors):
        for tag, w in (("i", omega), ("id", dw)):
            for (t, k), c in w.items():
                for a, ya in y.items():
                    sg, u = contract(a, t)
                    if sg:
                        vadd(out, {(n, tag, u, k): c * ya * sg})
    return out


def relative_basis(g, V, h_vectors, q):
    """Basis (sparse vectors over w_basis(g,V,q) positions) of the h-basic cochains of degree q."""
    from .exactcore import kernel_basis
    full = w_basis(g, V, q)
    if not h_vectors:
        return full, [{i: Fraction(1)} for i in range(len(full))]
    rows = {}
    cols = []
    for lab in full:
        col = relative_conditions(g, V, h_vectors, {lab: Fraction(1)})
        cols.append({rows.setdefault(r, len(rows)): c for r, c in col.items()})
    m = SparseMatrix.from_columns(cols, len(rows))
    return full, kernel_basis(m)


# ---------------------------------------------------------------- Poincare duality

def _right_contract(J, I):
    """iota(theta^J) X_I with X_{I minus J} ^ X_J = sign X_I; (0, None) unless J is inside I."""
    if not set(J) <= set(I):
        return 0, None
    rest = tuple(i for i in I if i not in J)
    sg, u = sort_sign(rest + tuple(J))
    return sg, rest


def poincare(g, omega):
    """W-side (eta, k) -> C-side iota(eta) varpi with varpi = X_1 ^ ... ^ X_N (the varpi* factor is implicit)."""
    top = tuple(range(g.dim))
    out = {}
    for (t, k), c in omega.items():
        sg, rest = _right_contract(t, top)
        vadd(out, {(rest, k): c * sg})
    return out


def poincare_inverse(g, xi):
    top = tuple(range(g.dim))
    out = {}
    for (rest, k), c in xi.items():
        J = tuple(i for i in top if i not in rest)
        sg, _ = _right_contract(J, top)
        vadd(out, {(J, k): c * sg})
    return out


# ---------------------------------------------------------------- the Weil map

def weil_names(n):
    """pgl(n) basis positions of the translation, gl and dual-translation parts."""
    from .lie import pgl
    g = pgl(n)
    idx = g.index
    trans = [idx[f"X{i}"] for i in range(1, n + 1)]
    lin = [idx[f"X{p}^{q}"] for p in range(1, n + 1) for q in range(1, n + 1)]
    dual = [idx[f"X^{l}"] for l in range(1, n + 1)]
    return g, trans, lin, dual


def weil_embed(n, omega, data=None):
    """theta^J_K theta^I theta_L (x) 1 in W(pgl(n),C) -> theta^J_K (x) theta^I theta_L in W(gl(n),V_nProj)."""
    from .sayd import vnproj_basis
    g, trans, lin, dual = data or weil_names(n)
    vidx = {t: i for i, t in enumerate(vnproj_basis(n))}
    pos_lin = {a: r for r, a in enumerate(lin)}
    letter = {a: r for r, a in enumerate(trans)}
    letter.update({a: n + r for r, a in enumerate(dual)})
    out = {}
    for (t, _k), c in omega.items():
        J = [pos_lin[a] for a in t if a in pos_lin]
        IL = [a for a in t if a not in pos_lin]
        # move the gl letters to the front
        sg, _ = sort_sign([a for a in t if a in pos_lin] + IL)
        sg = sg * sort_sign(t)[0]
        letters = [letter[a] for a in IL]
        s2, vt = sort_sign(letters)
        vadd(out, {(tuple(J), vidx[vt]): c * sg * s2})
    return out


def weil_square_residual(n, omega, g=None, V=None, data=None):
    """(d_CE + d_K) o embed - embed o d_CE on an element of W(pgl(n), C)."""
    from .sayd import SaydData, vnproj
    from .lie import gl
    data = data or weil_names(n)
    gp = data[0]
    triv = SaydData(gp, [[[0]]] * gp.dim, None, ["1"], "C")
    g = g or gl(n)
    V = V or vnproj(n)
    lhs = d_total(g, V, weil_embed(n, omega, data))
    rhs = weil_embed(n, d_ce(gp, triv, omega), data)
    return vadd(lhs, rhs, -1)


# ---------------------------------------------------------------- the cocyclic module C(H,V)

def _lin(fn, x):
    """Extend a per-key map (key -> dict) linearly."""
    out = {}
    for key, c in x.items():
        for k2, d in fn(key).items():
            v = out.get(k2, 0) + c * d
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
    return out


class HopfCyclic:
    """Cofaces, codegeneracies, cyclic operator, b and B on C(H,V) = V (x) H^q.

    V is a module-comodule over H (an InducedSayd); the action used is the
    delta-twisted one.  With sign="displayed" the Connes operator uses the
    alternating factor (-1)^(q i) instead of (-1)^((q-1) i).
    """

    def __init__(self, M, sign="standard"):
        self.M = M
        self.H = M.H
        self.one = (self.H.fzero, self.H.uzero)
        self.sign = sign
        self._tau = {}

    # -- single-key operators
    def _coface(self, i, key):
        k, xs = key
        q = len(xs)
        H = self.H
        if i == 0:
            return {(k, (self.one,) + xs): Fraction(1)}
        if i <= q:
            return {(k, xs[:i - 1] + ab + xs[i:]): c for ab, c in H.mono_coproduct(xs[i - 1]).items()}
        if i == q + 1:
            return {(kk, xs + (hm,)): c for (hm, kk), c in self.M.coaction[k].items()}
        raise IndexError(f"coface {i} out of range on degree {q}")

    def _codeg(self, j, key):
        k, xs = key
        e = self.H.counit({xs[j]: Fraction(1)})
        return {(k, xs[:j] + xs[j + 1:]): e} if e else {}

    def _tau_key(self, key):
        hit = self._tau.get(key)
        if hit is not None:
            return hit
        k, xs = key
        H, M = self.H, self.M
        out = {}
        if not xs:
            for (hm, kk), c in M.coaction[k].items():
                for t, d in M.act({kk: Fraction(1)}, {hm: Fraction(1)}).items():
                    vadd(out, {(t, ()): c * d})
        else:
            q = len(xs)
            for (a, b), c in H.mono_coproduct(xs[0]).items():
                sb = H.mono_antipode(b)
                spread = H.iterated_coproduct(sb, q)
                for (hm, kk), e in M.coaction[k].items():
                    w = M.act({kk: Fraction(1)}, {a: Fraction(1)})
                    if not w:
                        continue
                    rest = {xs[1:] + (hm,): Fraction(1)}
                    moved = H.tensor_mul(spread, rest)
                    for t, f in w.items():
                        for ys, g_ in moved.items():
                            vadd(out, {(t, ys): c * e * f * g_})
        self._tau[key] = out
        return out

    # -- linear operators
    def coface(self, i, x):
        return _lin(lambda key: self._coface(i, key), x)

    def codegeneracy(self, j, x):
        return _lin(lambda key: self._codeg(j, key), x)

    def tau(self, x, times=1):
        for _ in range(times):
            x = _lin(self._tau_key, x)
        return x

    def b(self, x):
        out = {}
        for key, c in x.items():
            q = len(key[1])
            for i in range(q + 2):
                vadd(out, self._coface(i, key), c * (-1) ** i)
        return out

    def extra_degeneracy(self, x):
        """sigma_{-1} = sigma_{q-1} tau on C^q, i.e. v.h1(1) (x) S(h1(2)).(h2 (x) ... (x) hq)."""
        return _lin(self._extra_key, x)

    def _extra_key(self, key):
        k, xs = key
        H, M = self.H, self.M
        out = {}
        if not xs:
            return out
        q = len(xs)
        for (a, b), c in H.mono_coproduct(xs[0]).items():
            w = M.act({k: Fraction(1)}, {a: Fraction(1)})
            if not w:
                continue
            sb = H.mono_antipode(b)
            if q == 1:
                e = H.counit(sb)
                moved = {(): e} if e else {}
            else:
                moved = H.tensor_mul(H.iterated_coproduct(sb, q - 1), {xs[1:]: Fraction(1)})
            for t, f in w.items():
                for ys, g_ in moved.items():
                    vadd(out, {(t, ys): c * f * g_})
        return out

    def _cyclic_sum(self, y, q):
        """sum_{i<q} eps^i tau^i on C^{q-1}, eps = (-1)^(q-1) or (-1)^q."""
        eps = (-1) ** (q - 1) if self.sign == "standard" else (-1) ** q
        out = {}
        cur = y
        for i in range(q):
            vadd(out, cur, eps ** i)
            cur = self.tau(cur)
        return out

    def B(self, x):
        """Connes boundary on normalized cochains: (sum eps^i tau^i) sigma_{-1}."""
        return self._by_degree(x, lambda part, q: self._cyclic_sum(self.extra_degeneracy(part), q))

    def B_full(self, x):
        """Connes boundary on all cochains: (sum eps^i tau^i) sigma_{-1} (1 - (-1)^q tau)."""
        def one(part, q):
            y = vadd(dict(part), self.tau(part), -((-1) ** q))
            return self._cyclic_sum(self.extra_degeneracy(y), q)
        return self._by_degree(x, one)

    def _by_degree(self, x, fn):
        parts = {}
        for key, c in x.items():
            parts.setdefault(len(key[1]), {})[key] = c
        out = {}
        for q, part in parts.items():
            if q:
                vadd(out, fn(part, q))
        return out

    # -- helpers
    def element(self, terms):
        """Build an element from (coef, v name, [h strings])."""
        out = {}
        for coef, vname, hs in terms:
            _element_with_prefix(out, [self.H.parse(h) for h in hs], Q(coef), self.M.names.index(vname))
        return out

    def fmt(self, x):
        if not x:
            return "0"
        H, M = self.H, self.M
        items = sorted(x.items(), key=lambda kv: (kv[0][0], str(kv[0][1])))
        return " + ".join(f"{c}*{M.names[k]}" + "".join(f"(x){H.mono_str(h)}" for h in hs)
                          for (k, hs), c in items).replace("+ -", "- ")

    def is_normalized(self, key):
        return all(h != self.one for h in key[1])


def _element_with_prefix(out, parts, coef, k):
    keys = [((), coef)]
    for p in parts:
        keys = [(t + (m,), c * d) for t, c in keys for m, d in p.items()]
    for t, c in keys:
        vadd(out, {(k, t): c})


def verify_cocyclic_identities(C, samples):
    """Cosimplicial, cyclic and boundary identities on sample keys (k, (h1..hq)); returns a Report."""
    rep = Report("cocyclic")

    def check(name, lhs, rhs, key):
        if vadd(dict(lhs), rhs, -1):
            rep.fail(name, witness=C.fmt({key: Fraction(1)}))

    for key in samples:
        x = {key: Fraction(1)}
        n = len(key[1])
        # cofaces d_j d_i = d_i d_{j-1}, i < j, on C^n -> C^{n+2}
        for j in range(n + 3):
            for i in range(j):
                check(f"d{j} d{i} = d{i} d{j - 1}", C.coface(j, C.coface(i, x)),
                      C.coface(i, C.coface(j - 1, x)), key)
        # codegeneracies s_j s_i = s_i s_{j+1}, i <= j, on C^n -> C^{n-2}
        for j in range(n - 1):
            for i in range(j + 1):
                check(f"s{j} s{i} = s{i} s{j + 1}", C.codegeneracy(j, C.codegeneracy(i, x)),
                      C.codegeneracy(i, C.codegeneracy(j + 1, x)), key)
        # s_j d_i on C^n -> C^n, with s_j on C^{n+1}
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = C.codegeneracy(j, C.coface(i, x))
                if i < j:
                    rhs = C.coface(i, C.codegeneracy(j - 1, x))
                elif i in (j, j + 1):
                    rhs = x
                else:
                    rhs = C.coface(i - 1, C.codegeneracy(j, x))
                check(f"s{j} d{i}", lhs, rhs, key)
        # tau_{n+1} d_i = d_{i-1} tau_n (1 <= i <= n+1), tau_{n+1} d_0 = d_{n+1}
        for i in range(1, n + 2):
            check(f"tau d{i} = d{i - 1} tau", C.tau(C.coface(i, x)), C.coface(i - 1, C.tau(x)), key)
        check("tau d0 = d_last", C.tau(C.coface(0, x)), C.coface(n + 1, x), key)
        # tau_{n-1} s_i = s_{i-1} tau_n (1 <= i <= n-1), tau_{n-1} s_0 = s_{n-1} tau_n^2
        if n >= 1:
            for i in range(1, n):
                check(f"tau s{i} = s{i - 1} tau", C.tau(C.codegeneracy(i, x)),
                      C.codegeneracy(i - 1, C.tau(x)), key)
            check("tau s0 = s_last tau^2", C.tau(C.codegeneracy(0, x)),
                  C.codegeneracy(n - 1, C.tau(x, 2)), key)
        check("tau^(n+1) = id", C.tau(x, n + 1), x, key)
        check("b^2 = 0", C.b(C.b(x)), {}, key)
        check("B^2 = 0", C.B_full(C.B_full(x)), {}, key)
        check("bB + Bb = 0", vadd(C.b(C.B_full(x)), C.B_full(C.b(x))), {}, key)
    return rep


# ---------------------------------------------------------------- the mixed total complex Tot(F,U,V)

class MixedTotal:
    """F-direction and U-direction operators on V (x) F^p (x) U^q.

    F-direction: cofaces insert 1, split an F-slot, or append the F-part of
    (u~<-1> v<-1>); the cyclic operator acts by S(f1(2)) diagonally on F-slots.
    U-direction: cofaces insert 1, split a U-slot, or append the U-class of
    v<-1>; the cyclic operator moves S^-1(u1(1)) onto the F-slots through the
    diagonal H-action and S(u1(3)) onto the remaining U-slots.
    Totals: b_T = b_U + (-1)^q b_F and B_T = B_U + (-1)^q B_F, q the U-degree.
    """

    def __init__(self, M, antipode_on_coaction=True):
        self.M = M
        self.H = M.H
        self.F = M.H.F
        self.U = M.H.U
        self.anti = antipode_on_coaction
        self.fone = self.F.zero
        self.uone = self.U.zero_mono

    # -- coaction data
    def _f_leg(self, k, us):
        """{(kk, f-part of u~<-1> v<-1>, u~<0>): c}."""
        H, F = self.H, self.F
        cur = {((), self.fone): Fraction(1)}
        for u in us:
            nxt = {}
            for (u0s, f), c in cur.items():
                for (u0, f1), d in H.ucoaction_mono(u).items():
                    key = (u0s + (u0,), F.mono_mul(f, f1))
                    vadd(nxt, {key: c * d})
            cur = nxt
        out = {}
        for (hm, kk), e in self.M.coaction[k].items():
            g, w = hm
            if any(w):
                continue
            for (u0s, f), c in cur.items():
                leg = {f: Fraction(1)}
                if self.anti:
                    leg = F.antipode(leg)
                for ff, d in F.mul(leg, {g: Fraction(1)}).items():
                    vadd(out, {(kk, ff, u0s): c * d * e})
        return out

    def _u_leg(self, k):
        """{(kk, U-class of v<-1>): c}."""
        out = {}
        for ((g, w), kk), e in self.M.coaction[k].items():
            eg = self.F.mono_counit(g)
            if eg:
                vadd(out, {(kk, w): e * eg})
        return out

    # -- F-direction
    def f_coface(self, i, x):
        def one(key):
            k, fs, us = key
            p = len(fs)
            if i == 0:
                return {(k, (self.fone,) + fs, us): Fraction(1)}
            if i <= p:
                return {(k, fs[:i - 1] + ab + fs[i:], us): c
                        for ab, c in self.F.mono_coproduct(fs[i - 1]).items()}
            return {(kk, fs + (f,), u0s): c for (kk, f, u0s), c in self._f_leg(k, us).items()}
        return _lin(one, x)

    def f_codegeneracy(self, j, x):
        def one(key):
            k, fs, us = key
            e = self.F.mono_counit(fs[j])
            return {(k, fs[:j] + fs[j + 1:], us): Fraction(e)} if e else {}
        return _lin(one, x)

    def _f_spread(self, f, slots):
        """Delta^(slots-1) of an F element as {tuple: c}."""
        cur = {(m,): c for m, c in f.items()}
        for _ in range(slots - 1):
            nxt = {}
            for key, c in cur.items():
                for (a, b), d in self.F.mono_coproduct(key[-1]).items():
                    vadd(nxt, {key[:-1] + (a, b): c * d})
            cur = nxt
        return cur

    def _f_slotmul(self, spread, fs):
        out = {}
        for key, c in spread.items():
            parts = [self.F.mono_mul(a, b) for a, b in zip(key, fs)]
            vadd(out, {tuple(parts): c})
        return out

    def f_tau(self, x):
        def one(key):
            k, fs, us = key
            if not fs:
                return {key: Fraction(1)}
            p = len(fs)
            out = {}
            for (a, b), c in self.F.mono_coproduct(fs[0]).items():
                spread = self._f_spread(self.F.antipode({b: Fraction(1)}), p)
                for (kk, f, u0s), e in self._f_leg(k, us).items():
                    w = self.M.act({kk: Fraction(1)}, self.H.f_el({a: Fraction(1)}))
                    if not w:
                        continue
                    moved = self._f_slotmul(spread, fs[1:] + (f,))
                    for t, d in w.items():
                        for gs, g_ in moved.items():
                            vadd(out, {(t, gs, u0s): c * e * d * g_})
            return out
        return _lin(one, x)

    def f_extra(self, x):
        """sigma_{p-1} tau in the F-direction."""
        def one(key):
            k, fs, us = key
            if not fs:
                return {}
            p = len(fs)
            out = {}
            for (a, b), c in self.F.mono_coproduct(fs[0]).items():
                w = self.M.act({k: Fraction(1)}, self.H.f_el({a: Fraction(1)}))
                if not w:
                    continue
                sb = self.F.antipode({b: Fraction(1)})
                if p == 1:
                    e = self.F.counit(sb)
                    moved = {(): e} if e else {}
                else:
                    moved = self._f_slotmul(self._f_spread(sb, p - 1), fs[1:])
                for t, d in w.items():
                    for gs, g_ in moved.items():
                        vadd(out, {(t, gs, us): c * d * g_})
            return out
        return _lin(one, x)

    # -- U-direction
    def u_coface(self, i, x):
        def one(key):
            k, fs, us = key
            q = len(us)
            if i == 0:
                return {(k, fs, (self.uone,) + us): Fraction(1)}
            if i <= q:
                return {(k, fs, us[:i - 1] + ab + us[i:]): c
                        for ab, c in self.U.mono_coproduct(us[i - 1]).items()}
            return {(kk, fs, us + (w,)): c for (kk, w), c in self._u_leg(k).items()}
        return _lin(one, x)

    def u_codegeneracy(self, j, x):
        def one(key):
            k, fs, us = key
            return {(k, fs, us[:j] + us[j + 1:]): Fraction(1)} if not any(us[j]) else {}
        return _lin(one, x)

    def _bullet(self, u, fs):
        """Diagonal H-action of u in U on F^p."""
        H = self.H
        if not fs:
            e = self.U.counit(u)
            return {(): e} if e else {}
        spread = H.iterated_coproduct(H.u_el(u), len(fs))
        out = {}
        for hs, c in spread.items():
            parts = [H.act_on_F({h: Fraction(1)}, {f: Fraction(1)}) for h, f in zip(hs, fs)]
            keys = [((), c)]
            for pt in parts:
                keys = [(kk + (m,), d * e) for kk, d in keys for m, e in pt.items()]
            for kk, d in keys:
                vadd(out, {kk: d})
        return out

    def _u_spread(self, u, slots):
        cur = {(m,): c for m, c in u.items()}
        for _ in range(slots - 1):
            nxt = {}
            for key, c in cur.items():
                for (a, b), d in self.U.mono_coproduct(key[-1]).items():
                    vadd(nxt, {key[:-1] + (a, b): c * d})
            cur = nxt
        return cur

    def _u_slotmul(self, spread, us):
        out = {}
        for key, c in spread.items():
            parts = [self.U._mono_mul(a, b) for a, b in zip(key, us)]
            keys = [((), c)]
            for pt in parts:
                keys = [(kk + (m,), d * e) for kk, d in keys for m, e in pt.items()]
            for kk, d in keys:
                vadd(out, {kk: d})
        return out

    def _u_three(self, u):
        out = {}
        for (a, bc), c in self.U.mono_coproduct(u).items():
            for (b, d), e in self.U.mono_coproduct(bc).items():
                vadd(out, {(a, b, d): c * e})
        return out

    def u_tau(self, x):
        def one(key):
            k, fs, us = key
            if not us:
                return {key: Fraction(1)}
            q = len(us)
            out = {}
            for (a, b, cc), c in self._u_three(us[0]).items():
                fpart = self._bullet(self.U.mono_antipode(a), fs)
                if not fpart:
                    continue
                spread = self._u_spread(self.U.mono_antipode(cc), q)
                for (kk, w), e in self._u_leg(k).items():
                    vv = self.M.act({kk: Fraction(1)}, self.H.u_el({b: Fraction(1)}))
                    if not vv:
                        continue
                    moved = self._u_slotmul(spread, us[1:] + (w,))
                    for t, d in vv.items():
                        for gs, g_ in fpart.items():
                            for ws, h_ in moved.items():
                                vadd(out, {(t, gs, ws): c * e * d * g_ * h_})
            return out
        return _lin(one, x)

    def u_extra(self, x):
        """sigma_{q-1} tau in the U-direction."""
        def one(key):
            k, fs, us = key
            if not us:
                return {}
            q = len(us)
            out = {}
            for (a, b, cc), c in self._u_three(us[0]).items():
                fpart = self._bullet(self.U.mono_antipode(a), fs)
                if not fpart:
                    continue
                vv = self.M.act({k: Fraction(1)}, self.H.u_el({b: Fraction(1)}))
                if not vv:
                    continue
                sc = self.U.mono_antipode(cc)
                if q == 1:
                    e = self.U.counit(sc)
                    moved = {(): e} if e else {}
                else:
                    moved = self._u_slotmul(self._u_spread(sc, q - 1), us[1:])
                for t, d in vv.items():
                    for gs, g_ in fpart.items():
                        for ws, h_ in moved.items():
                            vadd(out, {(t, gs, ws): c * d * g_ * h_})
            return out
        return _lin(one, x)

    # -- Hochschild and Connes operators
    def b_F(self, x):
        out = {}
        for key, c in x.items():
            p = len(key[1])
            for i in range(p + 2):
                vadd(out, self.f_coface(i, {key: c}), (-1) ** i)
        return out

    def b_U(self, x):
        out = {}
        for key, c in x.items():
            q = len(key[2])
            for i in range(q + 2):
                vadd(out, self.u_coface(i, {key: c}), (-1) ** i)
        return out

    def B_F(self, x):
        out = {}
        for key, c in x.items():
            p = len(key[1])
            if p:
                cur = self.f_extra({key: c})
                for i in range(p):
                    vadd(out, cur, (-1) ** ((p - 1) * i))
                    cur = self.f_tau(cur)
        return out

    def B_U(self, x):
        out = {}
        for key, c in x.items():
            q = len(key[2])
            if q:
                cur = self.u_extra({key: c})
                for i in range(q):
                    vadd(out, cur, (-1) ** ((q - 1) * i))
                    cur = self.u_tau(cur)
        return out

    def b_T(self, x):
        out = self.b_U(x)
        for key, c in x.items():
            vadd(out, self.b_F({key: c}), (-1) ** len(key[2]))
        return out

    def B_T(self, x):
        out = self.B_U(x)
        for key, c in x.items():
            vadd(out, self.B_F({key: c}), (-1) ** len(key[2]))
        return out

    # -- to the diagonal and to C(H,V)
    def alexander_whitney(self, x):
        """(-1)^n (d^F_0)^q d^U_n ... d^U_{q+1} on V (x) F^p (x) U^q, n = p + q."""
        out = {}
        for key, c in x.items():
            p, q = len(key[1]), len(key[2])
            n = p + q
            y = {key: c}
            for m in range(q, n):
                y = self.u_coface(m + 1, y)
            for _ in range(q):
                y = self.f_coface(0, y)
            vadd(out, y, (-1) ** n)
        return out

    def _iter_coaction(self, u, legs):
        """{(u<0>, (u<1>, ..., u<legs>)): c}, u<1> the innermost leg."""
        H, F = self.H, self.F
        cur = {(u, ()): Fraction(1)}
        for _ in range(legs):
            nxt = {}
            for (u0, ls), c in cur.items():
                for (a, f), d in H.ucoaction_mono(u0).items():
                    vadd(nxt, {(a, (f,) + ls): c * d})
            cur = nxt
        return cur

    def psi(self, x):
        """Diagonal V (x) F^n (x) U^n -> V (x) H^n: slot s gets f^s u^1<s-1>...u^(s-1)<1> >< u^s<0>."""
        F = self.F
        out = {}
        for (k, fs, us), c in x.items():
            n = len(fs)
            if len(us) != n:
                raise ValueError("psi needs equal F- and U-degrees")
            cur = {((), tuple(fs)): c}
            for i in range(n):
                nxt = {}
                for (done, fcur), d in cur.items():
                    for (u0, ls), e in self._iter_coaction(us[i], n - 1 - i).items():
                        newf = list(fcur)
                        coef = d * e
                        for r, leg in enumerate(ls):
                            newf[i + 1 + r] = F.mono_mul(newf[i + 1 + r], leg)
                        vadd(nxt, {(done + (u0,), tuple(newf)): coef})
                cur = nxt
            for (u0s, ff), d in cur.items():
                vadd(out, {(k, tuple(zip(ff, u0s))): d})
        return out

    def psi_inverse(self, y):
        """V (x) H^n -> diagonal: u-slots u^i<0>, F-slot s gets f^s S(prod_{i<s} u^i<n-s>)."""
        F = self.F
        out = {}
        for (k, hs), c in y.items():
            n = len(hs)
            fs = [f for f, _ in hs]
            us = [u for _, u in hs]
            cur = {((), tuple(fs)): c}
            for i in range(n):
                nxt = {}
                for (done, fcur), d in cur.items():
                    for (u0, ls), e in self._iter_coaction(us[i], n - 1 - i).items():
                        # leg with index n - s (1-based) goes to slot s (0-based)
                        fl = [{m: Fraction(1)} for m in fcur]
                        for s in range(i + 1, n):
                            leg = ls[n - s - 1]
                            fl[s] = F.mul(fl[s], F.antipode({leg: Fraction(1)}))
                        keys = [((), d * e)]
                        for pt in fl:
                            keys = [(kk + (m,), a * b) for kk, a in keys for m, b in pt.items()]
                        for kk, a in keys:
                            vadd(nxt, {(done + (u0,), kk): a})
                cur = nxt
            for (u0s, ff), d in cur.items():
                vadd(out, {(k, ff, u0s): d})
        return out

    # -- helpers
    def element(self, terms):
        """(coef, v name, [F strings], [U strings]) -> element."""
        F, U = self.F, self.U
        out = {}
        for coef, vname, fstr, ustr in terms:
            k = self.M.names.index(vname)
            parts = [_parse_f(self.H, s) for s in fstr] + [U.parse(s) for s in ustr]
            keys = [((), Q(coef))]
            for pt in parts:
                keys = [(kk + (m,), a * b) for kk, a in keys for m, b in pt.items()]
            p = len(fstr)
            for kk, a in keys:
                vadd(out, {(k, kk[:p], kk[p:]): a})
        return out

    def fmt(self, x):
        if not x:
            return "0"
        F, U, M = self.F, self.U, self.M
        items = sorted(x.items(), key=lambda kv: (len(kv[0][1]), kv[0][0], str(kv[0][1:])))
        return " + ".join(f"{c}*{M.names[k]}" + "".join(f"(x){F.mono_str(f)}" for f in fs) + " |"
                          + "".join(f"(x){U.mono_str(u)}" for u in us)
                          for (k, fs, us), c in items).replace("+ -", "- ")


def _parse_f(H, s):
    h = H.parse(s)
    out = {}
    for (f, u), c in h.items():
        if any(u):
            raise ValueError(f"{s!r} is not in F")
        vadd(out, {f: c})
    return out


# ---------------------------------------------------------------- weights

def _ad_slots(H, y, hs):
    """ad(y) = y h - h y applied as a derivation over a tuple of H-monomials."""
    out = {}
    for s, h in enumerate(hs):
        hm = {h: Fraction(1)}
        comm = vadd(H.mul(y, hm), H.mul(hm, y), -1)
        for m, c in comm.items():
            vadd(out, {hs[:s] + (m,) + hs[s + 1:]: c})
    return out


def weight_operator(C, x, gen="Y"):
    """ad~Y(v (x) h~) = v (x) ad Y(h~) - (v.Y) (x) h~ on C(H,V), untwisted action on v."""
    H, M = C.H, C.M
    y = H.gen(gen)
    out = {}
    for (k, hs), c in x.items():
        for ys, d in _ad_slots(H, y, hs).items():
            vadd(out, {(k, ys): c * d})
        for t, d in M.act({k: Fraction(1)}, y, twisted=False).items():
            vadd(out, {(t, hs): -c * d})
    return out


def key_weight(C, key, gen="Y"):
    """Eigenvalue of ad~Y on a basis tensor; ValueError if it is not an eigenvector."""
    img = weight_operator(C, {key: Fraction(1)}, gen)
    if not img:
        return Fraction(0)
    if set(img) != {key}:
        raise ValueError(f"basis tensor {C.fmt({key: 1})} is not a weight vector")
    return img[key]


def weight_decompose(C, x, gen="Y"):
    """{weight: component}; the components sum to x."""
    out = {}
    for key, c in x.items():
        out.setdefault(key_weight(C, key, gen), {})[key] = c
    return out


def tot_weight_operator(T, x, gen="Y"):
    """ad~Y on V (x) F^p (x) U^q: ad Y on every slot, minus the untwisted action on v."""
    H, M = T.H, T.M
    y = H.gen(gen)
    out = {}
    for (k, fs, us), c in x.items():
        hs = tuple((f, T.uone) for f in fs) + tuple((T.fone, u) for u in us)
        p = len(fs)
        for ys, d in _ad_slots(H, y, hs).items():
            nf = tuple(f for f, _ in ys[:p])
            nu = tuple(u for _, u in ys[p:])
            if any(any(u) for _, u in ys[:p]) or any(any(f) for f, _ in ys[p:]):
                raise ValueError("ad Y left the F (x) U slot types")
            vadd(out, {(k, nf, nu): c * d})
        for t, d in M.act({k: Fraction(1)}, y, twisted=False).items():
            vadd(out, {(t, fs, us): -c * d})
    return out


# ---------------------------------------------------------------- antisymmetrization

def _u_generator(T, i):
    return tuple(1 if j == i else 0 for j in range(T.U.g.dim))


def antisymmetrize(T, x, integer=False):
    """v (x) X^1^..^X^p (x) f~  ->  (1/p!) sum_s sgn(s) v (x) f~ (x) X^s(1) (x)..(x) X^s(p) in Tot.

    Input keys (v index, wedge tuple, f-monomials). integer=True drops the 1/p!.
    """
    out = {}
    for (k, t, fs), c in x.items():
        p = len(t)
        scale = Fraction(1) if integer else Fraction(1, factorial(p))
        for perm in permutations(range(p)):
            sg, _ = sort_sign(perm)
            us = tuple(_u_generator(T, t[i]) for i in perm)
            vadd(out, {(k, tuple(fs), us): c * scale * sg})
    return out


def lie_boundary_with_f(T, x):
    """Lie homology boundary on V (x) wedge g (x) F^q for the right g-action
    (v (x) f~) <| X = (v <|_delta X) (x) f~ - v (x) X . f~, with X . f~ the diagonal action."""
    g = T.U.g
    out = {}
    for (k, t, fs), c in x.items():
        for j, a in enumerate(t):
            rest = t[:j] + t[j + 1:]
            sgn = c * (-1) ** j
            xa = T.H.u_el({_u_generator(T, a): Fraction(1)})
            for kk, e in T.M.act({k: Fraction(1)}, xa).items():
                vadd(out, {(kk, rest, fs): sgn * e})
            for gs, e in T._bullet({_u_generator(T, a): Fraction(1)}, fs).items():
                vadd(out, {(k, rest, gs): -sgn * e})
        for j in range(len(t)):
            for l in range(j + 1, len(t)):
                rest = tuple(y for r, y in enumerate(t) if r not in (j, l))
                for m, e in g.bracket(t[j], t[l]).items():
                    sg, u = sort_sign((m,) + rest)
                    if sg:
                        vadd(out, {(k, u, fs): c * e * sg * (-1) ** (j + l)})
    return out
