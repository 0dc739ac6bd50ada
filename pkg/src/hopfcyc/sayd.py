"""Coefficient modules: Lie (co)modules as matrices, AYD and stability checks,
coaction solving, the lift to U(g)-comodules, the coinvariant filtration, and
induced module-comodules over bicrossed products.

Conventions: vectors in V are row vectors {index: Fraction}.
  v^i . X_j = sum_k B_j[i][k] v^k             (right action)
  coaction(v^i) = sum_{j,k} A^j[i][k] X_j (x) v^k
so v <| theta^j = v A^j.
"""

from fractions import Fraction
from itertools import combinations
from math import factorial

from .exactcore import (Q, Echelon, Report, SparseMatrix, kernel_basis, mat, mcomm,
                        madd, miszero, mkron, mmul, mscale, eye, solve_affine, vadd, vscale, zeros)
from .lie import gl, sl2_efh, sl2_xyz, sl2_matched_pair
from .pbw import EnvelopingAlgebra, DEFAULT_MAX_DEGREE


def row_times(v, m):
    """Row vector (sparse dict) times dense matrix."""
    out = {}
    for i, c in v.items():
        for k, x in enumerate(m[i]):
            if x:
                out[k] = out.get(k, 0) + c * x
    return {k: c for k, c in out.items() if c}


class SaydData:
    def __init__(self, g, B, A=None, names=None, name=""):
        self.g = g
        self.B = [mat(b) for b in B]
        self.dim = len(self.B[0]) if self.B else (len(A[0]) if A else 0)
        self.A = [mat(a) for a in A] if A is not None else [zeros(self.dim) for _ in range(g.dim)]
        self.names = list(names) if names else [f"v{i}" for i in range(self.dim)]
        self.name = name
        if len(self.B) != g.dim or len(self.A) != g.dim:
            raise ValueError("need one action and one coaction matrix per basis element")

    def act(self, v, j):
        return row_times(v, self.B[j])

    def act_theta(self, v, j):
        """v <| theta^j."""
        return row_times(v, self.A[j])

    def coact(self, v):
        """{(j, k): c} meaning sum c X_j (x) v^k."""
        out = {}
        for j in range(self.g.dim):
            for k, c in row_times(v, self.A[j]).items():
                out[(j, k)] = c
        return out

    def vec_str(self, v):
        if not v:
            return "0"
        return " + ".join(f"{c}*{self.names[i]}" for i, c in sorted(v.items()))

    def with_coaction(self, A, name=None):
        return SaydData(self.g, self.B, A, self.names, name or self.name)

    def conjugate(self, P):
        """Same structure in the basis w^i = sum_k P[i][k] v^k."""
        from .exactcore import minverse
        Pi = minverse(P)
        return SaydData(self.g, [mmul(mmul(P, b), Pi) for b in self.B], [mmul(mmul(P, a), Pi) for a in self.A],
                        [f"w{i}" for i in range(self.dim)], self.name + "'")


# ---------------------------------------------------------------- checkers

def check_lie_module(d):
    """B_[X_i,X_j] = B_i B_j - B_j B_i for a right action."""
    rep = Report("lie-module")
    g = d.g
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = zeros(d.dim)
            for k, c in g.bracket(i, j).items():
                lhs = madd(lhs, d.B[k], c)
            res = madd(lhs, mcomm(d.B[i], d.B[j]), -1)
            if not miszero(res):
                rep.fail("not a right module", pair=(g.basis[i], g.basis[j]), residual=res)
                return rep
    return rep


def check_lie_comodule(d):
    rep = Report("lie-comodule")
    for i in range(d.g.dim):
        for j in range(i + 1, d.g.dim):
            r = mcomm(d.A[i], d.A[j])
            if not miszero(r):
                rep.fail("coaction matrices do not commute", pair=(d.g.basis[i], d.g.basis[j]), residual=r)
    return rep


def ayd_residual(d, q, j):
    """[B_q, A^j] - sum_s C^j_sq A^s."""
    g = d.g
    r = mcomm(d.B[q], d.A[j])
    for s in range(g.dim):
        c = g.C(s, q, j)
        if c:
            r = madd(r, d.A[s], -c)
    return r


def check_ayd(d):
    rep = Report("ayd")
    for q in range(d.g.dim):
        for j in range(d.g.dim):
            r = ayd_residual(d, q, j)
            if not miszero(r):
                rep.fail("AYD condition", q=d.g.basis[q], j=d.g.basis[j], residual=r)
    return rep


def check_stable(d):
    """sum_j (v <| theta^j) . X_j = 0, i.e. sum_j A^j B_j = 0."""
    rep = Report("stable")
    r = zeros(d.dim)
    for j in range(d.g.dim):
        r = madd(r, mmul(d.A[j], d.B[j]))
    if not miszero(r):
        rep.fail("stability", residual=r)
    return rep


def check_unimodular_stable(d):
    """sum_k (v . X_k) <| theta^k = 0, i.e. sum_k B_k A^k = 0."""
    rep = Report("unimodular-stable")
    r = zeros(d.dim)
    for j in range(d.g.dim):
        r = madd(r, mmul(d.B[j], d.A[j]))
    if not miszero(r):
        rep.fail("unimodular stability", residual=r)
    return rep


def check_all(d):
    reps = [check_lie_module(d), check_lie_comodule(d), check_ayd(d), check_stable(d), check_unimodular_stable(d)]
    idx = check_locally_conilpotent(d)
    return reps, idx


def element_stability_residual(g, u, U=None):
    """u(0) . u(-1) for the projected coaction on U(g) with adjoint right action.

    The projected coaction sends a PBW word X_{i1}...X_{ik} of distinct letters to
    sum_r X_{ir} (x) (word with letter r removed); the right action is u.X = uX - Xu.
    """
    U = U or EnvelopingAlgebra(g)
    out = {}
    (m, c), = u.items()
    w = U.word(m)
    for r in range(len(w)):
        rest = U.word_product(w[:r] + w[r + 1:])
        x = U.gen(w[r])
        vadd(out, vadd(U.mul(rest, x), U.mul(x, rest), -1), c)
    return out


# ---------------------------------------------------------------- solving for coactions

def solve_ayd_coactions(g, B, include_stability=True):
    """All A-matrix families satisfying AYD (and stability) for the action B.

    Returns (SolutionSpace over the flattened A entries, list of commutation
    constraints).  Each constraint is (pair, entry, {(a, b): coeff}) giving a
    quadratic form in the free parameters that must vanish for a comodule.
    """
    B = [mat(b) for b in B]
    N = g.dim
    d = len(B[0])
    nvar = N * d * d

    def var(j, i, k):
        return j * d * d + i * d + k

    rows = []
    for q in range(N):
        for j in range(N):
            # ([B_q, A^j] - sum_s C^j_sq A^s)_{ik}
            for i in range(d):
                for k in range(d):
                    row = {}
                    for t in range(d):
                        if B[q][i][t]:
                            vadd(row, {var(j, t, k): B[q][i][t]})
                        if B[q][t][k]:
                            vadd(row, {var(j, i, t): -B[q][t][k]})
                    for s in range(N):
                        c = g.C(s, q, j)
                        if c:
                            vadd(row, {var(s, i, k): -c})
                    if row:
                        rows.append(row)
    if include_stability:
        for i in range(d):
            for k in range(d):
                row = {}
                for j in range(N):
                    for t in range(d):
                        if B[j][t][k]:
                            vadd(row, {var(j, i, t): B[j][t][k]})
                if row:
                    rows.append(row)
    m = SparseMatrix(len(rows), nvar, {(r, c): x for r, row in enumerate(rows) for c, x in row.items()})
    sol = solve_affine(m, [0] * m.rows, "c")
    mats = [unflatten(b, N, d) for b in sol.basis]
    constraints = []
    for j1 in range(N):
        for j2 in range(j1 + 1, N):
            for i in range(d):
                for k in range(d):
                    form = {}
                    for a, Ma in enumerate(mats):
                        for b, Mb in enumerate(mats):
                            c = sum((Ma[j1][i][t] * Mb[j2][t][k] - Mb[j2][i][t] * Ma[j1][t][k]
                                     for t in range(d)), Fraction(0))
                            if c:
                                key = (min(a, b), max(a, b))
                                form[key] = form.get(key, 0) + c
                    form = {k2: c for k2, c in form.items() if c}
                    if form:
                        constraints.append(((g.basis[j1], g.basis[j2]), (i, k), form))
    return sol, constraints


def unflatten(vec, N, d):
    return [[[Q(vec[j * d * d + i * d + k]) for k in range(d)] for i in range(d)] for j in range(N)]


def flatten(A):
    return [x for a in A for r in a for x in r]


# ---------------------------------------------------------------- conilpotency, lift, filtration

def check_locally_conilpotent(d):
    """Smallest n with all n-fold coaction iterates zero, or None when none exists."""
    words = [eye(d.dim)]
    for n in range(1, d.dim + 2):
        words = [mmul(w, a) for w in words for a in d.A]
        nz = [w for w in words if not miszero(w)]
        if not nz:
            return n
        # keep a spanning set only
        ech, keep = Echelon(), []
        for w in nz:
            if ech.add({(i, k): x for i, r in enumerate(w) for k, x in enumerate(r) if x}):
                keep.append(w)
        words = keep
    return None


def lift_coaction_to_U(d, U=None, max_degree=DEFAULT_MAX_DEGREE, pbw_monomial=False):
    """v -> 1(x)v + sum_k (1/k!) v[-k]...v[-1] (x) v[0], as {(umono, k): c} per basis vector.

    The k-fold product is symmetric, i.e. it lies in the image of theta_k.  With
    pbw_monomial=True the symmetric element is replaced by its PBW preimage
    theta_k^{-1}; that variant is coassociative but fails the U(g)-AYD rule
    beyond conilpotency index 2, so it is kept only for comparison.
    """
    n = check_locally_conilpotent(d)
    if n is None:
        raise ValueError("coaction is not locally conilpotent")
    U = U or EnvelopingAlgebra(d.g, max(max_degree, n))
    out = []
    for i in range(d.dim):
        res = {(U.zero_mono, i): Fraction(1)}
        layer = {(): {i: Fraction(1)}}
        for k in range(1, n):
            nxt = {}
            for seq, v in layer.items():
                for j in range(d.g.dim):
                    w = d.act_theta(v, j)
                    if w:
                        nxt[seq + (j,)] = w
            layer = nxt
            per = {}
            for seq, w in layer.items():
                word = U.word_product(list(seq))
                for t, c in w.items():
                    vadd(per.setdefault(t, {}), word, c)
            for t, s in per.items():
                if not s:
                    continue
                pre = U.theta_inverse(k, s)
                lifted = pre if pbw_monomial else vscale(s, Fraction(1, factorial(k)))
                for m, c in lifted.items():
                    vadd(res, {(m, t): c})
        out.append(res)
    return out, U


def check_U_lift(d, lift, U):
    """Coassociativity, counit, and the U(g)-AYD rule on generators for a lifted coaction."""
    rep = Report("U-lift")
    dim = d.dim
    for i in range(dim):
        nab = lift[i]
        left, right = {}, {}
        for (m, t), c in nab.items():
            for (a, b), e in U.mono_coproduct(m).items():
                vadd(left, {(a, b, t): c * e})
            for (m2, t2), e in lift[t].items():
                vadd(right, {(m, m2, t2): c * e})
        if vadd(left, right, -1):
            rep.fail("coassociativity", vector=d.names[i])
        cnt = {}
        for (m, t), c in nab.items():
            if not any(m):
                vadd(cnt, {t: c})
        if cnt != {i: 1}:
            rep.fail("counit", vector=d.names[i])
        for q in range(d.g.dim):
            # coaction(v.X) = v<-1> X (x) v<0> + v<-1> (x) v<0>.X - X v<-1> (x) v<0>
            lhs = {}
            for t, c in d.act({i: Fraction(1)}, q).items():
                vadd(lhs, lift[t], c)
            X = U.gen(q)
            for (m, t), c in nab.items():
                mm = {m: Fraction(1)}
                for p, e in U.mul(mm, X).items():
                    vadd(lhs, {(p, t): -c * e})
                for p, e in U.mul(X, mm).items():
                    vadd(lhs, {(p, t): c * e})
                for t2, e in d.act({t: Fraction(1)}, q).items():
                    vadd(lhs, {(m, t2): -c * e})
            if lhs:
                rep.fail("U(g)-AYD", vector=d.names[i], generator=d.g.basis[q])
    return rep


def compute_filtration(d):
    """F_0 = coinvariants, F_{p+1} = {v : v <| theta^j in F_p for all j}; list of echelon bases."""
    dim, N = d.dim, d.g.dim
    # P has left kernel F_p; start with P_{-1} = identity (left kernel 0)
    P = eye(dim)
    levels = []
    prev = -1
    while True:
        blocks = [mmul(d.A[j], P) for j in range(N)]
        cols = sum((len(b[0]) for b in blocks), 0)
        M = [[x for b in blocks for x in b[i]] for i in range(dim)]
        # left kernel of M = kernel of M^T
        MT = SparseMatrix.from_dense([[M[i][c] for i in range(dim)] for c in range(cols)]) if cols else None
        basis = kernel_basis(MT) if MT is not None else [{i: Fraction(1)} for i in range(dim)]
        ech = Echelon()
        for v in basis:
            ech.add(v)
        rows = [r for _, r in ech.reduced_rows()]
        if len(rows) == prev:
            break
        levels.append(rows)
        prev = len(rows)
        if prev == dim:
            break
        P = M
    return levels


def quotient_module(d, sub_rows, super_rows=None):
    """Action matrices on super/sub (default super = V), in a basis of pivot-complement vectors.

    Returns (SaydData with zero coaction, list of representative vectors).
    """
    dim = d.dim
    sup = super_rows if super_rows is not None else [{i: Fraction(1)} for i in range(dim)]
    ech = Echelon()
    for r in sub_rows:
        ech.add(r)
    reps = []
    for v in sup:
        if ech.add(v):
            reps.append(v)
    # express images in the quotient basis: reduce modulo sub and solve in reps
    qech = Echelon()
    for r in sub_rows:
        qech.add(r)
    base_rank = qech.rank
    coords = []
    for v in reps:
        qech.add(v)
    Bq = []
    k = len(reps)
    for j in range(d.g.dim):
        Mj = zeros(k)
        for a, v in enumerate(reps):
            img = d.act(v, j)
            sol = _coords(img, sub_rows, reps)
            for b in range(k):
                Mj[a][b] = sol[len(sub_rows) + b]
        Bq.append(Mj)
    return SaydData(d.g, Bq, None, [f"[{d.vec_str(v)}]" for v in reps], d.name + "/sub"), reps


def _coords(target, sub_rows, reps):
    vecs = list(sub_rows) + list(reps)
    dim = max([max(v) for v in vecs if v] + [max(target) if target else 0]) + 1
    m = SparseMatrix.from_columns(vecs, dim)
    return solve_affine(m, [target.get(i, 0) for i in range(dim)]).particular


def tensor_sayd(d1, d2):
    """Diagonal action and coaction on V (x) W."""
    n1, n2 = d1.dim, d2.dim
    B = [madd(mkron(b1, eye(n2)), mkron(eye(n1), b2)) for b1, b2 in zip(d1.B, d2.B)]
    A = [madd(mkron(a1, eye(n2)), mkron(eye(n1), a2)) for a1, a2 in zip(d1.A, d2.A)]
    names = [f"{a}(x){b}" for a in d1.names for b in d2.names]
    return SaydData(d1.g, B, A, names, f"{d1.name}(x){d2.name}")


# ---------------------------------------------------------------- presets

def koszul_dual_one(g, names=None, scale=1):
    """S(g*)_[1] = C + g* with coadjoint action and Koszul coaction 1 -> sum X_j (x) theta^j."""
    N = g.dim
    dim = N + 1
    B = []
    for j in range(N):
        b = zeros(dim)
        for i in range(N):
            for k in range(N):
                c = g.C(j, k, i)
                if c:
                    b[1 + i][1 + k] = c
        B.append(b)
    A = []
    for j in range(N):
        a = zeros(dim)
        a[0][1 + j] = Q(scale)
        A.append(a)
    names = names or ["1"] + [f"t^{b}" for b in g.basis]
    return SaydData(g, B, A, names, f"S({g.name}*)_[1]")


def koszul_symmetric(g, k):
    """Truncated symmetric algebra S(g*)_[<=k] with coadjoint action and Koszul coaction."""
    N = g.dim
    monos = []
    for deg in range(k + 1):
        for combo in _multisets(N, deg):
            monos.append(combo)
    idx = {m: i for i, m in enumerate(monos)}
    dim = len(monos)
    B = []
    for j in range(N):
        b = zeros(dim)
        for m in monos:
            for a, e in enumerate(m):
                if not e:
                    continue
                # theta^a . X_j = sum_c C^a_{jc} theta^c, extended as a derivation
                for c in range(N):
                    coef = g.C(j, c, a)
                    if coef:
                        mm = list(m)
                        mm[a] -= 1
                        mm[c] += 1
                        b[idx[m]][idx[tuple(mm)]] += e * coef
        B.append(b)
    A = []
    for j in range(N):
        a = zeros(dim)
        for m in monos:
            mm = list(m)
            mm[j] += 1
            mm = tuple(mm)
            if mm in idx:
                a[idx[m]][idx[mm]] = Fraction(1)
        A.append(a)
    names = ["*".join(f"t^{g.basis[a]}" + (f"^{e}" if e > 1 else "") for a, e in enumerate(m) if e) or "1"
             for m in monos]
    return SaydData(g, B, A, names, f"S({g.name}*)_[{k}]")


def _multisets(N, deg):
    if N == 0:
        if deg == 0:
            yield ()
        return
    for e in range(deg, -1, -1):
        for rest in _multisets(N - 1, deg - e):
            yield (e,) + rest


def sl2_dual_family(c=1, d=0):
    """S(sl2*)_[1] over sl2-efh with the two-parameter AYD coaction family."""
    base = koszul_dual_one(sl2_efh(), ["1", "t^e", "t^f", "t^h"])
    c, d = Q(c), Q(d)
    A1, A2, A3 = zeros(4), zeros(4), zeros(4)
    A1[0][1], A1[2][0] = c, d
    A2[0][2], A2[1][0] = c, d
    A3[0][3], A3[3][0] = c, d / 2
    return SaydData(base.g, base.B, [A1, A2, A3], base.names, f"S(sl2*)_[1](c={c},d={d})")


def sl2_simple_two():
    g = sl2_efh()
    # transposes of the standard matrices of e, f, h acting on row vectors
    B = [[[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, -1]]]
    return SaydData(g, B, None, ["u1", "u2"], "sl2-simple-2")


def four_dim_v():
    """S(sl2*)_[1] over sl2 = gl(1)^aff + <Z>, basis 1, R^X, R^Y, R^Z, Koszul coaction."""
    return koszul_dual_one(sl2_xyz(), ["1", "RX", "RY", "RZ"])


def vnproj_basis(n):
    """Exterior monomials in theta^1..theta^n, theta_1..theta_n, as sorted index tuples (0..2n-1)."""
    out = []
    for deg in range(2 * n + 1):
        out.extend(combinations(range(2 * n), deg))
    return out


def _ext_name(t, n):
    if not t:
        return "1"
    return "".join(f"t^{a + 1}" if a < n else f"t_{a - n + 1}" for a in t)


def _wedge(a, b):
    """Sign and merged tuple of two exterior monomials; sign 0 when they share a letter."""
    if set(a) & set(b):
        return 0, None
    seq = list(a) + list(b)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def vnproj(n):
    """V_nProj over gl(n): exterior algebra on theta^i, theta_l, derivation action, coaction v -> Y (x) v ^ (1 <| Y^)."""
    g = gl(n)
    basis = vnproj_basis(n)
    idx = {t: i for i, t in enumerate(basis)}
    dim = len(basis)
    B = []
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            b = zeros(dim)
            for t in basis:
                for pos, a in enumerate(t):
                    # letter image: theta^i . Y_p^q = delta^i_p theta^q ; theta_l . Y_p^q = -delta^q_l theta_p
                    if a < n and a + 1 == p:
                        new, coef = q - 1, 1
                    elif a >= n and a - n + 1 == q:
                        new, coef = n + p - 1, -1
                    else:
                        continue
                    letters = list(t)
                    letters[pos] = new
                    if len(set(letters)) < len(letters):
                        continue
                    sign = _sort_sign(letters)
                    b[idx[t]][idx[tuple(sorted(letters))]] += coef * sign
            B.append(b)
    A = []
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            # 1 <| Yhat^p_q = -(theta^p theta_q + delta^p_q sum_a theta^a theta_a), extended by v <| Yhat = v ^ (1 <| Yhat)
            omega = {}
            s, t = _wedge((p - 1,), (n + q - 1,))
            omega[t] = omega.get(t, 0) - s
            if p == q:
                for r in range(n):
                    s, t = _wedge((r,), (n + r,))
                    omega[t] = omega.get(t, 0) - s
            a = zeros(dim)
            for v in basis:
                for t, c in omega.items():
                    s, u = _wedge(v, t)
                    if s:
                        a[idx[v]][idx[u]] += c * s
            A.append(a)
    names = [_ext_name(t, n) for t in basis]
    return SaydData(g, B, A, names, f"V{n}Proj")


def _sort_sign(seq):
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def nonstable_perturbation(weight=1):
    """Koszul S(g*)_[1] over gl(1)^aff with the action shifted by the character Y -> weight.

    Still a module, a comodule, AYD and stable (the shift commutes with the
    coaction matrices), but sum_j B_j A^j = weight * A^Y != 0.
    """
    base = koszul_dual_one(sl2_matched_pair().g1, ["1", "t^X", "t^Y"])
    shift = [zeros(base.dim), mscale(eye(base.dim), Q(weight))]
    B = [madd(b, s) for b, s in zip(base.B, shift)]
    return SaydData(base.g, B, base.A, base.names, f"S(gl(1)-aff*)_[1](Y+{weight})")


BUILTIN_SAYD = ("s-sl2-dual-1", "sl2-simple-2", "v4-schwarzian", "vnproj(n)", "koszul-sym(k)",
                "nonstable-gl1aff")


def builtin_sayd(name, n=None, c=1, d=0):
    import re
    m = re.match(r"^(vnproj|koszul-sym)\((\d+)\)$", name)
    if m:
        name, n = m.group(1), int(m.group(2))
    if name == "s-sl2-dual-1":
        return sl2_dual_family(c, d)
    if name == "sl2-simple-2":
        return sl2_simple_two()
    if name == "v4-schwarzian":
        return four_dim_v()
    if name == "vnproj":
        return vnproj(n or 1)
    if name == "koszul-sym":
        return koszul_symmetric(sl2_xyz(), n or 1)
    if name == "nonstable-gl1aff":
        return nonstable_perturbation()
    raise KeyError(f"unknown builtin module {name!r}")


# ---------------------------------------------------------------- module-comodules over F >< U(g)

class InducedSayd:
    """Right H-module, left H-comodule of finite dimension over a bicrossed product H.

    f_mats[a] is the matrix of the F-generator a, u_mats[i] the matrix of X_i;
    coaction[i] = {(hmono, k): c} means v^i -> sum c hmono (x) v^k.
    With `delta` given, `act(..., twisted=True)` uses v <|_delta h = (v <| h(1)) delta(h(2))
    (twist="right") or delta(h(1)) (v <| h(2)) (twist="left").
    """

    def __init__(self, H, names, f_mats, u_mats, coaction, delta=None, twist="right", name=""):
        self.H = H
        self.names = list(names)
        self.dim = len(self.names)
        self.f_mats = [mat(m) for m in f_mats]
        self.u_mats = [mat(m) for m in u_mats]
        self.coaction = [dict(c) for c in coaction]
        self.delta = delta
        self.twist = twist
        self.name = name
        self._mm = {}
        self._tm = {}

    def mono_matrix(self, x):
        """Matrix of the untwisted action of f >< u: first f, then u."""
        hit = self._mm.get(x)
        if hit is not None:
            return hit
        f, u = x
        m = eye(self.dim)
        for a, e in enumerate(f):
            for _ in range(e):
                m = mmul(m, self.f_mats[a])
        for i in self.H.U.word(u):
            m = mmul(m, self.u_mats[i])
        self._mm[x] = m
        return m

    def twisted_matrix(self, x):
        hit = self._tm.get(x)
        if hit is not None:
            return hit
        m = zeros(self.dim)
        for (x1, x2), c in self.H.mono_coproduct(x).items():
            if self.twist == "right":
                d = self.delta.delta({x2: Fraction(1)})
                if d:
                    m = madd(m, self.mono_matrix(x1), c * d)
            else:
                d = self.delta.delta({x1: Fraction(1)})
                if d:
                    m = madd(m, self.mono_matrix(x2), c * d)
        self._tm[x] = m
        return m

    def act(self, v, h, twisted=True):
        out = {}
        for x, c in h.items():
            M = self.twisted_matrix(x) if (twisted and self.delta is not None) else self.mono_matrix(x)
            vadd(out, row_times(v, M), c)
        return out

    def coact(self, v):
        out = {}
        for i, c in v.items():
            vadd(out, self.coaction[i], c)
        return out

    def vec_str(self, v):
        if not v:
            return "0"
        return " + ".join(f"{c}*{self.names[i]}" for i, c in sorted(v.items()))

    def coact_str(self, v):
        H = self.H
        items = sorted(self.coact(v).items(), key=lambda t: (t[0][1], t[0][0]))
        return " + ".join(f"{c}*{H.mono_str(x)}(x){self.names[k]}" for (x, k), c in items) or "0"

    def generators(self):
        H = self.H
        return [H.gen(a) for a in H.F.gens] + [H.gen(b) for b in H.g.basis]


def _exp_series(mats, max_terms):
    """sum over exponent vectors alpha of prod M_a^alpha_a / alpha!, for commuting nilpotent M_a."""
    out = {}
    n = len(mats)
    dim = len(mats[0]) if mats else 0

    def rec(a, alpha, M, coef):
        if a == n:
            if not miszero(M):
                out[tuple(alpha)] = mscale(M, coef)
            return
        P = M
        for e in range(max_terms + 1):
            if miszero(P):
                break
            rec(a + 1, alpha + [e], P, coef / factorial(e))
            P = mmul(P, mats[a])
    rec(0, [], eye(dim), Fraction(1))
    return out


def induced_sayd(V, H, pair, pairing, delta=None, twist="right"):
    """Module-comodule over H = F >< U(g1) from a module-comodule V over g1 |><| g2.

    pairing maps each F-generator name to a g2 basis name; g2 must be abelian and
    F the polynomial algebra on coordinates dual to that basis.  The F-action
    comes from the g2-coaction, the F-coaction from the g2-action, the U-action
    from the g1-action and the U-coaction from the lifted g1-coaction.
    """
    from .hopf import Mpi
    g1, g2 = pair.g1, pair.g2
    n1 = g1.dim
    if V.g.basis != g1.basis + g2.basis:
        raise ValueError("module must live on the double crossed sum with basis g1 then g2")
    if g2.constants:
        raise ValueError("only abelian g2 is supported for the induced F-structure")
    rep = Report("induced-preconditions")
    for r in (check_lie_module(V), check_lie_comodule(V), check_ayd(V), check_stable(V)):
        rep.merge(r)
    if not rep.ok:
        raise ValueError(f"precondition failed: {rep.failures}")
    g2pos = [g2.index[pairing[f]] for f in H.F.gens]
    f_mats = [V.A[n1 + p] for p in g2pos]
    u_mats = V.B[:n1]
    Vg1 = SaydData(g1, u_mats, V.A[:n1], V.names, V.name + "|g1")
    if check_locally_conilpotent(Vg1) is None:
        raise ValueError("g1-coaction is not locally conilpotent")
    ulift, _ = lift_coaction_to_U(Vg1, H.U, H.max_degree)
    bz = [V.B[n1 + p] for p in g2pos]
    series = _exp_series(bz, V.dim + 1)
    coaction = []
    for i in range(V.dim):
        tab = {}
        for alpha, M in series.items():
            for w, c in enumerate(M[i]):
                if not c:
                    continue
                for (u, k), e in ulift[w].items():
                    vadd(tab, {((tuple(alpha), u), k): c * e})
        coaction.append(tab)
    delta = delta if delta is not None else Mpi(H)
    return InducedSayd(H, V.names, f_mats, u_mats, coaction, delta, twist, V.name + "_delta")


def one_dim_mpi(H, mpi=None):
    """The one-dimensional module-comodule ^sigma C_delta."""
    from .hopf import Mpi
    mpi = mpi or Mpi(H)
    coaction = [{((m, H.uzero), 0): c for m, c in mpi.sigma.items()}]
    return InducedSayd(H, ["1"], [zeros(1)] * H.F.m, [zeros(1)] * H.g.dim, coaction, mpi, "right",
                       "sigmaC_delta")


def four_dim_induced(H=None, twist="right"):
    """The 4-dimensional module-comodule over the Schwarzian Hopf algebra."""
    from .hopf import h1s_cop
    H = H or h1s_cop()
    return induced_sayd(four_dim_v(), H, sl2_matched_pair(), {"d1": "Z"}, twist=twist)


def check_yd_untwisted(M, gens=None):
    """h(2) (v<|h(1))<-1> (x) (v<|h(1))<0> = v<-1> h(1) (x) v<0> <| h(2)."""
    rep = Report("yd")
    H = M.H
    for h in gens or M.generators():
        d = H.coproduct(h)
        for i in range(M.dim):
            v = {i: Fraction(1)}
            diff = {}
            for (x1, x2), c in d.items():
                w = M.act(v, {x1: Fraction(1)}, twisted=False)
                for (k, t), e in M.coact(w).items():
                    for y, f in H.mono_mul(x2, k).items():
                        vadd(diff, {(y, t): c * e * f})
                for (k, t), e in M.coact(v).items():
                    for y, f in H.mono_mul(k, x1).items():
                        for s, g_ in M.act({t: Fraction(1)}, {x2: Fraction(1)}, twisted=False).items():
                            vadd(diff, {(y, s): -c * e * f * g_})
            if diff:
                rep.fail("YD compatibility", vector=M.names[i], generator=H.fmt(h),
                         residual=_pair_str(M, diff))
    return rep


def check_ayd_twisted(M, gens=None):
    """coaction(v <| h) = S(h(3)) v<-1> h(1) (x) v<0> <| h(2) for the twisted action."""
    rep = Report("ayd-over-H")
    H = M.H
    for h in gens or M.generators():
        d3 = H.iterated_coproduct(h, 3)
        for i in range(M.dim):
            v = {i: Fraction(1)}
            diff = M.coact(M.act(v, h))
            for (x1, x2, x3), c in d3.items():
                s3 = H.mono_antipode(x3)
                for (k, t), e in M.coact(v).items():
                    left = H.mul(H.mul(s3, {k: Fraction(1)}), {x1: Fraction(1)})
                    right = M.act({t: Fraction(1)}, {x2: Fraction(1)})
                    for y, f in left.items():
                        for s, g_ in right.items():
                            vadd(diff, {(y, s): -c * e * f * g_})
            if diff:
                rep.fail("AYD compatibility", vector=M.names[i], generator=H.fmt(h),
                         residual=_pair_str(M, diff))
    return rep


def check_stability_over_H(M):
    rep = Report("stability-over-H")
    for i in range(M.dim):
        v = {i: Fraction(1)}
        out = {}
        for (k, t), c in M.coact(v).items():
            vadd(out, M.act({t: Fraction(1)}, {k: Fraction(1)}), c)
        res = vadd(out, v, -1)
        if res:
            rep.fail("v<0> <| v<-1> != v", vector=M.names[i], residual=M.vec_str(res))
    return rep


def check_coaction_over_H(M):
    """Coassociativity and counit of the H-coaction."""
    rep = Report("H-comodule")
    H = M.H
    for i in range(M.dim):
        nab = M.coaction[i]
        diff = {}
        for (x, t), c in nab.items():
            for (a, b), e in H.mono_coproduct(x).items():
                vadd(diff, {(a, b, t): c * e})
            for (y, s), e in M.coaction[t].items():
                vadd(diff, {(x, y, s): -c * e})
        if diff:
            rep.fail("coassociativity", vector=M.names[i])
        cnt = {}
        for (x, t), c in nab.items():
            e = H.counit({x: Fraction(1)})
            if e:
                vadd(cnt, {t: c * e})
        if cnt != {i: 1}:
            rep.fail("counit", vector=M.names[i])
    return rep


def check_module_over_H(M, samples):
    """(v <| a) <| b = v <| (ab) on sample elements, twisted and untwisted."""
    rep = Report("H-module")
    H = M.H
    for a in samples:
        for b in samples:
            ab = H.mul(a, b)
            for tw in (False, True):
                for i in range(M.dim):
                    v = {i: Fraction(1)}
                    if vadd(M.act(M.act(v, a, tw), b, tw), M.act(v, ab, tw), -1):
                        rep.fail("not a right module", a=H.fmt(a), b=H.fmt(b), twisted=tw)
                        return rep
    return rep


def check_yd_and_stability_over_H(M, gens=None):
    reports = [check_coaction_over_H(M), check_yd_untwisted(M, gens), check_ayd_twisted(M, gens),
               check_stability_over_H(M)]
    total = Report("yd-and-stability")
    for r in reports:
        total.merge(r)
    total.info = {"twist": M.twist, "checks": {r.name: r.ok for r in reports}}
    return total


def _pair_str(M, diff):
    H = M.H
    return " + ".join(f"{c}*{H.mono_str(x)}(x){M.names[k]}" for (x, k), c in sorted(diff.items(), key=str))
