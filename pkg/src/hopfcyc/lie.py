"""Finite-dimensional Lie algebras, matched pairs and double crossed sums."""

import re
from fractions import Fraction

from .exactcore import Q, Report, vadd, vscale


_TERM = re.compile(r"\s*([+-]?)\s*([^+\-]+)")


def parse_lincomb(text, names):
    """Parse '3/2*X - Y + 2*Z' into {index: Fraction} over the given names."""
    index = {n: i for i, n in enumerate(names)}
    s = text.strip()
    if s in ("", "0"):
        return {}
    out = {}
    pos = 0
    # split on +/- that are not inside a rational numerator position
    tokens = re.findall(r"[+-]?[^+-]+", s.replace(" ", ""))
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        if "*" in tok:
            coef, name = tok.rsplit("*", 1)
            coef = Q(coef)
        else:
            coef, name = Fraction(1), tok
        if name not in index:
            try:
                Q(name)
            except (ValueError, TypeError):
                raise ValueError(f"unknown basis element {name!r} in {text!r}") from None
            raise ValueError(f"constant term {name!r} not allowed in {text!r}")
        vadd(out, {index[name]: sign * coef})
        pos += 1
    return out


class LieAlgebra:
    """Basis names plus structure constants C^k_ij, [X_i, X_j] = sum_k C^k_ij X_k."""

    def __init__(self, basis, constants, name=""):
        self.name = name
        self.basis = list(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise ValueError("duplicate basis names")
        self.constants = {}
        for (i, j, k), c in constants.items():
            c = Q(c)
            if c:
                self.constants[(i, j, k)] = c
        self._br = {}
        for (i, j, k), c in self.constants.items():
            self._br.setdefault((i, j), {})[k] = c

    @classmethod
    def from_brackets(cls, basis, brackets, name=""):
        """brackets: {(a, b): vector or lincomb string}; antisymmetric completion."""
        idx = {b: i for i, b in enumerate(basis)}
        consts = {}
        for (a, b), val in brackets.items():
            i = idx[a] if isinstance(a, str) else a
            j = idx[b] if isinstance(b, str) else b
            vec = parse_lincomb(val, basis) if isinstance(val, str) else val
            for k, c in vec.items():
                k = idx[k] if isinstance(k, str) else k
                consts[(i, j, k)] = consts.get((i, j, k), 0) + Q(c)
                if i != j:
                    consts[(j, i, k)] = consts.get((j, i, k), 0) - Q(c)
        return cls(basis, consts, name)

    @property
    def dim(self):
        return len(self.basis)

    def C(self, i, j, k):
        return self.constants.get((i, j, k), Fraction(0))

    def bracket(self, i, j):
        return self._br.get((i, j), {})

    def bracket_vec(self, a, b):
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                vadd(out, self.bracket(i, j), x * y)
        return out

    def ad_matrix(self, i):
        """Matrix M with ad(X_i)(X_j) = sum_k M[k][j] X_k."""
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            for k, c in self.bracket(i, j).items():
                m[k][j] = c
        return m

    def vec_str(self, v):
        if not v:
            return "0"
        return " + ".join(f"{c}*{self.basis[i]}" for i, c in sorted(v.items()))

    def __repr__(self):
        return f"LieAlgebra({self.name or self.basis})"


def validate_lie_algebra(g):
    rep = Report("lie-algebra")
    n = g.dim
    for (i, j, k) in g.constants:
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            return rep.fail("index out of range", triple=(i, j, k))
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                r = g.C(i, j, k) + g.C(j, i, k)
                if r:
                    return rep.fail("antisymmetry", triple=(g.basis[i], g.basis[j], g.basis[k]), residual=r)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                e = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    vadd(e, g.bracket_vec(g.bracket(a, b), {c: 1}))
                if e:
                    return rep.fail("jacobi", triple=(g.basis[i], g.basis[j], g.basis[k]),
                                    residual=g.vec_str(e))
    return rep


def trace_adjoint_character(g):
    """delta(X_i) = sum_k C^k_ik, the trace of ad(X_i)."""
    return {g.basis[i]: sum((g.C(i, k, k) for k in range(g.dim)), Fraction(0)) for i in range(g.dim)}


class MatchedPair:
    """g2 acting on g1 from the left (xi |> X) and g1 acting on g2 from the right (xi <| X).

    left[(a, i)] is the g1-vector xi_a |> X_i; right[(a, i)] is the g2-vector xi_a <| X_i.
    """

    def __init__(self, g1, g2, left, right, name=""):
        self.g1, self.g2, self.name = g1, g2, name
        self.left = {k: dict(v) for k, v in left.items() if v}
        self.right = {k: dict(v) for k, v in right.items() if v}

    def lt(self, a, i):
        return self.left.get((a, i), {})

    def rt(self, a, i):
        return self.right.get((a, i), {})

    def lt_vec(self, z, x):
        out = {}
        for a, c in z.items():
            for i, d in x.items():
                vadd(out, self.lt(a, i), c * d)
        return out

    def rt_vec(self, z, x):
        out = {}
        for a, c in z.items():
            for i, d in x.items():
                vadd(out, self.rt(a, i), c * d)
        return out


def validate_matched_pair(p):
    rep = Report("matched-pair")
    g1, g2 = p.g1, p.g2
    n1, n2 = g1.dim, g2.dim
    for a in range(n2):
        for b in range(n2):
            za, zb = {a: 1}, {b: 1}
            for i in range(n1):
                X = {i: 1}
                r = vadd(p.lt_vec(g2.bracket(a, b), X), p.lt_vec(za, p.lt_vec(zb, X)), -1)
                vadd(r, p.lt_vec(zb, p.lt_vec(za, X)))
                if r:
                    return rep.fail("identity 1", elements=(g2.basis[a], g2.basis[b], g1.basis[i]),
                                    residual=g1.vec_str(r))
                r = p.rt_vec(g2.bracket(a, b), X)
                vadd(r, g2.bracket_vec(p.rt_vec(za, X), zb), -1)
                vadd(r, g2.bracket_vec(za, p.rt_vec(zb, X)), -1)
                vadd(r, p.rt_vec(za, p.lt_vec(zb, X)), -1)
                vadd(r, p.rt_vec(zb, p.lt_vec(za, X)))
                if r:
                    return rep.fail("identity 4", elements=(g2.basis[a], g2.basis[b], g1.basis[i]),
                                    residual=g2.vec_str(r))
    for a in range(n2):
        z = {a: 1}
        for i in range(n1):
            for j in range(n1):
                X, Y = {i: 1}, {j: 1}
                XY = g1.bracket(i, j)
                r = p.rt_vec(z, XY)
                vadd(r, p.rt_vec(p.rt_vec(z, X), Y), -1)
                vadd(r, p.rt_vec(p.rt_vec(z, Y), X))
                if r:
                    return rep.fail("identity 2", elements=(g2.basis[a], g1.basis[i], g1.basis[j]),
                                    residual=g2.vec_str(r))
                r = p.lt_vec(z, XY)
                vadd(r, g1.bracket_vec(p.lt_vec(z, X), Y), -1)
                vadd(r, g1.bracket_vec(X, p.lt_vec(z, Y)), -1)
                vadd(r, p.lt_vec(p.rt_vec(z, X), Y), -1)
                vadd(r, p.lt_vec(p.rt_vec(z, Y), X))
                if r:
                    return rep.fail("identity 3", elements=(g2.basis[a], g1.basis[i], g1.basis[j]),
                                    residual=g1.vec_str(r))
    return rep


def double_crossed_sum(p, name=""):
    """g1 + g2 with [X+z, Z+x] = ([X,Z] + z|>Z - x|>X) + ([z,x] + z<|Z - x<|X)."""
    g1, g2 = p.g1, p.g2
    n1 = g1.dim
    consts = {}

    def put(i, j, vec, shift):
        for k, c in vec.items():
            key = (i, j, k + shift)
            consts[key] = consts.get(key, 0) + c

    for (i, j, k), c in g1.constants.items():
        consts[(i, j, k)] = c
    for (a, b, k), c in g2.constants.items():
        consts[(a + n1, b + n1, k + n1)] = c
    for a in range(g2.dim):
        for i in range(n1):
            # [z_a, X_i] = z_a |> X_i + z_a <| X_i
            put(a + n1, i, p.lt(a, i), 0)
            put(a + n1, i, p.rt(a, i), n1)
            put(i, a + n1, vscale(p.lt(a, i), -1), 0)
            put(i, a + n1, vscale(p.rt(a, i), -1), n1)
    return LieAlgebra(g1.basis + g2.basis, consts, name or f"{g1.name}|><|{g2.name}")


def split_matched_pair(g, first, second, name=""):
    """Recover the mutual actions from a decomposition g = g1 + g2 into subalgebras."""
    i1 = [g.index[b] for b in first]
    i2 = [g.index[b] for b in second]
    pos1 = {k: t for t, k in enumerate(i1)}
    pos2 = {k: t for t, k in enumerate(i2)}

    def sub(idxs, pos, nm):
        consts = {}
        for a, i in enumerate(idxs):
            for b, j in enumerate(idxs):
                for k, c in g.bracket(i, j).items():
                    if k not in pos:
                        raise ValueError(f"{nm} is not a subalgebra")
                    consts[(a, b, pos[k])] = c
        return LieAlgebra([g.basis[i] for i in idxs], consts, nm)

    g1 = sub(i1, pos1, "g1")
    g2 = sub(i2, pos2, "g2")
    left, right = {}, {}
    for a, za in enumerate(i2):
        for i, xi in enumerate(i1):
            br = g.bracket(za, xi)
            left[(a, i)] = {pos1[k]: c for k, c in br.items() if k in pos1}
            right[(a, i)] = {pos2[k]: c for k, c in br.items() if k in pos2}
    return MatchedPair(g1, g2, left, right, name)


# ---------------------------------------------------------------- presets

def sl2_xyz():
    return LieAlgebra.from_brackets(["X", "Y", "Z"], {("Y", "X"): "X", ("Z", "X"): "Y", ("Z", "Y"): "Z"},
                                    "sl2-xyz")


def sl2_efh():
    return LieAlgebra.from_brackets(["e", "f", "h"], {("h", "e"): "2*e", ("h", "f"): "-2*f", ("e", "f"): "h"},
                                    "sl2-efh")


def abelian(n, names=None):
    names = names or [f"X{i + 1}" for i in range(n)]
    return LieAlgebra(names, {}, f"abelian({n})")


def gl_names(n):
    return [f"X{i}^{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


def _gl_brackets(n, idx):
    """[X_p^q, X_i^j] = delta^q_i X_p^j - delta^j_p X_i^q."""
    consts = {}
    rng = range(1, n + 1)
    for p in rng:
        for q in rng:
            for i in rng:
                for j in rng:
                    a, b = idx[f"X{p}^{q}"], idx[f"X{i}^{j}"]
                    if q == i:
                        k = idx[f"X{p}^{j}"]
                        consts[(a, b, k)] = consts.get((a, b, k), 0) + 1
                    if j == p:
                        k = idx[f"X{i}^{q}"]
                        consts[(a, b, k)] = consts.get((a, b, k), 0) - 1
    return consts


def gl(n):
    names = gl_names(n)
    idx = {b: i for i, b in enumerate(names)}
    return LieAlgebra(names, _gl_brackets(n, idx), f"gl({n})")


def gl_aff(n):
    """gl(n)^aff = span{X_k} + gl(n) with [X_p^q, X_s] = delta^q_s X_p."""
    names = [f"X{k}" for k in range(1, n + 1)] + gl_names(n)
    idx = {b: i for i, b in enumerate(names)}
    consts = _gl_brackets(n, idx)
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            s = q
            a, b, k = idx[f"X{p}^{q}"], idx[f"X{s}"], idx[f"X{p}"]
            consts[(a, b, k)] = 1
            consts[(b, a, k)] = -1
    return LieAlgebra(names, consts, f"gl({n})-aff")


def pgl_matched_pair(n):
    """gl(n)^aff and the abelian span of X^r with the projective mutual actions."""
    g1 = gl_aff(n)
    g2 = LieAlgebra([f"X^{r}" for r in range(1, n + 1)], {}, f"m*({n})")
    idx = g1.index
    trace = {idx[f"X{a}^{a}"]: Fraction(1) for a in range(1, n + 1)}
    left, right = {}, {}
    for r in range(1, n + 1):
        a = r - 1
        for k in range(1, n + 1):
            v = {idx[f"X{k}^{r}"]: Fraction(-1)}
            if k == r:
                vadd(v, trace, -1)
            left[(a, idx[f"X{k}"])] = v
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if p == r:
                    right[(a, idx[f"X{p}^{q}"])] = {q - 1: Fraction(1)}
    return MatchedPair(g1, g2, left, right, f"pgl-matched-pair({n})")


def pgl(n):
    return double_crossed_sum(pgl_matched_pair(n), f"pgl({n})")


def sl2_matched_pair():
    """gl(1)^aff = <X, Y> and <Z> with Z<|X = 0, Z<|Y = Z, Z|>X = Y, Z|>Y = 0."""
    g1 = LieAlgebra.from_brackets(["X", "Y"], {("Y", "X"): "X"}, "gl(1)-aff")
    g2 = LieAlgebra(["Z"], {}, "R")
    left = {(0, 0): {1: Fraction(1)}}
    right = {(0, 1): {0: Fraction(1)}}
    return MatchedPair(g1, g2, left, right, "sl2-matched-pair")


_PARAM = re.compile(r"^([a-z0-9\-]+?)\((\d+)\)(-aff)?$")

BUILTIN_LIE = ("sl2-xyz", "sl2-efh", "gl(n)", "gl(n)-aff", "gl1-aff", "pgl(n)", "pgl-matched-pair(n)",
               "sl2-matched-pair", "abelian(n)")


def builtin_lie(name, n=None):
    """Preset Lie algebras and matched pairs; 'gl(2)' and ('gl', 2) are both accepted."""
    m = _PARAM.match(name)
    if m:
        base, n = m.group(1) + (m.group(3) or ""), int(m.group(2))
    else:
        base = name
    table = {
        "sl2-xyz": lambda: sl2_xyz(),
        "sl2-efh": lambda: sl2_efh(),
        "sl2-matched-pair": lambda: sl2_matched_pair(),
        "gl1-aff": lambda: sl2_matched_pair().g1,
        "gl": lambda: gl(n),
        "gl-aff": lambda: gl_aff(n),
        "pgl": lambda: pgl(n),
        "pgl-matched-pair": lambda: pgl_matched_pair(n),
        "abelian": lambda: abelian(n),
    }
    if base not in table:
        raise KeyError(f"unknown builtin Lie algebra {name!r}")
    if base in ("gl", "gl-aff", "pgl", "pgl-matched-pair", "abelian") and not n:
        raise KeyError(f"builtin {name!r} needs a size n >= 1")
    return table[base]()
