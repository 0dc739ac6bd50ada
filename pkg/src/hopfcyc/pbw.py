"""Universal enveloping algebras in PBW normal form.

A monomial is a tuple of exponents (e_1, ..., e_N) meaning X_1^e_1 ... X_N^e_N
in the basis order of the Lie algebra.  Elements are dicts monomial -> Fraction.
"""

import re
from fractions import Fraction
from itertools import permutations
from math import factorial, comb

from .exactcore import Q, vadd, vscale


class DegreeCapError(ArithmeticError):
    """A computation would produce terms above the configured degree cap."""


DEFAULT_MAX_DEGREE = 6


class EnvelopingAlgebra:
    def __init__(self, g, max_degree=DEFAULT_MAX_DEGREE):
        self.g = g
        self.n = g.dim
        self.max_degree = max_degree
        self.zero_mono = (0,) * self.n
        self._mg = {}
        self._mm = {}

    # -- basic elements
    def one(self):
        return {self.zero_mono: Fraction(1)}

    def gen(self, i):
        if isinstance(i, str):
            i = self.g.index[i]
        e = [0] * self.n
        e[i] = 1
        return {tuple(e): Fraction(1)}

    def from_vector(self, v):
        out = {}
        for i, c in v.items():
            vadd(out, self.gen(i), c)
        return out

    @staticmethod
    def mono_degree(m):
        return sum(m)

    def degree(self, u):
        return max((sum(m) for m in u), default=-1)

    def word(self, m):
        """Monomial as the ordered list of generator indices."""
        return [i for i, e in enumerate(m) for _ in range(e)]

    def _check(self, deg):
        if deg > self.max_degree:
            raise DegreeCapError(f"PBW degree {deg} exceeds cap {self.max_degree}")

    # -- product
    def _mono_gen(self, m, i):
        key = (m, i)
        hit = self._mg.get(key)
        if hit is not None:
            return hit
        self._check(sum(m) + 1)
        j = max((t for t, e in enumerate(m) if e), default=-1)
        if j <= i:
            e = list(m)
            e[i] += 1
            res = {tuple(e): Fraction(1)}
        else:
            # m = m' X_j with j > i: X_j X_i = X_i X_j + [X_j, X_i]
            mp = list(m)
            mp[j] -= 1
            mp = tuple(mp)
            res = {}
            for mm, c in self._mono_gen(mp, i).items():
                vadd(res, self._mono_gen(mm, j), c)
            for k, c in self.g.bracket(j, i).items():
                vadd(res, self._mono_gen(mp, k), c)
        self._mg[key] = res
        return res

    def _mono_mul(self, a, b):
        key = (a, b)
        hit = self._mm.get(key)
        if hit is not None:
            return hit
        cur = {a: Fraction(1)}
        for i in self.word(b):
            nxt = {}
            for m, c in cur.items():
                vadd(nxt, self._mono_gen(m, i), c)
            cur = nxt
        self._mm[key] = cur
        return cur

    def mul(self, a, b):
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                vadd(out, self._mono_mul(ma, mb), ca * cb)
        return out

    def prod(self, *els):
        out = self.one()
        for e in els:
            out = self.mul(out, e)
        return out

    def word_product(self, word):
        """Normal form of X_{w1} X_{w2} ... for a list of generator indices."""
        cur = self.one()
        for i in word:
            nxt = {}
            for m, c in cur.items():
                vadd(nxt, self._mono_gen(m, i), c)
            cur = nxt
        return cur

    def commutator(self, a, b):
        return vadd(self.mul(a, b), self.mul(b, a), -1)

    # -- Hopf structure
    def mono_coproduct(self, m):
        """Delta of an ordered monomial: binomial splitting in each variable."""
        out = {}
        ranges = [range(e + 1) for e in m]

        def rec(t, left, right, coef):
            if t == self.n:
                out[(tuple(left), tuple(right))] = Fraction(coef)
                return
            for k in ranges[t]:
                rec(t + 1, left + [k], right + [m[t] - k], coef * comb(m[t], k))
        rec(0, [], [], 1)
        return out

    def coproduct(self, u):
        out = {}
        for m, c in u.items():
            vadd(out, self.mono_coproduct(m), c)
        return out

    def counit(self, u):
        return u.get(self.zero_mono, Fraction(0))

    def mono_antipode(self, m):
        w = self.word(m)
        return vscale(self.word_product(list(reversed(w))), (-1) ** len(w))

    def antipode(self, u):
        out = {}
        for m, c in u.items():
            vadd(out, self.mono_antipode(m), c)
        return out

    # -- symmetrization
    def theta(self, m):
        """Sum over all k! orderings of the word of m, normal ordered."""
        w = self.word(m)
        mult = 1
        for e in m:
            mult *= factorial(e)
        out = {}
        for p in set(permutations(w)):
            vadd(out, self.word_product(list(p)), mult)
        return out

    def theta_inverse(self, k, s):
        """Preimage under theta of s, which must lie in the symmetric part of degree k."""
        top = {m: c for m, c in s.items() if sum(m) == k}
        if any(sum(m) > k for m in s):
            raise ValueError("element has terms above degree k")
        pre = {m: c / factorial(k) for m, c in top.items()}
        back = {}
        for m, c in pre.items():
            vadd(back, self.theta(m), c)
        res = vadd(dict(s), back, -1)
        if res:
            raise ValueError(f"not in the image of theta_{k}; residual {self.fmt(res)}")
        return pre

    def ad(self, i, u):
        """ad(X_i)(u) = X_i u - u X_i, the derivation extending [X_i, -]."""
        x = self.gen(i)
        return self.commutator(x, u)

    # -- tensor helpers
    def tensor_mul(self, a, b):
        """Componentwise product in U (x) U (or higher tensor powers)."""
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                parts = [self._mono_mul(x, y) for x, y in zip(ka, kb)]
                _tensor_expand(out, parts, ca * cb)
        return out

    # -- printing / parsing
    def mono_str(self, m):
        if not any(m):
            return "1"
        parts = []
        for i, e in enumerate(m):
            if e:
                parts.append(self.g.basis[i] + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    def fmt(self, u):
        if not u:
            return "0"
        out = []
        for m in sorted(u, key=lambda m: (sum(m), [-e for e in m])):
            c = u[m]
            s = self.mono_str(m)
            if s == "1":
                term = str(c)
            elif c == 1:
                term = s
            elif c == -1:
                term = "-" + s
            else:
                term = f"{c}*{s}"
            out.append(term)
        return " + ".join(out).replace("+ -", "- ")

    def parse(self, text):
        """Parse '3/2*X^2*Y - Z' (factors may be in any order; result is normal ordered)."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return {}
        out = {}
        for tok in re.findall(r"[+-]?[^+-]+", s):
            sign = -1 if tok.startswith("-") else 1
            coef = Fraction(sign)
            word = []
            for f in tok.lstrip("+-").split("*"):
                name, _, exp = f.partition("^")
                if name in self.g.index and exp.isdigit() or (name in self.g.index and not exp):
                    word += [self.g.index[name]] * (int(exp) if exp else 1)
                elif f in self.g.index:
                    word.append(self.g.index[f])
                else:
                    coef *= Q(f)
            vadd(out, self.word_product(word), coef)
        return out


def _tensor_expand(out, parts, coef):
    """Add coef * (parts[0] (x) parts[1] (x) ...) into out."""
    keys = [((), coef)]
    for p in parts:
        keys = [(k + (m,), c * d) for k, c in keys for m, d in p.items()]
    for k, c in keys:
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
