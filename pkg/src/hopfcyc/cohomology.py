"""Cohomology of finite complexes over Q.

A complex is given degree by degree as a list of basis vectors inside an
ambient label space (unit vectors by default, a kernel basis for the relative
subcomplex) together with a linear differential on label dictionaries. Ranks
are taken on ambient images, so no coordinates in the target subspace are
ever needed.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import (d_ce, d_total, del_total, relative_basis, w_basis, w_str)
from .exactcore import Echelon, Report, SparseMatrix, kernel_basis, vadd
from .sayd import quotient_module, compute_filtration


class DifferentialSquareError(ArithmeticError):
    pass


class Complex:
    """bases: {degree: [vector over labels]}; diff: element -> element; step: degree change of diff."""

    def __init__(self, bases, diff, step=1, name="", label_str=None):
        self.bases = {q: list(b) for q, b in bases.items()}
        self.diff = diff
        self.step = step
        self.name = name
        self.label_str = label_str or str

    @classmethod
    def on_labels(cls, labels, diff, step=1, name="", label_str=None):
        """labels: {degree: [label]}; unit-vector bases."""
        bases = {q: [{lab: Fraction(1)} for lab in labs] for q, labs in labels.items()}
        return cls(bases, diff, step, name, label_str)

    def degrees(self):
        return sorted(self.bases)

    def apply(self, x):
        return self.diff(x)

    def images(self, q):
        return [self.diff(dict(b)) for b in self.bases.get(q, [])]

    def check_square(self):
        """Raise DifferentialSquareError with a witness if d(d(b)) != 0 for a basis vector."""
        for q in self.degrees():
            for b, img in zip(self.bases[q], self.images(q)):
                dd = self.diff(img) if img else {}
                if dd:
                    raise DifferentialSquareError(
                        f"{self.name}: d^2 != 0 in degree {q} on {self.fmt(b)}: {self.fmt(dd)}")
        return True

    def fmt(self, x):
        if not x:
            return "0"
        return " + ".join(f"{c}*{self.label_str(k)}" for k, c in sorted(x.items(), key=lambda t: repr(t[0])))


def _rank_of(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech


def _matrix(vectors):
    rows = {}
    cols = []
    for v in vectors:
        cols.append({rows.setdefault(k, len(rows)): c for k, c in v.items()})
    return SparseMatrix.from_columns(cols, len(rows))


def _combine(basis, coords):
    out = {}
    for i, c in coords.items():
        vadd(out, basis[i], c)
    return out


@dataclass
class CohomologyResult:
    betti: dict
    representatives: dict
    name: str = ""
    checks: list = field(default_factory=list)

    def dims(self):
        return tuple(self.betti[q] for q in sorted(self.betti))

    @property
    def even(self):
        return sum(b for q, b in self.betti.items() if q % 2 == 0)

    @property
    def odd(self):
        return sum(b for q, b in self.betti.items() if q % 2)

    def to_json(self, fmt=None):
        fmt = fmt or (lambda x: {repr(k): str(c) for k, c in x.items()})
        return {
            "betti": {str(q): b for q, b in sorted(self.betti.items())},
            "even": self.even,
            "odd": self.odd,
            "representatives": {str(q): [fmt(r) for r in reps]
                                for q, reps in sorted(self.representatives.items())},
            "checks": self.checks,
        }


def cohomology(C, check=True):
    """Betti numbers and representatives, degree by degree."""
    if check:
        C.check_square()
    imgs = {q: C.images(q) for q in C.degrees()}
    betti, reps = {}, {}
    for q in C.degrees():
        basis = C.bases[q]
        prev = imgs.get(q - C.step, [])
        incoming = _rank_of(v for v in prev if v)
        if basis:
            ker = kernel_basis(_matrix(imgs[q])) if any(imgs[q]) else [{i: Fraction(1)} for i in range(len(basis))]
        else:
            ker = []
        chosen = []
        for coords in ker:
            z = _combine(basis, coords)
            if incoming.add(dict(z)):
                chosen.append(z)
        betti[q] = len(chosen)
        reps[q] = chosen
    return CohomologyResult(betti, reps, C.name, ["d^2=0"] if check else [])


def is_exact(C, x, q):
    """True iff x (in degree q) lies in the image of the differential from degree q - step."""
    if not x:
        return True
    ech = _rank_of(v for v in C.images(q - C.step) if v)
    return ech.contains(x)


def cohomologous(C, x, y, q):
    return is_exact(C, vadd(dict(x), y, -1), q)


def verify_cocycle(element, differentials):
    """Apply each named differential; Report with exact nonzero residuals."""
    rep = Report()
    for name, fn in differentials:
        res = fn(element)
        if res:
            rep.fail(name, residual={repr(k): str(c) for k, c in res.items()})
    return rep


# ---------------------------------------------------------------- Lie algebra complexes

def _w_label_str(g, V):
    return lambda lab: w_str(g, V, {lab: Fraction(1)}).split("*", 1)[-1]


def _lie_labels(g, V, degrees=None):
    degrees = range(g.dim + 1) if degrees is None else degrees
    return {q: w_basis(g, V, q) for q in degrees}


def ce_complex(g, V, h_vectors=None):
    """Chevalley-Eilenberg cochains of g with values in the right module V (h-basic if h given)."""
    name = f"CE({getattr(g, 'name', 'g')}, {V.name})"
    if h_vectors:
        bases = {}
        for q in range(g.dim + 1):
            full, ker = relative_basis(g, V, h_vectors, q)
            bases[q] = [_combine({i: {lab: Fraction(1)} for i, lab in enumerate(full)}, k) for k in ker]
        return Complex(bases, lambda x: d_ce(g, V, x), 1, name + " rel h", _w_label_str(g, V))
    return Complex.on_labels(_lie_labels(g, V), lambda x: d_ce(g, V, x), 1, name, _w_label_str(g, V))


def periodic(C, name=None):
    """Z/2-folded complex: even = sum of even degrees, odd = sum of odd degrees."""
    bases = {0: [], 1: []}
    for q in C.degrees():
        bases[q % 2].extend(C.bases[q])
    return Complex(bases, C.diff, 1, name or f"periodic {C.name}", C.label_str)


def periodic_cohomology(C, check=True):
    """Even/odd cohomology of the mixed differential on the folded complex."""
    P = C if set(C.degrees()) <= {0, 1} and C.name.startswith("periodic") else periodic(C)
    if check:
        P.check_square()
    imgs = {0: P.images(0), 1: P.images(1)}
    betti, reps = {}, {}
    for par in (0, 1):
        basis = P.bases[par]
        incoming = _rank_of(v for v in imgs[1 - par] if v)
        if basis and any(imgs[par]):
            ker = kernel_basis(_matrix(imgs[par]))
        else:
            ker = [{i: Fraction(1)} for i in range(len(basis))]
        chosen = []
        for coords in ker:
            z = _combine(basis, coords)
            if incoming.add(dict(z)):
                chosen.append(z)
        betti[par] = len(chosen)
        reps[par] = chosen
    return CohomologyResult(betti, reps, P.name, ["D^2=0"] if check else [])


def cyclic_lie_complex(g, V, h_vectors=None):
    """W(g,V) (or its h-basic part) with d_CE + d_K, folded mod 2."""
    base = ce_complex(g, V, h_vectors)
    return periodic(Complex(base.bases, lambda x: d_total(g, V, x), 1, base.name, base.label_str),
                    f"periodic W({getattr(g, 'name', 'g')}, {V.name})" + (" rel h" if h_vectors else ""))


def cyclic_homology_lie_complex(g, V):
    """C(g,V) = wedge g (x) V with del_CE + del_K, folded mod 2."""
    C = Complex.on_labels(_lie_labels(g, V), lambda x: del_total(g, V, x), -1,
                          f"C({getattr(g, 'name', 'g')}, {V.name})", _w_label_str(g, V))
    return periodic(C, "periodic " + C.name)


def periodic_cyclic_lie(g, V, h_vectors=None, check_sayd=True):
    if check_sayd:
        from .sayd import check_all
        reps, _ = check_all(V)
        bad = [f for r in reps for f in r.failures]
        if bad:
            raise ValueError(f"{V.name} is not a unimodular stable AYD module: {bad[:3]}")
    return periodic_cohomology(cyclic_lie_complex(g, V, h_vectors))


# ---------------------------------------------------------------- E1 page

@dataclass
class E1Page:
    levels: list
    pieces: dict
    note: str = ""

    def total(self, j):
        r = self.pieces.get(j)
        return 0 if r is None else sum(r.betti.values())

    def to_json(self):
        return {
            "filtration_dims": [len(lv) for lv in self.levels],
            "E1": {str(j): {str(q): b for q, b in sorted(r.betti.items())} for j, r in sorted(self.pieces.items())},
            "note": self.note,
        }


def e1_page(g, V):
    """E1^{j,*} = H^*(g, F_j V / F_{j-1} V) for the coaction filtration of V.

    d_K lowers the filtration level by one, so on each graded piece only d_CE
    survives. Asserts that the action preserves every F_j.
    """
    levels = compute_filtration(V)
    pieces = {}
    prev = []
    for j, rows in enumerate(levels):
        _assert_submodule(V, rows)
        Q, _ = quotient_module(V, prev, rows)
        pieces[j] = cohomology(ce_complex(g, Q))
        prev = rows
    return E1Page(levels, pieces)


def _assert_submodule(V, rows):
    ech = _rank_of(rows)
    for r in rows:
        for j in range(V.g.dim):
            img = V.act(r, j)
            if img and not ech.contains(img):
                raise ValueError(f"filtration level not preserved by the action of {V.g.names[j]}")


def _h_stable(M, rows):
    """Each level must be an H-submodule and an H-subcomodule."""
    ech = _rank_of(rows)
    for r in rows:
        for m in list(M.f_mats) + list(M.u_mats):
            img = {}
            for i, c in r.items():
                vadd(img, dict(enumerate(m[i])), c)
            img = {k: c for k, c in img.items() if c}
            if img and not ech.contains(img):
                return False
        legs = {}
        for i, c in r.items():
            for (h, k), e in M.coaction[i].items():
                vadd(legs.setdefault(h, {}), {k: c * e})
        if any(v and not ech.contains(v) for v in legs.values()):
            return False
    return True


def hopf_e1(M, V, degrees=range(4)):
    """E1 data for C(H, M) filtered by the g-comodule filtration of the underlying V.

    Each F_j is checked to be H-stable. Returns, per level j, the dimension of
    gr_j and the dimensions of the truncated cochain spaces C^q(H, gr_j) at the
    Hopf degree cap; wherever gr_j = 0 the whole row E1^{j,*} vanishes.
    """
    levels = compute_filtration(V)
    for j, rows in enumerate(levels):
        if not _h_stable(M, rows):
            raise ValueError(f"filtration level {j} is not H-stable")
    dims = [len(lv) for lv in levels]
    gr = [dims[0]] + [dims[j] - dims[j - 1] for j in range(1, len(dims))]
    H = M.H
    nmono = sum(1 for _ in _h_monomials(H))
    rows = {}
    for j in range(len(gr) + 2):
        g = gr[j] if j < len(gr) else 0
        rows[j] = {"gr_dim": g, "cochain_dims": {q: g * nmono ** q for q in degrees}}
    return rows


def _h_monomials(H):
    from itertools import product
    cap = H.max_degree
    for f in product(range(cap + 1), repeat=H.F.m):
        for u in product(range(cap + 1), repeat=H.g.dim):
            if sum(f) + sum(u) <= cap:
                yield (f, u)
