"""Named exact identities for the Schwarzian Hopf algebra and its coefficients.

Each golden returns a Report; an empty failure list means every listed
identity holds with zero residual.
"""

from fractions import Fraction

from .complexes import (HopfCyclic, MixedTotal, key_weight, weight_decompose, weight_operator,
                        weil_names, weil_square_residual, w_basis)
from .exactcore import Report, vadd
from .hopf import Mpi, h1s_cop

C_ODD = [(-1, "1", ["d1"]), (-1, "RX", ["d1*X"]), (-1, "RY", ["X"]), (-1, "RY", ["d1*Y"]),
         (-2, "RZ", ["Y"])]

C_EVEN = [(1, "1", ["X", "Y"]), (-1, "1", ["Y", "X"]), (1, "1", ["Y", "d1*Y"]),
          (-1, "RX", ["X*Y", "X"]), (-1, "RX", ["Y^2", "d1*X"]), (-1, "RX", ["Y", "X^2"]),
          (1, "RY", ["X*Y", "Y"]), (1, "RY", ["Y^2", "d1*Y"]), (1, "RY", ["X", "Y^2"]),
          (1, "RY", ["Y", "d1*Y^2"]), (-1, "RY", ["Y", "X"]), (-1, "RX", ["X*Y^2", "d1"]),
          ("-1/3", "RX", ["Y^3", "d1^2"]), ("1/3", "RY", ["Y^3", "d1"]),
          ("-1/4", "RX", ["Y^2", "d1^2"]), ("-1/2", "RY", ["Y^2", "d1"])]

# total-complex pieces: (coef, v, [F slots], [U slots])
C_PRIME = [(1, "1", ["d1"], [])]
C_TRIPLE = [(1, "RY", [], ["X"]), (2, "RZ", [], ["Y"])]
C_PLAIN = [(1, "1", [], ["X", "Y"]), (-1, "1", [], ["Y", "X"]), (-1, "RX", [], ["X*Y", "X"]),
           (-1, "RX", [], ["Y", "X^2"]), (1, "RY", [], ["X*Y", "Y"]), (1, "RY", [], ["X", "Y^2"]),
           (-1, "RY", [], ["Y", "X"])]
C_DOUBLE = [(-1, "RX", ["d1"], ["X*Y^2"]), ("2/3", "RX", ["d1^2"], ["Y^3"]),
            ("1/3", "RY", ["d1"], ["Y^3"]), ("-1/4", "RX", ["d1^2"], ["Y^2"]),
            ("-1/2", "RY", ["d1"], ["Y^2"])]

AW_PRIME = [(-1, "1", ["d1"], ["1"]), (-1, "RX", ["d1"], ["X"]), (-1, "RY", ["d1"], ["Y"])]
AW_TRIPLE = [(-1, "RY", ["1"], ["X"]), (-2, "RZ", ["1"], ["Y"])]


def _setup(max_degree):
    from .sayd import four_dim_induced
    return four_dim_induced(h1s_cop(max_degree))


def _expect(rep, name, got, want, fmt):
    res = vadd(dict(got), want, -1)
    if res:
        rep.fail(name, got=fmt(got), expected=fmt(want))


def _zero(rep, name, got, fmt):
    if got:
        rep.fail(name, residual=fmt(got))


def golden_mpi_h1s(max_degree=6):
    H = h1s_cop(max_degree)
    m = Mpi(H)
    rep = m.verify()
    rep.name = "mpi-h1s"
    if m.sigma != H.F.one():
        rep.fail("sigma != 1", sigma=H.F.fmt(m.sigma))
    want = {"X": 0, "Y": 1}
    for b, v in want.items():
        if m.delta_g[H.g.index[b]] != v:
            rep.fail(f"delta({b}) != {v}", value=m.delta_g[H.g.index[b]])
    return rep


def golden_yd_4dim(max_degree=6):
    from .sayd import check_yd_and_stability_over_H
    rep = check_yd_and_stability_over_H(_setup(max_degree))
    rep.name = "yd-4dim"
    return rep


def _cyclic_checks(name, terms, max_degree):
    M = _setup(max_degree)
    C = HopfCyclic(M)
    x = C.element(terms)
    rep = Report(name)
    _zero(rep, "b", C.b(x), C.fmt)
    _zero(rep, "B", C.B(x), C.fmt)
    _zero(rep, "B (unnormalized formula)", C.B_full(x), C.fmt)
    return rep


def golden_c_odd(max_degree=6):
    return _cyclic_checks("c-odd", C_ODD, max_degree)


def golden_c_even(max_degree=6):
    return _cyclic_checks("c-even", C_EVEN, max_degree)


def golden_total_odd(max_degree=6):
    T = MixedTotal(_setup(max_degree))
    rep = Report("total-odd")
    c1, c3 = T.element(C_PRIME), T.element(C_TRIPLE)
    s = vadd(dict(c1), c3)
    rz = T.element([(1, "RZ", [], [])])
    _zero(rep, "b_T(c' + c''')", T.b_T(s), T.fmt)
    _expect(rep, "F-direction B(c') = RZ", T.B_F(c1), rz, T.fmt)
    _expect(rep, "U-direction B(c''') = -RZ", T.B_U(c3), {k: -c for k, c in rz.items()}, T.fmt)
    _zero(rep, "B_T(c' + c''')", T.B_T(s), T.fmt)
    return rep


def golden_total_even(max_degree=6):
    T = MixedTotal(_setup(max_degree))
    rep = Report("total-even")
    c, c2 = T.element(C_PLAIN), T.element(C_DOUBLE)
    s = vadd(dict(c), c2)
    _zero(rep, "F-direction b(c'')", T.b_F(c2), T.fmt)
    _zero(rep, "b_T(c + c'')", T.b_T(s), T.fmt)
    _zero(rep, "B_T(c + c'')", T.B_T(s), T.fmt)
    return rep


def golden_aw_psi(max_degree=6):
    M = _setup(max_degree)
    T, C = MixedTotal(M), HopfCyclic(M)
    rep = Report("aw-psi")
    c1, c3 = T.element(C_PRIME), T.element(C_TRIPLE)
    _expect(rep, "AW_{1,0}(c')", T.alexander_whitney(c1), T.element(AW_PRIME), T.fmt)
    _expect(rep, "AW_{0,1}(c''')", T.alexander_whitney(c3), T.element(AW_TRIPLE), T.fmt)
    odd = T.psi(T.alexander_whitney(vadd(dict(c1), c3)))
    _expect(rep, "Psi(AW(c' + c''')) = c^odd", odd, C.element(C_ODD), C.fmt)
    even_tot = vadd(dict(T.element(C_PLAIN)), T.element(C_DOUBLE))
    even = T.psi(T.alexander_whitney(even_tot))
    _expect(rep, "Psi(AW(c + c'')) = c^even", even, C.element(C_EVEN), C.fmt)
    for nm, x in (("c^odd", C.element(C_ODD)), ("c^even", C.element(C_EVEN))):
        _expect(rep, f"Psi(Psi^-1({nm}))", T.psi(T.psi_inverse(x)), x, C.fmt)
    return rep


def golden_weights(max_degree=6):
    M = _setup(max_degree)
    C = HopfCyclic(M)
    rep = Report("weights")
    for terms, w in (([(1, "1", ["d1"])], 1), ([(1, "RX", ["d1*X"])], 1), ([(1, "RY", ["Y"])], 0)):
        key = next(iter(C.element(terms)))
        got = key_weight(C, key)
        if got != w:
            rep.fail("basis weight", tensor=C.fmt({key: 1}), got=got, expected=w)
    for nm, terms in (("c^odd", C_ODD), ("c^even", C_EVEN)):
        x = C.element(terms)
        parts = weight_decompose(C, x)
        if list(parts) != [1]:
            rep.fail(f"{nm} weight components", weights=sorted(parts))
        for op in (C.b, C.B):
            res = vadd(op(weight_operator(C, x)), weight_operator(C, op(x)), -1)
            _zero(rep, f"{op.__name__} commutes with ad~Y on {nm}", res, C.fmt)
    return rep


def golden_e1_h1s(max_degree=6):
    from .cohomology import hopf_e1
    from .sayd import four_dim_v
    M = _setup(max_degree)
    rep = Report("e1-h1s")
    try:
        rows = hopf_e1(M, four_dim_v())
    except ValueError as exc:
        return rep.fail("filtration", error=str(exc))
    rep.info = {str(j): r["gr_dim"] for j, r in rows.items()}
    if rows[0]["gr_dim"] != 3 or rows[1]["gr_dim"] != 1:
        rep.fail("graded dimensions", dims=rep.info)
    for j, r in rows.items():
        if j >= 2 and any(r["cochain_dims"].values()):
            rep.fail(f"E1^({j},*) nonzero", dims=r["cochain_dims"])
    return rep


def golden_weil_n1(max_degree=6):
    from .sayd import SaydData
    data = weil_names(1)
    g = data[0]
    triv = SaydData(g, [[[0]]] * g.dim, None, ["1"], "C")
    rep = Report("weil-embed-n1")
    for q in range(g.dim + 1):
        for lab in w_basis(g, triv, q):
            res = weil_square_residual(1, {lab: Fraction(1)}, data=data)
            if res:
                rep.fail("square", element=str(lab), residual={str(k): str(c) for k, c in res.items()})
    return rep


GOLDENS = {
    "mpi-h1s": ("modular pair (sigma=1, delta(X)=0, delta(Y)=1) with S_delta^2 = Ad_sigma", golden_mpi_h1s),
    "yd-4dim": ("4-dimensional V_delta: YD compatibility and stability over H1S-cop", golden_yd_4dim),
    "c-odd": ("b(c^odd) = B(c^odd) = 0 in C^1(H1S-cop, V_delta)", golden_c_odd),
    "c-even": ("b(c^even) = B(c^even) = 0 in C^2(H1S-cop, V_delta)", golden_c_even),
    "total-odd": ("b_T and B_T kill c' + c''' (with B(c') = RZ, B(c''') = -RZ)", golden_total_odd),
    "total-even": ("b_T and B_T kill c + c''", golden_total_even),
    "aw-psi": ("Alexander-Whitney images and Psi(AW(.)) = c^odd, c^even", golden_aw_psi),
    "weights": ("ad~Y weights of basis tensors; c^odd, c^even of pure weight 1", golden_weights),
    "e1-h1s": ("E1^(j,*) = 0 for j >= 2 for the comodule filtration of V_delta", golden_e1_h1s),
    "weil-embed-n1": ("W(pgl(1), C) -> W(gl(1), V_1Proj) commutes with the differentials", golden_weil_n1),
}


def run_golden(name, max_degree=6):
    desc, fn = GOLDENS[name]
    return fn(max_degree)
