"""Command-line entry point: validate problem files, solve for coactions,
compute cohomology and check the named goldens.

Problem files are INI files:

    [lie]
    builtin = sl2-xyz            # or: basis = X, Y, Z  plus  X,Y = Z  lines
    [module]
    builtin = koszul-sym(1)      # or: names = ...  plus one matrix per basis element
    [coaction]
    X = [[0, 1], [0, 0]]         # right-coaction matrices A^X (optional)
    [matched-pair]
    builtin = sl2-matched-pair   # optional
    [hopf]
    builtin = H1S-cop            # optional
    [task]
    h = X; Y                     # subalgebra basis for relative cohomology

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
"""

import argparse
import configparser
import json
import os
import re
import sys
from fractions import Fraction

from .exactcore import Q, Report

SCHEMA = 1
DEFAULT_MAX_DEGREE = 6


class InputError(Exception):
    pass


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"[^\[\],\s]+")


def parse_matrix(text):
    """'[[1, -1/2], [0, 3]]' -> list of rows of Fractions."""
    try:
        rows = json.loads(_TOKEN.sub(lambda m: json.dumps(m.group()), text))
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed matrix literal {text!r}: {exc}") from None
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"matrix literal must be a list of rows: {text!r}")
    if len({len(r) for r in rows}) > 1:
        raise InputError(f"ragged matrix literal {text!r}")
    try:
        return [[Q(x) for x in r] for r in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational in {text!r}: {exc}") from None


def _names(text):
    return [s.strip() for s in text.split(",") if s.strip()]


def read_problem(path):
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except configparser.Error as exc:
        raise InputError(f"{path}: {exc}") from None
    known = {"lie", "matched-pair", "hopf", "module", "coaction", "task"}
    extra = set(cp.sections()) - known
    if extra:
        raise InputError(f"unknown sections: {sorted(extra)}")
    return cp


class Problem:
    def __init__(self, cp, max_degree=DEFAULT_MAX_DEGREE):
        self.cp = cp
        self.max_degree = max_degree
        self.g = self._lie() if cp.has_section("lie") or cp.has_section("module") else None
        self.V = self._module() if cp.has_section("module") else None
        if self.V is not None and self.g is None:
            self.g = self.V.g
        self.pair = self._pair() if cp.has_section("matched-pair") else None
        self.H = self._hopf() if cp.has_section("hopf") else None

    def _lie(self):
        from .lie import LieAlgebra, builtin_lie, parse_lincomb
        if not self.cp.has_section("lie"):
            return None
        sec = self.cp["lie"]
        if "builtin" in sec:
            try:
                return builtin_lie(sec["builtin"])
            except KeyError as exc:
                raise InputError(str(exc)) from None
        if "basis" not in sec:
            raise InputError("[lie] needs builtin or basis")
        basis = _names(sec["basis"])
        brackets = {}
        for key, val in sec.items():
            if key in ("basis", "name"):
                continue
            pair = _names(key)
            if len(pair) != 2 or any(p not in basis for p in pair):
                raise InputError(f"[lie] bracket key must be 'A, B' over the basis, got {key!r}")
            try:
                brackets[tuple(pair)] = parse_lincomb(val, basis)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"[lie] {key}: {exc}") from None
        return LieAlgebra.from_brackets(basis, brackets, sec.get("name", "custom"))

    def _module(self):
        from .sayd import SaydData, builtin_sayd
        sec = self.cp["module"]
        if "builtin" in sec:
            try:
                V = builtin_sayd(sec["builtin"])
            except KeyError as exc:
                raise InputError(str(exc)) from None
            if self.g is not None and self.g.basis != V.g.basis:
                raise InputError("[lie] basis does not match the builtin module's Lie algebra")
            return V
        if self.g is None:
            raise InputError("[module] without builtin needs a [lie] section")
        g = self.g
        missing = [b for b in g.basis if b not in sec]
        if missing:
            raise InputError(f"[module] missing action matrices for {missing}")
        B = [parse_matrix(sec[b]) for b in g.basis]
        dim = len(B[0])
        if any(len(m) != dim or any(len(r) != dim for r in m) for m in B):
            raise InputError("[module] action matrices must be square of equal size")
        names = _names(sec["names"]) if "names" in sec else None
        if names is not None and len(names) != dim:
            raise InputError("[module] names do not match the matrix size")
        A = None
        if self.cp.has_section("coaction"):
            cs = self.cp["coaction"]
            A = [parse_matrix(cs[b]) if b in cs else [[Fraction(0)] * dim for _ in range(dim)]
                 for b in g.basis]
            if any(len(m) != dim or any(len(r) != dim for r in m) for m in A):
                raise InputError("[coaction] matrices must match the module dimension")
        return SaydData(g, B, A, names, sec.get("name", "custom"))

    def _pair(self):
        from .lie import builtin_lie
        sec = self.cp["matched-pair"]
        try:
            return builtin_lie(sec.get("builtin", ""))
        except KeyError as exc:
            raise InputError(str(exc)) from None

    def _hopf(self):
        from .hopf import builtin_hopf
        sec = self.cp["hopf"]
        try:
            return builtin_hopf(sec.get("builtin", ""), max_degree=int(sec.get("max_degree", self.max_degree)))
        except (KeyError, ValueError) as exc:
            raise InputError(str(exc)) from None

    def h_vectors(self):
        from .lie import parse_lincomb
        if not self.cp.has_section("task") or "h" not in self.cp["task"]:
            raise InputError("relative cohomology needs [task] h = <basis of h>")
        try:
            return [parse_lincomb(s, self.g.basis) for s in self.cp["task"]["h"].split(";") if s.strip()]
        except ValueError as exc:
            raise InputError(f"[task] h: {exc}") from None


# ---------------------------------------------------------------- commands

def _emit(payload, out=None):
    out = out or sys.stdout
    json.dump({"schema": SCHEMA, **payload}, out, indent=2, default=str, ensure_ascii=False)
    out.write("\n")


def cmd_validate(prob):
    from .lie import validate_lie_algebra, validate_matched_pair
    from .hopf import canonical_mpi, validate_lie_hopf
    from .sayd import check_all
    reports = []
    if prob.g is not None:
        reports.append(validate_lie_algebra(prob.g))
    if prob.pair is not None:
        reports.append(validate_matched_pair(prob.pair))
    if prob.H is not None:
        reports.append(validate_lie_hopf(prob.H.L))
        reports.append(canonical_mpi(prob.H)[1])
    conil = None
    if prob.V is not None:
        reps, conil = check_all(prob.V)
        reports.extend(reps)
        if conil is None:
            reports.append(Report("locally-conilpotent").fail("coaction is not locally conilpotent"))
    ok = all(r.ok for r in reports)
    _emit({"command": "validate", "ok": ok, "checks": [r.to_json() for r in reports],
           "conilpotency_index": conil})
    return 0 if ok else 1


def cmd_solve(prob):
    from .sayd import solve_ayd_coactions, unflatten
    if prob.g is None or prob.V is None:
        raise InputError("solve-coactions needs [lie] and [module]")
    g, V = prob.g, prob.V
    sol, constraints = solve_ayd_coactions(g, V.B)
    mats = [unflatten(b, g.dim, V.dim) for b in sol.basis]
    payload = {
        "command": "solve-coactions",
        "parameters": sol.dimension,
        "basis": [{g.basis[j]: [[str(x) for x in r] for r in m[j]] for j in range(g.dim)} for m in mats],
        "comodule_constraints": [
            {"pair": list(pair), "entry": list(entry),
             "form": {f"c{a}*c{b}": str(c) for (a, b), c in form.items()}}
            for pair, entry, form in constraints],
    }
    if not g.constants and sol.dimension:
        payload["note"] = "abelian g: coaction matrices must also commute pairwise"
    _emit(payload)
    return 0


def cmd_cohomology(prob, kind, parity):
    from . import cohomology as co
    if prob.g is None or prob.V is None:
        raise InputError("cohomology needs [lie] and [module]")
    g, V = prob.g, prob.V
    try:
        if kind == "ce":
            C = co.ce_complex(g, V)
            res = co.periodic_cohomology(C) if parity else co.cohomology(C)
        elif kind == "koszul":
            res = co.periodic_cohomology(co.cyclic_homology_lie_complex(g, V))
        elif kind == "cyclic-lie":
            res = co.periodic_cyclic_lie(g, V)
        else:
            h = prob.h_vectors()
            if parity:
                res = co.periodic_cyclic_lie(g, V, h)
            else:
                res = co.cohomology(co.ce_complex(g, V, h))
    except (co.DifferentialSquareError, ValueError) as exc:
        _emit({"command": "cohomology", "ok": False, "error": str(exc)})
        return 1
    from .complexes import w_str
    fmt = lambda x: w_str(g, V, x)  # noqa: E731
    payload = {"command": "cohomology", "complex": kind, "ok": True, **res.to_json(fmt)}
    _emit(payload)
    return 0


def cmd_golden(name, max_degree):
    from .goldens import GOLDENS, run_golden
    if name not in GOLDENS:
        raise InputError(f"unknown golden {name!r}; see --list")
    rep = run_golden(name, max_degree)
    _emit({"command": "golden", "name": name, "statement": GOLDENS[name][0], **rep.to_json()})
    return 0 if rep.ok else 1


def cmd_list():
    from .goldens import GOLDENS
    _emit({"goldens": [{"name": n, "statement": d} for n, (d, _) in GOLDENS.items()]})
    return 0


def cmd_describe(name, max_degree):
    from .lie import builtin_lie
    from .sayd import builtin_sayd
    from .hopf import builtin_hopf
    for kind, fn in (("lie", builtin_lie), ("module", builtin_sayd)):
        try:
            obj = fn(name)
        except KeyError:
            continue
        if kind == "lie" and hasattr(obj, "g1"):
            _emit({"builtin": name, "kind": "matched-pair",
                   "g1": obj.g1.basis, "g2": obj.g2.basis})
            return 0
        if kind == "lie":
            br = {f"{obj.basis[i]},{obj.basis[j]}": obj.vec_str(obj.bracket(i, j))
                  for i in range(obj.dim) for j in range(i + 1, obj.dim) if obj.bracket(i, j)}
            _emit({"builtin": name, "kind": "lie", "basis": obj.basis, "brackets": br})
            return 0
        _emit({"builtin": name, "kind": "module", "lie": obj.g.basis, "names": obj.names,
               "action": {b: [[str(x) for x in r] for r in obj.B[j]] for j, b in enumerate(obj.g.basis)},
               "coaction": {b: [[str(x) for x in r] for r in obj.A[j]] for j, b in enumerate(obj.g.basis)}})
        return 0
    try:
        H = builtin_hopf(name, max_degree=max_degree)
    except (KeyError, ValueError):
        raise InputError(f"unknown builtin {name!r}") from None
    _emit({"builtin": name, "kind": "hopf", "F_generators": list(H.F.gens), "g": H.g.basis,
           "max_degree": H.max_degree})
    return 0


# ---------------------------------------------------------------- entry point

def _default_degree():
    env = os.environ.get("HOPFCYC_MAX_DEGREE")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"HOPFCYC_MAX_DEGREE must be an integer, got {env!r}") from None
    return DEFAULT_MAX_DEGREE


def build_parser():
    p = argparse.ArgumentParser(prog="hopfcyc", description=__doc__.split("\n\n")[0])
    p.add_argument("--max-degree", type=int, default=None,
                   help="Hopf degree cap (default 6, or $HOPFCYC_MAX_DEGREE)")
    p.add_argument("--list", action="store_true", help="list golden identities and exit")
    sub = p.add_subparsers(dest="command")
    v = sub.add_parser("validate", help="run every applicable validator on a problem file")
    v.add_argument("path")
    s = sub.add_parser("solve-coactions", help="AYD + stable coaction matrices for a module")
    s.add_argument("path")
    c = sub.add_parser("cohomology", help="Lie algebra (cyclic) cohomology of a problem file")
    c.add_argument("path")
    c.add_argument("--complex", choices=["ce", "koszul", "cyclic-lie", "relative"], default="ce")
    c.add_argument("--parity", action="store_true", help="fold degrees mod 2")
    g = sub.add_parser("golden", help="verify a named identity")
    g.add_argument("name")
    d = sub.add_parser("describe", help="print a builtin Lie algebra, module or Hopf algebra")
    d.add_argument("name")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        max_degree = args.max_degree if args.max_degree is not None else _default_degree()
        if args.list:
            return cmd_list()
        if args.command is None:
            parser.print_help(sys.stderr)
            return 2
        if args.command == "golden":
            return cmd_golden(args.name, max_degree)
        if args.command == "describe":
            return cmd_describe(args.name, max_degree)
        prob = Problem(read_problem(args.path), max_degree)
        if args.command == "validate":
            return cmd_validate(prob)
        if args.command == "solve-coactions":
            return cmd_solve(prob)
        return cmd_cohomology(prob, args.complex, args.parity)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
