"""Command line front end: `lila check|deform|nijenhuis|hierarchy|verify|schema`.

Exit codes: 0 pass, 1 fail (JSON report on stdout), 2 input error.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

import jsonschema

from . import cech, gerstenhaber as gh, linfty, nijenhuis as nj, polyfield as pf
from .graded import GradedSpace
from .symforms import (FormalSum, SymForm, WindowError, as_sum, canonical_tuples, decalage,
                       identity_form, insert, rn_bracket, SkewForm)

DEFAULT_SEED = 7
FORM_KINDS = ("gla", "dgla", "curved-dgla", "lie-n", "structure", "form")


class InputError(Exception):
    def __init__(self, message, path=()):
        super().__init__(message)
        self.path = "/".join(str(p) for p in path)


# ---- JSON schema ----

_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"}]}
_FORM = {
    "type": "object",
    "required": ["arity", "degree", "entries"],
    "properties": {
        "arity": {"type": "integer", "minimum": 0},
        "degree": {"type": "integer"},
        "entries": {"type": "array", "items": {
            "type": "object", "required": ["args", "value"],
            "properties": {
                "args": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}},
                "value": {"type": "object", "additionalProperties": _RATIONAL}}}},
    },
}
SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "lila structure file",
    "type": "object",
    "required": ["kind", "data"],
    "properties": {
        "kind": {"enum": list(FORM_KINDS) + ["lie-algebra", "quadratic-lie-algebra", "lie2-quadruple",
                                             "crossed-module", "nplectic", "cocycle"]},
        "space": {"type": "object", "required": ["degrees"],
                  "properties": {"degrees": {"type": "object", "additionalProperties": {"type": "integer"}}}},
        "data": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"enum": list(FORM_KINDS)}}},
         "then": {"required": ["space"],
                  "properties": {"data": {"required": ["forms"],
                                          "properties": {"forms": {"type": "array", "items": _FORM}}}}}},
        {"if": {"properties": {"kind": {"enum": ["lie-algebra", "quadratic-lie-algebra"]}}},
         "then": {"properties": {"data": {"required": ["dim", "constants"]}}}},
        {"if": {"properties": {"kind": {"const": "nplectic"}}},
         "then": {"properties": {"data": {"required": ["m", "n", "omega"]}}}},
        {"if": {"properties": {"kind": {"const": "cocycle"}}},
         "then": {"properties": {"data": {"required": ["G", "H", "rho", "action", "nerve", "cochain"]}}}},
    ],
}


# ---- rationals and spaces ----

def parse_q(x, path):
    if isinstance(x, bool):
        raise InputError("booleans are not rationals", path)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.replace(" ", ""))
        except (ValueError, ZeroDivisionError):
            raise InputError("malformed rational %r" % x, path) from None
    raise InputError("expected a rational, got %r" % (x,), path)


def q_str(c):
    c = Fraction(c)
    return "%d/%d" % (c.numerator, c.denominator)


def space_to_json(E):
    return {"degrees": {str(d): n for d, n in E.components.items()}}


def space_from_json(obj, path=("space",)):
    try:
        return GradedSpace({int(k): int(v) for k, v in obj["degrees"].items()})
    except (KeyError, ValueError, TypeError) as e:
        raise InputError("bad space: %s" % e, path) from None


def _label(x, E, path):
    try:
        lab = (int(x[0]), int(x[1]))
    except (TypeError, ValueError, IndexError):
        raise InputError("bad basis label %r" % (x,), path) from None
    if lab not in E.pos:
        raise InputError("basis label %r not in space" % (lab,), path)
    return lab


def _value_label(key, E, path):
    k = key.strip().strip("()").split(",")
    if len(k) != 2:
        raise InputError("bad target label %r" % key, path)
    return _label(k, E, path)


def form_from_json(obj, E, path):
    table = {}
    for n, ent in enumerate(obj["entries"]):
        p = path + ("entries", n)
        args = tuple(_label(a, E, p + ("args", i)) for i, a in enumerate(ent["args"]))
        if len(args) != obj["arity"]:
            raise InputError("entry has %d arguments, arity is %d" % (len(args), obj["arity"]), p)
        val = {_value_label(k, E, p + ("value", k)): parse_q(v, p + ("value", k)) for k, v in ent["value"].items()}
        cur = table.setdefault(args, {})
        for y, c in val.items():
            cur[y] = cur.get(y, 0) + c
    try:
        return FormalSum.from_labels(E, obj["degree"], table)
    except ValueError as e:
        raise InputError(str(e), path) from None


def forms_to_json(mu):
    mu = as_sum(mu)
    out = []
    labs = mu.space.labels
    for k in mu.arities():
        entries = []
        for t in sorted(t for t in mu.entries if len(t) == k):
            v = mu.entries[t]
            entries.append({"args": [[str(labs[p][0]), labs[p][1]] for p in t],
                            "value": {"(%d,%d)" % labs[y]: q_str(c) for y, c in sorted(v.items())}})
        out.append({"arity": k, "degree": mu.degree, "entries": entries})
    return out


def structure_to_json(kind, mu):
    mu = as_sum(mu)
    return {"kind": kind, "space": space_to_json(mu.space), "data": {"forms": forms_to_json(mu)}}


def _json_default(x):
    if isinstance(x, Fraction):
        return q_str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=repr)
    return str(x)


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1, default=_json_default) + "\n"


# ---- loading ----

class Loaded:
    def __init__(self, kind, mu=None, extra=None):
        self.kind, self.mu, self.extra = kind, mu, extra or {}


def _lie_algebra(data, path):
    try:
        n = int(data["dim"])
        consts = {}
        for r, row in enumerate(data["constants"]):
            i, j, k, c = row
            cur = consts.setdefault((int(i), int(j)), {})
            cur[int(k)] = cur.get(int(k), 0) + parse_q(c, path + ("constants", r, 3))
        return linfty.LieAlgebraData(n, consts, data.get("name"))
    except InputError:
        raise
    except (KeyError, ValueError, TypeError) as e:
        raise InputError("bad Lie algebra data: %s" % e, path) from None


def _matrix(rows, path):
    return [[parse_q(x, path + (r, c)) for c, x in enumerate(row)] for r, row in enumerate(rows)]


def load_document(doc):
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as e:
        raise InputError(e.message, tuple(e.absolute_path)) from None
    kind, data = doc["kind"], doc["data"]
    if kind in FORM_KINDS:
        E = space_from_json(doc["space"])
        forms = [form_from_json(f, E, ("data", "forms", n)) for n, f in enumerate(data["forms"])]
        degs = {f.degree for f in forms if f.entries}
        if len(degs) > 1:
            raise InputError("forms of different map-degrees", ("data", "forms"))
        mu = FormalSum(E, degs.pop() if degs else (0 if kind == "form" else 1))
        for f in forms:
            mu = mu + f if f.entries else mu
        return Loaded(kind, mu)
    if kind == "lie-algebra":
        A = _lie_algebra(data, ("data",))
        return Loaded(kind, linfty.symmetric_l2(A), {"algebra": A})
    if kind == "quadratic-lie-algebra":
        A = _lie_algebra(data, ("data",))
        Qa = gh.QuadraticLieAlgebra(A, _matrix(data.get("gram", []), ("data", "gram")))
        bad = Qa.check()
        mu = None if bad else gh.quadratic_to_lie2(Qa)
        return Loaded(kind, mu, {"algebra": A, "quadratic": Qa, "problem": bad})
    if kind == "lie2-quadruple":
        try:
            q = linfty.Lie2Quadruple(
                int(data["n2"]), int(data["n1"]),
                _matrix(data["d"], ("data", "d")) if "d" in data else None,
                {(int(i), int(j)): [parse_q(x, ("data", "bracket")) for x in v] for i, j, v in data.get("bracket", [])},
                [_matrix(m, ("data", "chi", a)) for a, m in enumerate(data["chi"])] if "chi" in data else None,
                {(int(i), int(j), int(k)): [parse_q(x, ("data", "omega")) for x in v]
                 for i, j, k, v in data.get("omega", [])})
        except InputError:
            raise
        except (KeyError, ValueError, TypeError) as e:
            raise InputError("bad quadruple: %s" % e, ("data",)) from None
        return Loaded(kind, q.to_linfty(), {"quadruple": q})
    if kind == "crossed-module":
        g = _lie_algebra(data["g"], ("data", "g"))
        h = _lie_algebra(data["h"], ("data", "h"))
        cmod = linfty.CrossedModuleLieAlg(g, h, _matrix(data["d"], ("data", "d")),
                                          [_matrix(m, ("data", "chi", a)) for a, m in enumerate(data["chi"])])
        w = linfty.crossed_module_witness(cmod)
        mu = None if w else linfty.from_crossed_module(cmod)
        return Loaded(kind, mu, {"problem": w})
    if kind == "nplectic":
        try:
            m, n = int(data["m"]), int(data["n"])
            C = pf.Calculus(m)
            terms = {tuple(int(i) for i in idx): parse_q(c, ("data", "omega", r, 1))
                     for r, (idx, c) in enumerate(data["omega"])}
            P = pf.PlecticStructure(C, n, pf.PolyForm(C, n + 1, {k: C.const(v) for k, v in terms.items()}))
        except InputError:
            raise
        except (ValueError, TypeError, KeyError) as e:
            raise InputError("bad n-plectic data: %s" % e, ("data",)) from None
        return Loaded(kind, None, {"plectic": P})
    if kind == "cocycle":
        try:
            G = cech.FiniteGroup(data["G"])
            H = cech.FiniteGroup(data["H"])
            cm = cech.CrossedModuleGrp(G, H, data["rho"], data["action"])
            nv = data["nerve"]
            if "complete" in nv:
                nerve = cech.Nerve.complete(int(nv["complete"]))
            else:
                nerve = cech.Nerve(nv["indices"], nv.get("pairs", []), nv.get("triples", []), nv.get("quadruples", []))
            co = data["cochain"]
            h = {}
            for i, j, v in co.get("h", []):
                i, j, v = int(i), int(j), int(v)
                h[(min(i, j), max(i, j))] = v if i < j else H.inv(v)
            c = cech.Cochain(h,
                             {tuple(int(x) for x in r[:3]): int(r[3]) for r in co.get("g", [])})
            for t in c.g:
                if list(t) != sorted(set(t)) or len(t) != 3:
                    raise InputError("g entries need increasing triples, got %r" % (t,), ("data", "cochain", "g"))
        except (cech.GroupError, ValueError, TypeError, KeyError) as e:
            raise InputError("bad cocycle data: %s" % e, ("data",)) from None
        return Loaded(kind, None, {"cm": cm, "nerve": nerve, "cochain": c})
    raise InputError("unknown kind %r" % kind, ("kind",))


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror)) from None
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON: %s" % e) from None
    return load_document(doc)


def parse_form_expr(expr, E):
    """Sum of terms "c*item" with item builtin:euler, builtin:identity, builtin:zero or a form file."""
    total = None
    for term in expr.split("+"):
        term = term.strip()
        coef = Fraction(1)
        if "*" in term:
            c, term = term.split("*", 1)
            coef = parse_q(c.strip(), ("--form",))
        if term == "builtin:euler":
            f = as_sum(nj.euler_map(E))
        elif term == "builtin:identity":
            f = as_sum(identity_form(E))
        elif term == "builtin:zero":
            f = FormalSum(E, 0)
        else:
            ld = load(term)
            if ld.mu is None:
                raise InputError("%s does not contain forms" % term)
            f = ld.mu
            if f.space != E:
                raise InputError("%s lives on a different space" % term, ("space",))
        f = coef * f
        total = f if total is None else total + f
    return total


# ---- commands ----

def _emit(report, started):
    report["timing"] = round(time.time() - started, 3)
    v = report.get("verdict")
    if v == "pass":
        report.pop("witness", None)
    else:
        report.setdefault("witness", None)
    sys.stdout.write(dumps(report))
    sys.stderr.write("%s\n" % v)
    return 0 if v == "pass" else 1


def cmd_check(args):
    started = time.time()
    ld = load(args.file)
    report = {"kind": ld.kind}
    if ld.kind == "nplectic":
        r = pf.sampled_verify("jacobi", ld.extra["plectic"], args.samples, args.seed)
        report.update(r.as_dict())
        return _emit(report, started)
    if ld.kind == "cocycle":
        r = cech.check_cocycle(ld.extra["cochain"], ld.extra["nerve"], ld.extra["cm"])
        report.update(r.as_dict())
        return _emit(report, started)
    if ld.mu is None:
        report.update({"verdict": "fail", "witness": list(map(str, ld.extra.get("problem") or ()))})
        return _emit(report, started)
    if ld.kind in ("lie-algebra", "quadratic-lie-algebra"):
        w = ld.extra["algebra"].jacobi_witness()
        if w is not None:
            report["jacobi_triple"] = list(w)
    curved = args.curved or ld.kind == "curved-dgla"
    r = linfty.check_curved(ld.mu) if curved else linfty.check_linfty(ld.mu)
    report.update(r.as_dict())
    if ld.kind == "lie2-quadruple":
        report["axioms"] = linfty.quadruple_axioms(ld.extra["quadruple"])
    return _emit(report, started)


def _form_loaded(path):
    ld = load(path)
    if ld.mu is None or ld.kind in ("nplectic", "cocycle"):
        raise InputError("%s is not a form based structure" % path, ("kind",))
    return ld


def cmd_deform(args):
    ld = _form_loaded(args.file)
    if args.times < 0:
        raise InputError("--times must be non-negative", ("--times",))
    N = parse_form_expr(args.by, ld.mu.space)
    out = nj.deform(ld.mu, N, args.times)
    kind = ld.kind if ld.kind in FORM_KINDS else "structure"
    text = dumps(structure_to_json(kind, out))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_nijenhuis(args):
    started = time.time()
    ld = _form_loaded(args.file)
    E = ld.mu.space
    N = parse_form_expr(args.form, E)
    report = {"mode": args.mode}
    if args.mode == "weak":
        report.update(nj.is_weak_nijenhuis(N, ld.mu).as_dict())
        return _emit(report, started)
    K = parse_form_expr(args.square, E) if args.square else nj.find_square(N, ld.mu)
    if K is None:
        report.update({"verdict": "fail", "witness": None, "detail": "no square of the form aN + bS + cId"})
        return _emit(report, started)
    r = nj.is_nijenhuis(N, ld.mu, K)
    if args.mode == "coboundary":
        report.update({"verdict": "pass" if r.square_ok else "fail", "commute": r.commute_ok,
                       "witness": r.witness})
    else:
        report.update(r.as_dict())
    return _emit(report, started)


def cmd_hierarchy(args):
    started = time.time()
    ld = _form_loaded(args.file)
    E = ld.mu.space
    N = parse_form_expr(args.form, E)
    K = parse_form_expr(args.square, E) if args.square else nj.find_square(N, ld.mu)
    if K is None:
        raise InputError("no square found; pass --square", ("--square",))
    try:
        h = nj.hierarchy(ld.mu, N, K, args.depth)
    except ValueError as e:
        return _emit({"verdict": "fail", "witness": None, "detail": str(e)}, started)
    levels = []
    for k in range(len(h.levels)):
        levels.append({key: v for key, v in h.flags.items() if key.endswith("[%d]" % k)})
    report = {"verdict": "pass" if h.ok else "fail", "depth": args.depth, "levels": levels,
              "compatible": {k: v for k, v in h.flags.items() if k.startswith("compatible")}}
    if not h.ok:
        report["witness"] = [k for k, v in h.flags.items() if not v]
    return _emit(report, started)


def cmd_verify(args):
    if args.list:
        for name, (desc, _) in sorted(SUITES.items()):
            sys.stdout.write("%s\t%s\n" % (name, desc))
        return 0
    if args.suite not in SUITES:
        raise InputError("unknown suite %r" % args.suite, ("--suite",))
    started = time.time()
    ok, detail = SUITES[args.suite][1](args.seed, args.samples)
    report = {"suite": args.suite, "seed": args.seed, "verdict": "pass" if ok else "fail", "detail": detail}
    if not ok:
        report["witness"] = detail.get("witness") if isinstance(detail, dict) else None
    return _emit(report, started)


def cmd_schema(args):
    sys.stdout.write(dumps(SCHEMA))
    return 0


# ---- verification suites ----

def _space_for(rng, total=6):
    degs = list(range(-3, 2))
    comps = {}
    left = rng.randint(2, total)
    while left:
        d = rng.choice(degs)
        comps[d] = comps.get(d, 0) + 1
        left -= 1
    return GradedSpace(comps)


def _random_sum(E, rng, degree, max_arity=3, cap=None):
    out = FormalSum(E, degree, cap=cap)
    for k in range(1, max_arity + 1):
        f = linfty.random_form(E, k, degree, rng, density=0.4, cap=cap)
        out = out + f
    return out


def suite_rn_graded_lie(seed, samples=None):
    """Graded antisymmetry and Jacobi of the RN bracket on random triples."""
    rng = random.Random(seed)
    count = samples or 200
    for s in range(count):
        E = _space_for(rng)
        a, b, c = (_random_sum(E, rng, rng.randint(-1, 1), cap=8) for _ in range(3))
        ab = rn_bracket(a, b)
        sign = -1 if (a.degree * b.degree) % 2 == 0 else 1
        if ab != sign * rn_bracket(b, a):
            return False, {"witness": {"sample": s, "identity": "antisymmetry"}}
        j = (rn_bracket(a, rn_bracket(b, c)) - rn_bracket(rn_bracket(a, b), c)
             - ((-1) ** (a.degree * b.degree)) * rn_bracket(b, rn_bracket(a, c)))
        if j.entries:
            return False, {"witness": {"sample": s, "identity": "jacobi"}}
    return True, {"samples": count}


def _mutant(A, rng):
    """Bump structure constants, accumulating, until Jacobi fails."""
    c = {key: dict(v) for key, v in A.c.items()}
    while True:
        key = rng.choice([(0, 1), (0, 2), (1, 2)])
        k = rng.randrange(3)
        c.setdefault(key, {})
        c[key][k] = c[key].get(k, 0) + rng.choice([1, -1, 2])
        B = linfty.LieAlgebraData(3, c)
        if not B.is_lie():
            return B


def suite_oracle(seed, samples=None):
    """check_linfty and the direct jacobiator agree on random and engineered candidates."""
    rng = random.Random(seed)
    count = samples or 100
    fails = engineered = 0
    for s in range(count):
        if s % 4 == 1:
            mu = as_sum(linfty.symmetric_l2(_mutant(gh.random_lie(3, rng), rng)))
        elif s % 4 == 3:
            mu = as_sum(linfty.symmetric_l2(gh.random_lie(3, rng)))
        else:
            E = _space_for(rng, 5)
            mu = _random_sum(E, rng, 1, 2, cap=8)
        a, b = linfty.check_linfty(mu), linfty.check_linfty_direct(mu)
        fails += not a.ok
        engineered += s % 4 == 1 and not a.ok
        if a.ok != b.ok or a.witness != b.witness:
            return False, {"witness": {"sample": s}}
    return True, {"samples": count, "failures_seen": fails, "engineered_failures": engineered}


def _decalage_corpus():
    """Four 3-dimensional Lie algebras and six mutants that break Jacobi."""
    base = [gh.so3(), gh.sl2(), gh.heisenberg(), gh.direct_sum(gh.affine(), gh.abelian(1))]
    mutants = []
    for k, A in enumerate(base + base[:2]):
        for shift in range(9):
            c = {key: dict(v) for key, v in A.c.items()}
            keys = sorted(set(c) | {(0, 1), (0, 2), (1, 2)})
            key = keys[(k + shift) % len(keys)]
            target = (k + shift // len(keys)) % 3
            c.setdefault(key, {})
            c[key][target] = c[key].get(target, 0) + 1
            B = linfty.LieAlgebraData(3, c)
            if not B.is_lie():
                mutants.append(B)
                break
    return base + mutants


def suite_decalage(seed, samples=None):
    """Skew Jacobi iff [mu,mu]=0 after decalage, on a fixed 3-dimensional corpus."""
    out = []
    for A in _decalage_corpus():
        skew = linfty.skew_l2(A)
        a = linfty.check_skew_linfty({2: skew}, skew.space).ok
        b = linfty.check_linfty(decalage(skew)).ok
        out.append([a, b, A.is_lie()])
        if not (a == b == A.is_lie()):
            return False, {"witness": {"algebra": repr(A)}, "results": out}
    return True, {"results": out}


def suite_gerstenhaber(seed, samples=None):
    """[N, l2] = l2 of the deformed bracket and [alpha, l2] = (d alpha) on random data."""
    rng = random.Random(seed)
    count = samples or 50
    for s in range(count):
        n = rng.choice([2, 3, 4])
        A = gh.random_lie(n, rng)
        W = gh.WedgeAlgebra(n)
        l2 = gh.to_l2(A, W)
        N = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        lhs = rn_bracket(gh.extend_derivation(W, N), l2)
        if lhs != as_sum(gh.to_l2(gh.deformed_bracket(A, N), W)):
            return False, {"witness": {"sample": s, "identity": "derivation"}}
        k = rng.randint(1, min(3, n))
        alpha = {}
        from itertools import combinations
        for t in combinations(range(n), k):
            c = rng.randint(-2, 2)
            if c:
                alpha[t] = Fraction(c)
        lhs = rn_bracket(gh.extend_form(W, alpha, k), l2)
        rhs = gh.extend_form(W, gh.d_form(A, alpha, k), k + 1)
        if lhs != as_sum(rhs):
            return False, {"witness": {"sample": s, "identity": "form", "k": k}}
    return True, {"samples": count}


def suite_point_courant(seed, samples=None):
    """Quadratic Lie algebras give Lie 2-algebras; Courant Nijenhuis instances pass."""
    res = {}
    so3 = gh.QuadraticLieAlgebra(gh.so3(), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    sl2 = gh.QuadraticLieAlgebra(gh.sl2(), [[2, 0, 0], [0, 0, 1], [0, 1, 0]])
    for name, Qa in (("so3", so3), ("sl2", sl2)):
        res[name] = linfty.check_linfty(gh.quadratic_to_lie2(Qa)).ok
    two = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    res["scalar"] = gh.courant_nijenhuis(so3, two, 4, 8).ok
    hyp = gh.QuadraticLieAlgebra(gh.abelian(2), [[0, 1], [1, 0]])
    res["hyperbolic"] = gh.courant_nijenhuis(hyp, [[2, 0], [0, 3]], 5, 13).ok
    skew = gh.QuadraticLieAlgebra(gh.abelian(2), [[1, 0], [0, 1]])
    res["skew"] = gh.courant_nijenhuis(skew, [[0, -1], [1, 0]], 0, -2).ok
    ok = all(res.values())
    return ok, dict(res, witness=[k for k, v in res.items() if not v] or None)


def suite_standard_courant(seed, samples=None):
    """Dorfman axioms, Lie 2-algebra (l3 = -T) and the scalar Nijenhuis case on T + T*."""
    count = samples or 20
    C = pf.StandardCourant(2)
    res = {"leibniz": C.leibniz_check(count, seed)[0], "axioms": C.axioms_check(count, seed)[0],
           "jacobi": pf.courant_jacobi(C, count, seed)[0]}
    I = [[3 if r == c else 0 for c in range(4)] for r in range(4)]
    res["scalar_deformation"] = pf.courant_deformation_check(C, 6, I, None, count, seed).ok
    ok = all(res.values())
    return ok, dict(res, witness=[k for k, v in res.items() if not v] or None)


def suite_cech(seed, samples=None):
    """Abelian Z2 cocycles on the complete 4-index nerve match the F2 rank count."""
    nerve = cech.Nerve.complete(4)
    cm = cech.abelian_crossed_module(cech.cyclic_group(2))
    found = len(cech.enumerate_cocycles(nerve, cm))
    oracle = cech.abelian_cocycle_count(nerve, 2)
    return found == oracle, {"enumerated": found, "oracle": oracle,
                             "witness": None if found == oracle else [found, oracle]}


def suite_iota(seed, samples=None):
    """A 2-form N with [i_N N, N] != 0."""
    N, NN, br = nj.iota_square_regression()
    return bool(br.entries), {"nonzero_entries": len(br.entries), "witness": None}


def _nplectic_suite(identity, m):
    def run(seed, samples=None):
        r = pf.sampled_verify(identity, pf.volume_plectic(m), samples or 50, seed)
        d = r.as_dict()
        return r.ok, {"checks": d["checks"], "witness": d.get("witness")}
    return run


SUITES = {
    "rn-graded-lie": ("RN bracket: graded antisymmetry and Jacobi on random forms", suite_rn_graded_lie),
    "oracle-equivalence": ("bracket-based and direct L-infinity checks agree", suite_oracle),
    "decalage": ("skew and symmetric Jacobi agree on the 3-dimensional corpus", suite_decalage),
    "gerstenhaber-extensions": ("extended derivations and forms against l2 on wedge algebras", suite_gerstenhaber),
    "point-courant": ("quadratic Lie algebras and point Courant Nijenhuis instances", suite_point_courant),
    "standard-courant": ("Dorfman axioms, Lie 2-algebra and scalar deformation on T + T*", suite_standard_courant),
    "cech-abelian": ("Z2 cocycle enumeration against the F2 rank count", suite_cech),
    "iota-regression": ("i_N N is not a square in general", suite_iota),
}
for _m in (3, 4):
    for _ident, _desc in pf.identities().items():
        SUITES["nplectic%d-%s" % (_m, _ident)] = ("volume form on Q^%d: %s" % (_m, _desc), _nplectic_suite(_ident, _m))


# ---- entry point ----

def build_parser():
    p = argparse.ArgumentParser(prog="lila", description="exact checks for L-infinity structures")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="check [mu,mu]=0 (or the kind specific condition)")
    c.add_argument("file")
    c.add_argument("--curved", action="store_true")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--samples", type=int, default=50)
    c.set_defaults(func=cmd_check)
    d = sub.add_parser("deform", help="write [N,...[N,mu]]")
    d.add_argument("file")
    d.add_argument("--by", required=True)
    d.add_argument("--times", type=int, default=1)
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_deform)
    n = sub.add_parser("nijenhuis", help="Nijenhuis test for a degree 0 form")
    n.add_argument("file")
    n.add_argument("--form", required=True)
    n.add_argument("--square")
    n.add_argument("--mode", choices=["weak", "square", "coboundary"], default="square")
    n.set_defaults(func=cmd_nijenhuis)
    h = sub.add_parser("hierarchy", help="deformation hierarchy with full verification")
    h.add_argument("file")
    h.add_argument("--form", required=True)
    h.add_argument("--square")
    h.add_argument("--depth", type=int, default=4)
    h.set_defaults(func=cmd_hierarchy)
    v = sub.add_parser("verify", help="run a registered verification suite")
    v.add_argument("--suite")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--samples", type=int)
    v.add_argument("--list", action="store_true")
    v.set_defaults(func=cmd_verify)
    s = sub.add_parser("schema", help="print the JSON schema of structure files")
    s.set_defaults(func=cmd_schema)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except InputError as e:
        err = {"verdict": "error", "error": str(e)}
        if e.path:
            err["path"] = e.path
        sys.stdout.write(dumps(err))
        sys.stderr.write("error: %s%s\n" % (e, " at " + e.path if e.path else ""))
        return 2
    except WindowError as e:
        req = getattr(e, "required", None)
        sys.stdout.write(dumps({"verdict": "error", "error": str(e), "required_cap": req}))
        sys.stderr.write("error: %s; set LILA_MAX_ARITY=%s\n" % (e, req))
        return 2


if __name__ == "__main__":
    sys.exit(main())
