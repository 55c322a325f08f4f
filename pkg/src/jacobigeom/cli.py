"""Command line front end: model files, command dispatch and reports.

A model file is JSON with a ``definitions`` object.  Each definition has a
``kind`` tag; expressions are always strings in the expression grammar so
rationals stay exact.  Kinds:

``patch``        ``{"vars": ["x", "y"]}``
``expression``   ``{"patch": P, "expr": "exp(-t)*(x+t)"}``
``multivector``  ``{"patch": P, "components": {"x,y": "1"}}`` (``form`` likewise)
``jacobi``       ``{"patch": P, "Lambda": {...}, "E": {...}}`` (tensor data or names)
``contact``      ``{"patch": P, "eta": {"x": "-y", "z": "1"}}``
``algebroid``    ``{"base": P, "rank": r, "anchor": [[...]], "structure": {"1,2": [...]}}``
                 or ``{"standard": "tm_times_r", "base": P}`` /
                 ``{"standard": "jacobi_cotangent", "jacobi": J}``
``cocycle``      ``{"algebroid": A, "components": [...]}``
``bialgebroid``  ``{"A": A, "phi0": c, "Astar": B, "X0": c}`` or ``{"canonical": J}``
``groupoid``     explicit maps (see :class:`ConcreteGroupoid`) or ``{"builtin": "pair", "base": P}``
``instance``     ``{"groupoid": G, "jacobi": J, "sigma": "t"}`` or
                 ``{"builtin": "banal", "base": P, "jacobi": J}``

Frame indices in ``structure`` keys are 1-based.
"""
import argparse
import hashlib
import json
import sys

from .algebroid import AlgebroidStructure, Multisection, build_standard, tm_times_r
from .bialgebroid import (GenLieBialgebroid, bialgebroidize, canonical_pair,
                          induced_base_jacobi, verify_compatibility)
from .groupoid import (ConcreteGroupoid, JacobiGroupoidInstance, base_morphism_check,
                       builtin_examples, contact_groupoid_check, cotangent_contact_groupoid,
                       derive_gen_bialgebroid, linear_dual_check, pair_groupoid,
                       structural_properties, verify_groupoid, verify_jacobi_groupoid,
                       verify_p38)
from .jacobi import (JacobiStructure, PreconditionError, contact_to_jacobi,
                     poissonize, verify_contact_identities, verify_jacobi)
from .multivec import DifferentialForm, Multivector
from .symring import ExpPoly, ParseError, PatchVars, StructuralError, to_string
from .verdict import Verdict

SCHEMA = "jacobigeom.report/1"
KINDS = ("patch", "expression", "multivector", "form", "jacobi", "contact", "algebroid",
         "cocycle", "bialgebroid", "groupoid", "instance")


class ModelError(ValueError):
    """Bad model file: syntax, unresolved reference or kind mismatch."""


# model files

class Model:
    """Parsed model: raw definitions plus the constructed objects."""

    def __init__(self, definitions, text=""):
        self.definitions = definitions
        self.text = text
        self.objects = {}
        self._active = []
        for name in definitions:
            self.get(name)

    def kind(self, name):
        return self.definitions[name]["kind"]

    def get(self, name, kind=None):
        if name not in self.definitions:
            raise ModelError("unresolved reference %r" % name)
        d = self.definitions[name]
        if kind is not None:
            kinds = (kind,) if isinstance(kind, str) else kind
            if d.get("kind") not in kinds:
                raise ModelError("%r has kind %r, expected %s"
                                 % (name, d.get("kind"), " or ".join(kinds)))
        if name in self.objects:
            return self.objects[name]
        if name in self._active:
            raise ModelError("cyclic reference: %s" % " -> ".join(self._active + [name]))
        self._active.append(name)
        try:
            obj = _BUILDERS[d["kind"]](self, name, d)
        except ParseError as exc:
            raise ModelError("definition %r: %s" % (name, self._locate(exc))) from exc
        except (StructuralError, KeyError, TypeError) as exc:
            if isinstance(exc, ModelError):
                raise
            raise ModelError("definition %r: %s" % (name, exc)) from exc
        finally:
            self._active.pop()
        self.objects[name] = obj
        return obj

    def _locate(self, exc):
        """Parse error message with the position in the model file, when the
        expression occurs there verbatim."""
        msg = str(exc).split(" at line ")[0]
        needle = json.dumps(exc.text)[1:-1]
        at = self.text.find('"%s"' % needle) if exc.text else -1
        if at < 0:
            return str(exc)
        pos = at + 1 + len(json.dumps(exc.text[:exc.pos])) - 2
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return "%s at line %d, column %d (token %r)" % (msg, line, col, exc.token)

    def digest(self, name):
        blob = json.dumps(self.definitions[name], sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def parse_model(text):
    """Parse model text; raises :class:`ModelError` with line and column on bad input."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError("syntax error at line %d, column %d: %s"
                         % (exc.lineno, exc.colno, exc.msg)) from exc
    if not isinstance(data, dict) or not isinstance(data.get("definitions"), dict):
        raise ModelError("model must be an object with a 'definitions' object")
    for name, d in data["definitions"].items():
        if not isinstance(d, dict) or d.get("kind") not in KINDS:
            raise ModelError("definition %r: unknown kind %r"
                             % (name, d.get("kind") if isinstance(d, dict) else None))
    return Model(data["definitions"], text)


def serialize_model(model):
    return json.dumps({"definitions": model.definitions}, sort_keys=True, indent=2) + "\n"


def _patch(model, ref):
    if isinstance(ref, list):
        return PatchVars(ref)
    return model.get(ref, "patch")


def _expr(model, patch, val):
    if isinstance(val, str) and val in model.definitions and \
            model.definitions[val].get("kind") == "expression":
        f = model.get(val)
        if f.patch != patch:
            raise ModelError("expression %r is on another patch" % val)
        return f
    if isinstance(val, (int,)) and not isinstance(val, bool):
        return patch.const(val)
    if not isinstance(val, str):
        raise ModelError("expressions must be strings, got %r" % (val,))
    return patch.parse(val)


def _tensor(model, patch, val, cls, grade, kind):
    if isinstance(val, str):
        t = model.get(val, kind)
        if t.patch != patch:
            raise ModelError("%r is on another patch" % val)
        return t
    if not val:
        return cls.zero(patch, grade)
    t = cls.from_dict(patch, {k: _expr(model, patch, f) for k, f in val.items()})
    if t.coeffs and t.grade != grade:
        raise ModelError("expected grade %d, got %d" % (grade, t.grade))
    return t


def _b_patch(model, name, d):
    names = d["vars"]
    if len(set(names)) != len(names):
        raise ModelError("definition %r: repeated variable" % name)
    return PatchVars(names)


def _b_expression(model, name, d):
    return _expr(model, _patch(model, d["patch"]), d["expr"])


def _b_multivector(model, name, d):
    p = _patch(model, d["patch"])
    return Multivector.from_dict(p, {k: _expr(model, p, f) for k, f in d["components"].items()}) \
        if d["components"] else Multivector.zero(p, int(d.get("grade", 0)))


def _b_form(model, name, d):
    p = _patch(model, d["patch"])
    return DifferentialForm.from_dict(p, {k: _expr(model, p, f)
                                          for k, f in d["components"].items()}) \
        if d["components"] else DifferentialForm.zero(p, int(d.get("grade", 0)))


def _b_jacobi(model, name, d):
    p = _patch(model, d["patch"])
    Lam = _tensor(model, p, d.get("Lambda", {}), Multivector, 2, "multivector")
    E = _tensor(model, p, d.get("E", {}), Multivector, 1, "multivector")
    return JacobiStructure.candidate(Lam, E)


def _b_contact(model, name, d):
    p = _patch(model, d["patch"])
    return _tensor(model, p, d["eta"], DifferentialForm, 1, "form")


def _b_algebroid(model, name, d):
    if "standard" in d:
        if d["standard"] == "tm_times_r":
            A, phi = tm_times_r(_patch(model, d["base"]))
        elif d["standard"] == "jacobi_cotangent":
            A, phi = build_standard("jacobi_cotangent", model.get(d["jacobi"], "jacobi"))
        else:
            raise ModelError("unknown standard algebroid %r" % d["standard"])
        A.cocycle = phi
        return A
    base = _patch(model, d["base"])
    r = int(d["rank"])
    anchor = [[_expr(model, base, c) for c in row] for row in d["anchor"]]
    structure = {}
    for key, comps in d.get("structure", {}).items():
        i, j = (int(k) - 1 for k in key.split(","))
        cs = [_expr(model, base, c) for c in comps]
        if i > j:
            i, j, cs = j, i, [-c for c in cs]
        structure[(i, j)] = cs
    A = AlgebroidStructure(base, r, anchor, structure, name=name)
    A.cocycle = None
    return A


def _b_cocycle(model, name, d):
    A = model.get(d["algebroid"], "algebroid")
    return [_expr(model, A.base, c) for c in d["components"]]


def _cocycle(model, A, val):
    if val is None:
        return None
    if isinstance(val, str):
        return model.get(val, "cocycle")
    return [_expr(model, A.base, c) for c in val]


def _b_bialgebroid(model, name, d):
    if "canonical" in d:
        J = model.get(d["canonical"], "jacobi")
        return canonical_pair(JacobiStructure(J.Lam, J.E))
    A = model.get(d["A"], "algebroid")
    As = model.get(d["Astar"], "algebroid")
    phi = _cocycle(model, A, d.get("phi0"))
    X0 = _cocycle(model, As, d.get("X0"))
    return GenLieBialgebroid(A, phi if phi is not None else A.cocycle, As,
                             X0 if X0 is not None else As.cocycle)


def _b_groupoid(model, name, d):
    if "builtin" in d:
        if d["builtin"] != "pair":
            raise ModelError("groupoid builtins: pair (banal and the others are instances)")
        return pair_groupoid(_patch(model, d["base"]) if "base" in d else None)
    G = _patch(model, d["G"])
    M = _patch(model, d["M"])
    C = _patch(model, d["C"])
    return ConcreteGroupoid(G, M, d["alpha"], d["beta"], d["epsilon"], d["iota"], C,
                            d["second"], d["mult"], d["pack"], frame=d.get("frame"),
                            bisections=d.get("bisections"), name=name)


def _b_instance(model, name, d):
    if "builtin" in d:
        kw = {}
        b = d["builtin"]
        if b == "banal":
            if "jacobi" in d:
                J = model.get(d["jacobi"], "jacobi")
                kw = {"M": J.patch, "Lam": J.Lam, "E": J.E}
            elif "base" in d:
                kw = {"M": _patch(model, d["base"])}
        elif b == "dual":
            kw = {"L": model.get(d["algebroid"], "algebroid")}
            if d.get("omega0") is not None:
                L = kw["L"]
                kw["omega0"] = Multisection.from_list(L.base, [_expr(model, L.base, c)
                                                               for c in d["omega0"]])
        elif b == "jacobi_lie_group":
            kw = {k: d[k] for k in ("k", "x2") if k in d}
        inst = builtin_examples(b, **kw)
        inst.name = name
        return inst
    G = model.get(d["groupoid"], "groupoid")
    J = model.get(d["jacobi"], "jacobi")
    if J.patch != G.G:
        raise ModelError("Jacobi structure of %r is not on the groupoid patch" % name)
    sigma = _expr(model, G.G, d.get("sigma", "0"))
    return JacobiGroupoidInstance(G, J, sigma, name)


_BUILDERS = {"patch": _b_patch, "expression": _b_expression, "multivector": _b_multivector,
             "form": _b_form, "jacobi": _b_jacobi, "contact": _b_contact,
             "algebroid": _b_algebroid, "cocycle": _b_cocycle, "bialgebroid": _b_bialgebroid,
             "groupoid": _b_groupoid, "instance": _b_instance}


# reports

class Report:
    def __init__(self, command, seed, inputs=None):
        self.command = command
        self.seed = seed
        self.inputs = list(inputs or [])
        self.verdict = Verdict(command)
        self.data = {}

    def extend(self, v, prefix=""):
        self.verdict.extend(v, prefix)

    @property
    def passed(self):
        return self.verdict.passed and bool(self.verdict.checks)

    def to_dict(self):
        points = []
        for c in self.verdict.checks:
            if c.points:
                points.append({"id": c.id, "points": [[str(x) for x in p] for p in c.points]})
        return {"schema": SCHEMA, "command": self.command, "seed": self.seed,
                "inputs": self.inputs,
                "checks": [c.to_dict() for c in self.verdict.checks],
                "verdict": "pass" if self.passed else "fail",
                "samples": points, "data": self.data}


def emit_report(report, fmt="text"):
    """Report bytes: ``structured`` is sorted JSON, ``text`` one line per check."""
    if fmt == "structured":
        return (json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n").encode()
    lines = ["command: %s" % report.command, "seed: %s" % report.seed]
    for inp in report.inputs:
        lines.append("input: %s (%s)" % (inp["name"], inp["sha256"][:16]))
    for c in report.verdict.checks:
        lines.append("[%s] %s (%s): %s" % ("pass" if c.passed else "FAIL", c.id, c.level,
                                            c.statement))
        if c.residual:
            lines.append("    residual: %s" % c.residual)
    for k in sorted(report.data):
        lines.append("%s: %s" % (k, report.data[k]))
    nfail = len(report.verdict.failures())
    lines.append("verdict: %s (%d checks, %d failed)"
                 % ("pass" if report.passed else "fail", len(report.verdict.checks), nfail))
    return ("\n".join(lines) + "\n").encode()


# commands

def _show(x):
    if isinstance(x, ExpPoly):
        return to_string(x)
    return str(x)


def _describe_bialgebroid(B):
    def alg(A):
        return {"anchor": [[_show(f) for f in row] for row in A.anchor_matrix],
                "structure": {"%d,%d" % (i + 1, j + 1): [_show(f) for f in cs]
                              for (i, j), cs in sorted(A.c.items())}}
    return {"A": alg(B.A), "phi0": str(B.phi0), "Astar": alg(B.Astar), "X0": str(B.X0)}


def _precondition(report, id, exc):
    report.verdict.add(id, "precondition", False, residual=str(exc))


def _cmd_verify_jacobi(model, args, rep):
    J = model.get(args.name, "jacobi")
    rep.extend(verify_jacobi(J.Lam, J.E))


def _cmd_contact_to_jacobi(model, args, rep):
    eta = model.get(args.name, "contact")
    C, J = contact_to_jacobi(eta, samples=args.samples, seed=args.seed)
    rep.extend(verify_contact_identities(C, J))
    rep.extend(verify_jacobi(J.Lam, J.E))
    rep.data["Lambda"] = str(J.Lam)
    rep.data["E"] = str(J.E)


def _cmd_poissonize(model, args, rep):
    d = model.definitions[args.name]
    if d["kind"] == "contact":
        C, J = contact_to_jacobi(model.get(args.name))
        res = poissonize(J, args.time, contact=C, samples=args.samples or 20, seed=args.seed)
    else:
        J = model.get(args.name, ("jacobi", "contact"))
        res = poissonize(J, args.time)
    rep.extend(res.verdict)
    rep.data["Lambda_tilde"] = str(res.Lam_tilde)
    rep.data["poisson"] = res.is_poisson
    rep.data["jacobi"] = res.jacobi


def _cmd_verify_algebroid(model, args, rep):
    A = model.get(args.name, "algebroid")
    rep.extend(A.verify())
    phi = A.cocycle
    if args.cocycle:
        phi = model.get(args.cocycle, "cocycle")
    if phi is not None:
        rep.extend(A.verify_cocycle(phi), "cocycle.")


def _cmd_verify_bialgebroid(model, args, rep):
    B = model.get(args.name, "bialgebroid")
    v = verify_compatibility(B, args.mode, args.seed)
    rep.extend(v)
    rep.data["modes"] = v.data["modes"]
    rep.data["agreement"] = v.data["agreement"]


def _cmd_induced_base(model, args, rep):
    B = model.get(args.name, "bialgebroid")
    J0, v = induced_base_jacobi(B, seed=args.seed, count=args.samples or 20)
    rep.extend(v)
    rep.data["Lambda0"] = str(J0.Lam)
    rep.data["E0"] = str(J0.E)


def _cmd_bialgebroidize(model, args, rep):
    B = model.get(args.name, "bialgebroid")
    res = bialgebroidize(B, args.time, args.seed)
    rep.extend(res.verdict)
    rep.data["poisson"] = str(res.poisson)


def _instance_or_groupoid(model, name):
    obj = model.get(name, ("groupoid", "instance"))
    if isinstance(obj, JacobiGroupoidInstance):
        return obj.groupoid, obj.sigma.sigma, obj
    return obj, None, None


def _cmd_verify_groupoid(model, args, rep):
    G, sigma, _ = _instance_or_groupoid(model, args.name)
    rep.extend(verify_groupoid(G, sigma, samples=args.samples or 20, seed=args.seed))


def _cmd_verify_jacobi_groupoid(model, args, rep):
    inst = model.get(args.name, "instance")
    v = verify_jacobi_groupoid(inst.groupoid, inst.J, inst.sigma,
                               samples=args.samples or 100, seed=args.seed)
    rep.extend(v)
    rep.data["phi0"] = v.data.get("phi0")


def _cmd_properties(model, args, rep):
    inst = model.get(args.name, "instance")
    rep.extend(structural_properties(inst, samples=args.samples or 20, seed=args.seed))


def _cmd_contact_groupoid(model, args, rep):
    G, sigma, _ = _instance_or_groupoid(model, args.name)
    K, eta, sb = cotangent_contact_groupoid(G, sigma)
    rep.extend(verify_groupoid(K, sb, samples=args.samples or 25, seed=args.seed),
               "cotangent.")
    rep.extend(contact_groupoid_check(K, eta, sb, samples=args.samples or 25, seed=args.seed))
    if sigma is None or sigma.is_zero():
        rep.extend(linear_dual_check(G, samples=args.samples or 25, seed=args.seed))


def _cmd_derive_bialgebroid(model, args, rep):
    inst = model.get(args.name, "instance")
    B = derive_gen_bialgebroid(inst, samples=args.samples or 20, seed=args.seed)
    rep.extend(B.derivation)
    rep.extend(verify_compatibility(B, "all", args.seed), "derived.")
    rep.data["bialgebroid"] = _describe_bialgebroid(B)


def _cmd_verify_p38(model, args, rep):
    inst = model.get(args.name, "instance")
    v = verify_p38(inst, samples=args.samples or 100, seed=args.seed, t=args.time)
    rep.extend(v)
    if args.verbose:
        rep.extend(v.data["jacobi_verdict"], "jacobi_groupoid.")
        rep.extend(v.data["poisson_verdict"], "poisson_groupoid.")
    rep.data["jacobi"] = v.data["jacobi"]
    rep.data["poisson"] = v.data["poisson"]


def _base_patch(dim):
    if dim == 1:
        return PatchVars(["x"])
    return PatchVars(["x%d" % (i + 1) for i in range(dim)])


def _example_instance(args):
    kw = {}
    if args.example == "banal":
        M = _base_patch(args.base_dim)
        kw["M"] = M
        kw["Lam"] = Multivector.from_dict(M, _pairs(M, args.Lambda, 2)) if args.Lambda \
            else Multivector.zero(M, 2)
        kw["E"] = Multivector.from_dict(M, _pairs(M, args.E, 1)) if args.E \
            else Multivector.zero(M, 1)
    elif args.example == "jacobi_lie_group":
        kw = {"k": args.k, "x2": args.x2}
    elif args.example == "pair":
        return pair_groupoid(_base_patch(args.base_dim))
    return builtin_examples(args.example, **kw)


def _pairs(M, text, grade):
    """Constant tensor from ``"dx"``, ``"-dx"`` or ``"2*dx1^dx2 + dx2^dx3"``."""
    out = {}
    for term in text.replace(" ", "").replace("-", "+-").split("+"):
        if not term:
            continue
        sign = "-" if term.startswith("-") else ""
        term = term.lstrip("-")
        coeff, _, body = term.rpartition("*")
        names = [b[1:] if b.startswith("d") and b not in M.names else b
                 for b in body.split("^")]
        if len(names) != grade:
            raise ModelError("expected a grade %d term, got %r" % (grade, term))
        out[",".join(names)] = M.parse(sign + (coeff or "1"))
    return out


def _cmd_example(model, args, rep):
    obj = _example_instance(args)
    rep.inputs.append({"name": "example:" + args.example,
                       "sha256": hashlib.sha256(repr(sorted(vars(args).items())).encode())
                       .hexdigest()})
    samples = args.samples or 100
    if isinstance(obj, ConcreteGroupoid):
        rep.extend(verify_groupoid(obj, samples=20, seed=args.seed), "groupoid.")
        K, eta, sb = cotangent_contact_groupoid(obj)
        rep.extend(contact_groupoid_check(K, eta, sb, samples=25, seed=args.seed))
        rep.extend(linear_dual_check(obj, samples=25, seed=args.seed))
        return
    inst = obj
    rep.extend(verify_jacobi(inst.J.Lam, inst.J.E), "total.")
    rep.extend(verify_jacobi_groupoid(inst.groupoid, inst.J, inst.sigma, samples, args.seed),
               "groupoid.")
    rep.extend(structural_properties(inst, samples=20, seed=args.seed))
    B = derive_gen_bialgebroid(inst, check=False)
    rep.extend(B.derivation)
    rep.extend(verify_compatibility(B, "all", args.seed), "derived.")
    rep.data["bialgebroid"] = _describe_bialgebroid(B)
    if len(B.base):
        rep.extend(base_morphism_check(inst, count=20, seed=args.seed))
    if args.example == "banal":
        J0 = JacobiStructure(inst_base_lam(args), inst_base_E(args))
        ref = canonical_pair(J0)
        same = (_describe_bialgebroid(ref) == rep.data["bialgebroid"])
        rep.verdict.add("derived.canonical", "derived pair equals the canonical pair of the base",
                        same, residual="" if same else str(_describe_bialgebroid(ref)))


def inst_base_lam(args):
    M = _base_patch(args.base_dim)
    return Multivector.from_dict(M, _pairs(M, args.Lambda, 2)) if args.Lambda \
        else Multivector.zero(M, 2)


def inst_base_E(args):
    M = _base_patch(args.base_dim)
    return Multivector.from_dict(M, _pairs(M, args.E, 1)) if args.E else Multivector.zero(M, 1)


COMMANDS = {
    "verify-jacobi": _cmd_verify_jacobi,
    "contact-to-jacobi": _cmd_contact_to_jacobi,
    "poissonize": _cmd_poissonize,
    "verify-algebroid": _cmd_verify_algebroid,
    "verify-bialgebroid": _cmd_verify_bialgebroid,
    "induced-base": _cmd_induced_base,
    "bialgebroidize": _cmd_bialgebroidize,
    "verify-groupoid": _cmd_verify_groupoid,
    "verify-jacobi-groupoid": _cmd_verify_jacobi_groupoid,
    "properties": _cmd_properties,
    "contact-groupoid": _cmd_contact_groupoid,
    "derive-bialgebroid": _cmd_derive_bialgebroid,
    "verify-p38": _cmd_verify_p38,
    "example": _cmd_example,
}


def build_parser():
    p = argparse.ArgumentParser(prog="jacobigeom", description=(
        "Exact verification of Jacobi structures, generalized Lie bialgebroids "
        "and Jacobi groupoids."))
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("example", nargs="?", help="example name for the 'example' command: "
                   "banal, pair, jacobi_lie_group")
    p.add_argument("--model", help="model file (JSON)")
    p.add_argument("--name", help="definition to act on")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None,
                   help="sample count for pointwise checks (command default when absent)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--mode", default="all", choices=("all", "condcomp", "condcomp2", "gm_derivation"),
                   help="compatibility test for verify-bialgebroid")
    p.add_argument("--cocycle", help="cocycle definition for verify-algebroid")
    p.add_argument("--time", default="tau", help="name of the extra real coordinate")
    p.add_argument("--base-dim", type=int, default=1)
    p.add_argument("--E", default=None, help="constant Reeb field of the base, e.g. dx")
    p.add_argument("--Lambda", default=None, help="constant base bivector, e.g. dx1^dx2")
    p.add_argument("--k", default="2")
    p.add_argument("--x2", default="1")
    p.add_argument("--verbose", action="store_true")
    return p


def run(command, args):
    """Run one command; returns the :class:`Report` (raises :class:`ModelError` on bad input)."""
    model = None
    inputs = []
    if command != "example":
        if not args.model or not args.name:
            raise ModelError("--model and --name are required for %s" % command)
        with open(args.model, encoding="utf-8") as fh:
            model = parse_model(fh.read())
        if args.name not in model.definitions:
            raise ModelError("unresolved reference %r" % args.name)
        inputs.append({"name": args.name, "sha256": model.digest(args.name)})
    elif not args.example:
        raise ModelError("example name required (banal, pair, jacobi_lie_group)")
    rep = Report(command, args.seed, inputs)
    try:
        COMMANDS[command](model, args, rep)
    except PreconditionError as exc:
        _precondition(rep, command.replace("-", "_") + ".precondition", exc)
    return rep


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        rep = run(args.command, args)
    except (ModelError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (StructuralError, ParseError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    data = emit_report(rep, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
