"""Command line front end.

Exit status: 0 for a definitive answer, 2 for an inconclusive one, 1 for
errors (bad input, budget exceeded, soundness breach).  Reports are JSON
with sorted keys, so identical requests give byte-identical output.
"""

import argparse
import json
import sys
from json.decoder import scanstring

from ._order import sort_canon
from . import cubulation, isometry, lazy, median, raag, rankone

OK, ERROR, INCONCLUSIVE = 0, 1, 2


class SchemaError(Exception):
    def __init__(self, source, line, col, msg):
        super().__init__(f"{source}:{line}:{col}: {msg}")


# ---------------------------------------------------------------------------
# input loading with positions
# ---------------------------------------------------------------------------


def _skip_ws(text, i):
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _value_end(text, i):
    _, end = json.JSONDecoder().raw_decode(text, i)
    return end


def _locate(text, path):
    """Offset of the JSON value at ``path`` (keys and list indices)."""
    i = _skip_ws(text, 0)
    for step in path:
        if text[i] == "{":
            i = _skip_ws(text, i + 1)
            while text[i] != "}":
                key, i = scanstring(text, i + 1)
                i = _skip_ws(text, i)
                i = _skip_ws(text, i + 1)  # past ':'
                if key == step:
                    break
                i = _skip_ws(text, _value_end(text, i))
                if text[i] == ",":
                    i = _skip_ws(text, i + 1)
            else:
                return i
        elif text[i] == "[":
            i = _skip_ws(text, i + 1)
            for _ in range(int(step)):
                i = _skip_ws(text, _value_end(text, i))
                if text[i] == ",":
                    i = _skip_ws(text, i + 1)
        else:
            return i
    return i


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Doc:
    """A loaded JSON document that can point at its own sub-values."""

    def __init__(self, source, text):
        self.source = source
        self.text = text
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(source, e.lineno, e.colno, e.msg) from None

    def fail(self, path, msg):
        try:
            off = _locate(self.text, path)
        except (ValueError, IndexError):
            off = 0
        line, col = _line_col(self.text, off)
        where = "/" + "/".join(str(p) for p in path)
        raise SchemaError(self.source, line, col, f"{where}: {msg}")


def _load(path):
    if path == "-":
        return _Doc("<stdin>", sys.stdin.read())
    with open(path) as fh:
        return _Doc(path, fh.read())


def _require(doc, obj, path, key, kind=None):
    if not isinstance(obj, dict):
        doc.fail(path, "expected an object")
    if key not in obj:
        doc.fail(path, f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        doc.fail(path + [key], f"field {key!r} has the wrong type")
    return val


COMPLEX_KINDS = {"tree", "line", "product", "raag", "finite"}
ISOMETRY_KINDS = {
    "identity", "tree-word", "tree-rotation", "line-translation", "line-reflection",
    "product", "raag", "permutation", "compose", "power", "inverse",
}


def _check_complex(doc, d, path):
    kind = _require(doc, d, path, "kind", str)
    if kind not in COMPLEX_KINDS:
        doc.fail(path + ["kind"], f"unknown complex kind {kind!r}")
    if kind == "tree":
        v = _require(doc, d, path, "valence", int)
        if v < 2:
            doc.fail(path + ["valence"], "valence must be at least 2")
    elif kind == "product":
        fs = _require(doc, d, path, "factors", list)
        if len(fs) < 2:
            doc.fail(path + ["factors"], "a product needs at least two factors")
        for i, f in enumerate(fs):
            _check_complex(doc, f, path + ["factors", i])
    elif kind == "raag":
        _check_graph(doc, _require(doc, d, path, "graph", dict), path + ["graph"])
    elif kind == "finite":
        c = _require(doc, d, path, "complex", dict)
        _require(doc, c, path + ["complex"], "vertices", list)
        _require(doc, c, path + ["complex"], "edges", list)


def _check_graph(doc, d, path):
    gens = _require(doc, d, path, "generators", list)
    if not all(isinstance(g, str) for g in gens):
        doc.fail(path + ["generators"], "generators must be strings")
    for i, e in enumerate(d.get("edges", [])):
        if not (isinstance(e, list) and len(e) == 2 and all(x in gens for x in e)):
            doc.fail(path + ["edges", i], "edge must be a pair of generator names")


def _check_isometry(doc, d, path):
    kind = _require(doc, d, path, "kind", str)
    if kind not in ISOMETRY_KINDS:
        doc.fail(path + ["kind"], f"unknown isometry kind {kind!r}")
    need = {
        "tree-word": ("word", list), "tree-rotation": ("perm", list),
        "line-translation": ("shift", int), "line-reflection": ("center", int),
        "raag": ("word", str), "permutation": ("map", list),
        "power": ("n", int),
    }
    if kind in need:
        _require(doc, d, path, need[kind][0], need[kind][1])
    if kind == "product":
        for i, f in enumerate(_require(doc, d, path, "factors", list)):
            _check_isometry(doc, f, path + ["factors", i])
    elif kind == "compose":
        for i, f in enumerate(_require(doc, d, path, "parts", list)):
            _check_isometry(doc, f, path + ["parts", i])
    elif kind in ("power", "inverse"):
        _check_isometry(doc, _require(doc, d, path, "of", dict), path + ["of"])


def _descriptor(doc, key, check):
    """Either the whole document or its ``key`` member."""
    data = doc.data
    path = []
    if isinstance(data, dict) and key in data and "kind" not in data:
        data = data[key]
        path = [key]
    check(doc, data, path)
    return data


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, report, dot=None):
    text = dot if args.format == "dot" and dot is not None else _dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bits(sig):
    return "".join(map(str, sig))


def _window_dot(w, highlight, name):
    return w.complex.to_dot(name, highlight)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_verify_median(args):
    doc = _load(args.graph)
    try:
        c = median.verify_median_graph(doc.data, method=args.method)
    except median.NotMedian as e:
        _emit(args, {"median": False, "reason": e.reason, "witness": _jl(e.witness)})
        return OK
    except median.Disconnected as e:
        _emit(args, {"median": False, "reason": str(e), "witness": None})
        return OK
    except (TypeError, ValueError) as e:
        doc.fail([], f"not a graph: {e}")
    report = {
        "median": True,
        "vertices": len(c),
        "edges": len(c.edges()),
        "hyperplanes": c.n_hyperplanes,
        "sign_vectors": {str(_jl(v)): _bits(
            [(c.sign_vector(v) >> k) & 1 for k in range(c.n_hyperplanes)]
        ) for v in c.vertices},
    }
    _emit(args, report, c.to_dot("verified"))
    return OK


def cmd_cubulate(args):
    doc = _load(args.wallspace)
    d = doc.data
    _require(doc, d, [], "points", list)
    _require(doc, d, [], "walls", list)
    try:
        w = cubulation.Wallspace.from_json(d)
    except cubulation.UnknownPoint as e:
        doc.fail(["walls"], str(e))
    except ValueError as e:
        doc.fail(["walls"], str(e))
    c = cubulation.cubulate(w)
    names = {sig: _bits(sig) for sig in c.vertices}
    principal = {str(p): _bits(cubulation.principal_orientation(w, p)) for p in w.points}
    report = {
        "walls": len(w.walls),
        "vertices": sorted(names.values()),
        "edges": sorted(sorted([names[u], names[v]]) for u, v in c.edges()),
        "hyperplanes": c.n_hyperplanes,
        "principal": principal,
    }
    relabelled = median.verify_median_graph(
        (list(names.values()), [(names[u], names[v]) for u, v in c.edges()])
    )
    _emit(args, report, relabelled.to_dot("cubulation", {"lightblue": set(principal.values())}))
    return OK


def _analysis_inputs(args):
    cdoc = _load(args.complex)
    cd = _descriptor(cdoc, "complex", _check_complex)
    idoc = _load(args.isometry)
    idd = _descriptor(idoc, "isometry", _check_isometry)
    try:
        lc = lazy.complex_from_descriptor(cd)
    except (ValueError, KeyError, median.CubeComplexError) as e:
        cdoc.fail([], f"invalid complex: {e}")
    try:
        g = lazy.isometry_from_descriptor(idd, lc)
    except (ValueError, KeyError, raag.CubeComplexError) as e:
        idoc.fail([], f"invalid isometry: {e}")
    cands = []
    if args.context:
        xdoc = _load(args.context)
        lst = xdoc.data.get("candidates") if isinstance(xdoc.data, dict) else xdoc.data
        if not isinstance(lst, list):
            xdoc.fail([], "context must be a list of isometry descriptors or {candidates: [...]}")
        base = ["candidates"] if isinstance(xdoc.data, dict) else []
        for i, item in enumerate(lst):
            _check_isometry(xdoc, item, base + [i])
            cands.append(lazy.isometry_from_descriptor(item, lc))
    return lc, g, cands


def _jl(v):
    if isinstance(v, tuple):
        return [_jl(x) for x in v]
    return v


def cmd_analyze(args):
    lc, g, cands = _analysis_inputs(args)
    op = args.op
    depth = args.depth
    cap = args.vertex_cap
    report = {"op": op, "depth": depth, "seed": args.seed,
              "complex": lc.descriptor(), "isometry": g.description}
    dot = None
    status = OK
    try:
        if op == "classify":
            cl = isometry.classify(g, lc, depth, cap)
            report["result"] = cl.to_json()
        elif op == "translation-length":
            length, base = isometry.translation_length(g, lc, depth, cap)
            report["result"] = {"translation_length": length, "base": _jl(base),
                                "stabilized": "heuristic: equal at depth-1 and depth"}
        elif op == "min":
            m = isometry.min_set_window(g, args.n, lc, depth, vertex_cap=cap, seed=args.seed)
            report["result"] = m.to_json()
            dot = _window_dot(m.window, {"gold": m.vertices}, f"Min(g^{args.n})")
        elif op == "smin":
            sm = isometry.smin_window(g, lc, depth, args.n_max, vertex_cap=cap,
                                      threads=args.threads, seed=args.seed)
            report["result"] = sm.to_json()
            dot = _window_dot(sm.window, {"gold": sm.vertices}, "SMin(g)")
        elif op == "decompose":
            dec = isometry.decompose_smin(g, lc, depth, args.n_max, vertex_cap=cap,
                                          threads=args.threads, seed=args.seed)
            report["result"] = dec.to_json()
        elif op == "rank-one":
            cert = rankone.find_skewered_pair(g, lc, args.L_max, depth, cap)
            if cert is not None:
                report["result"] = {"verdict": "rank-one", "certificate": cert.to_json()}
                if args.emit_certificate:
                    with open(args.emit_certificate, "w") as fh:
                        fh.write(cert.dumps() + "\n")
            else:
                status = INCONCLUSIVE
                res = {"verdict": "inconclusive", "certificate": None}
                hf = rankone.find_half_flat(g, lc, depth, args.min_height, cap)
                res["half_flat"] = None if hf is None else hf.to_json()
                if hf is not None:
                    res["evidence"] = "half-flat witness %dx%d" % hf.dimensions
                report["result"] = res
        elif op == "half-flat":
            hf = rankone.find_half_flat(g, lc, depth, args.min_height, cap)
            report["result"] = {"half_flat": None if hf is None else hf.to_json()}
            if hf is None:
                status = INCONCLUSIVE
        elif op == "trichotomy":
            v = rankone.trichotomy_classify(g, lc, {"candidates": cands}, depth,
                                            args.L_max, args.n_max, cap)
            report["result"] = v.to_json()
            if v.case in ("Inconclusive", "FixGrowthEvidence"):
                status = INCONCLUSIVE
            if v.case == "RankOne" and args.emit_certificate:
                with open(args.emit_certificate, "w") as fh:
                    fh.write(v.evidence.dumps() + "\n")
        elif op == "fix-growth":
            seq = isometry.fixed_set_growth(g, lc, depth, args.n_max, cap)
            report["result"] = {"sizes": [{"n": n, "fixed": k} for n, k in seq]}
    except isometry.Inconclusive as e:
        report["result"] = {"verdict": "inconclusive", "reason": str(e)}
        status = INCONCLUSIVE
    except isometry.NotStabilized as e:
        report["result"] = {"verdict": "inconclusive", "reason": str(e)}
        status = INCONCLUSIVE
    except isometry.ValidationFailed as e:
        report["result"] = {"verdict": "inconclusive", "reason": str(e)}
        status = INCONCLUSIVE
    except isometry.ProductCheckFailed as e:
        report["result"] = {"verdict": "inconclusive", "reason": str(e)}
        status = INCONCLUSIVE
    if dot is None and args.format == "dot":
        w = lazy.ball(lc, lc.root, depth, cap)
        try:
            ax = isometry.axis(g, lc, depth, cap)
            seg = isometry.axis_in_ball(g, ax, lc, lc.root, depth)
        except isometry.ValidationFailed:
            seg = []
        dot = _window_dot(w, {"tomato": seg}, "window")
    _emit(args, report, dot)
    return status


def cmd_raag(args):
    gdoc = _load(args.graph)
    gd = gdoc.data
    if isinstance(gd, dict) and "graph" in gd and "generators" not in gd:
        gd = gd["graph"]
    _check_graph(gdoc, gd, [] if gd is gdoc.data else ["graph"])
    dg = raag.DefiningGraph.from_json(gd)
    try:
        word = raag.normal_form(args.word, dg)
    except raag.UnknownGenerator as e:
        raise SchemaError("--word", 1, 1, str(e)) from None
    report = {"op": args.op, "graph": dg.to_json(), "word": args.word,
              "normal_form": raag.format_word(word, dg)}
    status = OK
    if args.op == "normal-form":
        core, conj = raag.cyclic_reduction(word, dg) if word else ((), ())
        report["cyclic_core"] = raag.format_word(core, dg)
        report["conjugator"] = raag.format_word(conj, dg)
        report["support"] = sorted(raag.support(word, dg))
    elif args.op == "centralizer":
        report["centralizer"] = raag.centralizer(word, dg).to_json()
    elif args.op == "rank-one":
        report["algebraic_rank_one"] = raag.algebraic_rank_one(word, dg)
        report["stable_centralizer_cyclic"] = raag.stable_centralizer_is_cyclic(word, dg)
    elif args.op == "cross-validate":
        rep = rankone.cross_validate(word, dg, args.depth, args.L_max, args.vertex_cap)
        report.update(rep)
        report["verdict"] = f"{rep['status']}: {rep['summary']}"
        if rep["status"] != "agree":
            status = INCONCLUSIVE
        if rep["certificate"] is not None and args.emit_certificate:
            with open(args.emit_certificate, "w") as fh:
                fh.write(_dumps(rep["certificate"]))
    _emit(args, report)
    return status


def cmd_check_certificate(args):
    doc = _load(args.certificate)
    try:
        cert = rankone.SkewerCertificate.from_json(doc.data)
    except (KeyError, TypeError, rankone.CertificateInvalid) as e:
        doc.fail([], f"not a certificate: {e}")
    lc = g = None
    if args.complex:
        cdoc = _load(args.complex)
        lc = lazy.complex_from_descriptor(_descriptor(cdoc, "complex", _check_complex))
    if args.isometry:
        idoc = _load(args.isometry)
        g = lazy.isometry_from_descriptor(_descriptor(idoc, "isometry", _check_isometry),
                                          lc or lazy.complex_from_descriptor(cert.complex))
    try:
        rankone.check_certificate(cert, lc, g, args.vertex_cap)
    except rankone.CertificateInvalid as e:
        _emit(args, {"valid": False, "reason": str(e)})
        return ERROR
    _emit(args, {"valid": True, "power": cert.power, "L": cert.L, "depth": cert.depth})
    return OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


ANALYSES = ["classify", "translation-length", "min", "smin", "decompose", "rank-one",
            "half-flat", "trichotomy", "fix-growth"]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--vertex-cap", type=int, default=lazy.DEFAULT_VERTEX_CAP,
                        help="maximum window size")
    common.add_argument("--format", choices=["json", "dot"], default="json")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--emit-certificate", metavar="PATH",
                        help="write a found skewer certificate to PATH")

    p = argparse.ArgumentParser(prog="cubelab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-median", parents=[common], help="validate a median graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--method", default="auto",
                   choices=["auto", "exhaustive", "structural"])
    s.set_defaults(func=cmd_verify_median)

    s = sub.add_parser("cubulate", parents=[common], help="cubulate a finite wallspace")
    s.add_argument("--wallspace", required=True)
    s.set_defaults(func=cmd_cubulate)

    s = sub.add_parser("analyze", parents=[common], help="windowed analysis of an isometry")
    s.add_argument("op", choices=ANALYSES)
    s.add_argument("--complex", required=True)
    s.add_argument("--isometry", required=True)
    s.add_argument("--context", help="candidate commuting isometries (JSON list)")
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--n-max", type=int, default=3)
    s.add_argument("--L-max", dest="L_max", type=int, default=2)
    s.add_argument("--min-height", type=int, default=5)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("raag", parents=[common], help="right-angled Artin group algebra")
    s.add_argument("op", choices=["normal-form", "centralizer", "rank-one", "cross-validate"])
    s.add_argument("--graph", required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--L-max", dest="L_max", type=int, default=2)
    s.set_defaults(func=cmd_raag)

    s = sub.add_parser("check-certificate", parents=[common],
                       help="re-validate a serialized skewer certificate")
    s.add_argument("--certificate", required=True)
    s.add_argument("--complex")
    s.add_argument("--isometry")
    s.set_defaults(func=cmd_check_certificate)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    for name in ("depth", "n", "n_max", "min_height", "threads", "vertex_cap"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            print(f"error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return ERROR
    if getattr(args, "L_max", 0) < 0:
        print("error: --L-max must be nonnegative", file=sys.stderr)
        return ERROR
    try:
        return args.func(args)
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
    except lazy.BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
    except rankone.SoundnessBreach as e:
        print(f"SOUNDNESS BREACH: {e}", file=sys.stderr)
    except (median.CubeComplexError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return ERROR


if __name__ == "__main__":
    sys.exit(main())
