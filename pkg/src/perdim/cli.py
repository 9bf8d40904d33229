"""Command line front end.

    perdim analyze FILE        per-simple table and algebra-level reports
    perdim module FILE EXPR    resolution, periodicity and Gpd of one module
    perdim corpus              replay the bundled examples against expected values

Exit codes: 0 success, 1 corpus mismatch, 2 parse or usage error,
3 internal invariant violation (a JSON bundle goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, asdict
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from . import dsl, gorenstein as G, homology as H, modules as M
from .algebra import Algebra, InfiniteDimensionalError, build_algebra, is_connected, opposite
from .homology import INF, InvariantViolation, Unknown
from .linalg import Field, fmt


@dataclass(frozen=True)
class AnalysisConfig:
    cutoff: int = 40
    iso_trials: int = 64
    seed: int = 0
    field: Optional[str] = None
    enveloping_gate: int = 8
    output: str = "json"
    certificates: bool = False
    assume_gpd_finite: bool = False

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("output")
        return d


# --------------------------------------------------------------------------
# serialisation


def encode(x):
    """JSON-ready form with infinity as a string and unknowns tagged."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, float) and x == INF:
        return "infinity"
    if isinstance(x, Unknown):
        return {"unknown_beyond": x.beyond}
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return str(x)


def dumps(doc) -> str:
    return json.dumps(encode(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _matrix_text(blocks):
    return [[[fmt(v) for v in row] for row in blk] for blk in blocks]


# --------------------------------------------------------------------------
# module expressions


class ExprError(ValueError):
    pass


def parse_module_expr(text: str, a: Algebra) -> M.Module:
    """S<v>, P<v>, D(A), rad(E), top(E), syz(E), syz^k(E), sum(E, ...)."""
    pos = 0
    s = text.strip()

    def peek(tok):
        return s.startswith(tok, pos)

    def expect(tok):
        nonlocal pos
        if not peek(tok):
            raise ExprError(f"expected {tok!r} at position {pos} in {s!r}")
        pos += len(tok)

    def label():
        nonlocal pos
        m = re.compile(r"[^,()\s]+").match(s, pos)
        if not m:
            raise ExprError(f"expected a vertex label at position {pos}")
        pos = m.end()
        try:
            return a.vertex_index(m.group(0))
        except KeyError:
            raise ExprError(f"unknown vertex {m.group(0)!r}") from None

    def expr() -> M.Module:
        nonlocal pos
        if peek("sum("):
            expect("sum(")
            parts = [expr()]
            while peek(","):
                expect(",")
                parts.append(expr())
            expect(")")
            return M.direct_sum(parts, a)
        if peek("rad("):
            expect("rad(")
            inner = expr()
            expect(")")
            return M.radical_and_top(inner)[0].module
        if peek("top("):
            expect("top(")
            inner = expr()
            expect(")")
            return M.radical_and_top(inner)[1].module
        if peek("syz"):
            expect("syz")
            k = 1
            if peek("^"):
                expect("^")
                m = re.compile(r"\d+").match(s, pos)
                if not m:
                    raise ExprError("expected an exponent after 'syz^'")
                k = int(m.group(0))
                pos = m.end()
            expect("(")
            inner = expr()
            expect(")")
            out = H.nth_syzygy(inner, k)
            return out.renamed(f"syz^{k}({inner.name})")
        if peek("D(A)"):
            expect("D(A)")
            return M.dual_module(M.regular_module(opposite(a))).renamed("D(A)")
        if peek("S"):
            expect("S")
            return M.simple_module(a, label())
        if peek("P"):
            expect("P")
            return M.projective_module(a, label())
        raise ExprError(f"cannot parse module expression at position {pos} in {s!r}")

    out = expr()
    if s[pos:].strip():
        raise ExprError(f"trailing input {s[pos:]!r}")
    return out


# --------------------------------------------------------------------------
# reports


def load_algebra(text: str, cfg: AnalysisConfig) -> Algebra:
    spec = dsl.parse(text)
    fld = Field.parse(cfg.field) if cfg.field else None
    return build_algebra(spec, fld)


def _periodicity_doc(rep: H.PeriodicityReport, cfg: AnalysisConfig) -> dict:
    doc = {"verdict": rep.verdict, "n": rep.n, "p": rep.p, "cutoff": rep.cutoff,
           "pairs_tested": rep.pairs_tested, "obstructions": rep.certificates}
    if rep.verdict == "finite_proj_dim":
        doc["proj_dim"] = rep.proj_dim
    if rep.unknown_pairs:
        doc["unknown_pairs"] = [list(x) for x in rep.unknown_pairs]
    if rep.candidate:
        doc["candidate"] = list(rep.candidate)
    if cfg.certificates and rep.witness is not None:
        doc["witness"] = _matrix_text(rep.witness)
    return doc


def _gpd_doc(m: M.Module, cfg: AnalysisConfig, gorenstein_d=None) -> dict:
    try:
        g = H.gpd_report(m, cfg.cutoff, cfg.iso_trials, cfg.seed, cfg.assume_gpd_finite, gorenstein_d)
    except H.GpdNotCertified as exc:
        return {"error": str(exc)}
    return {"value": g.value, "method": g.method, "summand_test": g.by_summand_test,
            "ext_vanishing": g.by_ext_vanishing, "agree": g.agree, "certificate": g.certificate,
            "sandwich_ok": g.sandwich_ok, "ext_against_regular": g.ext_against_regular,
            "stripped_projectives": g.stripped}


def analyze(a: Algebra, cfg: AnalysisConfig) -> dict:
    c, t, s = cfg.cutoff, cfg.iso_trials, cfg.seed
    gor = G.gorenstein_report(a, c, t, s)
    gd = gor.d if gor.verdict == "gorenstein" else None
    rows = []
    for row, simple in zip(G.simple_table(a, c, t, s), H.simples(a)):
        doc = {"vertex": row.vertex, "dim_vector": list(row.dim_vector), "proj_dim": row.proj_dim,
               "per_dim": row.per_dim, "period": row.period}
        gdoc = _gpd_doc(simple, cfg, gd)
        doc["gpd"] = gdoc.get("value")
        doc["gpd_detail"] = gdoc
        if cfg.certificates:
            doc["periodicity"] = _periodicity_doc(H.periodicity_report(simple, c, t, s), cfg)
        rows.append(doc)
    top = H.semisimple_top(a)
    top_rep = H.periodicity_report(top, c, t, s)
    per_simple = [r["per_dim"] for r in rows]
    doc = {
        "config": cfg.echo(),
        "algebra": {"vertices": list(a.vertex_labels), "dim": a.dim, "monomial": a.monomial,
                    "field": str(a.field), "connected": is_connected(a), "basis": list(a.labels)},
        "simples": rows,
        "semisimple_top": {"per_dim": top_rep.per_dim, "period": top_rep.period,
                           "max_over_simples": _max_ext(per_simple)},
        "gorenstein": {"verdict": gor.verdict, "d": gor.d, "left_injdim": gor.left_injdim,
                       "right_injdim": gor.right_injdim, "selfinjective": gor.selfinjective},
    }
    try:
        b = G.bimodule_per_dim(a, c, t, s, cfg.enveloping_gate)
        doc["bimodule_per_dim"] = {
            "value": b.value, "route": b.route, "reduction": b.reduction_value,
            "reduction_opposite": b.reduction_value_op, "direct": b.direct_value,
            "direct_period": b.direct_period, "direct_proj_dim": b.direct_proj_dim,
            "d": b.d, "sandwich_ok": b.sandwich_ok, "separable": b.separable,
            "opposite_simples": [{"vertex": r.vertex, "proj_dim": r.proj_dim, "per_dim": r.per_dim,
                                  "period": r.period} for r in b.per_simple_table_op]}
    except G.GorensteinCertificateRequired as exc:
        doc["bimodule_per_dim"] = {"error": str(exc)}
    doc["conjecture_checks"] = G.conjecture_checks(a, c, t, s, cfg.enveloping_gate)
    return doc


def _max_ext(vals):
    if any(isinstance(v, Unknown) for v in vals):
        return next(v for v in vals if isinstance(v, Unknown))
    return max(vals, default=0)


def _gorenstein_d(a: Algebra, cfg: AnalysisConfig):
    gor = G.gorenstein_report(a, cfg.cutoff, cfg.iso_trials, cfg.seed)
    return gor.d if gor.verdict == "gorenstein" else None


def module_report(a: Algebra, expr: str, cfg: AnalysisConfig) -> dict:
    c, t, s = cfg.cutoff, cfg.iso_trials, cfg.seed
    m = parse_module_expr(expr, a)
    rep = H.periodicity_report(m, c, t, s)
    steps = rep.n + rep.p if rep.n is not None else c
    trace = H.minimal_resolution(m, min(c, steps))
    x, mult, _ = M.strip_projective_summands(m)
    doc = {
        "config": cfg.echo(),
        "module": expr,
        "dim_vector": list(m.dims),
        "semisimple_decomposition": M.semisimple_decomposition(m),
        "projective_summands": {a.vertex_labels[v]: k for v, k in enumerate(mult) if k},
        "resolution": {"betti": [list(b) for b in trace.cover_multiplicities],
                       "syzygy_dim_vectors": [list(z.dims) for z in trace.syzygies],
                       "terminated_at": trace.terminated_at},
        "periodicity": _periodicity_doc(rep, cfg),
        "proj_dim": H.proj_dim(m, c, t, s),
        "per_dim": rep.per_dim,
        "period": rep.period,
        "gpd": _gpd_doc(m, cfg, _gorenstein_d(a, cfg)),
    }
    return doc


# --------------------------------------------------------------------------
# markdown


def _cell(x) -> str:
    x = encode(x)
    if isinstance(x, dict) and "unknown_beyond" in x:
        return f"unknown(>{x['unknown_beyond']})"
    if x == "infinity":
        return "∞"
    if x is None:
        return "-"
    return str(x)


def to_markdown(doc: dict) -> str:
    out = []
    if "simples" in doc:
        alg = doc["algebra"]
        out.append(f"# Algebra over {alg['field']}: dim {alg['dim']}, vertices {' '.join(alg['vertices'])}")
        out.append("")
        out.append("| vertex | dim vector | proj.dim | per.dim | period | Gpd |")
        out.append("|---|---|---|---|---|---|")
        for r in doc["simples"]:
            out.append(f"| {r['vertex']} | {r['dim_vector']} | {_cell(r['proj_dim'])} | {_cell(r['per_dim'])} "
                       f"| {_cell(r['period'])} | {_cell(r['gpd'])} |")
        out.append("")
        g = doc["gorenstein"]
        out.append(f"Gorenstein: {g['verdict']} d={_cell(g['d'])} "
                   f"(left {_cell(g['left_injdim'])}, right {_cell(g['right_injdim'])})")
        top = doc["semisimple_top"]
        out.append(f"per.dim of the semisimple top: {_cell(top['per_dim'])} "
                   f"(max over simples {_cell(top['max_over_simples'])})")
        b = doc["bimodule_per_dim"]
        if "error" in b:
            out.append(f"bimodule per.dim: {b['error']}")
        else:
            out.append(f"bimodule per.dim: {_cell(b['value'])} via {b['route']}")
        out.append("")
        out.append("| check | holds |")
        out.append("|---|---|")
        for k in sorted(doc["conjecture_checks"]):
            out.append(f"| {k} | {_cell(doc['conjecture_checks'][k]['holds'])} |")
    elif "module" in doc:
        out.append(f"# Module {doc['module']}: dim vector {doc['dim_vector']}")
        if doc["semisimple_decomposition"] is not None:
            parts = " + ".join(f"S_{k}" + (f"^{v}" if v > 1 else "") for k, v in doc["semisimple_decomposition"].items())
            out.append(f"semisimple: {parts or '0'}")
        out.append(f"proj.dim {_cell(doc['proj_dim'])}, per.dim {_cell(doc['per_dim'])}, "
                   f"period {_cell(doc['period'])}, Gpd {_cell(doc['gpd'].get('value'))}")
        out.append("")
        out.append("| step | syzygy dim vector | cover multiplicities |")
        out.append("|---|---|---|")
        res = doc["resolution"]
        for i, dv in enumerate(res["syzygy_dim_vectors"]):
            b = res["betti"][i] if i < len(res["betti"]) else "-"
            out.append(f"| {i} | {dv} | {b} |")
    else:
        out.append(f"# Corpus: {doc['passed']} passed, {doc['failed']} failed, {doc['deviations']} deviations")
        out.append("")
        out.append("| case | check | expected | actual | status |")
        out.append("|---|---|---|---|---|")
        for r in doc["results"]:
            out.append(f"| {r['case']} | {r['check']} | {_cell(r['expected'])} | {_cell(r['actual'])} | {r['status']} |")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# corpus


def corpus_dir():
    return resources.files("perdim") / "corpus"


def _lookup(doc, path: str):
    cur = doc
    for part in path.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        else:
            cur = cur[part]
    return cur


def run_corpus(cfg: AnalysisConfig) -> dict:
    base = corpus_dir()
    expected = json.loads((base / "expected.json").read_text(encoding="utf-8"))
    results = []
    for case in sorted(expected):
        entry = expected[case]
        a = load_algebra((base / entry["file"]).read_text(encoding="utf-8"), cfg)
        doc = encode(analyze(a, cfg))
        mods = {e: encode(module_report(a, e, cfg)) for e in entry.get("modules", {})}
        deviations = {d["check"]: d for d in entry.get("deviations", [])}
        checks = []
        for key, exp in entry.get("simples", {}).items():
            for i, val in enumerate(exp):
                checks.append((f"simples.{i}.{key}", val, doc["simples"][i][key]))
        for key, exp in entry.get("algebra", {}).items():
            checks.append((key, exp, _lookup(doc, key)))
        for e, fields in entry.get("modules", {}).items():
            for key, exp in fields.items():
                checks.append((f"module[{e}].{key}", exp, _lookup(mods[e], key)))
        for name, exp, act in checks:
            status = "pass" if exp == act else "fail"
            if name in deviations:
                dev = deviations[name]
                exp = dev["reference"]
                status = "deviation" if act == dev["computed"] else "fail"
            results.append({"case": case, "check": name, "expected": exp, "actual": act, "status": status})
    passed = sum(r["status"] == "pass" for r in results)
    failed = sum(r["status"] == "fail" for r in results)
    return {"config": cfg.echo(), "results": results, "passed": passed, "failed": failed,
            "deviations": sum(r["status"] == "deviation" for r in results)}


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, default=40, help="syzygy steps before giving up (default 40)")
    common.add_argument("--trials", type=int, default=64, help="random trials per isomorphism test (default 64)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--field", default=None, help="override the field: Q, Fp(p) or F<p>")
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--certificates", action="store_true", help="embed isomorphism witnesses")
    common.add_argument("--assume-gpd-finite", action="store_true",
                        help="treat Gpd as finite without a certificate (stamped into reports)")
    common.add_argument("--enveloping-gate", type=int, default=8,
                        help="largest dim of the algebra for the bimodule cross-check (default 8)")
    p = argparse.ArgumentParser(prog="perdim", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", parents=[common], help="analyse an algebra file")
    an.add_argument("file")
    mo = sub.add_parser("module", parents=[common], help="analyse one module")
    mo.add_argument("file")
    mo.add_argument("expr")
    sub.add_parser("corpus", parents=[common], help="replay the bundled examples")
    return p


def _config(ns) -> AnalysisConfig:
    for name in ("cutoff", "trials", "enveloping_gate"):
        if getattr(ns, name) < 1:
            raise ValueError(f"--{name.replace('_', '-')} must be positive")
    if ns.field:
        Field.parse(ns.field)
    return AnalysisConfig(ns.cutoff, ns.trials, ns.seed, ns.field, ns.enveloping_gate, ns.format,
                          ns.certificates, ns.assume_gpd_finite)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if ns.command == "corpus":
            doc = run_corpus(cfg)
        else:
            try:
                text = Path(ns.file).read_text(encoding="utf-8")
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            try:
                a = load_algebra(text, cfg)
            except dsl.ParseError as exc:
                print(f"{ns.file}: parse error: {exc}", file=sys.stderr)
                return 2
            except (InfiniteDimensionalError, ZeroDivisionError, ValueError) as exc:
                print(f"{ns.file}: {exc}", file=sys.stderr)
                return 2
            if ns.command == "analyze":
                doc = analyze(a, cfg)
            else:
                try:
                    doc = module_report(a, ns.expr, cfg)
                except ExprError as exc:
                    print(f"error: {exc}", file=sys.stderr)
                    return 2
    except InvariantViolation as exc:
        print(json.dumps({"invariant_violation": str(exc), "bundle": encode(exc.bundle)},
                         sort_keys=True, indent=2), file=sys.stderr)
        return 3
    sys.stdout.write(dumps(doc) if cfg.output == "json" else to_markdown(doc))
    if ns.command == "corpus" and doc["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
