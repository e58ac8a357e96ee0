"""Command-line front end.

Every subcommand reads an ideal (or poset) file, or ``corpus:NAME`` for an
entry of the built-in corpus.  Exit status: 0 ok, 1 usage or parse error,
2 undetermined or truncated result, 3 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import corpus, __version__
from .golod import UNDETERMINED, golod_verdict, strong_gcd_condition
from .io import ParseError, load_ideal, load_poset, parse_ideal, parse_poset
from .language import LanguageBoundError, WordLanguageSpec, enumerate_language, r_monomials
from .linalg import Field, FieldError
from .monomial import MonomialIdeal, mono_str
from .morse import complex_homology, validate_matching
from .oracles import BoundError, koszul_homology, koszul_product, tor_A_kk
from .poset import METHODS, W_poly, order_complex_ideal
from .series import (SeriesError, _num, conjectured_poincare, first_sequence, golod_series,
                     hilbert_numerator, hilbert_series, standard_monomial_series, subset_sum)
from .taylor import (POLICIES, NonTermination, PreconditionError, build_taylor, gcd_matching,
                     nbc_matching, standard_matching)

SCHEMA = "monomorse/1"

OK, USAGE, UNDETERMINED_EXIT, VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    H: int = 6
    D: int = 8
    char: int = 0
    policy: str = "lexfirst"
    fmt: str = "text"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.H < 1 or self.D < 1:
            raise UsageError("bounds must be positive")
        try:
            self.field = Field(self.char)
        except FieldError as e:
            raise UsageError(str(e)) from None
        if self.policy not in POLICIES:
            raise UsageError(f"unknown policy {self.policy!r}")


@dataclass
class Report:
    data: dict
    text: list
    status: int = OK


# ----------------------------------------------------------------------
# input


def _read(spec: str, kind: str):
    if spec.startswith("corpus:"):
        name = spec[len("corpus:"):]
        if name not in corpus.names(kind):
            raise UsageError(f"no {kind} named {name!r} in the corpus; "
                             f"available: {', '.join(corpus.names(kind))}")
        return corpus.ideal(name) if kind == "ideal" else corpus.poset(name)
    path = Path(spec)
    if spec == "-":
        text = sys.stdin.read()
        return parse_ideal(text, source="<stdin>") if kind == "ideal" else \
            parse_poset(text, source="<stdin>")
    if not path.is_file():
        raise UsageError(f"cannot read {spec}")
    return load_ideal(path) if kind == "ideal" else load_poset(path)


def _ideal(cfg: RunConfig) -> MonomialIdeal:
    return _read(cfg.input, "ideal")


# ----------------------------------------------------------------------
# small renderers


def _alpha(a) -> list:
    return list(a)


def _table(rows: list, header: list) -> list:
    widths = [max(len(str(r[k])) for r in rows + [header]) for k in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return [fmt.format(*header)] + [fmt.format(*map(str, r)) for r in rows]


def _betti_rows(entries: dict) -> list:
    return sorted(entries.items(), key=lambda kv: (kv[0][0], sum(kv[0][1]), kv[0][1]))


def _betti_records(entries: dict) -> list:
    return [{"i": i, "alpha": _alpha(a), "dim": d} for (i, a), d in _betti_rows(entries)]


def _betti_text(entries: dict) -> list:
    rows = [(i, mono_str(a), d) for (i, a), d in _betti_rows(entries)]
    return _table(rows, ["i", "multidegree", "dim"]) if rows else ["(empty)"]


def _series_text(exp) -> list:
    return [f"  {mono_str(a)} t^{j}" + (f" z^{k}" if k else "") + f": {_num(c)}"
            for (a, j, k), c in exp.items()]


# ----------------------------------------------------------------------
# commands


def cmd_hilbert(cfg: RunConfig) -> Report:
    ideal = _ideal(cfg)
    sm = standard_matching(ideal, cfg.policy, cfg.field)
    res = hilbert_series(ideal, sm, cfg.D)
    full = hilbert_numerator(ideal)
    agree = full == res.closed.numerator
    counted = standard_monomial_series(ideal, cfg.D) == res.expansion
    data = {"ideal": str(ideal), "numerator": str(res.closed.numerator),
            "denominator": str(res.closed.denominator), "bound_d": cfg.D,
            "expansion": res.expansion.records(),
            "numerator_modes_agree": agree, "matches_monomial_count": counted,
            "negative_coefficients": len(res.violations)}
    text = [f"ideal: {ideal}", f"numerator: {res.closed.numerator}",
            f"denominator: {res.closed.denominator}",
            f"expansion to degree {cfg.D}:"] + _series_text(res.expansion) + [
            f"numerator (all subsets) = numerator (survivors): {agree}",
            f"expansion = monomial count: {counted}"]
    ok = agree and counted and not res.violations
    return Report(data, text, OK if ok else VIOLATION)


def cmd_poincare(cfg: RunConfig) -> Report:
    ideal = _ideal(cfg)
    res = conjectured_poincare(ideal, first_sequence(ideal, cfg.policy), cfg.D, cfg.H)
    data = {"ideal": str(ideal), "numerator": str(res.closed.numerator),
            "denominator": str(res.closed.denominator), "bound_d": cfg.D, "bound_h": cfg.H,
            "expansion": res.expansion.records(),
            "negative_coefficients": len(res.violations)}
    text = [f"ideal: {ideal}", "conjectured Poincare series:",
            f"numerator: {res.closed.numerator}", f"denominator: {res.closed.denominator}",
            f"expansion to degree {cfg.D}, t <= {cfg.H}:"] + _series_text(res.expansion)
    status = OK
    gb = cfg.extra.get("golod_bound")
    if gb is not None:
        if gb:
            betti = _load_betti(gb)
        else:
            betti = koszul_homology(ideal, cfg.field)[0].entries
        bound = golod_series(betti, ideal.n, cfg.D, cfg.H)
        same = bound == res.expansion
        data["golod_bound"] = {"expansion": bound.records(), "equal": same}
        text += ["Golod bound:"] + _series_text(bound) + [f"conjecture = Golod bound: {same}"]
    if cfg.extra.get("check"):
        tor = tor_A_kk(ideal, cfg.H, cfg.D, cfg.field)
        actual = {(a, i, 0): v for (i, a), v in tor.entries.items()}
        match = actual == res.expansion.terms
        data["tor_check"] = {"match": match, "partial": tor.partial}
        text.append(f"matches Tor^A(k,k): {match}")
        if not match:
            text.append("flag: closed form differs from Tor^A(k,k) for this ideal")
        if tor.partial:
            status = UNDETERMINED_EXIT
    if res.violations:
        status = VIOLATION
    return Report(data, text, status)


def _load_betti(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read Betti table {path}: {e}") from None
    recs = raw.get("betti") if isinstance(raw, dict) else raw
    if not isinstance(recs, list):
        raise UsageError(f"{path} holds no 'betti' record list")
    try:
        return {(int(r["i"]), tuple(int(x) for x in r["alpha"])): int(r["dim"]) for r in recs}
    except (KeyError, TypeError, ValueError):
        raise UsageError(f"malformed Betti record in {path}") from None


def cmd_betti(cfg: RunConfig) -> Report:
    ideal = _ideal(cfg)
    sm = standard_matching(ideal, cfg.policy, cfg.field)
    # Taylor degree d is homological index d + 1 of S/a
    morse = {(d + 1, a): c for (d, a), c in sm.final.cell_counts().items()}
    morse[(0, (0,) * ideal.n)] = 1
    kz, _ = koszul_homology(ideal, cfg.field)
    agree = kz.entries == morse
    data = {"ideal": str(ideal), "char": cfg.char, "policy": sm.policy,
            "minimal": sm.minimal, "betti": _betti_records(kz.entries),
            "morse_agrees": agree,
            "totals": {str(i): kz.total(i) for i in range(ideal.n + 1) if kz.total(i)}}
    text = [f"ideal: {ideal}"] + _betti_text(kz.entries) + [
        "totals: " + " ".join(str(kz.total(i)) for i in range(ideal.n + 1)),
        f"Morse complex minimal: {sm.minimal}", f"Morse cell counts = Betti: {agree}"]
    if not sm.minimal:
        return Report(data, text, UNDETERMINED_EXIT)
    return Report(data, text, OK if agree else VIOLATION)


def cmd_matching(cfg: RunConfig) -> Report:
    ideal = _ideal(cfg)
    kind = cfg.extra.get("kind", "standard")
    cx = build_taylor(ideal, cfg.field)
    data = {"ideal": str(ideal), "kind": kind}
    text = [f"ideal: {ideal}", f"kind: {kind}"]
    status = OK
    if kind == "standard":
        sm = standard_matching(ideal, cfg.policy, cfg.field)
        edges = [{"seq": i, "upper": ideal.mask_str(u), "lower": ideal.mask_str(lo),
                  "lcm": mono_str(sm.table.lcm[u])} for i, u, lo in sm.edges()]
        data.update(policy=sm.policy, minimal=sm.minimal, log=sm.log, edges=edges,
                    critical=[ideal.mask_str(c.label) for c in sm.final.all_cells()])
        text += [f"policy: {sm.policy}", sm.dump() or "(no edges)"] + \
            [f"log: {x}" for x in sm.log] + [f"minimal: {sm.minimal}"]
        # the stages are validated as they are built; re-check the homology
        same = complex_homology(sm.final.tensor_with_field()) == \
            complex_homology(cx.tensor_with_field())
        data["homology_preserved"] = same
        text.append(f"homology preserved: {same}")
        if not same:
            status = VIOLATION
        elif not sm.minimal:
            status = UNDETERMINED_EXIT
        return Report(data, text, status)
    if kind == "nbc":
        m, surv = nbc_matching(ideal, field=cfg.field)
        data["survivors"] = [ideal.mask_str(s) for s in surv]
    elif kind == "gcd":
        sg = strong_gcd_condition(ideal)
        if not sg.found:
            raise PreconditionError(f"no strong gcd order ({sg.status})")
        m = gcd_matching(ideal, sg.order, cfg.field)
        data["order"] = [mono_str(ideal.gens[k]) for k in sg.order]
    else:
        raise UsageError(f"unknown matching kind {kind!r}")
    rep = validate_matching(cx, m)
    data["edges"] = [{"seq": s, "upper": ideal.mask_str(u.label),
                      "lower": ideal.mask_str(lo.label)}
                     for (u, lo), s in zip(m.edges, m.seq)]
    data["valid"] = rep.ok
    data["problems"] = rep.problems
    text += [f"seq={s} {ideal.mask_str(u.label)} -> {ideal.mask_str(lo.label)}"
             for (u, lo), s in zip(m.edges, m.seq)]
    text.append(f"valid: {rep.ok}")
    text += [f"problem: {p}" for p in rep.problems]
    return Report(data, text, OK if rep.ok else VIOLATION)


def cmd_koszul(cfg: RunConfig) -> Report:
    ideal = _ideal(cfg)
    D = cfg.extra.get("bound_d_given") and cfg.D or None
    table, basis = koszul_homology(ideal, cfg.field, D)
    ids = [c for c in basis.ids() if c[0] >= 1]
    products = []
    for x in range(len(ids)):
        for y in range(x, len(ids)):
            try:
                prod = koszul_product(basis, ids[x], ids[y], D)
            except BoundError:
                table.partial = True
                continue
            if prod:
                products.append((ids[x], ids[y], prod))

    def cid(c):
        i, a, k = c
        return f"[{i},{mono_str(a)},{k}]"

    data = {"ideal": str(ideal), "char": cfg.char, "betti": _betti_records(table.entries),
            "partial": table.partial, "classes": len(ids),
            "nonzero_products": [
                {"left": cid(a), "right": cid(b),
                 "product": {cid(c): str(v) for c, v in sorted(p.items())}}
                for a, b, p in products],
            "product_trivial": not products}
    text = [f"ideal: {ideal}", "Koszul homology:"] + _betti_text(table.entries) + \
        [f"nonzero products among {len(ids)} classes: {len(products)}"]
    for a, b, p in products:
        rhs = " + ".join(f"{v}*{cid(c)}" for c, v in sorted(p.items()))
        text.append(f"  {cid(a)} * {cid(b)} = {rhs}")
    if table.partial:
        text.append(f"partial: multidegrees above {cfg.D} skipped")
    return Report(data, text, UNDETERMINED_EXIT if table.partial else OK)


def cmd_golod(cfg: RunConfig) -> Report:
    ideal = _ideal(cfg)
    rep = golod_verdict(ideal, cfg.H, cfg.D, cfg.field)
    data = rep.to_dict()
    return Report(data, rep.summary().splitlines(),
                  UNDETERMINED_EXIT if rep.final == UNDETERMINED else OK)


def cmd_poset(cfg: RunConfig) -> Report:
    poset = _read(cfg.input, "poset")
    method = cfg.extra.get("method", "all")
    methods = METHODS if method == "all" else (method,)
    polys = {m: W_poly(poset, m) for m in methods}
    ref = polys[methods[0]]
    agree = all(p == ref for p in polys.values())
    ideal = order_complex_ideal(poset)
    data = {"poset": str(poset), "ideal": str(ideal),
            "W": {m: str(p) for m, p in polys.items()}, "methods_agree": agree}
    text = [f"poset: {poset}", f"ideal: {ideal}"] + \
        [f"W [{m}]: {p}" for m, p in polys.items()] + [f"methods agree: {agree}"]
    return Report(data, text, OK if agree else VIOLATION)


def cmd_language(cfg: RunConfig) -> Report:
    ideal = _ideal(cfg)
    start = cfg.extra.get("start")
    length = cfg.extra.get("length", 6)
    spec = WordLanguageSpec(ideal, None if start is None else start - 1, length)
    if spec.start is not None and not 0 <= spec.start < ideal.n:
        raise UsageError(f"--start must lie in 1..{ideal.n}")
    counts = enumerate_language(spec)
    rows = sorted(counts.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    data = {"ideal": str(ideal), "start": start, "length": length,
            "counts": [{"length": k, "alpha": _alpha(a), "count": c} for (k, a), c in rows]}
    text = [f"ideal: {ideal}", f"language: {'L_' + str(start) if start else 'full'}, "
            f"length <= {length}"] + _table([(k, mono_str(a), c) for (k, a), c in rows],
                                            ["length", "multidegree", "count"])
    status = OK
    if start is None:
        same = r_monomials(ideal, length) == counts
        data["matches_r_monomials"] = same
        text.append(f"counts = monomials of R: {same}")
        status = OK if same else VIOLATION
    return Report(data, text, status)


def _selftest_ideal(name: str, ideal: MonomialIdeal, cfg: RunConfig) -> dict:
    out = {}
    sm = standard_matching(ideal, cfg.policy, cfg.field)
    taylor = build_taylor(ideal, cfg.field)
    out["homology"] = complex_homology(sm.final.tensor_with_field()) == \
        complex_homology(taylor.tensor_with_field())
    out["d_squared"] = all(cx.d_squared_is_zero() for cx in sm.stages)
    out["minimal"] = sm.minimal
    kz, _ = koszul_homology(ideal, cfg.field)
    morse = {(d + 1, a): c for (d, a), c in sm.final.cell_counts().items()}
    morse[(0, (0,) * ideal.n)] = 1
    out["betti"] = kz.entries == morse
    hs = hilbert_series(ideal, sm, cfg.D)
    out["hilbert"] = hs.expansion == standard_monomial_series(ideal, cfg.D) and \
        hs.closed.numerator == hilbert_numerator(ideal)
    a = standard_matching(ideal, "lexfirst", cfg.field, restart=False)
    b = standard_matching(ideal, "maskfirst", cfg.field, restart=False)
    stages = max(len(a.sequences), len(b.sequences))
    out["policies"] = all(subset_sum(ideal, a.survivors(k)) == subset_sum(ideal, b.survivors(k))
                          for k in range(1, stages + 2))
    # the closed form is only known to hold for these two classes
    if corpus.is_degree_two(ideal) or (corpus.is_taylor_minimal(ideal)
                                       and all(sum(g) >= 2 for g in ideal.gens)):
        tor = tor_A_kk(ideal, cfg.H, cfg.D, cfg.field)
        conj = conjectured_poincare(ideal, D=cfg.D, H=cfg.H).expansion
        out["poincare"] = {(a, i, 0): v for (i, a), v in tor.entries.items()} == conj.terms
    return out


def cmd_selftest(cfg: RunConfig) -> Report:
    results = {}
    for name in corpus.names("ideal"):
        results[name] = _selftest_ideal(name, corpus.ideal(name), cfg)
    for name in corpus.names("poset"):
        p = corpus.poset(name)
        ws = [W_poly(p, m) for m in METHODS]
        results[f"poset:{name}"] = {"W": all(w == ws[0] for w in ws)}
    failed = sorted(f"{n}:{k}" for n, r in results.items() for k, v in r.items() if not v)
    data = {"results": results, "failed": failed, "char": cfg.char}
    text = [f"{n}: " + " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in r.items())
            for n, r in results.items()]
    text.append(f"{sum(len(r) for r in results.values()) - len(failed)} checks passed, "
                f"{len(failed)} failed")
    return Report(data, text, VIOLATION if failed else OK)


COMMANDS = {
    "hilbert": (cmd_hilbert, "Hilbert series: closed form and expansion"),
    "poincare": (cmd_poincare, "conjectured Poincare series"),
    "betti": (cmd_betti, "multigraded Betti numbers"),
    "matching": (cmd_matching, "build, validate and dump a Morse matching"),
    "koszul": (cmd_koszul, "Koszul homology and its product table"),
    "golod": (cmd_golod, "Golod classification report"),
    "poset": (cmd_poset, "series W of a poset by every method"),
    "language": (cmd_language, "word-language counts"),
    "selftest": (cmd_selftest, "invariant checks on the built-in corpus"),
}


# ----------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--bound-d", type=int, default=None, metavar="D",
                        help="x-degree truncation (default 8)")
    common.add_argument("--bound-h", type=int, default=6, metavar="H",
                        help="homological truncation (default 6)")
    common.add_argument("--char", type=int, default=0, help="field characteristic, 0 or prime")
    common.add_argument("--policy", choices=POLICIES, default="lexfirst")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="monomorse", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"monomorse {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if name == "selftest":
            continue
        what = "poset file" if name == "poset" else "ideal file"
        p.add_argument("input", help=f"{what}, '-' for stdin, or corpus:NAME")
        if name == "poincare":
            p.add_argument("--golod-bound", nargs="?", const="", default=None, metavar="BETTI",
                           help="compare with the Golod bound; BETTI is a JSON file "
                                "written by 'betti --format json' (computed if omitted)")
            p.add_argument("--check", action="store_true",
                           help="compare with Tor^A(k,k) computed directly")
        elif name == "matching":
            p.add_argument("--kind", choices=("standard", "nbc", "gcd"), default="standard")
        elif name == "poset":
            p.add_argument("--method", choices=("all",) + METHODS, default="all")
        elif name == "language":
            p.add_argument("--start", type=int, default=None, metavar="J",
                           help="enumerate L_J only (1-based)")
            p.add_argument("--length", type=int, default=6)
    return parser


def _config(ns) -> RunConfig:
    extra = {k: getattr(ns, k) for k in ("golod_bound", "check", "kind", "method",
                                         "start", "length") if hasattr(ns, k)}
    extra["bound_d_given"] = ns.bound_d is not None
    return RunConfig(ns.command, getattr(ns, "input", None), ns.bound_h,
                     8 if ns.bound_d is None else ns.bound_d, ns.char, ns.policy,
                     ns.format, extra)


def _jsonable(x):
    if isinstance(x, Fraction):
        return _num(x)
    if isinstance(x, (tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def emit(cfg: RunConfig, rep: Report, stream) -> None:
    if cfg.fmt == "json":
        doc = {"schema": SCHEMA, "command": cfg.command, "exit": rep.status}
        doc.update(_jsonable(rep.data))
        stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        stream.write("\n".join(rep.text) + "\n")


def run(cfg: RunConfig, stream=None) -> int:
    """Execute one command and write its report; returns the exit status."""
    stream = stream or sys.stdout
    fn = COMMANDS[cfg.command][0]
    try:
        rep = fn(cfg)
    except (BoundError, LanguageBoundError, NonTermination, SeriesError) as e:
        rep = Report({"error": str(e), "partial": True}, [f"undetermined: {e}"],
                     UNDETERMINED_EXIT)
    emit(cfg, rep, stream)
    return rep.status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:  # --help, --version and usage errors
        return e.code if isinstance(e.code, int) else USAGE
    try:
        cfg = _config(ns)
        return run(cfg)
    except (UsageError, ParseError, PreconditionError) as e:
        print(f"monomorse: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
