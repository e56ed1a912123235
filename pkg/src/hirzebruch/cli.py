"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import cover, lattice, pencil, words
from .field import DEFAULT_CONDUCTOR

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    conductor: int = DEFAULT_CONDUCTOR
    precision: int = 256
    depth: int = 8
    assignment: tuple = lattice.DEFAULT_ASSIGNMENT
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.conductor != 5:
            raise InputError("only conductor 5 is supported by the lattice")
        if self.precision < 64:
            raise InputError("--precision must be at least 64 bits")
        if self.depth < 0:
            raise InputError("--depth must be nonnegative")

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "precision": self.precision, "depth": self.depth,
                "assignment": ",".join(self.assignment), "seed": self.seed}


def _report(command: str, cfg: Config, results, passed: bool, **extra) -> dict:
    out = {"command": command, "config": cfg.to_json(), "results": results}
    out.update(extra)
    out["summary"] = {"passed": passed}
    return out


def _emit(report: dict, as_json: bool, text_lines) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def _parse_word(text: str) -> words.GenWord:
    try:
        return words.parse(text)
    except words.WordSyntaxError as exc:
        raise InputError(f"{text!r}: {exc}") from None


def _rep(cfg: Config) -> lattice.Gamma2Rep:
    rep = lattice.Gamma2Rep(lattice.default_generators(), cfg.assignment)
    if not rep.is_valid():
        valid = [",".join(p) for p in lattice.valid_assignments()]
        raise _AssignmentRejected(cfg.assignment, rep.validation(), valid)
    return rep


class _AssignmentRejected(Exception):
    def __init__(self, assignment, checks, valid):
        super().__init__("assignment failed validation")
        self.assignment, self.checks, self.valid = assignment, checks, valid


def _words_from(args) -> list:
    """(label, text) pairs from positional words and/or the corpus file."""
    items = [(f"arg{i + 1}", t) for i, t in enumerate(args.words or [])]
    if args.corpus:
        try:
            with open(args.corpus, encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise InputError(f"cannot read corpus: {exc}") from None
        items += [(f"line{n}", t) for n, t in words.read_corpus(lines)]
    return items


# -- commands ---------------------------------------------------------------------

def cmd_verify_lattice(args, cfg: Config):
    gens = lattice.build_generators(literal_r01=args.literal_r01, check=False)
    rep = lattice.verify_lattice(gens)
    assignment = lattice.Gamma2Rep(gens, cfg.assignment).validation() if rep.passed else None
    report = _report("verify-lattice", cfg, rep.to_json()["checks"], rep.passed,
                     signature=rep.to_json()["signature"], assignment_validation=assignment)
    lines = [f"({c.item}) {'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in rep.checks]
    lines.append(f"signature {report['signature']}")
    lines.append("all items pass" if rep.passed else "verification FAILED")
    return report, lines, EXIT_OK if rep.passed else EXIT_FAIL


def _certify_one(payload):
    label, text, assignment, precision = payload
    try:
        w = words.parse(text)
    except words.WordSyntaxError as exc:
        return {"input": label, "word": text, "error": str(exc)}
    rep = lattice.Gamma2Rep(lattice.default_generators(), assignment)
    cert = lattice.certify(w, rep, precision)
    return {"input": label, **cert.to_json()}


def _map(fn, payloads, workers: int) -> list:
    if workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, payloads))
    return [fn(p) for p in payloads]


def cmd_certify(args, cfg: Config):
    items = _words_from(args)
    _rep(cfg)
    payloads = [(label, text, cfg.assignment, cfg.precision) for label, text in items]
    results = _map(_certify_one, payloads, cfg.workers)
    errors = [r for r in results if "error" in r]
    report = _report("certify", cfg, results, not errors)
    lines = []
    for r in results:
        if "error" in r:
            lines.append(f"{r['input']}: ERROR {r['error']}")
        else:
            lines.append(f"{r['input']}: {r['word'] or '(empty)'}  trace {r['trace']}  "
                         f"{r['nt_class']}  {r['fiber_kind']}  "
                         f"trivial-in-pi1C={r['image_trivial_in_pi1C']}  "
                         f"{r['isometry_class']['tag']}")
    return report, lines, EXIT_INPUT if errors else EXIT_OK


def cmd_membership(args, cfg: Config):
    items = _words_from(args)
    rep = _rep(cfg)
    results = []
    errors = False
    for label, text in items:
        try:
            w = _parse_word(text)
        except InputError as exc:
            results.append({"input": label, "word": text, "error": str(exc)})
            errors = True
            continue
        member = words.in_pi1Cu(w)
        results.append({
            "input": label,
            "word": str(w),
            "abelianization_mod5": list(words.abelianize_mod5(w)),
            "in_pi1Cu": member,
            "in_kernel_to_pi1C": lattice.in_kernel_to_pi1C(w, rep) if member else None,
        })
    report = _report("membership", cfg, results, not errors)
    lines = [f"{r['input']}: ERROR {r['error']}" if "error" in r else
             f"{r['input']}: {r['word'] or '(empty)'}  ab={tuple(r['abelianization_mod5'])}  "
             f"in_pi1Cu={r['in_pi1Cu']}  in_kernel={r['in_kernel_to_pi1C']}" for r in results]
    return report, lines, EXIT_INPUT if errors else EXIT_OK


def cmd_distinguish(args, cfg: Config):
    w1, w2 = _parse_word(args.word1), _parse_word(args.word2)
    for w in (w1, w2):
        if not words.in_pi1Cu(w):
            raise InputError(f"{w} is not in the index-25 subgroup")
    rep = _rep(cfg)
    verdict = lattice.distinguish(w1, w2, rep, cfg.depth)
    result = {"word1": str(w1), "word2": str(w2), **verdict.to_json()}
    report = _report("distinguish", cfg, [result], True)
    lines = [f"{verdict.tag.value}"] + [f"  {k}: {v}" for k, v in verdict.witness.items()]
    return report, lines, EXIT_OK


def _cover_rows(seed: int):
    arr = cover.complete_quadrilateral()
    a = lambda l: cover.alpha(arr, l)
    rows = []
    checks = []

    for p in arr.multiple_points():
        m = len(arr.point_lines(p))
        st = cover.stabilizer(arr, p)
        row = {"row": f"stabilizer {p}", "lines": sorted(arr.point_lines(p)),
               "order": cover.order(st), "expected": arr.n ** m}
        rows.append(row)
        checks.append(row["order"] == row["expected"])
        if m >= 3:
            loop = cover.span([cover.loop_around_exceptional(arr, p)], arr)
            q = cover.quotient_order(st, loop)
            rows.append({"row": f"stabilizer {p} / loop", "order": q})
            checks.append(q == arr.n ** (m - 1))

    for curve in (cover.GENERIC,) + arr.lines:
        s = cover.curve_stats(arr, curve)
        rows.append({"row": f"curve {curve}", **s.to_json(),
                     "component_group_order": cover.order(cover.component_group(arr, curve))})
        checks.append(s.components * cover.order(cover.component_group(arr, curve))
                      == arr.n ** (arr.k - 1))

    c_euler = cover.branched_euler(arr.n ** 2, 2, 3, arr.n)
    rows.append({"row": "curve C over an exceptional line", "euler": c_euler,
                 "genus": cover.genus_from_euler(c_euler)})

    H = cover.span([a("D34"), a("D12") + a("D13") + a("D23"), a("D12") + a("D14") + a("D24")], arr)
    K = cover.span([a("D12"), a("D34") + a("D13") + a("D14"), a("D34") + a("D23") + a("D24")], arr)
    inter = cover.intersect(H, K)
    ok = inter == cover.span([a("D12"), a("D34")], arr)
    rows.append({"row": "intersection of the two fiber-component subgroups",
                 "result": str(inter), "equals <alpha12, alpha34>": ok})
    checks.append(ok)

    G = cover.component_group(arr, cover.GENERIC)
    for p in arr.triple_points():
        st = cover.stabilizer(arr, p)
        j = cover.join(st, G) == cover.full_group(arr)
        i = cover.intersect(st, G) == cover.span([cover.loop_around_exceptional(arr, p)], arr)
        rows.append({"row": f"Stab({p}) with generic component group",
                     "join_is_full": j, "intersection_is_loop": i})
        checks += [j, i]

    sf = cover.singular_fiber_report(arr)
    rows.append({"row": "singular fibers", **sf.to_json()})
    checks.append(sf.consistent)

    ch = cover.chart_roundtrip_check(100, seed, arr)
    rows.append({"row": "chart roundtrip", **ch})
    checks.append(ch["failed"] == 0 and ch["boundary_cases_passed"])
    return rows, all(checks)


def cmd_cover_stats(args, cfg: Config):
    rows, ok = _cover_rows(cfg.seed)
    report = _report("cover-stats", cfg, rows, ok)
    return report, render_table(rows) + ["all checks pass" if ok else "checks FAILED"], \
        EXIT_OK if ok else EXIT_FAIL


def render_table(rows) -> list:
    lines = []
    width = max(len(r["row"]) for r in rows)
    for r in rows:
        rest = "  ".join(f"{k}={_fmt(v)}" for k, v in r.items() if k != "row")
        lines.append(f"{r['row']:<{width}}  {rest}")
    return lines


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v)


def cmd_pencil(args, cfg: Config):
    q = args.query
    P = pencil.ProjPoint.parse
    try:
        if q == "eval":
            _need(args.args, 1)
            p = P(args.args[0])
            res = {"point": str(p), "value": str(pencil.pencil_eval(p))}
        elif q == "chart":
            _need(args.args, 3)
            val = pencil.blowup_chart_eval(args.args[0], args.args[1:3])
            res = {"chart": args.args[0], "coords": args.args[1:3], "value": str(val)}
        elif q == "fiber":
            _need(args.args, 1)
            v = P(args.args[0])
            form = pencil.fiber_equation(v)
            res = {"value": str(v), "form": form.to_json(), "singular": pencil.is_singular_fiber(v)}
        elif q == "singular":
            res = {"singular_values": [str(v) for v in pencil.singular_values()]}
        elif q == "cross-ratio":
            _need(args.args, 4)
            res = {"value": str(pencil.cross_ratio(*(P(x) for x in args.args)))}
        elif q == "config5":
            _need(args.args, 5)
            res = {"value": str(pencil.config5(*(P(x) for x in args.args)))}
        elif q == "lefschetz":
            _need(args.args, 1)
            p = P(args.args[0])
            x, y = pencil.lefschetz_coords(p)
            res = {"point": str(p), "x": str(x), "y": str(y), "value": str(pencil.pencil_eval(p))}
        else:
            raise InputError(f"unknown pencil query {q!r}")
    except (pencil.BasePointError, pencil.IndeterminateValue, pencil.Degenerate, ValueError) as exc:
        raise InputError(str(exc)) from None
    report = _report("pencil", cfg, [{"query": q, **res}], True)
    return report, [f"{k}: {_fmt(v)}" for k, v in res.items()], EXIT_OK


def _need(a, k):
    if len(a) != k:
        raise InputError(f"expected {k} argument(s), got {len(a)}")


def cmd_chart_check(args, cfg: Config):
    res = cover.chart_roundtrip_check(args.samples, cfg.seed)
    ok = res["failed"] == 0 and res["boundary_cases_passed"]
    report = _report("chart-check", cfg, [res], ok)
    return report, [f"chart roundtrip: {res['passed']}/{res['samples']} passed"], \
        EXIT_OK if ok else EXIT_FAIL


def cmd_commutativity_check(args, cfg: Config):
    com = pencil.commutativity_check(args.samples, cfg.seed)
    lef = pencil.lefschetz_chart_check(args.lefschetz_samples, cfg.seed)
    sing = [str(v) for v in pencil.singular_values()]
    ok = (com["failed"] == 0 and com["forced_singular_value_passed"] and lef["failed"] == 0
          and sing == sorted(str(v) for v in pencil.SINGULAR_VALUES))
    results = [{"check": "commutativity", **com}, {"check": "lefschetz-chart", **lef},
               {"check": "singular-values", "values": sing}]
    report = _report("commutativity-check", cfg, results, ok)
    lines = [f"commutativity: {com['passed']}/{com['samples']} passed",
             f"lefschetz chart: {lef['passed']}/{lef['samples']} passed",
             f"singular values: {' '.join(sing)}"]
    return report, lines, EXIT_OK if ok else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision", type=int, default=256, help="precision cap in bits")
    common.add_argument("--depth", type=int, default=8, help="conjugator search depth")
    common.add_argument("--assignment", default="01,02,12",
                        help="images of Tinf,T0,T1 among R(01),R(02),R(12)")
    common.add_argument("--workers", type=int, default=1, help="parallel workers for batches")

    parser = argparse.ArgumentParser(prog="hirzebruch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-lattice", parents=[common])
    p.add_argument("--literal-r01", action="store_true",
                   help="use R(01) with +mu(1-mu) in its first column (fails)")
    p.set_defaults(func=cmd_verify_lattice)

    for name, func in (("certify", cmd_certify), ("membership", cmd_membership)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("words", nargs="*")
        p.add_argument("--corpus", metavar="FILE")
        p.set_defaults(func=func)

    p = sub.add_parser("distinguish", parents=[common])
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("cover-stats", parents=[common])
    p.set_defaults(func=cmd_cover_stats)

    p = sub.add_parser("pencil", parents=[common])
    p.add_argument("query", choices=["eval", "chart", "fiber", "singular", "cross-ratio",
                                     "config5", "lefschetz"])
    p.add_argument("args", nargs="*")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("chart-check", parents=[common])
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_chart_check)

    p = sub.add_parser("commutativity-check", parents=[common])
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--lefschetz-samples", type=int, default=200)
    p.set_defaults(func=cmd_commutativity_check)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(precision=args.precision, depth=args.depth,
                     assignment=lattice.parse_assignment(args.assignment),
                     seed=args.seed, workers=max(1, args.workers))
        report, lines, code = args.func(args, cfg)
    except (InputError, lattice.AssignmentError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except _AssignmentRejected as exc:
        sys.stderr.write(
            f"assignment {','.join(exc.assignment)} fails validation {exc.checks}; "
            f"valid assignments: {'; '.join(exc.valid) or 'none'}\n")
        return EXIT_FAIL
    _emit(report, args.json, lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
