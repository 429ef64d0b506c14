"""Command-line front end.

    isosing verify <check>... | all [--deep] [--budget N] [--cache-dir D] [--format json|text] [--corpus D]
    isosing verify tangent-cone --family yd --dmax N
    isosing list
    isosing coulomb gen --characters "(-1,0);(1,-3);(0,1)" --box 3 --out relations.txt
    isosing arrangement analyze FILE --profile rank2
    isosing cache info|clear [--cache-dir D]

Exit status: 0 when no check fails, 1 when one does, 2 on usage errors.
The cache directory defaults to ``$ISOSING_CACHE_DIR`` when that is set.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from . import __version__, arrangement, charts, coulomb, paperdata, tangentcone
from .groebner import DEFAULT_BUDGET, GBCache, GroebnerTimeout
from .polyring import format_poly
from .report import FAIL, INCONCLUSIVE, PASS, SKIPPED, Report

CACHE_ENV = "ISOSING_CACHE_DIR"
log = logging.getLogger("isosing")


@dataclass
class Context:
    corpus_dir: Optional[Path] = None
    budget: int = DEFAULT_BUDGET
    cache_dir: Optional[Path] = None
    dmax: int = 8
    _corpus: Optional[paperdata.Corpus] = field(default=None, repr=False)

    @property
    def corpus(self) -> paperdata.Corpus:
        if self._corpus is None:
            self._corpus = paperdata.load_corpus(self.corpus_dir)
            if self.cache_dir is not None:
                self._corpus.gb_cache = GBCache(self.cache_dir)
        return self._corpus

    @property
    def corpus_hash(self) -> str:
        return paperdata.corpus_checksum(self.corpus_dir)


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[Context], Report]
    summary: str
    deep: bool = False
    uses_corpus: bool = True


def _reducedness(ctx: Context) -> Report:
    return coulomb.reducedness_scan(coulomb.h23_rep(), 3, 4, coulomb.H23_GENERATORS)


REGISTRY: dict[str, Check] = {
    c.name: c
    for c in [
        Check("invariant-generators", lambda c: paperdata.verify_invariant_generators(c.corpus), "the 12 generators are G5-invariant and real"),
        Check("relations-g5", lambda c: paperdata.verify_relations_G5(c.corpus), "35 relations of C[W/G5] vanish"),
        Check("relations-yogh", lambda c: paperdata.verify_relations_yogh(c.corpus), "35 yogh relations vanish on the X44 chart"),
        Check("dimension-yogh", lambda c: paperdata.verify_yogh_dimension(c.corpus, c.budget), "yogh ideal has Krull dimension 4"),
        Check("hilbert-yogh", lambda c: paperdata.verify_hilbert_yogh(c.corpus, c.budget), "weighted Hilbert series of yogh"),
        Check("molien-g5", lambda c: paperdata.verify_molien_g5(), "Molien series of G5 on W", uses_corpus=False),
        Check("singular-locus", lambda c: paperdata.verify_singular_locus_factorizations(c.corpus), "singular-locus generators"),
        Check("symmetries", lambda c: paperdata.verify_symmetries(c.corpus, c.budget), "phi, tau, chi on both presentations"),
        Check("nilpotency-yogh", lambda c: tangentcone.nilpotency_witness_yogh(c.corpus).report, "z1 is a nilpotent of the tangent cone"),
        Check("regular-sequence", lambda c: paperdata.verify_regular_sequence(c.corpus, c.budget), "h, z2, c-1, c1 + z-2 is regular"),
        Check("x24-syzygies", lambda c: charts.verify_X24_syzygies(c.corpus), "X24,0 syzygies"),
        Check("a2-isomorphism", lambda c: charts.verify_a2_isomorphism(c.corpus), "X13,1 maps onto the a2 nilpotent cone"),
        Check("x93-smooth", lambda c: charts.verify_X93(c.corpus, c.budget), "X9,3 relation and Jacobian criterion"),
        Check("yogh-expressions", lambda c: charts.verify_yogh_expressions(c.corpus), "ambient generators in yogh coordinates"),
        Check("preimage-dimensions", lambda c: charts.verify_preimage_dimensions(c.corpus, c.budget), "exceptional fibres are 2-dimensional"),
        Check("ideal-j", lambda c: charts.verify_ideal_J_and_chart(c.corpus, c.budget), "the ideal J and its orbit"),
        Check("tangent-cone-yd", lambda c: tangentcone.verify_Yd_family(c.dmax), "Y(d) tangent cones are domains", uses_corpus=False),
        Check("rho-lemma", lambda c: tangentcone.verify_rho_and_lemma(c.corpus, c.budget), "rho images and completeness-lemma hypotheses"),
        Check("coulomb-h23", lambda c: coulomb.verify_h23_relations(), "h23 toric data and relations", uses_corpus=False),
        Check("coulomb-reducedness", _reducedness, "pure powers of monopoles never degenerate", uses_corpus=False),
        Check("h23-qft-ideals", lambda c: coulomb.h23_qft_blowup_data(c.budget), "the two h23 blow-up ideals", uses_corpus=False),
        Check("arrangement-profile", lambda c: arrangement.verify_arrangement_profile(), "slice chambers and the A3 profile", uses_corpus=False),
        Check(
            "arrangement-g5",
            lambda c: arrangement.verify_g5_profile(arrangement.g5_arrangement_path(c.corpus_dir or paperdata.CORPUS_DIR)),
            "G5 rank-2 profile (needs external data)",
            uses_corpus=False,
        ),
        Check("isolatedness-yogh", lambda c: charts.verify_isolatedness_yogh(c.corpus, c.budget), "yogh is isolated", deep=True),
        Check("coulomb-h23-embedding", lambda c: coulomb.verify_h23_embedding(c.corpus, c.budget), "h23 embeds in the a0t chart", deep=True),
    ]
}

# `verify tangent-cone --family F` selects one of these
FAMILIES = {"yd": "tangent-cone-yd", "yogh": "nilpotency-yogh"}


def run_check(check: Check, ctx: Context) -> dict:
    start = time.perf_counter()
    try:
        rep = check.run(ctx)
        status = rep.status
        detail = rep.summary()
        data = rep.data
        notes = rep.notes
    except GroebnerTimeout as exc:
        status, detail, data, notes = INCONCLUSIVE, f"budget exhausted: {exc}", {"stats": exc.stats}, []
    except Exception as exc:  # a crash is a failure with its message as the witness
        log.debug("check %s raised", check.name, exc_info=True)
        status, detail, data, notes = FAIL, f"{type(exc).__name__}: {exc}", {}, []
    out = {
        "name": check.name,
        "status": status,
        "seconds": round(time.perf_counter() - start, 3),
        "detail": detail,
    }
    if data:
        out["data"] = data
    if notes:
        out["notes"] = notes
    if check.uses_corpus:
        out["artifacts"] = {"corpus_sha256": ctx.corpus_hash}
    return out


def skipped(check: Check, reason: str) -> dict:
    return {"name": check.name, "status": SKIPPED, "seconds": 0.0, "detail": reason}


def summarize(results: list[dict]) -> dict:
    counts = {s: 0 for s in (PASS, FAIL, INCONCLUSIVE, SKIPPED)}
    for r in results:
        counts[r["status"]] += 1
    counts["total"] = len(results)
    return counts


def _bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _usage_error(msg: str) -> int:
    print(f"isosing: error: {msg}", file=sys.stderr)
    return 2


def cmd_verify(args) -> int:
    names = list(args.checks)
    if args.family:
        if names != ["tangent-cone"]:
            return _usage_error("--family only applies to 'verify tangent-cone'")
    selected: list[str] = []
    for n in names:
        if n == "all":
            selected.extend(REGISTRY)
        elif n == "tangent-cone":
            fams = [args.family] if args.family else list(FAMILIES)
            bad = [f for f in fams if f not in FAMILIES]
            if bad:
                return _usage_error(f"unknown family {bad[0]!r}; choose from {', '.join(FAMILIES)}")
            selected.extend(FAMILIES[f] for f in fams)
        elif n in REGISTRY:
            selected.append(n)
        else:
            return _usage_error(f"unknown check {n!r}; run 'isosing list' for the available names")
    selected = list(dict.fromkeys(selected))
    explicit = set(names) - {"all"}

    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
    ctx = Context(
        corpus_dir=Path(args.corpus) if args.corpus else None,
        budget=args.budget,
        cache_dir=Path(cache_dir) if cache_dir else None,
        dmax=args.dmax,
    )
    results = []
    for name in selected:
        check = REGISTRY[name]
        if check.deep and not args.deep and name not in explicit:
            res = skipped(check, "deep suite; pass --deep to run")
        else:
            res = run_check(check, ctx)
        results.append(res)
        if args.format == "text":
            print(_text_line(res), flush=True)
    summary = summarize(results)
    if args.format == "json":
        doc = {"version": __version__, "checks": results, "summary": summary}
        print(json.dumps(doc, indent=2, default=str))
    else:
        print(
            f"{summary['total']} checks: {summary[PASS]} passed, {summary[FAIL]} failed, "
            f"{summary[INCONCLUSIVE]} inconclusive, {summary[SKIPPED]} skipped"
        )
    return 1 if summary[FAIL] else 0


def _text_line(res: dict) -> str:
    line = f"{res['status']:<12} {res['name']:<24} {res['seconds']:8.2f}s  {res['detail']}"
    if res["name"] == "hilbert-yogh" and "data" in res:
        d = res["data"]
        line += f"\n{'':12} H(t) = ({d['numerator']}) / ({d['denominator']})"
    return line


def cmd_list(args) -> int:
    for c in REGISTRY.values():
        print(f"{c.name:<24} {'deep' if c.deep else '    '}  {c.summary}")
    return 0


def cmd_coulomb_gen(args) -> int:
    try:
        chars = coulomb.parse_characters(args.characters)
        rep = coulomb.TorusRep(tuple(chars))
    except ValueError as exc:
        return _usage_error(f"bad --characters: {exc}")
    if args.box < 1:
        return _usage_error("--box must be at least 1")
    ring = coulomb.BfnRing(rep, tuple(coulomb.box(rep.n, args.box)))
    lines = [
        f"# characters {args.characters}; monopoles r^lam with |lam_i| <= {args.box}",
        f"# variables {' '.join(ring.ring.names)}",
    ]
    lines += [format_poly(p) for p in ring.relation_polys()]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(lines) - 2} relations to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_arrangement(args) -> int:
    try:
        arr = arrangement.Arrangement.load(args.file)
    except (OSError, ValueError) as exc:
        return _usage_error(f"cannot read arrangement: {exc}")
    poset = arrangement.intersection_poset(arr)
    prof = sorted({len(poset.lower_covers(i)) for i in poset.of_rank(2)})
    doc = {
        "hyperplanes": len(arr.normals),
        "dimension": arr.dim,
        "flats_by_rank": {r: len(poset.of_rank(r)) for r in sorted(set(poset.rank))},
        "rank2_profile": prof,
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"{doc['hyperplanes']} hyperplanes in dimension {doc['dimension']}")
        for r, n in doc["flats_by_rank"].items():
            print(f"rank {r}: {n} flats")
        print(f"rank-2 lower-cover profile: {{{', '.join(map(str, prof))}}}")
    return 0


def cmd_cache(args) -> int:
    d = args.cache_dir or os.environ.get(CACHE_ENV)
    if not d:
        return _usage_error(f"no cache directory (use --cache-dir or set {CACHE_ENV})")
    root = Path(d)
    files = sorted(root.glob("*.gb")) if root.exists() else []
    if args.action == "clear":
        for f in files:
            f.unlink()
        print(f"removed {len(files)} cached bases from {root}")
    else:
        size = sum(f.stat().st_size for f in files)
        print(f"{root}: {len(files)} cached bases, {size} bytes")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isosing", description="Exact re-verification of the C^4/G5 blow-up computations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run named checks, or 'all'")
    v.add_argument("checks", nargs="+", help="check names, 'all', or 'tangent-cone'")
    v.add_argument("--deep", nargs="?", const=True, default=False, type=_bool, help="include the deep suite")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Groebner reduction-step budget per computation")
    v.add_argument("--cache-dir", help=f"Groebner basis cache (default ${CACHE_ENV})")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--corpus", help="corpus directory (default: the packaged corpus)")
    v.add_argument("--family", help="for 'tangent-cone': yd or yogh")
    v.add_argument("--dmax", type=int, default=8, help="largest d for the Y(d) family (d starts at 4)")
    v.set_defaults(func=cmd_verify)

    ls = sub.add_parser("list", help="list the available checks")
    ls.set_defaults(func=cmd_list)

    c = sub.add_parser("coulomb", help="abelian Coulomb-branch tools")
    csub = c.add_subparsers(dest="coulomb_command", required=True)
    g = csub.add_parser("gen", help="emit the pairwise BFN relations for monopoles in a box")
    g.add_argument("--characters", required=True, help='e.g. "(-1,0);(1,-3);(0,1)"')
    g.add_argument("--box", type=int, default=1)
    g.add_argument("--out")
    g.set_defaults(func=cmd_coulomb_gen)

    a = sub.add_parser("arrangement", help="hyperplane-arrangement tools")
    asub = a.add_subparsers(dest="arrangement_command", required=True)
    an = asub.add_parser("analyze", help="intersection poset of an arrangement file")
    an.add_argument("file")
    an.add_argument("--profile", choices=("rank2",), default="rank2")
    an.add_argument("--format", choices=("text", "json"), default="text")
    an.set_defaults(func=cmd_arrangement)

    k = sub.add_parser("cache", help="inspect or clear the Groebner basis cache")
    k.add_argument("action", choices=("info", "clear"))
    k.add_argument("--cache-dir")
    k.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
