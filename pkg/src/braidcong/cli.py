"""Command-line front end: eval, member, verify, enum, cosets.

Exit codes: 0 pass/member, 1 fail/non-member/limit hit, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import enumeration as en
from . import rep as R
from . import tc
from .braid import BraidError, parse_word, pure_generator, sigma
from .suites import DEFAULT_SEED, SUITES, SuiteConfig, run_suite
from .symplectic import MatrixError


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in re.split(r"[\s,]+", text.strip()) if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, obj: dict) -> None:
    text = _dump(obj)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    sys.stdout.write(text)


def _read_word(args):
    if args.word is not None and args.word_file is not None:
        raise UsageError("give --word or --word-file, not both")
    if args.word_file is not None:
        text = Path(args.word_file).read_text()
    elif args.word is not None:
        text = args.word
    else:
        raise UsageError("a word is required (--word or --word-file)")
    return parse_word(text, args.n)


def _matrix_rows(A) -> list[list[int]]:
    return [list(r) for r in A.rows]


def cmd_eval(args) -> int:
    w = _read_word(args)
    if args.m is not None:
        if args.m < 2:
            raise UsageError("--m must be >= 2")
        A = R.rho_mod(w, args.m)
    else:
        A = R.rho(w)
    _emit(args, {
        "schema": 1, "n": w.strands, "mod": args.m, "word": list(w.letters),
        "matrix": _matrix_rows(A), "identity": A.is_identity(),
    })
    return 0


def cmd_member(args) -> int:
    if args.m is None:
        raise UsageError("--m is required")
    if args.m < 2:
        raise UsageError("--m must be >= 2")
    w = _read_word(args)
    ok = R.in_congruence(w, args.m)
    _emit(args, {"schema": 1, "n": w.strands, "m": args.m, "word": list(w.letters), "member": ok})
    return 0 if ok else 1


def cmd_verify(args) -> int:
    cfg = SuiteConfig(
        args.suite, n=args.n_list, p=args.p, m=args.m_list, samples=args.samples,
        limit=args.limit or en.DEFAULT_LIMIT, seed=args.seed, out=args.out, full=args.full,
    )
    if args.k:
        cfg.extra["k"] = args.k
    report = run_suite(cfg)
    _emit(args, report.to_dict())
    return 0 if report.passed else 1


def _parse_kv(text: str) -> dict[str, int]:
    out = {}
    for part in re.split(r"[,\s]+", text.strip()):
        if not part:
            continue
        k, sep, v = part.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {part!r}")
        try:
            out[k] = int(v)
        except ValueError:
            raise UsageError(f"expected an integer for {k}, got {v!r}") from None
    return out


def cmd_enum(args) -> int:
    mod = args.mod if args.mod is not None else args.m
    if mod is None or mod < 2:
        raise UsageError("--mod (or --m) >= 2 is required")
    specs = [s for s in (args.rep, args.pure) if s]
    if len(specs) != 1:
        raise UsageError("give exactly one of --rep n=<k> or --pure n=<k>")
    kv = _parse_kv(specs[0])
    if "n" not in kv:
        raise UsageError("generator spec needs n=<strands>")
    n = kv["n"]
    if args.rep:
        gens = [R.rho_mod(sigma(i, n), mod) for i in range(1, n)]
    else:
        gens = [R.rho_mod(pure_generator(i, j, n), mod) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    limit = args.limit or en.DEFAULT_LIMIT
    try:
        G = en.bfs_generate(gens, limit, allow_partial=args.allow_partial)
    except en.LimitExceeded as exc:
        _emit(args, {"schema": 1, "mod": mod, "n": n, "order": None, "limit_hit": True,
                     "limit": limit, "reached": exc.reached})
        return 1
    report = G.to_report(with_exponent=args.exponent)
    report.update({"n": n, "family": "rep" if args.rep else "pure", "limit": limit})
    _emit(args, report)
    return 0 if G.complete or args.allow_partial else 1


_BUILTIN = re.compile(r"(?:presentation_)?([GHS])\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)")


def load_presentation(spec: str) -> tc.Presentation:
    """A file in the ``gens: k`` format, or a builtin such as ``presentation_G(3,3)`` or ``S(4)``."""
    m = _BUILTIN.fullmatch(spec.strip())
    if m:
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        if kind == "S":
            if b is not None:
                raise UsageError("S takes one argument")
            return tc.presentation_S(a)
        if b is None:
            raise UsageError(f"{kind} takes two arguments (n, p)")
        return (tc.presentation_G if kind == "G" else tc.presentation_H)(a, int(b))
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"no such presentation file or builtin: {spec!r}")
    return tc.parse_presentation(path.read_text())


def cmd_cosets(args) -> int:
    P = load_presentation(args.presentation)
    limit = args.limit or tc.DEFAULT_MAX_COSETS
    T = tc.coset_enumerate(P, limit)
    report = T.to_report()
    report.update({"presentation": args.presentation, "gens": P.gens, "relators": len(P.relators),
                   "max_cosets": limit})
    if T.complete:
        report["valid"] = tc.check_table(P, T)
    _emit(args, report)
    if T.complete:
        return 0 if report["valid"] else 1
    return 0 if args.allow_partial else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braidcong", description="Congruence subgroups of braid groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def word_args(p):
        p.add_argument("--n", type=int, help="number of strands (or an 'n=<k>;' prefix in the word)")
        p.add_argument("--word", help="braid word: signed generator indices, e.g. '1 2 -1'")
        p.add_argument("--word-file", help="file holding a braid word")
        p.add_argument("--out", help="also write the JSON report here")

    p = sub.add_parser("eval", help="print rho(w), or rho_m(w) with --m")
    word_args(p)
    p.add_argument("--m", type=int, help="reduce the matrix mod m")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("member", help="exit 0 iff w lies in B_n[m]")
    word_args(p)
    p.add_argument("--m", type=int, help="level of the congruence subgroup")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--n", dest="n_list", type=_int_list, help="strand counts, e.g. 3,5")
    p.add_argument("--p", type=_int_list, help="primes, e.g. 3,5")
    p.add_argument("--m", dest="m_list", type=_int_list, help="levels, e.g. 6,12")
    p.add_argument("--k", type=_int_list, help="chain lengths (lemma43)")
    p.add_argument("--samples", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--full", action="store_true", help="include the slow cases")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enum", help="BFS closure of a matrix group mod m")
    p.add_argument("--rep", help="images of sigma_1..sigma_{n-1}: n=<k>")
    p.add_argument("--pure", help="images of the a_{i,j}: n=<k>")
    p.add_argument("--mod", type=int)
    p.add_argument("--m", type=int, help="alias for --mod")
    p.add_argument("--limit", type=int)
    p.add_argument("--exponent", action="store_true", help="also compute the group exponent")
    p.add_argument("--allow-partial", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("cosets", help="Todd-Coxeter enumeration over the trivial subgroup")
    p.add_argument("presentation", help="presentation file or builtin, e.g. presentation_G(3,3)")
    p.add_argument("--limit", type=int, help="maximum live cosets")
    p.add_argument("--allow-partial", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cosets)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, BraidError, MatrixError, ValueError, OSError) as exc:
        print(f"braidcong: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
