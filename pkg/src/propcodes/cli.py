"""
Command-line interface.

    propcodes construct --q 2 --n 2 --base full --f "x1*x2" --enumerate
    propcodes verify code.json --perfect --propelinear
    propcodes group code.json
    propcodes count-quadratics --q 3 --m 2 --confirm
    propcodes extract-f words.txt --spec code.json
    propcodes equivalence a.txt b.txt --q 2

Every report is JSON; exit status is 0 iff every requested verdict holds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from . import __version__
from .equivalence import SEARCH_CEILING, exact_equivalence
from .errors import InconsistencyError, PreconditionError, ResourceError, UsageError
from .field import FieldSpec
from .groups import allowed_orders, build_group, check_relation, element_order, fingerprint, match_catalog
from .linear import LinearCode, hamming_code
from .perfect import EXHAUSTIVE_CEILING
from .propelinear import certify_propelinear
from .quadratic import QuadraticForm, count_quadratics, enumerate_quadratics, parse_expression, random_quadratic
from .vscode import VSCode, reconstruct_f
from .words import all_words, format_word, parse_word

EXAMPLES = {
    # the non-perfect length-5 example with group D4 x Z2
    "length5": (2, "full", 2, "x1*x2"),
    # two representations of the zero function on the repetition code
    "hamming7-zero": (2, "hamming:r=2", None, "zero"),
    "hamming7-quadratic": (2, "hamming:r=2", None, "x1*x2 + x1*x3"),
}


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    with os.fdopen(fd, "w", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def emit(args, obj, path: str | None = None) -> None:
    target = path or args.json_out
    if target:
        write_atomic(target, dump(obj))
    else:
        sys.stdout.write(dump(obj))


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def read_words(path: str, spec: FieldSpec) -> list[tuple[int, ...]]:
    with open(path) as fh:
        return [parse_word(line, spec) for line in fh if line.strip()]


def make_field(args) -> FieldSpec:
    modulus = tuple(int(c) for c in args.modulus.split(",")) if getattr(args, "modulus", None) else None
    return FieldSpec.of_order(args.q, modulus)


def parse_options(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, text.split(",")):
        key, _, value = part.partition("=")
        out[key.strip()] = value.strip()
    return out


def make_base(source: str, spec: FieldSpec, n: int | None) -> LinearCode:
    kind, _, rest = source.partition(":")
    if kind == "hamming":
        return hamming_code(spec, int(parse_options(rest).get("r", 2)))
    if kind == "full":
        if n is None:
            raise UsageError("--base full needs --n")
        return LinearCode.full_space(spec, n)
    if kind == "file":
        obj = load_json(rest)
        return LinearCode.from_json(obj.get("base", obj), spec)
    raise UsageError(f"unknown base code {source!r}")


def make_f(source: str, spec: FieldSpec, n: int, seed: int) -> tuple[QuadraticForm, int | None]:
    kind, _, rest = source.partition(":")
    if kind == "random":
        s = int(parse_options(rest).get("seed", seed))
        return random_quadratic(spec, n, s, zero_constant=True), s
    if kind == "file":
        return QuadraticForm.from_json(load_json(rest), spec), None
    return parse_expression(source, spec, n), None


def load_code(path: str) -> VSCode:
    return VSCode.from_json(load_json(path))


# -- commands -------------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.example:
        q, base_src, n, f_src = EXAMPLES[args.example]
        args.q, args.base, args.n, args.f = q, base_src, n, f_src
    spec = make_field(args)
    base = make_base(args.base, spec, args.n)
    f, f_seed = make_f(args.f, spec, base.n, args.seed)
    if args.propelinear and f.constant != 0:
        raise PreconditionError("--propelinear requires f(0) = 0")
    code = VSCode(base, f)
    doc = code.to_json()
    doc["N"] = code.length
    doc["size"] = code.size
    doc["f_expression"] = f.to_expression()
    if f_seed is not None:
        doc["seed"] = f_seed
    if args.enumerate:
        lines = "".join(w + "\n" for w in sorted(format_word(w) for w in code.enumerate(args.ceiling)))
        if args.words:
            write_atomic(args.words, lines)
        else:
            sys.stdout.write(lines)
        if args.out or args.json_out:
            emit(args, doc, args.out)
    else:
        emit(args, doc, args.out)
    return 0


def cmd_verify(args) -> int:
    code = load_code(args.spec)
    want_perfect = args.perfect or not args.propelinear
    want_prop = args.propelinear or not args.perfect
    report: dict = {"seed": args.seed}
    ok = True
    if want_perfect:
        rep = code.verify_perfect(args.mode, args.trials, args.seed, args.ceiling, args.threads)
        report["perfect"] = rep.to_json()
        ok &= rep.verdict
    if want_prop:
        cert = certify_propelinear(code, closure_samples=args.closure_samples, seed=args.seed,
                                   ceiling=args.ceiling)
        report["propelinear"] = cert.to_json()
        ok &= cert.propelinear
    report["ok"] = ok
    emit(args, report)
    return 0 if ok else 1


def _parse_relation(text: str, table) -> list[tuple[int, int]]:
    word = []
    for token in text.split():
        label, _, exp = token.partition("^")
        word.append((table.index(label), int(exp) if exp else 1))
    return word


def cmd_group(args) -> int:
    code = load_code(args.spec)
    table = build_group(code)
    fp = fingerprint(table)
    orders = {element_order(table, g) for g in range(table.order)}
    relations = [
        {"word": rel, "holds": check_relation(table, _parse_relation(rel, table))}
        for rel in args.relation
    ]
    doc = fp.to_json(match_catalog(fp))
    doc["axioms"] = table.check_axioms() if table.order <= 64 else None
    doc["order_law"] = orders <= allowed_orders(code.field.p)
    doc["relations"] = relations
    emit(args, doc)
    return 0 if doc["order_law"] and all(r["holds"] for r in relations) else 1


def cmd_count_quadratics(args) -> int:
    spec = make_field(args)
    count = count_quadratics(spec, args.m)
    doc: dict = {"q": spec.q, "m": args.m, "count": count}
    ok = True
    if args.confirm:
        points = all_words(spec, args.m)
        if count * len(points) > args.ceiling:
            raise ResourceError(f"confirmation needs {count * len(points)} evaluations, over ceiling {args.ceiling}")
        tables = {f.eval_many(points).tobytes() for f in enumerate_quadratics(spec, args.m)}
        doc["enumerated"] = len(tables)
        doc["equal"] = ok = len(tables) == count
    emit(args, doc)
    return 0 if ok else 1


def cmd_extract_f(args) -> int:
    if args.spec:
        base = load_code(args.spec).base
    else:
        spec = make_field(args)
        base = make_base(args.base, spec, args.n)
    words = read_words(args.words, base.field)
    try:
        if len(set(words)) != len(words):
            dup = next(w for w in words if words.count(w) > 1)
            raise InconsistencyError(f"word {format_word(dup)} is listed twice")
        table = reconstruct_f(words, base)
    except InconsistencyError as exc:
        emit(args, {"consistent": False, "error": str(exc)})
        return 1
    emit(args, {"consistent": True, "table": {format_word(c): v for c, v in sorted(table.items())}})
    return 0


def cmd_equivalence(args) -> int:
    spec = make_field(args)
    a, b = read_words(args.a, spec), read_words(args.b, spec)
    length = len(a[0]) if a else 0
    witness = exact_equivalence(a, b, spec, length, args.search_ceiling)
    emit(args, {"equivalent": witness is not None, "witness": witness.to_json() if witness else None})
    return 0 if witness is not None else 1


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ceiling", type=int, default=EXHAUSTIVE_CEILING,
                        help="enumeration / exhaustive-sweep ceiling (default 2^24)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json-out", metavar="PATH")

    field_opts = argparse.ArgumentParser(add_help=False)
    field_opts.add_argument("--q", type=int, default=2, help="field order (prime power <= 9)")
    field_opts.add_argument("--modulus", help="comma-separated coefficients, low to high")

    parser = argparse.ArgumentParser(prog="propcodes", description=__doc__.splitlines()[1],
                                     parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common, field_opts], help="build C(H, f)")
    p.add_argument("--base", default="hamming:r=2", help="hamming:r=R | full | file:PATH")
    p.add_argument("--n", type=int, help="length of the base code for --base full")
    p.add_argument("--f", default="zero", help='zero | "x1*x2 + ..." | random:seed=S | file:PATH')
    p.add_argument("--example", choices=sorted(EXAMPLES))
    p.add_argument("--propelinear", action="store_true", help="require f(0) = 0")
    p.add_argument("--enumerate", action="store_true", help="list codewords, sorted")
    p.add_argument("--words", metavar="PATH", help="codeword file (default stdout)")
    p.add_argument("--out", metavar="PATH", help="code spec JSON")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="1-perfectness and propelinearity")
    p.add_argument("spec")
    p.add_argument("--perfect", action="store_true")
    p.add_argument("--propelinear", action="store_true")
    p.add_argument("--mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--closure-samples", type=int, default=100_000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("group", parents=[common], help="fingerprint the group {Phi_w}")
    p.add_argument("spec")
    p.add_argument("--relation", action="append", default=[],
                   help='space-separated codeword labels with optional ^k, e.g. "10000 11001 10000 11001"')
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("count-quadratics", parents=[common, field_opts], help="number of quadratic functions on F^m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--confirm", action="store_true", help="also count distinct value tables by brute force")
    p.set_defaults(func=cmd_count_quadratics)

    p = sub.add_parser("extract-f", parents=[common, field_opts], help="recover f from a codeword file")
    p.add_argument("words")
    p.add_argument("--spec", help="code spec JSON supplying the base code")
    p.add_argument("--base", default="hamming:r=2")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_extract_f)

    p = sub.add_parser("equivalence", parents=[common, field_opts], help="search for an isometry between two codes")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--search-ceiling", type=int, default=SEARCH_CEILING)
    p.set_defaults(func=cmd_equivalence)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PreconditionError, ResourceError, InconsistencyError, OSError) as exc:
        print(f"propcodes: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
