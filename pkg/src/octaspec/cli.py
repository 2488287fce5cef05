"""Command-line front end.

    octaspec matrices
    octaspec enumerate A B      [--max-word-len K] [--format table|json|csv]
    octaspec intensity A B
    octaspec simulate  --min A --max B --n N --trials T --seed S --out FILE
    octaspec verify    A B --n N --trials T --seed S [--threads K]

Exit status: 0 ok, 1 ``verify`` gate failure, 2 bad arguments, 3 resource guard.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import ResourceError
from .exactalg import LETTERS, classify_isometry, format_word, letter_matrix, translation_length
from .intensity import interval_intensity, line_record
from .stats import fit_batch, fmt
from .words import DEFAULT_CEILING, enumerate_classes

DEFAULT_SEED = 20241017
DEFAULT_N = 2000
DEFAULT_TRIALS = 2000
DEFAULT_SIM_WORD_LEN = 4


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _interval(args):
    a = args.a if args.a is not None else args.min
    b = args.b if args.b is not None else args.max
    if a is None or b is None or not (0 <= a <= b):
        raise SystemExit(_usage_error(args, f"need 0 <= min <= max, got {a}, {b}"))
    return a, b


def _usage_error(args, msg):
    args.parser.print_usage(sys.stderr)
    print(f"{args.parser.prog}: error: {msg}", file=sys.stderr)
    return 2


def cmd_matrices(args) -> int:
    rows = []
    for letter in LETTERS:
        m = letter_matrix(letter)
        t = m.trace()
        rows.append([str(letter), str(m), str(t), repr(fmt(translation_length(t))),
                     classify_isometry(m)])
    header = ["letter", "matrix", "trace", "length", "kind"]
    if args.format == "json":
        text = json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n"
    elif args.format == "csv":
        text = _csv(rows, header)
    else:
        text = "".join(f"{r[0]:<4} {r[1]:<34} trace {r[2]:<6} length {r[3]:<16} {r[4]}\n"
                       for r in rows)
    _emit(text, args.out)
    return 0


def _lines(args):
    a, b = _interval(args)
    return enumerate_classes(a, b, max_word_len=args.max_word_len,
                             strict_trace=args.strict_trace, ceiling=args.ceiling)


def cmd_enumerate(args) -> int:
    lines = _lines(args)
    recs = [line_record(ln) for ln in lines]
    header = ["canonical", "orbit_size", "trace_re", "trace_im", "length", "lambda"]
    if args.format == "json":
        text = json.dumps(recs, indent=1) + "\n"
    elif args.format == "csv":
        text = _csv([[r[h] for h in header] for r in recs], header)
    else:
        text = f"{'canonical':<24}{'|[w]|':>10}{'trace':>16}{'length':>16}{'lambda':>16}\n"
        for r in recs:
            tr = f"{r['trace_re']}{r['trace_im']:+d}i"
            text += f"{r['canonical']:<24}{r['orbit_size']:>10}{tr:>16}{r['length']:>16.12g}{r['lambda']:>16.12g}\n"
    _emit(text, args.out)
    return 0


def cmd_intensity(args) -> int:
    a, b = _interval(args)
    rep = interval_intensity(a, b, max_word_len=args.max_word_len,
                             strict_trace=args.strict_trace, ceiling=args.ceiling)
    if args.format == "csv":
        header = ["canonical", "orbit_size", "trace_re", "trace_im", "length", "lambda"]
        text = _csv([[r[h] for h in header] for r in rep.to_dict()["lines"]], header)
    else:
        text = rep.to_json() + "\n"
    _emit(text, args.out)
    return 0


def _simulation_classes(args):
    if args.classes:
        from .words import class_of
        return [class_of(w) for w in args.classes]
    a, b = _interval(args)
    k = args.max_word_len or DEFAULT_SIM_WORD_LEN
    return [ln.word_class for ln in enumerate_classes(a, b, max_word_len=k,
                                                      strict_trace=args.strict_trace,
                                                      ceiling=args.ceiling)]


def _run_batch(args):
    from .simulation import simulate
    classes = _simulation_classes(args)
    if not classes:
        raise ResourceError("no word classes selected for simulation")
    max_len = max(wc.length for wc in classes)
    return simulate(args.n, args.trials, classes, seed=args.seed, max_len=max_len,
                    conditioned=not args.unconditioned, threads=args.threads), classes


def cmd_simulate(args) -> int:
    batch, _ = _run_batch(args)
    text = batch.to_csv() if args.format == "csv" else batch.to_json() + "\n"
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    batch, classes = _run_batch(args)
    report = fit_batch(batch, [wc.length for wc in classes])
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    _emit(text, args.out)
    for name, ok in report.gate_results().items():
        print(f"{'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="octaspec", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, interval=True, default_format="table"):
        if interval:
            sp.add_argument("a", nargs="?", type=float, default=None)
            sp.add_argument("b", nargs="?", type=float, default=None)
            sp.add_argument("--min", type=float, default=0.0)
            sp.add_argument("--max", type=float, default=None)
            sp.add_argument("--max-word-len", type=int, default=None)
            sp.add_argument("--strict-trace", action="store_true",
                            help="also require |trace| > 2")
            sp.add_argument("--ceiling", type=float, default=DEFAULT_CEILING,
                            help="largest admissible b")
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=["table", "json", "csv"], default=default_format)
        sp.set_defaults(parser=sp)

    sp = sub.add_parser("matrices", help="the nine generators")
    common(sp, interval=False)
    sp.set_defaults(func=cmd_matrices)

    sp = sub.add_parser("enumerate", help="spectral lines with length in [a, b]")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("intensity", help="Poisson intensity of [a, b]")
    common(sp, default_format="json")
    sp.set_defaults(func=cmd_intensity)

    for name, func, helptext in (("simulate", cmd_simulate, "Monte-Carlo cycle counts"),
                                 ("verify", cmd_verify, "fit simulated counts to the Poisson limit")):
        sp = sub.add_parser(name, help=helptext)
        common(sp, default_format="json")
        sp.add_argument("--n", type=int, default=DEFAULT_N)
        sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--unconditioned", action="store_true",
                        help="skip rejection of loops and bigons")
        sp.add_argument("--classes", nargs="+", default=None,
                        help="explicit words instead of the classes in [min, max]")
        sp.set_defaults(func=func, max=3.0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max", None) is None and args.command in ("enumerate", "intensity") \
            and args.b is None:
        return _usage_error(args, "an interval [a, b] is required")
    for attr in ("n", "trials", "threads"):
        if getattr(args, attr, 1) < 1:
            return _usage_error(args, f"--{attr} must be >= 1")
    if getattr(args, "max_word_len", None) is not None and args.max_word_len < 1:
        return _usage_error(args, "--max-word-len must be >= 1")
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"octaspec: resource limit: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
