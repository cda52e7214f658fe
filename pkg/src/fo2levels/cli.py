"""Command line interface.

Exit codes: 0 when the question was decided, 1 on bad input, 2 when a
resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from .automata import parse_upword
from .classifier import check_universe, classify, synthesize_sigma21_formula
from .efgame import GameConfig, ef_duplicator_wins, spoiler_first_move
from .errors import InputError, InvariantViolation, PreconditionError, ResourceCapError
from .languages import (RecognizedLanguage, language_from_dict, make_alphabetic, member_up_monoid,
                        syntactic_quotient, validate_recognition)
from .logic import to_text
from .monoid import DEFAULT_SIZE_CAP, OrderedMonoid, validate
from .terms import A_IDENTITY, DA_IDENTITY, JPLUS_IDENTITY, Identity, build_um_vm, parse_identity
from .topology import TopologyKind, is_open
from .varieties import kd_preorder, kd_quotient, min_level, satisfies_identity

SCHEMAS = """\
file formats (JSON):

  monoid    {"size": 2, "neutral": 0, "mul": [[0, 1], [1, 1]],
             "order": [[1, 0]], "letters": {"a": 1}}
            order lists pairs [s, t] with s <= t; reflexive pairs may be
            omitted and the transitive closure is taken.

  language  {"finite": NFA or null, "infinite": Buchi automaton or null}
            automaton: {"states": [0, 1], "alphabet": ["a", "b"],
                        "initial": [0], "accepting": [1],
                        "transitions": [[0, "b", 0], [0, "a", 1],
                                        [1, "a", 1], [1, "b", 1]]}
            "final" is accepted in place of "accepting".

  words     u(v)^w for the infinite word u v v v ..., e.g. ab(ba)^w;
            a plain word such as ab is finite; eps is the empty word.

  formulas  E x (a(x) & E y (x<y & b(y))); A for forall, ! & | for
            not, and, or; atoms x<y, x=y, x<=y, true, false.

examples:
  fo2levels level m2.json
  fo2levels classify --universe omega finitely-many-a.json
  fo2levels identity m2.json --identity "(x*y*z)^w*y*(x*y*z)^w = (x*y*z)^w"
  fo2levels ef --m 1 --n 2 aa a
"""

VARIETIES = {"A": A_IDENTITY, "DA": DA_IDENTITY, "J+": JPLUS_IDENTITY}


# -- loading ----------------------------------------------------------------

def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _is_language(data):
    return isinstance(data, dict) and ("finite" in data or "infinite" in data)


def load_language(path, cap) -> RecognizedLanguage:
    data = _read_json(path)
    if not _is_language(data):
        raise InputError(f"{path}: expected a language object with 'finite' and/or 'infinite'")
    return language_from_dict(data, cap)


def load_monoid(path, universe="infty", cap=DEFAULT_SIZE_CAP) -> OrderedMonoid:
    """A monoid file, or the syntactic monoid of a language file."""
    data = _read_json(path)
    if _is_language(data):
        L = language_from_dict(data, cap)
        check_universe(L, universe)
        return syntactic_quotient(L, finite_only=universe == "star").monoid
    M = OrderedMonoid.from_dict(data)
    report = validate(M)
    if not report.ok:
        v = report.violations[0]
        raise InputError(f"{path}: not an ordered monoid: {v['message']}")
    return M


# -- commands ---------------------------------------------------------------

def cmd_validate(args):
    data = _read_json(args.file)
    if _is_language(data):
        L = language_from_dict(data, args.cap)
        return validate_recognition(L, samples=args.samples, seed=args.seed).to_dict()
    return validate(OrderedMonoid.from_dict(data)).to_dict()


def cmd_syntactic(args):
    L = load_language(args.file, args.cap)
    check_universe(L, args.universe)
    S = syntactic_quotient(L, finite_only=args.universe == "star")
    return {"recognizer_size": L.monoid.size, "syntactic": S.to_dict()}


def cmd_green(args):
    M = load_monoid(args.file, args.universe, args.cap)
    g = M.green
    return {kind: g.classes(kind) for kind in ("R", "L", "J")}


def cmd_identity(args):
    M = load_monoid(args.file, args.universe, args.cap)
    if args.variety:
        if args.variety.startswith("M") and args.variety[1:].isdigit():
            m = int(args.variety[1:])
            u, v = build_um_vm(m)
            res = satisfies_identity(M, Identity(u, v, "<="))
            da = satisfies_identity(M, DA_IDENTITY)
            return {"identity": f"DA and U_{m} <= V_{m}", "holds": res.holds and da.holds,
                    "witness": res.witness if not res.holds else da.witness}
        if args.variety not in VARIETIES:
            raise InputError(f"unknown variety {args.variety!r}; use A, DA, J+ or Mm")
        identity = VARIETIES[args.variety]
        text = args.variety
    elif args.identity:
        identity = parse_identity(args.identity)
        text = args.identity
    else:
        raise InputError("give --identity TEXT or --variety NAME")
    res = satisfies_identity(M, identity)
    return {"identity": text, "holds": res.holds, "witness": res.witness}


def cmd_kd_quotient(args):
    M = load_monoid(args.file, args.universe, args.cap)
    rel = kd_preorder(M)
    Q, proj = kd_quotient(M)
    return {"classes": rel.classes, "projection": proj.tolist(), "quotient": Q.to_dict()}


def cmd_level(args):
    M = load_monoid(args.file, args.universe, args.cap)
    return min_level(M).to_dict()


def cmd_classify(args):
    L = load_language(args.file, args.cap)
    return classify(L, args.universe).to_dict()


def cmd_open(args):
    L = load_language(args.file, args.cap)
    if not L.is_alphabetic():
        L = make_alphabetic(L, args.cap)
    kind = TopologyKind.of(args.topology, args.universe)
    out = is_open(L, kind).to_dict()
    out["topology"] = kind.value
    return out


def cmd_member(args):
    L = load_language(args.file, args.cap)
    w = parse_upword(args.word)
    bad = sorted(w.alph() - set(L.alphabet))
    if bad:
        raise InputError(f"word {args.word!r} uses letters {bad} outside the alphabet")
    return {"word": str(w), "member": member_up_monoid(L, w)}


def cmd_ef(args):
    cfg = GameConfig(args.m, args.n)
    wins = ef_duplicator_wins(args.u, args.v, cfg)
    out = {"u": args.u, "v": args.v, "m": args.m, "n": args.n,
           "winner": "duplicator" if wins else "spoiler"}
    if not wins:
        mv = spoiler_first_move(args.u, args.v, cfg)
        out["spoiler_move"] = {"word": mv.word, "pebble": mv.pebble, "position": mv.position}
    return out


def cmd_synth(args):
    L = load_language(args.file, args.cap)
    f, words = synthesize_sigma21_formula(L)
    return {"formula": to_text(f), "minimal_words": words}


# -- text rendering ---------------------------------------------------------

def _text(command, report):
    if command == "ef":
        line = f"{report['winner']} wins"
        if "spoiler_move" in report:
            mv = report["spoiler_move"]
            line += f" (pebble {mv['pebble']} on position {mv['position']} of {mv['word']})"
        return line
    if command == "synth":
        return report["formula"]
    if command == "level":
        return str(report["level"]) if report["level"] is not None else f"none ({report['diagnostic']})"
    if command == "classify":
        if not report["fo2"]:
            return "not FO2-definable"
        return f"level {report['level']}"
    if command == "member":
        return "member" if report["member"] else "not a member"
    if command == "open":
        return "open" if report["open"] else f"not open, witness {report['witness']}"
    if command == "identity":
        return "holds" if report["holds"] else f"fails, witness {report['witness']}"
    if command == "validate":
        return "valid" if report["valid"] else json.dumps(report["violations"], sort_keys=True)
    return json.dumps(report, sort_keys=True, indent=2)


# -- parser -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled validation only")
    common.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP, help="monoid size cap")
    common.add_argument("--universe", choices=("infty", "omega", "star"), default="infty")

    parser = argparse.ArgumentParser(
        prog="fo2levels",
        description="Decide the quantifier-alternation level of two-variable first-order "
                    "logic for regular languages of finite and infinite words.",
        epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file_help="monoid or language file"):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                           epilog=SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter)
        if file_help:
            p.add_argument("file", help=file_help)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check monoid axioms or language recognition")
    p.add_argument("--samples", type=int, default=1000, help="sampled words for languages")
    add("syntactic", cmd_syntactic, "syntactic ordered monoid of a language", "language file")
    add("green", cmd_green, "Green's R, L and J classes")
    p = add("identity", cmd_identity, "check an omega-identity or a variety")
    p.add_argument("--identity", help='e.g. "x^w*x = x^w" or "1 <= z"')
    p.add_argument("--variety", help="A, DA, J+ or Mm for m >= 1")
    add("kd-quotient", cmd_kd_quotient, "KD preorder classes and quotient")
    add("level", cmd_level, "least m with the monoid in M_m")
    add("classify", cmd_classify, "least alternation level of a language", "language file")
    p = add("open", cmd_open, "openness in the Cantor or alphabetic topology", "language file")
    p.add_argument("--topology", choices=("cantor", "alphabetic"), default="cantor")
    p = add("member", cmd_member, "membership of an ultimately periodic word", "language file")
    p.add_argument("word", help="u(v)^w or a finite word")
    p = add("ef", cmd_ef, "solve the two-pebble game with word alternations", None)
    p.add_argument("--m", type=int, required=True, help="alternation budget (m-1 switches)")
    p.add_argument("--n", type=int, required=True, help="number of rounds")
    p.add_argument("u")
    p.add_argument("v")
    add("synth", cmd_synth, "Sigma_1 formula for a level-1 language", "language file")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        report = args.func(args)
    except ResourceCapError as exc:
        print(json.dumps({"error": "resource cap", "cap": exc.cap_name, "limit": exc.cap,
                          "observed": exc.observed}, sort_keys=True), file=out)
        return 2
    except (InputError, PreconditionError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}, sort_keys=True), file=out)
        return 1
    except InvariantViolation:
        raise
    if args.format == "json":
        print(json.dumps(report, sort_keys=True), file=out)
    else:
        print(_text(args.command, report), file=out)
    return 0


def main():
    sys.exit(run())
