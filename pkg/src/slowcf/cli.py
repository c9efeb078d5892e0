"""Command line interface: ``slowcf <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cuntz, jump, render, scfa, sternbrocot, symbolic
from .errors import NumberSyntaxError, SlowCFError, UnknownName
from .exact import format_number, parse_number

GRAMMAR = """\
grammar:
  SCFA     farey | backwards | even | odd | fN:<k> | path/to/spec.json
           spec.json = {"partition": [["0/1","1/2"],["1/2","1/1"]], "signs": [1,-1]}
  NUMBER   p/q | (a+b*sqrt(d))/c | e-2
  ITIN     pre:1,2 per:1 | per:1,2
  RANGE    j | j-k          (1-based cells j..k)
verbs:
  validate   --scfa S
  itinerary  --scfa S --number X [--count K]
  decode     --scfa S --itinerary I
  equiv      --scfa S --x X --y Y [--horizon K] [--tail]
  classify   --scfa S --number X [--count K]
  jump       --scfa S --range R --number X [--count K]
  embed-psi  --scfa S
  embed-phi  --scfa S --range R [--max-len L]
  transducer --n N
  render     --scfa S [--width W] [--height H] [--output FILE]
common:
  --format text|json|dot|svg
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _number(text: str):
    key = text.strip()
    if key in symbolic.BUILTIN_STREAMS:
        return symbolic.BUILTIN_STREAMS[key]()
    return parse_number(key)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _itins_text(its) -> str:
    return "\n".join(str(it) for it in its)


# -- verbs -------------------------------------------------------------------


def cmd_validate(args) -> str:
    s = scfa.load_scfa(args.scfa)
    if args.format == "json":
        return _dump({"name": s.name, "n": s.n, **s.to_json()})
    return f"ok {s}"


def _encode(s, x, count):
    if isinstance(x, symbolic.RcfStream):
        return [symbolic.encode_stream(s, x, count)]
    return symbolic.encode(s, x)


def cmd_itinerary(args) -> str:
    s = scfa.load_scfa(args.scfa)
    its = _encode(s, _number(args.number), args.count)
    if args.format == "json":
        return _dump([it.to_json() for it in its])
    return _itins_text(its)


def cmd_decode(args) -> str:
    s = scfa.load_scfa(args.scfa)
    try:
        it = symbolic.EventuallyPeriodic.parse(args.itinerary)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    x = symbolic.decode(s, it)
    if args.format == "json":
        return _dump({"scfa": s.name, "itinerary": it.to_json(), "number": format_number(x)})
    return format_number(x)


def cmd_equiv(args) -> str:
    s = scfa.load_scfa(args.scfa)
    x, y = _number(args.x), _number(args.y)
    if args.tail and not scfa.is_fn_instance(s):
        if isinstance(x, symbolic.RcfStream) or isinstance(y, symbolic.RcfStream):
            result = cuntz.Unknown(args.horizon)
        else:
            result = any(symbolic.tail_equivalent(a, b)
                         for a in symbolic.encode(s, x) for b in symbolic.encode(s, y))
        relation = "~F"
    else:
        result = cuntz.equivalent_reps(s, x, y, args.horizon)
        relation = "PGL2(Z)"
    if isinstance(result, cuntz.Unknown):
        value = str(result)
    else:
        value = "true" if result else "false"
    if args.format == "json":
        return _dump({"scfa": s.name, "relation": relation, "result": value})
    if relation == "~F":
        return f"{value} (~F, not PGL2(Z))"
    return value


def cmd_classify(args) -> str:
    s = scfa.load_scfa(args.scfa)
    label = cuntz.classify(s, _number(args.number), args.count)
    if args.format == "json":
        return _dump(label.to_json())
    lines = [
        f"scfa: {label.scfa}",
        f"number: {label.number}",
        f"itinerary: {label.itinerary}",
        f"atoms: {label.atoms}",
    ]
    if label.eigenword is not None:
        w = ",".join(map(str, label.eigenword))
        lines.append(f"eigenword: {w} (any rotation fixes another vector of the cycle)")
    return "\n".join(lines)


def cmd_jump(args) -> str:
    s = scfa.load_scfa(args.scfa)
    spec = _jump_spec(s, args.range)
    it = _encode(s, _number(args.number), 0)[0]
    blocks = list(_take(jump.jump_blocks(spec, it), args.count))
    quotients = jump.partial_quotients(spec, it, args.count)
    if args.format == "json":
        return _dump({"blocks": [list(b) for b in blocks], "quotients": quotients})
    block_text = " ".join("[" + ",".join(map(str, b)) + "]" for b in blocks)
    if spec.first == spec.last:
        q_text = ",".join(map(str, quotients))
    else:
        q_text = ",".join(f"{n}:{d}" for n, d in quotients)
    return f"blocks: {block_text} …\nquotients: {q_text}"


def _take(it, count):
    for k, v in enumerate(it):
        if k >= count:
            return
        yield v


def _jump_spec(s, text):
    try:
        return jump.JumpSpec.parse(s, text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_embed_psi(args) -> str:
    s = scfa.load_scfa(args.scfa)
    words = sternbrocot.psi_embedding(s)
    report = cuntz.verify_isometry_family([w.letters for w in words.values()], 2)
    if args.format == "json":
        return _dump({
            "scfa": s.name,
            "words": {str(i): str(w) for i, w in words.items()},
            "prefix_free": report.prefix_free,
            "complete": report.complete,
            "kraft_sum": str(report.kraft_sum),
        })
    lines = [f"S_{i} -> B_{w.letters}" + (" U" if w.flip else "") for i, w in words.items()]
    lines.append(f"prefix_free: {str(report.prefix_free).lower()}")
    lines.append(f"complete: {str(report.complete).lower()} (kraft sum {report.kraft_sum})")
    return "\n".join(lines)


def cmd_embed_phi(args) -> str:
    s = scfa.load_scfa(args.scfa)
    spec = _jump_spec(s, args.range)
    if not spec.proper:
        raise UsageError("the range must leave out at least one cell")
    words = jump.jump_words(spec, args.max_len)
    tail = jump.jump_tail_mass(spec, args.max_len)
    report = cuntz.verify_isometry_family(words, s.n, tail)
    complete = report.complete if isinstance(report.complete, str) else str(report.complete).lower()
    if args.format == "json":
        return _dump({
            "jump": str(spec),
            "max_len": args.max_len,
            "words": len(words),
            "prefix_free": report.prefix_free,
            "complete": report.complete,
            "kraft_sum": str(report.kraft_sum),
            "tail_mass": str(tail),
        })
    shown = " ".join("".join(map(str, w)) for w in words[:8])
    more = " …" if len(words) > 8 else ""
    return "\n".join([
        f"{spec}: {len(words)} words up to length {args.max_len}",
        f"words: {shown}{more}",
        f"prefix_free: {str(report.prefix_free).lower()}",
        f"complete: {complete} (kraft sum {report.kraft_sum}, missing {tail})",
    ])


def cmd_transducer(args) -> str:
    t = sternbrocot.build_transducer_fn(args.n)
    if args.format == "dot":
        return t.to_dot().rstrip("\n")
    if args.format == "json":
        return _dump(t.to_json())
    lines = [f"F_{t.n} transducer: {len(t.states)} states, {len(t.edges)} edges"]
    for _, e in sorted(t.edges.items()):
        out = " ".join(f"h_{v}" for v in e.output) or "-"
        lines.append(
            f"{sternbrocot.state_label(e.source)} --h_{e.input} / {out}--> "
            f"{sternbrocot.state_label(e.target)}"
        )
    return "\n".join(lines)


def cmd_render(args) -> str:
    s = scfa.load_scfa(args.scfa)
    try:
        svg = render.render_svg(s, args.width, args.height)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.output:
        Path(args.output).write_text(svg)
        return f"wrote {args.output}"
    return svg.rstrip("\n")


COMMANDS = {
    "validate": cmd_validate,
    "itinerary": cmd_itinerary,
    "decode": cmd_decode,
    "equiv": cmd_equiv,
    "classify": cmd_classify,
    "jump": cmd_jump,
    "embed-psi": cmd_embed_psi,
    "embed-phi": cmd_embed_phi,
    "transducer": cmd_transducer,
    "render": cmd_render,
}

FORMATS = {
    "transducer": ("text", "json", "dot"),
    "render": ("svg",),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slowcf", description="Slow continued fractions, exactly.")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)

    def verb(name, *, needs_scfa=True):
        p = sub.add_parser(name)
        if needs_scfa:
            p.add_argument("--scfa", required=True)
        p.add_argument("--format", default=None, choices=("text", "json", "dot", "svg"))
        return p

    verb("validate")
    p = verb("itinerary")
    p.add_argument("--number", required=True)
    p.add_argument("--count", type=int, default=32)
    p = verb("decode")
    p.add_argument("--itinerary", required=True)
    p = verb("equiv")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--horizon", type=int, default=64)
    p.add_argument("--tail", action="store_true", help="tail equivalence for non-F_N maps")
    p = verb("classify")
    p.add_argument("--number", required=True)
    p.add_argument("--count", type=int, default=32)
    p = verb("jump")
    p.add_argument("--range", required=True)
    p.add_argument("--number", required=True)
    p.add_argument("--count", type=int, default=10)
    verb("embed-psi")
    p = verb("embed-phi")
    p.add_argument("--range", required=True)
    p.add_argument("--max-len", type=int, default=12)
    p = verb("transducer", needs_scfa=False)
    p.add_argument("--n", type=int, required=True)
    p = verb("render")
    p.add_argument("--width", type=int, default=320)
    p.add_argument("--height", type=int, default=320)
    p.add_argument("--output")
    return parser


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one command; return ``(exit status, text for stdout or stderr)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError("missing verb")
        allowed = FORMATS.get(args.verb, ("text", "json"))
        if args.format is None:
            args.format = allowed[0]
        elif args.format not in allowed:
            raise UsageError(f"{args.verb} supports --format {'|'.join(allowed)}")
        return 0, COMMANDS[args.verb](args)
    except UsageError as exc:
        return 1, f"slowcf: {exc}\n{GRAMMAR}"
    except (NumberSyntaxError, UnknownName) as exc:
        return 1, f"{type(exc).__name__}: {exc}\n{GRAMMAR}"
    except SlowCFError as exc:
        return 2, f"{type(exc).__name__}: {exc}"
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        return 1, f"slowcf: cannot read SCFA spec: {exc}\n{GRAMMAR}"


def main(argv: list[str] | None = None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    print(text, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
