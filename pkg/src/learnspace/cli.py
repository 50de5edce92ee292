"""Command-line entry point: ``learnspace COMMAND ...``.

Exit codes: 0 when the command succeeds and the checked claims hold, 1 when a
predicate is false or a counterexample turns up, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from learnspace import core, oracle
from learnspace.assess import AssessConfig, LatentResponder, assess_recursive
from learnspace.core import DomainError, SetFamily, is_learning_space
from learnspace.projection import (
    SubdomainError,
    children,
    partition_by,
    plus_child,
    project,
    yielding_violations,
)
from learnspace.serialize import FIXTURES, FormatError, load_fixture, parse_family, serialize_family


class UsageError(Exception):
    pass


def read_family(path: str) -> SetFamily:
    """Read a family file; ``fixtures/NAME`` falls back to the shipped copy."""
    p = Path(path)
    if p.exists():
        try:
            return parse_family(p.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc
    if p.name in FIXTURES and (len(p.parts) == 1 or p.parent.name == "fixtures"):
        return load_fixture(p.name)
    raise UsageError(f"no such file: {path}")


def _items(text: str) -> list[str]:
    text = text.strip()
    if text in ("", "-"):
        return []
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(out, F: SetFamily, fmt: str) -> None:
    out.write(serialize_family(F, fmt))


def cmd_check(args, out) -> int:
    F = read_family(args.file)
    rows = [
        ("knowledge structure", core.is_knowledge_structure(F)),
        ("partial knowledge structure", core.is_partial_knowledge_structure(F)),
        ("union-closed", core.is_union_closed(F)),
        ("well-graded", core.is_well_graded(F)),
        ("accessible", core.is_accessible(F)),
        ("L1 learning smoothness", core.satisfies_L1(F)),
        ("L2 learning consistency", core.satisfies_L2(F)),
        ("learning space", core.is_learning_space(F)),
        ("partial learning space", core.is_partial_learning_space(F)),
    ]
    out.write(f"states: {len(F)}\nitems: {len(F.domain)}\n")
    for name, flag in rows:
        out.write(f"{name}: {_yn(flag)}\n")
    return 0 if core.is_learning_space(F) else 1


def cmd_project(args, out) -> int:
    F = read_family(args.file)
    _emit(out, project(F, F.domain.state(_items(args.items))), args.format)
    return 0


def cmd_partition(args, out) -> int:
    F = read_family(args.file)
    part = partition_by(F, F.domain.state(_items(args.items)))
    out.write(f"classes: {len(part)}\n")
    for cls in part.classes:
        members = " ".join(str(s) for s in cls.members.states)
        out.write(f"trace={cls.trace} core={cls.core} members: {members}\n")
    return 0


def cmd_children(args, out) -> int:
    F = read_family(args.file)
    kids = children(F, F.domain.state(_items(args.items)))
    out.write(f"# children: {len(kids)}\n")
    for child in kids:
        if child.is_trivial:
            status = "trivial"
        else:
            plus = plus_child(child).family
            status = f"plus child learning space: {_yn(is_learning_space(plus))}"
        out.write(f"# trace={child.origin_trace} states={len(child.family)} {status}\n")
        _emit(out, child.family, args.format)
    return 0


def cmd_yielding(args, out) -> int:
    F = read_family(args.file)
    bad = yielding_violations(F, F.domain.state(_items(args.items)))
    if not bad:
        out.write("true\n")
        return 0
    out.write("false\n")
    for cls, low in bad:
        out.write(f"minimal state {low} exceeds core {cls.core} of class trace={cls.trace}\n")
    return 1


def cmd_assess(args, out) -> int:
    F = read_family(args.file)
    subsets = (tuple(_items(args.items)),) if args.items is not None else ()
    cfg = AssessConfig(split_size=args.split_size, subsets=subsets, max_depth=args.max_depth)
    truth = F.domain.state(_items(args.true_state))
    session = assess_recursive(F, cfg, LatentResponder(truth))
    for line in session.transcript():
        out.write(line + "\n")
    out.write(f"queries: {session.query_count}\n")
    if not session.complete:
        out.write(f"incomplete: {len(session.candidates)} candidate states\n")
        for s in session.candidates.states:
            out.write(f"candidate {s}\n")
        return 1
    out.write(f"recovered: {session.result}\n")
    return 0 if session.result == truth else 1


def cmd_enumerate(args, out) -> int:
    count = 0
    for F in oracle.enumerate_learning_spaces(args.n):
        count += 1
        text = serialize_family(F, args.format)
        out.write(text if args.format == "json" else text + "\n")
    out.write(f"# count: {count}\n")
    return 0


def cmd_generate(args, out) -> int:
    cfg = oracle.GeneratorConfig(args.n, args.steps, args.seed)
    _emit(out, oracle.random_learning_space(cfg), args.format)
    return 0


def _summary_doc(title: str, rows) -> dict:
    return {
        "suite": title,
        "claims": [{"claim": name, "checked": checked, "failures": failures} for name, checked, failures in rows],
    }


def cmd_verify(args, out) -> int:
    if args.suite == "lemmas":
        if args.seeds is not None:
            raise UsageError("--seeds applies to pt1/pt2 only")
        cxs = []
        tallies: dict[str, list[int]] = {}
        for n in range(2, args.n + 1):
            report = oracle.verify_lemma_suite(n)
            for c in report.claims:
                t = tallies.setdefault(c.name, [0, 0])
                t[0] += 1
                t[1] += not c.holds
                if c.counterexample is not None:
                    cxs.append(c.counterexample)
        rows = [(name, t[0], t[1]) for name, t in sorted(tallies.items())]
        title = f"lemmas: families on 2..{args.n} items"
    else:
        if args.seeds is None:
            summary = oracle.sweep_exhaustive(args.suite, args.n)
        else:
            summary = oracle.sweep_random(
                args.suite, n=args.n, spaces=args.seeds, growth_steps=args.steps, subdomains_per_space=args.subsets
            )
        rows = [(t.name, t.checked, t.failures) for t in summary.rows()]
        cxs = [cx for t in summary.rows() for cx in t.counterexamples]
        title = summary.description
    failed = any(f for _, _, f in rows)
    if args.json:
        out.write(json.dumps(_summary_doc(title, rows), sort_keys=True) + "\n")
    else:
        out.write(f"# {title}\n")
        for name, checked, failures in rows:
            out.write(f"{name}\tchecked={checked}\tfailures={failures}\t{'PASS' if not failures else 'FAIL'}\n")
        for cx in cxs:
            qp = "" if cx.subdomain is None else f" Qp={cx.subdomain}"
            out.write(f"counterexample {cx.claim}:{qp} {cx.family} {cx.detail}\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="learnspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name: str, help: str, items: bool = False, fmt: bool = False):
        p = sub.add_parser(name, help=help)
        p.add_argument("file")
        if items:
            p.add_argument("--items", required=True, help="comma-separated items of Qp")
        if fmt:
            p.add_argument("--format", choices=("json", "lines"), default="json")
        return p

    with_file("check", "report which axioms and predicates hold")
    with_file("project", "write the projection on --items", items=True, fmt=True)
    with_file("partition", "list the classes induced by --items", items=True)
    with_file("children", "write each distinct child induced by --items", items=True, fmt=True)
    with_file("yielding", "test whether --items is a yielding subset", items=True)

    p = with_file("assess", "run a recursive assessment against a known true state")
    p.add_argument("--true-state", required=True, help="comma-separated items, '-' for the empty state")
    p.add_argument("--items", default=None, help="Qp for the first level")
    p.add_argument("--split-size", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=64)

    p = sub.add_parser("enumerate", help="stream every learning space on n items (n <= 4)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("json", "lines"), default="json")

    p = sub.add_parser("generate", help="emit a random learning space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "lines"), default="json")

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("--suite", choices=("pt1", "pt2", "lemmas"), required=True,
                   help="pt1: projections and children; pt2: yielding vs plus children; lemmas: axiom equivalences")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seeds", type=int, default=None, help="random spaces instead of exhaustive enumeration")
    p.add_argument("--steps", type=int, default=40, help="growth steps per random space")
    p.add_argument("--subsets", type=int, default=20, help="random Qp per random space")
    p.add_argument("--json", action="store_true", help="print only the machine-readable summary")
    return parser


COMMANDS = {
    "check": cmd_check,
    "project": cmd_project,
    "partition": cmd_partition,
    "children": cmd_children,
    "yielding": cmd_yielding,
    "assess": cmd_assess,
    "enumerate": cmd_enumerate,
    "generate": cmd_generate,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return COMMANDS[args.command](args, out)
    except (UsageError, FormatError, DomainError, SubdomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
