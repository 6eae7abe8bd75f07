"""Terminal REPL and trace replayer.

Both run on the same Session entry points as the HTTP service, so a trace
that passes here describes exactly what the server would do.  Trace files
are JSON lines; each line is one step: {"say": text}, {"click": {"slot",
"value"}}, or {"expect": {...}} asserting on the current render model and
the last report.  The first failed expectation aborts with a nonzero exit
code and a diff of expected versus actual.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dialogxml import bind_to_catalog, parse_dialog_spec
from .errors import DialogError
from .session import Registry, Session, default_data_dir
from .utterance import ApplyReport


def build_session(args: argparse.Namespace) -> Session:
    registry = Registry(args.data, args.grammar_limit)
    dataset = args.dataset
    if dataset is None:
        raise SystemExit("--dataset is required (see --data directory for choices)")
    spec_name = args.spec
    if spec_name and Path(spec_name).is_file():
        spec = parse_dialog_spec(Path(spec_name).read_text())
        if dataset not in registry.catalogs:
            raise SystemExit(f"unknown dataset {dataset!r}")
        bound = bind_to_catalog(spec, registry.catalogs[dataset])
        return Session("cli", dataset, spec_name, bound, args.grammar_limit)
    if spec_name is None:
        matches = [p["spec"] for p in registry.pairs() if p["dataset"] == dataset]
        if len(matches) != 1:
            raise SystemExit(f"--spec needed: dataset {dataset!r} matches {matches or 'nothing'}")
        spec_name = matches[0]
    return registry.create_session(dataset, spec_name, session_id="cli")


# -- rendering ----------------------------------------------------------------

def print_model(model: dict, out=None) -> None:
    out = out or sys.stdout
    write = lambda line="": print(line, file=out)
    for note in model["notifications"]:
        kind = note["kind"]
        if kind == "auto_filled":
            write(f"  [auto] {note['slot']} = {note['value']}")
        elif kind == "removed_slot":
            write(f"  [pruned] no need to ask for {note['slot']}")
        elif kind == "removed_values":
            write(f"  [pruned] {note['slot']} lost: {', '.join(note['values'])}")
        elif kind == "rejected":
            write(f"  [rejected] {note['phrase']!r}: {note['reason']}")
        elif kind == "ignored":
            write(f"  [ignored] {' '.join(note['fragments'])}")
        elif kind == "confirmed":
            write(f"  [confirmed] {note['slot']} = {note['value']}")
        elif kind == "rolled_back":
            write(f"  [rolled back] {note['slot']} = {note['value']}")
        elif kind == "results_requested":
            write("  [results] dialog ended at your request")
    if model["breadcrumb"]:
        crumbs = " > ".join(f"{c['slot']}:{c['label']}" for c in model["breadcrumb"])
        write(f"  so far: {crumbs}")
    if model["pending_confirmation"]:
        write(f"\n{model['pending_confirmation']['prompt']}")
        return
    if model["status"] == "complete":
        write("\nThe dialog is complete.")
        for record in model["results"] or []:
            write(f"  * {record['name']}")
            blurb = record["attrs"].get("blurb")
            if blurb:
                write(f"      {blurb}")
        return
    solicitation = model["solicitation"]
    write(f"\n{solicitation['prompt']}")
    for i, link in enumerate(solicitation["offered"], start=1):
        write(f"  {i}. {link['label']}")
    if model["out_of_turn"]["hint"]:
        write(f"  ({model['out_of_turn']['hint']})")


# -- trace replay ---------------------------------------------------------------

def check_expectation(expect: dict, model: dict, report: ApplyReport | None) -> list[str]:
    """Compare one expect step against the current page; returns mismatches."""
    problems = []

    def check(key, actual):
        if key in expect and expect[key] != actual:
            problems.append(f"{key}: expected {expect[key]!r}, got {actual!r}")

    solicitation = model.get("solicitation") or {}
    check("solicitation", solicitation.get("slot"))
    check("offered", [link["value"] for link in solicitation.get("offered", [])])
    check("status", model["status"])
    check("results", [r["name"] for r in model.get("results") or []])
    if report is None:
        if "accepted" in expect or "rejected" in expect:
            problems.append("accepted/rejected expected but no input step ran yet")
    else:
        check("accepted", len(report.accepted))
        check("rejected", len(report.rejected))
    return problems


def replay(session: Session, trace_path: Path, out=None) -> int:
    out = out or sys.stdout
    last_report: ApplyReport | None = None
    for line_no, line in enumerate(trace_path.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        step = json.loads(line)
        try:
            if "say" in step:
                last_report, _ = session.say(step["say"])
                print(f"[{line_no}] say {step['say']!r}", file=out)
            elif "click" in step:
                last_report, _ = session.click(step["click"]["slot"], step["click"]["value"])
                print(f"[{line_no}] click ({step['click']['slot']}, {step['click']['value']})", file=out)
            elif "expect" in step:
                problems = check_expectation(step["expect"], session.render_model(), last_report)
                if problems:
                    print(f"[{line_no}] expect FAILED:", file=out)
                    for problem in problems:
                        print(f"    {problem}", file=out)
                    return 1
                print(f"[{line_no}] expect ok", file=out)
            else:
                print(f"[{line_no}] unknown step {step!r}", file=out)
                return 2
        except DialogError as exc:
            print(f"[{line_no}] error {exc.code}: {exc.detail}", file=out)
            return 1
    print("trace passed", file=out)
    return 0


# -- interactive loop -----------------------------------------------------------

def repl(session: Session) -> int:
    print(f"dataset={session.dataset} spec={session.spec_name}")
    print("commands: say <text> | click <n> | results | help | grammar | snapshot <file> | quit")
    print_model(session.render_model())
    while True:
        try:
            raw = input("> ").strip()
        except EOFError:
            return 0
        if not raw:
            continue
        command, _, rest = raw.partition(" ")
        try:
            if command == "quit":
                return 0
            elif command == "say":
                _, model = session.say(rest)
                print_model(model)
            elif command == "click":
                model = session.render_model()
                solicitation = model.get("solicitation")
                if not solicitation:
                    print("nothing to click")
                    continue
                index = int(rest) - 1
                links = solicitation["offered"]
                if not 0 <= index < len(links):
                    print(f"pick 1..{len(links)}")
                    continue
                _, model = session.click(solicitation["slot"], links[index]["value"])
                print_model(model)
            elif command == "results":
                _, model = session.say("show me results")
                print_model(model)
            elif command == "help":
                payload = session.help()
                for entry in payload["slots"]:
                    print(f"  {entry['slot']}: {', '.join(entry['values'])}")
                print(f"  reserved: {', '.join(payload['reserved'])}")
            elif command == "grammar":
                print(json.dumps(session.grammar(), indent=2))
            elif command == "snapshot":
                target = Path(rest or "session.json")
                target.write_text(json.dumps(session.snapshot(), indent=2) + "\n")
                print(f"wrote {target}")
            else:
                print(f"unknown command {command!r}")
        except DialogError as exc:
            print(f"error {exc.code}: {exc.detail}")


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(prog="outofturn", description="Dialog REPL and trace replayer.")
    parser.add_argument("--data", default=default_data_dir(), help="data directory (defaults to packaged fixtures)")
    parser.add_argument("--dataset", default=None, help="dataset name (stem of a *.csv in the data directory)")
    parser.add_argument("--spec", default=None, help="dialog spec name or path to a DialogXML file")
    parser.add_argument("--replay", default=None, help="JSON-lines trace file to replay instead of the REPL")
    parser.add_argument("--grammar-limit", type=int, default=512, help="exact-grammar enumeration limit")
    args = parser.parse_args(argv)
    session = build_session(args)
    if args.replay:
        raise SystemExit(replay(session, Path(args.replay)))
    raise SystemExit(repl(session))


if __name__ == "__main__":
    main()
