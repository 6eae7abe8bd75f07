"""CLI replay and REPL behaviour."""

import io
import json
from pathlib import Path

import pytest

from outofturn.cli import build_session, main, print_model, replay
from outofturn.session import Registry, default_data_dir

ROOT = Path(__file__).resolve().parents[1]
TRACES = ROOT / "traces"


def make_session(dataset, spec):
    return Registry(default_data_dir()).create_session(dataset, spec, session_id="cli")


@pytest.mark.parametrize(
    "dataset,spec,trace",
    [
        ("congress", "congress", "dialog1.trace"),
        ("congress", "congress", "dialog2.trace"),
        ("cars", "fuel", "fuel_expert.trace"),
    ],
)
def test_shipped_traces_pass(dataset, spec, trace):
    out = io.StringIO()
    code = replay(make_session(dataset, spec), TRACES / trace, out=out)
    assert code == 0, out.getvalue()
    assert "trace passed" in out.getvalue()


def test_trace_expecting_pruned_value_fails_with_diff(tmp_path):
    bad = tmp_path / "bad.trace"
    bad.write_text(
        json.dumps({"click": {"slot": "house", "value": "senator"}})
        + "\n"
        + json.dumps({"say": "indiana"})
        + "\n"
        + json.dumps({"expect": {"offered": ["democrat", "independent", "republican"]}})
        + "\n"
    )
    out = io.StringIO()
    code = replay(make_session("congress", "congress"), bad, out=out)
    assert code == 1
    assert "expected ['democrat', 'independent', 'republican']" in out.getvalue()


def test_replay_via_main_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--dataset", "congress", "--replay", str(TRACES / "dialog1.trace")])
    assert excinfo.value.code == 0


def test_main_requires_dataset():
    with pytest.raises(SystemExit):
        main(["--replay", str(TRACES / "dialog1.trace")])


def test_build_session_with_spec_file(tmp_path):
    spec_file = tmp_path / "inline.xml"
    spec_file.write_text(
        '<dialog-spec><dialog id="top" stager="c">'
        '<dialog-item name="house"/><dialog-item name="party"/>'
        "</dialog></dialog-spec>"
    )
    import argparse

    args = argparse.Namespace(
        data=default_data_dir(),
        dataset="congress",
        spec=str(spec_file),
        grammar_limit=512,
    )
    session = build_session(args)
    assert session.render_model()["solicitation"]["slot"] == "house"


def test_repl_loop_drives_engine(monkeypatch, capsys):
    from outofturn import cli

    inputs = iter(["click 1", "say indiana", "results", "help", "quit"])
    monkeypatch.setattr("builtins.input", lambda *_: next(inputs))
    code = cli.repl(make_session("congress", "congress"))
    assert code == 0
    output = capsys.readouterr().out
    assert "Democrat or Republican or an Independent?" in output
    assert "[pruned] party lost: independent" in output
    assert "The dialog is complete." in output


def test_print_model_renders_completion(capsys):
    session = make_session("congress", "congress")
    _, model = session.say("republican senator from minnesota")
    print_model(model)
    output = capsys.readouterr().out
    assert "Norm Coleman" in output
    assert "The dialog is complete." in output
