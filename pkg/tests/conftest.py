import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_runtest_logreport(report):
    # One visible PASS/FAIL line per acceptance criterion.
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1].replace("test_", "", 1)
        print(f"\n[{'PASS' if report.passed else 'FAIL'}] acceptance: {name}", flush=True)

from outofturn.staging import Composite, Leaf, StagerKind

I = StagerKind.INTERPRETER
PE = StagerKind.PARTIAL_EVALUATOR
C = StagerKind.CURRYER

_ids = iter(range(10_000))


def comp(stager, *children, id=None, restructured_from=None):
    return Composite(id or f"t{next(_ids)}", stager, tuple(children), restructured_from)


def leaves(*slots):
    return tuple(Leaf(s) for s in slots)


def shape(tree):
    """Structural form of a tree, ignoring node ids: slot names and stagers."""
    if tree is None:
        return None
    if isinstance(tree, Leaf):
        return tree.slot
    return (tree.stager,) + tuple(shape(c) for c in tree.children)


def breakfast_tree():
    """PE over three two-slot CURRYER subdialogs (eggs, coffee, bakery)."""
    return comp(
        PE,
        comp(C, *leaves("e1", "e2"), id="eggs"),
        comp(C, *leaves("c1", "c2"), id="coffee"),
        comp(C, *leaves("b1", "b2"), id="bakery"),
        id="top",
    )
