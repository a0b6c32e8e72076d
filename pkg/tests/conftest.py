import sys
from pathlib import Path

import hypothesis
import pytest

from lifter.context import load_context_file
from lifter.evaluator import parse_invocation
from lifter.parser import load_assertion_file
from lifter.terms import load_goal

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures" / "list"
HEURISTICS = ROOT / "heuristics"

sys.path.insert(0, str(Path(__file__).resolve().parent))

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session")
def ctx():
    return load_context_file(FIXTURES / "list.ctx.json")


@pytest.fixture(scope="session")
def itrev_goal(ctx):
    return load_goal((FIXTURES / "itrev.goal").read_text(), ctx.signature)


@pytest.fixture(scope="session")
def rule_arg_order():
    return load_assertion_file(HEURISTICS / "heuristic_rule_arg_order.lifter")


@pytest.fixture(scope="session")
def structural():
    return load_assertion_file(HEURISTICS / "heuristic_structural.lifter")


@pytest.fixture
def invocation(itrev_goal, ctx):
    return lambda text: parse_invocation(text, itrev_goal, ctx)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(results.items()):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
