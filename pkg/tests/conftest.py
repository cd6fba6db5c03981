"""Shared fixtures: hand-checkable event sets, a CLI runner, acceptance lines."""

import pytest

from trendlab import LinkEvent, build_history
from trendlab.cli import main
from trendlab.datagen import generate_network
from trendlab.ingest import write_canonical

ACCEPTANCE_LINES = []


def record_criterion(number: int, ok: bool, detail: str) -> str:
    """Register one acceptance-criterion outcome for the terminal summary."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# Six-target instance small enough to grade by hand. Receipt times:
#   a: 1 2 3 8     b: 1 4 6 7     c: 2 5 9
#   d: 3           e: 5 6 10      f: 9
# At t=5 the eligible set is {a..e} (f first receives at 9).
DESK_EVENTS = [
    LinkEvent("u01", "a", 1),
    LinkEvent("u02", "a", 2),
    LinkEvent("u03", "a", 3),
    LinkEvent("u04", "a", 8),
    LinkEvent("u05", "b", 1),
    LinkEvent("u06", "b", 4),
    LinkEvent("u07", "b", 6),
    LinkEvent("u08", "b", 7),
    LinkEvent("u09", "c", 2),
    LinkEvent("u10", "c", 5),
    LinkEvent("u11", "c", 9),
    LinkEvent("u12", "d", 3),
    LinkEvent("u13", "e", 5),
    LinkEvent("u14", "e", 6),
    LinkEvent("u15", "e", 10),
    LinkEvent("u16", "f", 9),
]

# Two targets tuned so that at t=500 with a 30-long past window:
#   a: degree 4, recent gain 3 (480, 490, 500)
#   b: degree 6, recent gain 1 (485)
# giving blend scores (0.75, 0.425) and zero-decay aged-blend scores (0.4, 0.425).
TWO_NODE_EVENTS = [
    LinkEvent("u01", "a", 100),
    LinkEvent("u02", "a", 480),
    LinkEvent("u03", "a", 490),
    LinkEvent("u04", "a", 500),
    LinkEvent("u05", "b", 100),
    LinkEvent("u06", "b", 200),
    LinkEvent("u07", "b", 300),
    LinkEvent("u08", "b", 400),
    LinkEvent("u09", "b", 450),
    LinkEvent("u10", "b", 485),
]


@pytest.fixture
def desk_history():
    return build_history(DESK_EVENTS)


@pytest.fixture
def two_node_history():
    return build_history(TWO_NODE_EVENTS)


@pytest.fixture
def small_network():
    """A few dozen items over 60 days; big enough for the protocol to be nontrivial."""
    return build_history(
        generate_network(num_users=20, num_items=60, num_events=1500, horizon=60, seed=11)
    )


@pytest.fixture(scope="session")
def big_network():
    """The desk-scale network: ~2000 items, 50k events, 300 days."""
    return build_history(generate_network(seed=7))


@pytest.fixture(scope="session")
def small_file(tmp_path_factory):
    """The small network written out as a canonical event file."""
    events = generate_network(
        num_users=20, num_items=60, num_events=1500, horizon=60, seed=11
    )
    path = tmp_path_factory.mktemp("data") / "small.tsv"
    write_canonical(events, path)
    return str(path)


@pytest.fixture
def cli(capsys):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""

    def run(argv):
        try:
            code = main(argv)
        except SystemExit as exc:  # argparse failures raise instead of returning
            code = exc.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
