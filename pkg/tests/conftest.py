import os

from hypothesis import HealthCheck, settings

from dnnt.netmodel import Assignment, EdgeChoice

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def singleton_theta(instance):
    """The only assignment of a restricted instance (first element of every set)."""
    return Assignment(
        {e: EdgeChoice(tuple(ws[0] for ws in sp.weights), sp.biases[0]) for e, sp in instance.params.edges.items()}
    )


def pytest_terminal_summary(terminalreporter):
    """One ``criterion N: PASS|FAIL`` line per acceptance test that ran."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = getattr(rep, "nodeid", "").rpartition("::")[2]
            if "test_acceptance.py" in getattr(rep, "nodeid", "") and name.startswith("test_criterion_"):
                number, _, title = name[len("test_criterion_"):].partition("_")
                failed = outcome != "passed" or lines.get(int(number), ("", False))[1]
                lines[int(number)] = (title.replace("_", " "), failed)
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            title, failed = lines[number]
            terminalreporter.write_line(f"criterion {number}: {'FAIL' if failed else 'PASS'} ({title})")
