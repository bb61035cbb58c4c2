import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, max_examples=150,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SCOREBOARD", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(lines), key=lambda s: int(s.split("criterion")[1].split()[0])):
            terminalreporter.write_line(line)
