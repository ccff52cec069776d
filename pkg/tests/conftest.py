import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): one numbered acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.outcome == "passed":
        status = "PASS"
    elif getattr(report, "wasxfail", None) is not None or report.outcome == "skipped":
        status = "XFAIL"
    else:
        status = "FAIL"
    _ACCEPTANCE.append(f"{props['criterion']:<4} {status:<5} {props.get('summary', '')} "
                       f"[{props.get('seconds', report.duration):.2f}s / limit {props.get('limit', '-')}s]")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: (int(re.search(r"\d+", s).group()), s)):
            terminalreporter.write_line(line)
