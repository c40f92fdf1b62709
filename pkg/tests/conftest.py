"""Session-wide hooks.

Every strict TransformResult built during the run is re-validated
independently of the check inside the dynamics module; the acceptance suite
reads the tally, and the terminal summary lists the acceptance verdicts.
"""
import pytest

import efl.dynamics as dynamics
from efl.model import validate

TRANSFORMS = {"checked": 0, "invalid": []}
ACCEPTANCE = {}


@pytest.fixture(autouse=True, scope="session")
def _record_transforms():
    original = dynamics._finish

    def recording(result, source, strict, index_map=None):
        out = original(result, source, strict, index_map)
        if strict:
            TRANSFORMS["checked"] += 1
            problems = validate(out.model)
            if problems:
                TRANSFORMS["invalid"].append(problems)
        return out

    dynamics._finish = recording
    yield TRANSFORMS
    dynamics._finish = original


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} C{n}: {title}")
    terminalreporter.write_line(f"strict transform results re-validated: {TRANSFORMS['checked']}, "
                                f"invalid: {len(TRANSFORMS['invalid'])}")
