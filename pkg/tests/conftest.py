import json
import shutil
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plumbtool.templates import checksum, fixture_dir  # noqa: E402


@pytest.fixture
def fixture_copy(tmp_path):
    """A writable copy of the shipped fixture directory."""
    dst = tmp_path / "fixtures"
    shutil.copytree(fixture_dir(), dst)
    return dst


def rewrite_template(directory, name, edit, fix_checksum=True):
    """Load a template, apply ``edit`` to the dict in place and save it."""
    path = Path(directory) / f"{name}.json"
    data = json.loads(path.read_text())
    edit(data)
    if fix_checksum:
        data["checksum"] = checksum(data)
    path.write_text(json.dumps(data, indent=1))
    return path


# -- acceptance summary ----------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        prev = _ACCEPTANCE.get(number, (title, True))[1]
        _ACCEPTANCE[number] = (title, prev and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        tr.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")
    passed = sum(ok for _, ok in _ACCEPTANCE.values())
    tr.write_line(f"{passed}/{len(_ACCEPTANCE)} criteria passed")
