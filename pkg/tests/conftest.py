import sys

import pytest
from hypothesis import settings

from artifact import catalog
from artifact.documents import write

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def emitted(tmp_path_factory):
    d = tmp_path_factory.mktemp("catalog")
    for name, data in catalog.files().items():
        write(data, d / name)
    return d


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
