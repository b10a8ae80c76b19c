from datetime import timedelta

import hypothesis.strategies as st
from hypothesis import settings

from branchlab.words import GroupWord

settings.register_profile("default", max_examples=200, deadline=timedelta(seconds=5))
settings.load_profile("default")


def letters(d, positive=False):
    if positive:
        return st.integers(1, d)
    return st.integers(1, d).flatmap(lambda i: st.sampled_from((i, -i)))


def words(d, max_len=10, positive=False):
    return st.lists(letters(d, positive), max_size=max_len).map(GroupWord)


def vertices(d, max_len=3):
    return st.lists(st.integers(1, d), max_size=max_len).map(tuple)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
