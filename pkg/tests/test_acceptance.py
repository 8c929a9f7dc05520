"""The acceptance gate: every criterion from the verification suite,
one test each, printing one pass/fail line per criterion."""

import pytest

from tilted import selftest

_CRITERIA = {ident: (title, fn) for ident, title, fn in selftest.CRITERIA}


@pytest.mark.parametrize("ident", list(_CRITERIA))
def test_criterion(ident):
    title, fn = _CRITERIA[ident]
    passed, detail = fn()
    line = f"criterion {ident} ({title}): {'PASS' if passed else 'FAIL'} [{detail}]"
    print(line)
    assert passed, line
