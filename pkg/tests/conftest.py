import os

import pytest
from hypothesis import HealthCheck, settings

from rsrepair.field import create_field

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# (p, s, ell, modulus); None picks the pinned/default modulus
FIELD_PARAMS = {
    "gf8": (2, 1, 3, 0b1011),
    "gf16": (2, 1, 4, None),
    "gf64": (2, 1, 6, None),
    "gf256": (2, 1, 8, 0x11D),
    "gf9": (3, 1, 2, None),
    "gf81": (3, 1, 4, None),
    "gf64_over_gf4": (2, 2, 3, None),
    "gf81_over_gf9": (3, 2, 2, None),
    "gf25": (5, 1, 2, None),
}

_cache = {}


def field(name):
    if name not in _cache:
        _cache[name] = create_field(*FIELD_PARAMS[name])
    return _cache[name]


@pytest.fixture(params=sorted(FIELD_PARAMS))
def any_field(request):
    return field(request.param)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[num])
