import numpy as np
import pytest

from lyapscat import (DomainKind, build_hardy_projectors, build_lyapunov_pair,
                      halfline_child, make_grid)


class Stack:
    """Builds and caches the expensive objects (projector + Lyapunov pair)
    for one (n_half, e_max) configuration."""

    def __init__(self, n_half, e_max):
        self.n_half = n_half
        self.e_max = float(e_max)
        self.full = make_grid(DomainKind.FULL_LINE, 2 * n_half, e_max)
        self.half = halfline_child(self.full)
        self._hp = None
        self._pair = None

    @property
    def hp(self):
        if self._hp is None:
            self._hp = build_hardy_projectors(self.full)
        return self._hp

    @property
    def pair(self):
        if self._pair is None:
            self._pair = build_lyapunov_pair(self.hp, self.half)
        return self._pair


_STACKS = {}


def get_stack(n_half, e_max) -> Stack:
    key = (n_half, float(e_max))
    if key not in _STACKS:
        _STACKS[key] = Stack(n_half, e_max)
    return _STACKS[key]


@pytest.fixture(scope="session")
def stack_flagship():
    return get_stack(4096, 200.0)


@pytest.fixture(scope="session")
def acceptance_log(request):
    lines = []

    def report(criterion, ok, detail):
        line = "[%s] %s  %s" % (criterion, "PASS" if ok else "FAIL", detail)
        lines.append(line)
        print("\n" + line)

    yield report
    if lines:
        with open("acceptance_report.txt", "w") as fh:
            fh.write("\n".join(sorted(lines)) + "\n")
