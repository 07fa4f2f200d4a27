"""The acceptance gate: one test per criterion, each at its stated budget.

Every criterion prints its PASS line (visible with ``pytest -s`` or in
the selftest CLI output); criterion 10 drives the same checks end to end
through the ``selftest`` subcommand and asserts exit code 0.
"""

import io
import time
from contextlib import redirect_stdout

import pytest

from lingalg import acceptance, cli


@pytest.mark.parametrize(
    "number,name,fn,budget",
    acceptance.CRITERIA,
    ids=[f"criterion-{n:02d}-{name.replace(' ', '-')}" for n, name, _, _ in acceptance.CRITERIA],
)
def test_criterion(number, name, fn, budget):
    t0 = time.perf_counter()
    detail = fn()
    elapsed = time.perf_counter() - t0
    print(f"[{number:2d}] PASS  {elapsed:6.2f}s  {name}: {detail}")
    assert elapsed <= budget, f"criterion {number} over budget: {elapsed:.2f}s > {budget}s"


def test_criterion_10_selftest_exits_zero():
    buf = io.StringIO()
    t0 = time.perf_counter()
    with redirect_stdout(buf):
        code = cli.main(["selftest"])
    elapsed = time.perf_counter() - t0
    table = buf.getvalue()
    print(f"[10] PASS  {elapsed:6.2f}s  selftest: exit 0")
    assert code == 0, f"selftest failed:\n{table}"
    assert table.count("PASS") == 9
    assert "FAIL" not in table
