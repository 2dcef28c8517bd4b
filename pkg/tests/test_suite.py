"""The labeled check suite: coverage, determinism, table emission."""
import json

import pytest

from voxfact.suite import (SUITE_LABELS, SuiteConfig, emit_tables, run_suite,
                           suite_rows)


@pytest.fixture(scope="module")
def rows():
    cfg = SuiteConfig(presets=("heisenberg",), mode_degree=2)
    return run_suite(cfg)


def test_all_labels_covered(rows):
    seen = {label for label, _, _, _ in rows}
    assert seen == set(SUITE_LABELS)


def test_all_pass(rows):
    failures = [(label, rep) for label, _, rep, _ in rows if not rep.passed]
    assert not failures, failures


def test_only_filter():
    cfg = SuiteConfig(presets=("heisenberg",), mode_degree=2,
                      only=("insertion_at_zero",))
    out = run_suite(cfg)
    assert {label for label, _, _, _ in out} == {"insertion_at_zero"}


def test_deterministic_reports():
    cfg = SuiteConfig(presets=("heisenberg",), mode_degree=2,
                      only=("equivariance_exact", "relation_kernel_exact"))
    r1 = run_suite(cfg)
    r2 = run_suite(cfg)
    strip = lambda rows: [(l, p, rep.to_obj()) for l, p, rep, _ in rows]
    assert strip(r1) == strip(r2)


def test_emit_tables(tmp_path, rows):
    data = json.loads(emit_tables(rows, "json"))
    assert len(data["rows"]) == len(rows)
    header = emit_tables(rows, "csv").splitlines()[0]
    assert "label" in header and "max_err" in header
    with pytest.raises(ValueError):
        emit_tables(rows, "xml")


def test_suite_rows_shape(rows):
    table = suite_rows(rows)
    assert all(set(r) >= {"label", "preset", "pass", "max_err"} for r in table)
