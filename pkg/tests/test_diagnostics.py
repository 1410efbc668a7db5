import math

import numpy as np
import pytest

from sympllt import UsageError, diagnose, run_checks, run_sweep, run_table
from sympllt.diagnostics import (
    CSV_COLUMNS,
    format_table,
    read_csv,
    standard_fixtures,
    write_csv,
)
from sympllt.testmat import pascal_symplectic, hyperbolic_spd


def rows_equal_bitwise(a, b):
    for name in CSV_COLUMNS:
        va, vb = getattr(a, name), getattr(b, name)
        if isinstance(va, float) and math.isnan(va) and math.isnan(vb):
            continue
        if va != vb:
            return False
    return True


def test_diagnose_hyperbolic3_reference_values():
    row = diagnose(hyperbolic_spd(3.0), "hyperbolic", 3.0)
    assert row.kappa2_A == pytest.approx(2.5380e05, rel=1e-3)
    assert row.norm2_A == pytest.approx(5.0379e02, rel=1e-3)
    assert row.kappa2_A11 == pytest.approx(1.6275e05, rel=1e-3)
    assert row.relerr_w2 <= 1e-14
    assert 3.8831e-13 / 10 <= row.dist_sympl_rel <= 3.8831e-13 * 10


def test_diagnose_identity():
    row = diagnose(np.eye(4), "identity", 0.0)
    assert row.kappa2_A == 1.0 and row.kappa2_A11 == 1.0
    for name in ("dist_sympl", "relerr_w1", "relerr_w2", "omega_A",
                 "omega_L1", "omega_L2"):
        assert getattr(row, name) <= 1e-15


def test_diagnose_pascal10_kappa():
    row = diagnose(pascal_symplectic(10), "pascal", 10)
    assert row.kappa2_A == pytest.approx(1.6621e10, rel=1e-2)


def test_diagnose_deterministic():
    a = hyperbolic_spd(6.0)
    r1 = diagnose(a, "hyperbolic", 6.0)
    r2 = diagnose(a, "hyperbolic", 6.0)
    assert rows_equal_bitwise(r1, r2)


def test_diagnose_marks_failures_with_nan():
    bad = np.diag([1.0, -1.0, 1.0, -1.0])
    row = diagnose(bad, "custom", 0.0)
    assert not row.ok
    assert math.isnan(row.relerr_w1) and math.isnan(row.omega_L2)
    # structure-independent fields are still reported
    assert row.norm2_A == 1.0


def test_run_table_shapes_and_values():
    t1 = run_table(1)
    assert [r.param for r in t1] == [3.0, 4.0, 6.0, 7.0]
    t3 = run_table(3)
    assert [r.n for r in t3] == [6, 8, 10, 12]
    assert t3[-1].kappa2_A11 == pytest.approx(8.7639e11, rel=1e-2)
    t2 = run_table(2)
    assert t2[-1].relerr_w1 <= 1e-14
    with pytest.raises(UsageError):
        run_table(4)


def test_tables_1_and_2_share_kappa():
    t1, t2 = run_table(1), run_table(2)
    for a, b in zip(t1, t2):
        assert b.kappa2_A == pytest.approx(a.kappa2_A, rel=1e-2)


def test_sweep_of_length_one_equals_diagnose():
    rows = run_sweep("random", 4, 4, seed=11)
    assert len(rows) == 1
    from sympllt.testmat import random_pdp

    direct = diagnose(random_pdp(4, 11 + 4), "random", 4)
    assert rows_equal_bitwise(rows[0], direct)


def test_sweep_deterministic_given_seed():
    a = run_sweep("random", 1, 6, seed=3)
    b = run_sweep("random", 1, 6, seed=3)
    assert all(rows_equal_bitwise(x, y) for x, y in zip(a, b))


def test_sweep_continues_past_failures(monkeypatch):
    import sympllt.diagnostics as diag

    real = diag.random_pdp

    def sabotaged(n, seed):
        p = real(n, seed)
        if n == 3:
            bad = p.a11.copy()
            bad[0, 0] = -1.0
            return type(p)(n=p.n, a11=bad, a12=p.a12, a22=p.a22)
        return p

    monkeypatch.setattr(diag, "random_pdp", sabotaged)
    rows = diag.run_sweep("random", 1, 5, seed=2)
    assert len(rows) == 5
    assert not rows[2].ok and math.isnan(rows[2].relerr_w2)
    assert all(rows[i].ok for i in (0, 1, 3, 4))


def test_sweep_rejects_bad_arguments():
    with pytest.raises(UsageError):
        run_sweep("random", 5, 1)
    with pytest.raises(UsageError):
        run_sweep("hilbert", 1, 3)


def test_csv_round_trip_bitwise(tmp_path):
    rows = run_table(1) + run_table(3)
    path = tmp_path / "rows.csv"
    write_csv(path, rows)
    back = read_csv(path)
    assert len(back) == len(rows)
    assert all(rows_equal_bitwise(a, b) for a, b in zip(rows, back))


def test_format_table_layout():
    text = format_table(run_table(3), title="pascal")
    lines = text.splitlines()
    assert lines[0] == "pascal"
    assert lines[1].split()[0] == "quantity"
    assert len(lines) == 2 + 12  # header + twelve quantities


def test_run_checks_full_suite_clean():
    report = run_checks()
    assert report.violated == 0
    assert report.exit_code == 0
    assert report.holds > 300


def test_run_checks_identity_scope():
    report = run_checks(scope="identity")
    assert report.violated == 0
    assert all(r.verdict in ("holds", "skipped") for r in report.results)
    residual_ids = ("w2-backward", "w1-error-bound")
    for r in report.results:
        if r.bound_id in residual_ids:
            assert r.lhs == 0.0


def test_run_checks_scope_filter():
    report = run_checks(scope="pascal")
    assert report.violated == 0
    assert all(r.context.startswith("pascal/") for r in report.results)
    # the base family must not pick up its inverse sibling
    report = run_checks(scope="hyperbolic")
    assert all(r.context.startswith("hyperbolic/") for r in report.results)
    with pytest.raises(UsageError):
        run_checks(scope="toeplitz")


def test_run_checks_fault_injection_detected():
    report = run_checks(scope="minij", inject_w2_fault=True)
    assert report.violated > 0
    assert report.exit_code == 1
    hit = [r for r in report.results if r.bound_id == "w2-backward"]
    assert any(r.verdict == "violated" for r in hit)


def test_fixture_set_composition():
    names = [name for name, _ in standard_fixtures()]
    assert names[0] == "minij"
    families = [n.split("/")[0] for n in names]
    assert families.count("hyperbolic") == 4
    assert families.count("hyperbolic-inverse") == 4
    assert families.count("pascal") == 5
    assert families.count("random") == 9
    assert "diagt/1e6" in names
