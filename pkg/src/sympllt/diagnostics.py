"""Experiment driver: per-matrix diagnostics, the three report tables,
size sweeps, and the aggregated bound-check suite."""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .checks import (
    check_condition_bounds,
    check_omega_factor_bounds,
    check_schur_perturbation,
    check_w1_error_bound,
    check_w2_backward,
    perturbation_experiment,
)
from .dense import condition_number, matmul, spectral_norm
from .errors import FactorError, UsageError
from .symplectic import (
    BlockPartition,
    algorithm_w1,
    algorithm_w2,
    distance_to_symplecticity,
    omega,
)
from .testmat import (
    diag_family,
    minij,
    pascal_symplectic,
    random_pdp,
    symmetric_perturbation,
    hyperbolic_spd,
    hyperbolic_spd_inverse,
)

CSV_COLUMNS = [
    "family", "param", "n",
    "kappa2_A", "norm2_A", "kappa2_A11", "norm2_A11", "norm2_invA11",
    "dist_sympl", "dist_sympl_rel", "relerr_w1", "relerr_w2",
    "omega_A", "omega_L1", "omega_L2",
]

TABLE_QUANTITIES = CSV_COLUMNS[3:]


@dataclass(frozen=True)
class DiagnosticsRow:
    family: str
    param: float
    n: int
    kappa2_A: float
    norm2_A: float
    kappa2_A11: float
    norm2_A11: float
    norm2_invA11: float
    dist_sympl: float
    dist_sympl_rel: float
    relerr_w1: float
    relerr_w2: float
    omega_A: float
    omega_L1: float
    omega_L2: float
    error: str = ""

    @property
    def ok(self):
        return not self.error


def diagnose(a, family="custom", param=0.0):
    """All reported quantities for one SPD matrix of even order.

    Runs both factorization routes; a factorization failure marks the
    factor-dependent fields NaN and records the failure message.
    """
    p = a if isinstance(a, BlockPartition) else BlockPartition.from_matrix(a)
    full = p.assemble()
    norm_a = spectral_norm(full)
    values = {
        "family": family,
        "param": float(param),
        "n": p.n,
        "kappa2_A": condition_number(full),
        "norm2_A": norm_a,
        "kappa2_A11": condition_number(p.a11),
        "norm2_A11": spectral_norm(p.a11),
        "omega_A": spectral_norm(omega(full)),
    }
    error = ""
    try:
        f1 = algorithm_w1(p)
        f2 = algorithm_w2(p)
        values["norm2_invA11"] = spectral_norm(
            matmul(f1.l22, np.ascontiguousarray(f1.l22.T))
        )
        dist = distance_to_symplecticity(f1, p)
        values["dist_sympl"] = dist
        values["dist_sympl_rel"] = dist / norm_a
        values["relerr_w1"] = spectral_norm(f1.residual(p)) / norm_a
        values["relerr_w2"] = spectral_norm(f2.residual(p)) / norm_a
        values["omega_L1"] = spectral_norm(omega(f1.assemble()))
        values["omega_L2"] = spectral_norm(omega(f2.assemble()))
    except FactorError as exc:
        error = str(exc)
        for name in ("norm2_invA11", "dist_sympl", "dist_sympl_rel",
                     "relerr_w1", "relerr_w2", "omega_L1", "omega_L2"):
            values[name] = math.nan
    return DiagnosticsRow(error=error, **values)


TABLE_THETAS = (3.0, 4.0, 6.0, 7.0)
TABLE_PASCAL_SIZES = (6, 8, 10, 12)


def run_table(table_id):
    """Rows of report table 1 (S^T S), 2 (its inverse) or 3 (Pascal family)."""
    if table_id == 1:
        return [diagnose(hyperbolic_spd(t), "hyperbolic", t) for t in TABLE_THETAS]
    if table_id == 2:
        return [diagnose(hyperbolic_spd_inverse(t), "hyperbolic-inverse", t) for t in TABLE_THETAS]
    if table_id == 3:
        return [diagnose(pascal_symplectic(n), "pascal", n) for n in TABLE_PASCAL_SIZES]
    raise UsageError(f"run_table: table id must be 1, 2 or 3, got {table_id!r}")


def run_sweep(family, n_from, n_to, seed=0):
    """One diagnostics row per half-dimension n in [n_from, n_to].

    The random family derives the per-size seed as seed + n, so a sweep is
    reproducible from its single seed.  Factorization failures mark their
    row and the sweep continues.
    """
    if n_from > n_to or n_from < 1:
        raise UsageError(f"run_sweep: bad range {n_from}..{n_to}")
    rows = []
    for n in range(n_from, n_to + 1):
        if family == "random":
            p = random_pdp(n, seed + n)
            rows.append(diagnose(p, "random", n))
        elif family == "pascal":
            rows.append(diagnose(pascal_symplectic(n), "pascal", n))
        else:
            raise UsageError(f"run_sweep: unsupported family {family!r}")
    return rows


def write_csv(path, rows):
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            record = []
            for name in CSV_COLUMNS:
                value = getattr(row, name)
                if name == "family":
                    record.append(value)
                elif name == "n":
                    record.append(str(value))
                else:
                    record.append(repr(float(value)))
            writer.writerow(record)


def read_csv(path):
    rows = []
    with open(path, newline="", encoding="ascii") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_COLUMNS:
            raise UsageError(f"unexpected CSV header {header!r}")
        for record in reader:
            kw = dict(zip(CSV_COLUMNS, record))
            kw["param"] = float(kw["param"])
            kw["n"] = int(kw["n"])
            for name in TABLE_QUANTITIES:
                kw[name] = float(kw[name])
            rows.append(DiagnosticsRow(**kw))
    return rows


def format_table(rows, title=""):
    """Human-readable layout: quantities as rows, one column per matrix,
    values in 5-significant-digit scientific notation."""
    out = []
    if title:
        out.append(title)
    header = ["quantity"] + [f"{r.family}({r.param:g})" for r in rows]
    widths = [max(14, len(h)) for h in header]
    out.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for name in TABLE_QUANTITIES:
        cells = [name] + [f"{getattr(r, name):.4e}" for r in rows]
        out.append("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
    return "\n".join(out)


# ---------------------------------------------------------------------------
# aggregated check suite

@dataclass(frozen=True)
class CheckSuiteReport:
    results: tuple
    holds: int
    violated: int
    skipped: int

    @property
    def exit_code(self):
        return 0 if self.violated == 0 else 1

    def describe(self):
        lines = [r.describe() if not r.context else f"[{r.context}] {r.describe()}"
                 for r in self.results]
        lines.append(
            f"total: {self.holds} hold, {self.violated} violated, {self.skipped} skipped"
        )
        return "\n".join(lines)


RANDOM_FIXTURE_SIZES = (5, 10, 20)
RANDOM_FIXTURE_SEEDS = (1, 2, 3)
PERTURBATION_SCALES = (1e-10, 1e-8)
PASCAL_FIXTURE_SIZES = (2, 6, 8, 10, 12)


def standard_fixtures():
    """The fixture set the check suite runs over, as (name, partition).

    Names are '<family>' or '<family>/<label>' so a family can be
    selected unambiguously.
    """
    fixtures = [("minij", BlockPartition.from_matrix(minij()))]
    for t in TABLE_THETAS:
        fixtures.append((f"hyperbolic/{t:g}", BlockPartition.from_matrix(hyperbolic_spd(t))))
        fixtures.append(
            (f"hyperbolic-inverse/{t:g}", BlockPartition.from_matrix(hyperbolic_spd_inverse(t)))
        )
    for n in PASCAL_FIXTURE_SIZES:
        fixtures.append((f"pascal/{n}", pascal_symplectic(n)))
    _, ahat = diag_family(1e6, 1e-10)
    fixtures.append(("diagt/1e6", BlockPartition.from_matrix(ahat)))
    for n in RANDOM_FIXTURE_SIZES:
        for s in RANDOM_FIXTURE_SEEDS:
            fixtures.append((f"random/n{n}-s{s}", random_pdp(n, s)))
    return fixtures


def run_checks(scope="all", inject_w2_fault=False):
    """Run every bound check over the fixture set (plus the perturbation
    experiments at the two standard magnitudes) and aggregate verdicts.

    ``scope`` selects one family ('hyperbolic', 'pascal', ...); 'identity' runs
    against the identity matrix alone.  The fault injection flag corrupts
    the computed lower-right w2 block by 1e-3 to prove the backward check
    can fail.
    """
    if scope == "identity":
        fixtures = [("identity", BlockPartition.from_matrix(np.eye(4)))]
    else:
        fixtures = standard_fixtures()
        if scope != "all":
            fixtures = [f for f in fixtures if f[0].split("/")[0] == scope]
            if not fixtures:
                raise UsageError(f"run_checks: no fixtures match scope {scope!r}")

    fault = 1e-3 if inject_w2_fault else 0.0
    results = []
    for index, (name, p) in enumerate(fixtures):
        per_fixture = [check_w2_backward(p, l22_perturbation=fault)]
        per_fixture.append(check_w1_error_bound(p))
        per_fixture.extend(check_omega_factor_bounds(p))
        per_fixture.extend(check_condition_bounds(p))
        a = p.assemble()
        norm_a = spectral_norm(a)
        for scale_index, scale in enumerate(PERTURBATION_SCALES):
            seed = 7700 + 13 * index + scale_index
            e = symmetric_perturbation(2 * p.n, scale * norm_a, seed)
            for kind in ("cholesky", "reverse-cholesky", "l2-form"):
                per_fixture.append(perturbation_experiment(a, e, kind))
            per_fixture.extend(check_schur_perturbation(p, e))
        results.extend(r.with_context(name) for r in per_fixture)

    holds = sum(1 for r in results if r.verdict == "holds")
    violated = sum(1 for r in results if r.verdict == "violated")
    skipped = sum(1 for r in results if r.verdict == "skipped")
    return CheckSuiteReport(
        results=tuple(results), holds=holds, violated=violated, skipped=skipped
    )
