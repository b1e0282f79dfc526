"""End-to-end experiment pipelines over the other modules.

Each experiment assembles products, projections and transforms into a
reproducible run and returns an ExperimentResult whose series can be
dumped to CSV for plotting.  Statements that are asymptotic in nature
(an unbounded oscillation norm, failure of a trace characterization) are
rendered as growth trends over nested truncations of the zero sequence;
no finite run certifies the limit.
"""

from __future__ import annotations

import csv
import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .blaschke import BlaschkeProduct, eval_product, sublevel_indicator
from .boundary import (
    BoundaryFunction,
    BoundaryGrid,
    bmo_norm,
    h2_defect,
    lp_norm,
    riesz_project,
)
from .classify import DecayVerdict, log_growth_check
from .core import ValueSequence, ZeroSequence
from .interp import cauchy_eval, lagrange_interpolant, conjugate_sequence

# a product factor is treated as resolved when M (1 - |z_j|) is at least this
RESOLUTION_MARGIN = 32.0


@dataclass
class ExperimentResult:
    """Named series produced by one experiment run."""

    name: str
    parameters: dict
    series: list = field(default_factory=list)   # (label, index, value) triples
    verdicts: list = field(default_factory=list)
    runtime: float = 0.0
    warnings: list = field(default_factory=list)

    def add(self, label: str, index, value) -> None:
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"series entry {label}[{index}] is not finite")
        self.series.append((label, index, value))

    def get(self, label: str) -> list:
        return [(i, v) for lab, i, v in self.series if lab == label]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "series": [[lab, i, v] for lab, i, v in self.series],
            "verdicts": [
                v.to_dict() if isinstance(v, DecayVerdict) else v for v in self.verdicts
            ],
            "runtime": self.runtime,
            "warnings": list(self.warnings),
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["label", "index", "value"])
            for lab, i, v in self.series:
                writer.writerow([lab, i, repr(v)])


def _check_resolution(result: ExperimentResult, zeros: ZeroSequence, M: int) -> None:
    margin = M * (1.0 - float(zeros.moduli.max()))
    if margin < RESOLUTION_MARGIN:
        msg = (
            f"grid of size {M} under-resolves the kernel nearest the boundary "
            f"(M (1 - max|z_j|) = {margin:.1f} < {RESOLUTION_MARGIN:g})"
        )
        warnings.warn(msg)
        result.warnings.append(msg)


def log_samples(grid: BoundaryGrid) -> BoundaryFunction:
    """Principal-branch log(1 - z) sampled on the grid.

    Needs an offset grid so that no node hits the singularity at angle 0.
    The returned function is the analytic part of the raw samples; the
    small negative-mode residue of sampling a log singularity is dropped
    (and reported by the experiments that use it).
    """
    if grid.offset == 0.0:
        raise ValueError("log(1 - z) needs the half-offset grid (node at angle 0)")
    raw = BoundaryFunction(grid, np.log(1.0 - grid.nodes))
    return riesz_project(raw, "+")


def _truncation_ladder(n: int) -> list[int]:
    if n <= 4:
        return list(range(1, n + 1))
    return list(range(4, n + 1, 2)) if n % 2 == 0 else list(range(3, n + 1, 2))


def exp_nonduality(zeros: ZeroSequence, m: int = 13) -> ExperimentResult:
    """Project the logarithm onto the model space and track its size.

    Series: value-preservation residuals at the zeros, the ratio of
    |g(z_j)| to the natural log-growth envelope, and the oscillation norm
    of the co-analytic part over nested truncations (its growth is the
    desk-scale shadow of the projection falling outside BMO).
    """
    start = time.perf_counter()
    grid = BoundaryGrid(m, offset=0.5)
    result = ExperimentResult(
        name="nonduality",
        parameters={"grid_log2": m, "n_zeros": len(zeros)},
    )
    _check_resolution(result, zeros, grid.size)

    phi_raw = BoundaryFunction(grid, np.log(1.0 - grid.nodes))
    phi = riesz_project(phi_raw, "+")
    result.parameters["log_sampling_defect"] = h2_defect(phi_raw)

    product = BlaschkeProduct(zeros)
    theta = BoundaryFunction.from_callable(grid, lambda z: eval_product(product, z))
    coanalytic = riesz_project(theta.conj() * phi, "-")
    g = theta * coanalytic

    g_at = cauchy_eval(g, zeros.points, tol=1e-2)
    phi_at = cauchy_eval(phi, zeros.points)
    envelope = np.log(2.0 / (1.0 - zeros.moduli))
    for j in range(len(zeros)):
        result.add("value_preservation_residual", j, abs(g_at[j] - phi_at[j]))
        result.add("log_envelope_ratio", j, abs(g_at[j]) / envelope[j])

    for n in _truncation_ladder(len(zeros)):
        sub = zeros.truncate(n)
        prod_n = BlaschkeProduct(sub)
        theta_n = BoundaryFunction.from_callable(grid, lambda z: eval_product(prod_n, z))
        co_n = riesz_project(theta_n.conj() * phi, "-")
        result.add("coanalytic_bmo", n, bmo_norm(co_n))

    result.runtime = time.perf_counter() - start
    return result


def kernel_l1_quadrature(r: float) -> float:
    """Adaptive-quadrature value of the L1 norm of z -> 1/(1 - r z) on the circle."""
    if not 0.0 <= r < 1.0:
        raise ValueError("radius must lie in [0, 1)")
    val, _ = quad(
        lambda t: 1.0 / math.sqrt((1.0 - r) ** 2 + 4.0 * r * math.sin(t / 2.0) ** 2),
        0.0,
        math.pi,
        limit=400,
    )
    return val / math.pi


def exp_noninterpolation(zeros: ZeroSequence, m: int = 13) -> ExperimentResult:
    """Kernel-norm growth and the log-envelope trace that defeats interpolation.

    Series: the L1 norms of the reproducing kernels at the zeros by the
    grid route and by adaptive quadrature, their ratios to the log
    envelope, and the oscillation norm of the interpolant of the
    projected logarithm's trace over nested truncations.
    """
    start = time.perf_counter()
    grid = BoundaryGrid(m, offset=0.5)
    result = ExperimentResult(
        name="noninterpolation",
        parameters={"grid_log2": m, "n_zeros": len(zeros)},
    )
    _check_resolution(result, zeros, grid.size)

    envelope = np.log(2.0 / (1.0 - zeros.moduli))
    for j, zj in enumerate(zeros.points):
        r = abs(zj)
        kernel = BoundaryFunction(grid, 1.0 / (1.0 - np.conj(zj) * grid.nodes))
        grid_norm = lp_norm(kernel, 1.0)
        quad_norm = kernel_l1_quadrature(r)
        result.add("kernel_l1_grid", j, grid_norm)
        result.add("kernel_l1_quadrature", j, quad_norm)
        result.add("kernel_l1_ratio", j, quad_norm / envelope[j])

    phi = log_samples(grid)
    product = BlaschkeProduct(zeros)
    theta = BoundaryFunction.from_callable(grid, lambda z: eval_product(product, z))
    g = theta * riesz_project(theta.conj() * phi, "-")
    values = ValueSequence(cauchy_eval(g, zeros.points, tol=1e-2))
    verdict = log_growth_check(zeros, values)
    result.verdicts.append(verdict)

    for n in _truncation_ladder(len(zeros)):
        interp = lagrange_interpolant(zeros.truncate(n), values.truncate(n))
        result.add("interpolant_bmo", n, bmo_norm(interp.sample(grid)))

    result.runtime = time.perf_counter() - start
    return result


def exp_dichotomy(
    zeros: ZeroSequence, values: ValueSequence, m: int = 12
) -> ExperimentResult:
    """Bounded-versus-growing conjugate sequences over nested truncations.

    For each truncation length the series record the largest conjugate
    value and the boundary sup norm of the interpolant.  Data traced from
    a fixed bounded function stays flat; data built to diverge grows.
    """
    if len(zeros) != len(values):
        raise ValueError("value/zero sequence lengths differ")
    start = time.perf_counter()
    grid = BoundaryGrid(m)
    result = ExperimentResult(
        name="dichotomy",
        parameters={"grid_log2": m, "n_zeros": len(zeros)},
    )
    for n in range(1, len(zeros) + 1):
        sub_z = zeros.truncate(n)
        sub_w = values.truncate(n)
        transformed = conjugate_sequence(sub_z, sub_w)
        result.add("max_conjugate_value", n, float(np.abs(transformed.values).max()))
        interp = lagrange_interpolant(sub_z, sub_w)
        result.add("interpolant_sup", n, lp_norm(interp.sample(grid), math.inf))
    result.runtime = time.perf_counter() - start
    return result


def exp_sublevel(
    zeros: ZeroSequence,
    f: BoundaryFunction,
    eps: float = 0.5,
    n_radial: int = 48,
    n_angular: int = 256,
    depth: float = 1e-4,
) -> ExperimentResult:
    """Compare the sup of |f| over a sublevel set with its boundary sup.

    Samples |f| on a polar lattice, geometrically refined toward the
    circle, restricted to the points where |B| < eps.  For f in the model
    space of B the interior sup tracks the boundary sup; the report also
    carries the oscillation norm of conj(B) f for the pairing study.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    start = time.perf_counter()
    result = ExperimentResult(
        name="sublevel",
        parameters={
            "eps": eps,
            "n_radial": n_radial,
            "n_angular": n_angular,
            "depth": depth,
            "grid_log2": f.grid.m,
        },
    )
    product = BlaschkeProduct(zeros)
    gaps = np.geomspace(0.5, depth, n_radial)
    radii = 1.0 - gaps
    angles = 2.0 * math.pi * np.arange(n_angular) / n_angular
    lattice = (radii[:, None] * np.exp(1j * angles[None, :])).reshape(-1)
    mask = sublevel_indicator(product, eps, lattice)
    result.parameters["lattice_points_in_sublevel"] = int(np.count_nonzero(mask))
    if not np.any(mask):
        msg = f"polar lattice misses the sublevel set entirely (eps = {eps:g})"
        warnings.warn(msg)
        result.warnings.append(msg)
        sub_sup = 0.0
    else:
        inside = cauchy_eval(f, lattice[mask], tol=1e-2)
        sub_sup = float(np.abs(inside).max())
    boundary_sup = lp_norm(f, math.inf)

    theta = BoundaryFunction.from_callable(f.grid, lambda z: eval_product(product, z))
    pairing = bmo_norm(theta.conj() * f)

    result.add("sublevel_sup", 0, sub_sup)
    result.add("boundary_sup", 0, boundary_sup)
    result.add("pairing_bmo", 0, pairing)
    result.runtime = time.perf_counter() - start
    return result
