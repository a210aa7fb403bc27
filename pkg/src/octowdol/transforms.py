"""Octonion Fourier and linear canonical transforms by Riemann sums.

Kernels are right-multiplied onto the signal.  For a single axis the kernel
lives in ``span{1, t_k}``, so ``u * (c + t_k s) = c u + s (u t_k)`` and each
1-D transform is two real matrix products.  Multi-axis transforms apply the
axes one after another in the written kernel order, which is the same sum as
left-folding ``((f K1) K2) K3`` per sample because right multiplication is
linear in the left factor.  :func:`olct_3d_direct` does the per-sample fold
literally and serves as the oracle for the separable path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import basis, check_axis, left_fold_product, oct_exp_axis, oct_mul, right_mul_matrix
from .errors import SingularParameterError
from .signal import Grid1D, Grid3D, SampledSignal1D, SampledSignal3D

CONVENTIONS = ("bracket", "global")

# Imaginary units carried by the three kernels of the 3-D transforms.
AXIS_UNITS = (1, 2, 4)


@dataclass(frozen=True)
class UnimodularParams:
    """Real 2x2 matrix ``(a, b; c, d)`` with unit determinant and ``b != 0``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.b == 0:
            raise SingularParameterError("singular parameter b=0 unsupported")
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-12:
            raise ValueError(f"parameters are not unimodular: ad - bc = {det!r}")

    @classmethod
    def from_abd(cls, a: float, b: float, d: float) -> UnimodularParams:
        """Derive ``c = (a d - 1) / b`` so the determinant is exactly one."""
        if b == 0:
            raise SingularParameterError("singular parameter b=0 unsupported")
        return cls(a, b, (a * d - 1.0) / b, d)

    @classmethod
    def fourier(cls) -> UnimodularParams:
        return cls(0.0, 1.0, -1.0, 0.0)

    def inverse(self) -> UnimodularParams:
        return UnimodularParams(self.d, -self.b, -self.c, self.a)

    def flipped(self) -> UnimodularParams:
        """``(a, -b, -c, d)``: the same kernel phase with opposite sign."""
        return UnimodularParams(self.a, -self.b, -self.c, self.d)

    @property
    def amplitude(self) -> float:
        return 1.0 / np.sqrt(2.0 * np.pi * abs(self.b))


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def kernel_phase(params: UnimodularParams, x, w, convention: str = "bracket") -> np.ndarray:
    """Phase of the canonical kernel.

    ``bracket``: ``(a x^2 - 2 x w + d w^2 - pi/2) / (2b)``.
    ``global``: ``(a x^2 - 2 x w + d w^2) / (2b) - pi/4``, the constant that makes
    the chirp-multiply / Fourier / chirp-multiply factorization exact.
    """
    _check_convention(convention)
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    a, b, d = params.a, params.b, params.d
    quad = a * x**2 - 2.0 * x * w + d * w**2
    if convention == "bracket":
        return (quad - np.pi / 2) / (2.0 * b)
    return quad / (2.0 * b) - np.pi / 4


@dataclass(frozen=True)
class KernelFactors:
    theta: np.ndarray
    amplitude: float
    axis: int

    def octonion(self) -> np.ndarray:
        return self.amplitude * oct_exp_axis(self.axis, self.theta)


def kernel_factors(params: UnimodularParams, axis: int, x, w, convention: str = "bracket") -> KernelFactors:
    return KernelFactors(kernel_phase(params, x, w, convention), params.amplitude, check_axis(axis))


def olct_kernel(params: UnimodularParams, axis: int, x, w, convention: str = "bracket") -> np.ndarray:
    """``K(x, w) = exp(t_axis theta) / sqrt(2 pi |b|)`` as an octonion array."""
    if params.b == 0:
        raise SingularParameterError("singular parameter b=0 unsupported")
    return kernel_factors(params, axis, x, w, convention).octonion()


def inverse_kernel(params: UnimodularParams, axis: int, x, w, convention: str = "bracket") -> np.ndarray:
    """``K^{-t}(x, w) = K_{inverse params}(w, x)``."""
    return olct_kernel(params.inverse(), axis, w, x, convention)


# --- frequency grids -----------------------------------------------------------


def default_oft_grid(grid: Grid1D) -> Grid1D:
    """Frequency grid whose Fourier sums are exactly orthogonal on ``grid``."""
    return Grid1D(grid.n, 1.0 / (grid.n * grid.step))


def default_olct_grid(grid: Grid1D, params: UnimodularParams) -> Grid1D:
    """The canonical-kernel counterpart: step ``2 pi |b| / (n step)``."""
    return Grid1D(grid.n, 2.0 * np.pi * abs(params.b) / (grid.n * grid.step))


def default_oft_grid_3d(grid: Grid3D) -> Grid3D:
    return Grid3D(tuple(default_oft_grid(g) for g in grid.axes))


def default_olct_grid_3d(grid: Grid3D, params: Sequence[UnimodularParams]) -> Grid3D:
    return Grid3D(tuple(default_olct_grid(g, p) for g, p in zip(grid.axes, params)))


# --- separable machinery -------------------------------------------------------


def apply_axis(values: np.ndarray, ax: int, phase: np.ndarray, weight: float, unit: int) -> np.ndarray:
    """Right-multiply ``exp(t_unit phase[i, o])`` and sum over input index ``i``.

    ``values`` carries octonions on its last axis; ``ax`` is the sample axis
    being transformed; ``phase`` has shape ``(n_in, n_out)``.  Returns
    ``weight * sum_i values[..i..] * exp(t_unit phase[i, o])``.
    """
    u = np.moveaxis(values, ax, 0)
    ut = u @ right_mul_matrix(basis(unit)).T
    c, s = np.cos(phase), np.sin(phase)
    out = np.tensordot(c.T, u, axes=([1], [0])) + np.tensordot(s.T, ut, axes=([1], [0]))
    return np.moveaxis(weight * out, 0, ax)


def _olct_phase(params, x, w, convention):
    return kernel_phase(params, x[:, None], w[None, :], convention)


def _inverse_phase(params, w, x, convention):
    # K_{inv}(w, x) indexed [w, x]
    return kernel_phase(params.inverse(), w[:, None], x[None, :], convention)


# --- 1-D transforms ------------------------------------------------------------


def oft_points(values: np.ndarray, grid: Grid1D, w, unit: int = 4, ax: int = 0) -> np.ndarray:
    """``sum_x f(x) exp(-t_unit 2 pi x w) step`` at arbitrary frequencies ``w``."""
    w = np.atleast_1d(np.asarray(w, dtype=float))
    phase = -2.0 * np.pi * grid.points[:, None] * w[None, :]
    return apply_axis(values, ax, phase, grid.step, unit)


def oft_1d(f: SampledSignal1D, wgrid: Grid1D | None = None) -> SampledSignal1D:
    wgrid = wgrid or default_oft_grid(f.grid)
    return SampledSignal1D(wgrid, oft_points(f.values, f.grid, wgrid.points))


def oft_1d_inv(F: SampledSignal1D, xgrid: Grid1D) -> SampledSignal1D:
    phase = 2.0 * np.pi * F.grid.points[:, None] * xgrid.points[None, :]
    return SampledSignal1D(xgrid, apply_axis(F.values, 0, phase, F.grid.step, 4))


def olct_1d(
    f: SampledSignal1D,
    params: UnimodularParams,
    wgrid: Grid1D | None = None,
    convention: str = "bracket",
) -> SampledSignal1D:
    wgrid = wgrid or default_olct_grid(f.grid, params)
    phase = _olct_phase(params, f.grid.points, wgrid.points, convention)
    return SampledSignal1D(wgrid, apply_axis(f.values, 0, phase, params.amplitude * f.grid.step, 4))


def olct_1d_inv(
    F: SampledSignal1D,
    params: UnimodularParams,
    xgrid: Grid1D,
    convention: str = "bracket",
) -> SampledSignal1D:
    phase = _inverse_phase(params, F.grid.points, xgrid.points, convention)
    return SampledSignal1D(xgrid, apply_axis(F.values, 0, phase, params.amplitude * F.grid.step, 4))


def olct_via_oft_values(
    values: np.ndarray,
    grid: Grid1D,
    params: UnimodularParams,
    w: np.ndarray,
    ax: int = 0,
) -> np.ndarray:
    """Chirp-multiply, Fourier at ``w / (2 pi |b|)``, phase post-factor.

    ``(2 pi |b|)^{-1/2} F[f exp(t4 a x^2 / 2b)](w / 2 pi |b|) exp(t4 (d w^2 / 2b - pi/4))``.
    """
    a, b, d = params.a, params.b, params.d
    chirp = oct_exp_axis(4, a * grid.points**2 / (2.0 * b))
    shape = [1] * values.ndim
    shape[ax] = grid.n
    shape[-1] = 8
    g = oct_mul(values, chirp.reshape(shape))
    F = oft_points(g, grid, w / (2.0 * np.pi * abs(b)), unit=4, ax=ax)
    post = oct_exp_axis(4, d * w**2 / (2.0 * b) - np.pi / 4)
    shape[ax] = len(w)
    return params.amplitude * oct_mul(F, post.reshape(shape))


def olct_via_oft_1d(
    f: SampledSignal1D,
    params: UnimodularParams,
    wgrid: Grid1D | None = None,
) -> SampledSignal1D:
    wgrid = wgrid or default_olct_grid(f.grid, params)
    return SampledSignal1D(wgrid, olct_via_oft_values(f.values, f.grid, params, wgrid.points))


# --- 3-D transforms ------------------------------------------------------------


def oft_3d_values(values: np.ndarray, grid: Grid3D, wgrid: Grid3D, offset: int = 0) -> np.ndarray:
    """3-D Fourier sum over sample axes ``offset..offset+2`` (t1, t2, t4 order)."""
    out = values
    for k, unit in enumerate(AXIS_UNITS):
        g, wg = grid.axes[k], wgrid.axes[k]
        phase = -2.0 * np.pi * g.points[:, None] * wg.points[None, :]
        out = apply_axis(out, offset + k, phase, g.step, unit)
    return out


def oft_3d(f: SampledSignal3D, wgrid: Grid3D | None = None) -> SampledSignal3D:
    wgrid = wgrid or default_oft_grid_3d(f.grid)
    return SampledSignal3D(wgrid, oft_3d_values(f.values, f.grid, wgrid))


def oft_3d_inv(F: SampledSignal3D, xgrid: Grid3D) -> SampledSignal3D:
    """Inverse with kernels in the order t4, t2, t1."""
    out = F.values
    for k in (2, 1, 0):
        wg, g = F.grid.axes[k], xgrid.axes[k]
        phase = 2.0 * np.pi * wg.points[:, None] * g.points[None, :]
        out = apply_axis(out, k, phase, wg.step, AXIS_UNITS[k])
    return SampledSignal3D(xgrid, out)


def _check_params3(params: Sequence[UnimodularParams]) -> tuple[UnimodularParams, ...]:
    params = tuple(params)
    if len(params) != 3:
        raise ValueError("three parameter sets required")
    for k, p in enumerate(params, start=1):
        if p.b == 0:
            raise SingularParameterError(f"singular parameter b=0 unsupported on axis {k}")
    return params


def olct_3d_values(
    values: np.ndarray,
    grid: Grid3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D,
    offset: int = 0,
    units: Sequence[int] = AXIS_UNITS,
    convention: str = "bracket",
) -> np.ndarray:
    """Separable 3-D canonical sum over sample axes ``offset..offset+2``.

    ``units`` picks the imaginary unit of each axis kernel; the default is the
    octonion transform's ``(t1, t2, t4)``.
    """
    out = values
    for k in range(3):
        g, wg, p = grid.axes[k], wgrid.axes[k], params[k]
        phase = _olct_phase(p, g.points, wg.points, convention)
        out = apply_axis(out, offset + k, phase, p.amplitude * g.step, units[k])
    return out


def olct_3d(
    f: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    convention: str = "bracket",
) -> SampledSignal3D:
    params = _check_params3(params)
    wgrid = wgrid or default_olct_grid_3d(f.grid, params)
    return SampledSignal3D(wgrid, olct_3d_values(f.values, f.grid, params, wgrid, convention=convention))


def olct_3d_inv_values(
    values: np.ndarray,
    wgrid: Grid3D,
    params: Sequence[UnimodularParams],
    xgrid: Grid3D,
    offset: int = 0,
    convention: str = "bracket",
) -> np.ndarray:
    """Inverse kernels ``K_{inv 3}(w3, x3) K_{inv 2}(w2, x2) K_{inv 1}(w1, x1)``, left to right."""
    out = values
    for k in (2, 1, 0):
        wg, g, p = wgrid.axes[k], xgrid.axes[k], params[k]
        phase = _inverse_phase(p, wg.points, g.points, convention)
        out = apply_axis(out, offset + k, phase, p.amplitude * wg.step, AXIS_UNITS[k])
    return out


def olct_3d_inv(
    F: SampledSignal3D,
    params: Sequence[UnimodularParams],
    xgrid: Grid3D,
    convention: str = "bracket",
) -> SampledSignal3D:
    params = _check_params3(params)
    return SampledSignal3D(xgrid, olct_3d_inv_values(F.values, F.grid, params, xgrid, convention=convention))


def kernel_product_3d(
    params: Sequence[UnimodularParams],
    x: Sequence[np.ndarray],
    w: Sequence[np.ndarray],
    association: str = "left",
    convention: str = "bracket",
) -> list[np.ndarray]:
    """The three axis kernels, broadcast to ``(x1, x2, x3, w1, w2, w3, 8)``."""
    ks = []
    for k in range(3):
        kk = olct_kernel(params[k], AXIS_UNITS[k], x[k][:, None], w[k][None, :], convention)
        shape = [1] * 6 + [8]
        shape[k] = len(x[k])
        shape[3 + k] = len(w[k])
        ks.append(kk.reshape(shape))
    return ks


def olct_3d_direct(
    f: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D,
    association: str = "left",
    convention: str = "bracket",
) -> SampledSignal3D:
    """Brute-force 3-D transform that forms every summand ``((f K1) K2) K3``.

    ``association="right"`` forms ``f (K1 (K2 K3))`` instead; octonions make
    that a different transform, which is why the order is part of the contract.
    Memory grows as ``n^6``; meant for small grids.
    """
    params = _check_params3(params)
    x = [g.points for g in f.grid.axes]
    w = [g.points for g in wgrid.axes]
    k1, k2, k3 = kernel_product_3d(params, x, w, convention=convention)
    fv = f.values[:, :, :, None, None, None, :]
    if association == "left":
        terms = left_fold_product([fv, k1, k2, k3])
    elif association == "right":
        terms = oct_mul(fv, oct_mul(k1, oct_mul(k2, k3)))
    else:
        raise ValueError("association must be 'left' or 'right'")
    return SampledSignal3D(wgrid, terms.sum(axis=(0, 1, 2)) * f.grid.cell)


def euler_product_expand(theta1, theta2, theta3) -> np.ndarray:
    """Eight-term expansion of ``exp(t1 th1) exp(t2 th2) exp(t4 th3)``."""
    c1, s1 = np.cos(theta1), np.sin(theta1)
    c2, s2 = np.cos(theta2), np.sin(theta2)
    c3, s3 = np.cos(theta3), np.sin(theta3)
    return np.stack(
        [
            c1 * c2 * c3,
            s1 * c2 * c3,
            c1 * s2 * c3,
            s1 * s2 * c3,
            c1 * c2 * s3,
            s1 * c2 * s3,
            c1 * s2 * s3,
            s1 * s2 * s3,
        ],
        axis=-1,
    )
