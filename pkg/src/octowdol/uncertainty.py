"""Quadrature checks of the WDOL uncertainty inequalities.

All integrals run over three dimensions in each of ``t``, ``x`` and ``w``.
``|x|`` is the Euclidean norm; points where ``ln|x|`` or ``ln|w|`` diverges
(the origin) are left out of the logarithmic sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import digamma

from .algebra import oct_norm2
from .errors import GridMismatchError
from .report import InequalityReport
from .signal import Grid3D, SampledSignal1D, SampledSignal3D, norm_p
from .transforms import UnimodularParams, _check_params3, default_olct_grid_3d, olct_3d_values
from .wigner import WdolField3D, default_wdol_grid_3d, iter_wdol_3d

#: psi(1/2) - ln(pi), the additive constant of the logarithmic inequality.
LOG_UP_CONSTANT = float(digamma(0.5) - math.log(math.pi))

WEIGHTS = ("x2", "logx", "w2", "logw")


@dataclass(frozen=True)
class UPConstants:
    """Constants shared by the inequality checks.

    ``log_b`` has no default: the scalar standing in for ``ln|b|`` must be
    chosen by the caller.  With every ``|b_k| = 1`` all readings give 0.
    """

    log_b: float
    holder_p: float = 2.0
    holder_q: float | None = None
    D: float = LOG_UP_CONSTANT

    def __post_init__(self):
        p = float(self.holder_p)
        if not 1.0 <= p <= 2.0:
            raise ValueError(f"Hölder exponent p must lie in [1, 2], got {p}")
        q = self.holder_q
        if q is None:
            q = math.inf if p == 1.0 else p / (p - 1.0)
            object.__setattr__(self, "holder_q", q)
        inv_q = 0.0 if math.isinf(q) else 1.0 / q
        if abs(1.0 / p + inv_q - 1.0) > 1e-12:
            raise ValueError(f"1/p + 1/q must equal 1, got p={p}, q={q}")


def _radius(grid: Grid3D) -> np.ndarray:
    x1, x2, x3 = grid.mesh()
    return np.sqrt(x1 * x1 + x2 * x2 + x3 * x3)


def _weight(name: str, r: np.ndarray) -> np.ndarray:
    if name in ("x2", "w2"):
        return r * r
    if name in ("logx", "logw"):
        out = np.zeros_like(r)
        nz = r > 0
        out[nz] = np.log(r[nz])
        return out
    raise ValueError(f"weight must be one of {WEIGHTS}, got {name!r}")


def moment_spread(obj, weight: str) -> float:
    """Weighted squared mass ``sum weight(|x|) |obj|^2 * cell``.

    ``obj`` is a sampled signal (``x2`` / ``logx``) or a 3-D WDOL field
    (``w2`` / ``logw``, integrated over both ``t`` and ``w``).
    """
    if isinstance(obj, WdolField3D):
        if weight not in ("w2", "logw"):
            raise ValueError("fields take frequency weights 'w2' or 'logw'")
        wt = _weight(weight, _radius(obj.wgrid))
        return float(np.sum(oct_norm2(obj.values) * wt) * obj.measure)
    if weight not in ("x2", "logx"):
        raise ValueError("signals take spatial weights 'x2' or 'logx'")
    if isinstance(obj, SampledSignal1D):
        r = np.abs(obj.grid.points)
        return float(np.sum(oct_norm2(obj.values) * _weight(weight, r)) * obj.grid.step)
    if isinstance(obj, SampledSignal3D):
        return float(np.sum(oct_norm2(obj.values) * _weight(weight, _radius(obj.grid))) * obj.grid.cell)
    raise TypeError(f"unsupported object {type(obj).__name__}")


@dataclass(frozen=True)
class SpreadSums:
    """Moments of ``h_t`` over ``(t, x)`` and of the WDOL over ``(t, w)``."""

    x2: float
    logx: float
    w2: float
    logw: float
    h_mass: float
    wdol_mass: float


def spread_sums(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
) -> SpreadSums:
    """One slab-wise pass accumulating every moment the inequalities need."""
    if f.grid != g.grid:
        raise GridMismatchError("f and g must share a grid")
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    lag = f.grid.lag_grid()
    rx, rw = _radius(lag), _radius(wgrid)
    wx2, wlx = _weight("x2", rx), _weight("logx", rx)
    ww2, wlw = _weight("w2", rw), _weight("logw", rw)
    acc = np.zeros(6)
    for _, h, W in iter_wdol_3d(f, g, params, wgrid):
        h2, W2 = oct_norm2(h), oct_norm2(W)
        acc += [
            np.sum(h2 * wx2),
            np.sum(h2 * wlx),
            np.sum(W2 * ww2),
            np.sum(W2 * wlw),
            np.sum(h2),
            np.sum(W2),
        ]
    tx = f.grid.cell * lag.cell
    tw = f.grid.cell * wgrid.cell
    return SpreadSums(
        x2=float(acc[0] * tx),
        logx=float(acc[1] * tx),
        w2=float(acc[2] * tw),
        logw=float(acc[3] * tw),
        h_mass=float(acc[4] * tx),
        wdol_mass=float(acc[5] * tw),
    )


def heisenberg_check(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    tol: float = 1e-3,
    sums: SpreadSums | None = None,
) -> InequalityReport:
    """``sqrt(sum |x|^2 |h|^2) sqrt(sum |w|^2 |W|^2) >= sqrt(2/(pi |b3|)) b1 b2 ||f||^2 ||g||^2``."""
    params = _check_params3(params)
    s = sums or spread_sums(f, g, params, wgrid)
    lhs = math.sqrt(s.x2) * math.sqrt(s.w2)
    b1, b2, b3 = (p.b for p in params)
    energy = f.norm2() * g.norm2()
    rhs = math.sqrt(2.0 / (math.pi * abs(b3))) * b1 * b2 * energy
    return InequalityReport(
        "heisenberg",
        lhs,
        rhs,
        relation="ge",
        tol=tol,
        meta={"x_spread": s.x2, "w_spread": s.w2, "energy": energy, "h_mass": s.h_mass, "wdol_mass": s.wdol_mass},
    )


def logarithmic_check(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    consts: UPConstants,
    wgrid: Grid3D | None = None,
    tol: float = 1e-3,
    sums: SpreadSums | None = None,
) -> InequalityReport:
    """``sum ln|x| |h|^2 + 2 pi b3 sum ln|w| |W|^2 >= (D + log_b) ||f||^2 ||g||^2``."""
    params = _check_params3(params)
    s = sums or spread_sums(f, g, params, wgrid)
    scale = 2.0 * math.pi * params[2].b
    lhs = s.logx + scale * s.logw
    energy = f.norm2() * g.norm2()
    rhs = (consts.D + consts.log_b) * energy
    return InequalityReport(
        "logarithmic",
        lhs,
        rhs,
        relation="ge",
        tol=tol,
        meta={"log_x_term": s.logx, "log_w_term": scale * s.logw, "D": consts.D, "log_b": consts.log_b, "energy": energy},
    )


def olct_hy_constant(params: Sequence[UnimodularParams], q: float) -> float:
    """``|b1 b2|^(1/q - 1/2) / ((2 pi)^(1/(2q) + 1) |b3|^(1/(2q)))``."""
    b1, b2, b3 = (abs(p.b) for p in params)
    iq = 0.0 if math.isinf(q) else 1.0 / q
    return (b1 * b2) ** (iq - 0.5) / ((2.0 * math.pi) ** (0.5 * iq + 1.0) * b3 ** (0.5 * iq))


def olct_hy_sharp_constant(params: Sequence[UnimodularParams], p: float, q: float) -> float:
    """Sharp bound for the unitary kernel: ``prod_k (2 pi |b_k|)^(1/q - 1/2)`` times Babenko-Beckner."""
    iq = 0.0 if math.isinf(q) else 1.0 / q
    bb = (p ** (1.0 / p) * (iq ** iq if iq > 0 else 1.0)) ** 0.5
    out = bb**3
    for prm in params:
        out *= (2.0 * math.pi * abs(prm.b)) ** (iq - 0.5)
    return out


def _norm_q(values: np.ndarray, cell: float, q: float) -> float:
    if math.isinf(q):
        return float(np.sqrt(oct_norm2(values)).max()) if values.size else 0.0
    return norm_p(values, cell, q)


def hausdorff_young_olct_check(
    f: SampledSignal3D,
    params: Sequence[UnimodularParams],
    consts: UPConstants,
    wgrid: Grid3D | None = None,
    tol: float = 1e-2,
) -> InequalityReport:
    """``||L f||_q <= C(b, q) ||f||_p`` with the closed-form constant, slack ``tol``."""
    params = _check_params3(params)
    p, q = consts.holder_p, consts.holder_q
    wgrid = wgrid or default_olct_grid_3d(f.grid, params)
    F = olct_3d_values(f.values, f.grid, params, wgrid)
    lhs = _norm_q(F, wgrid.cell, q)
    fp = norm_p(f.values, f.grid.cell, p)
    C = olct_hy_constant(params, q)
    sharp = olct_hy_sharp_constant(params, p, q)
    return InequalityReport(
        "hausdorff-young-olct",
        lhs,
        C * fp,
        relation="le",
        tol=tol,
        meta={
            "p": p,
            "q": q,
            "norm_p": fp,
            "constant": C,
            "sharp_constant": sharp,
            "ratio_to_sharp": lhs / (sharp * fp) if fp else None,
        },
    )


def hausdorff_young_wdol_report(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    q: float = 2.0,
    wgrid: Grid3D | None = None,
) -> InequalityReport:
    """``sum |W|^q`` against the WDOL bound without its unspecified constant.

    The bound's multiplier is free, so the report carries the smallest value
    that would make the inequality hold (``E_min = lhs / rhs``) and always
    passes when that value is finite.
    """
    if not 2.0 <= q < math.inf:
        raise ValueError(f"exponent q must satisfy 2 <= q < inf, got {q}")
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    total = 0.0
    for _, _, W in iter_wdol_3d(f, g, params, wgrid):
        total += float(np.sum(oct_norm2(W) ** (0.5 * q)))
    lhs = total * f.grid.cell * wgrid.cell
    rhs = olct_hy_constant(params, q) * (f.norm2() * g.norm2()) ** (0.5 * q)
    e_min = lhs / rhs if rhs else 0.0
    return InequalityReport(
        "hausdorff-young-wdol",
        e_min,
        0.0,
        relation="finite",
        meta={"q": q, "wdol_q_mass": lhs, "bound_without_E": rhs, "E_min": e_min},
    )
