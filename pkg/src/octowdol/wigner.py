"""Wigner distribution in the octonion linear canonical domain (WDOL).

The WDOL of ``f`` and ``g`` at time ``t`` is the canonical transform, over the
lag variable, of the instantaneous correlation ``h_t``.  All quadratures run
on the doubled-step lag grid from :mod:`octowdol.signal`, so with the default
frequency grids the discrete transforms are exactly invertible and
energy-preserving.

3-D fields are stored t-major: ``values[t1, t2, t3, w1, w2, w3, :]``.
"""

from __future__ import annotations

import csv
import io
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .algebra import basis, oct_conj, oct_inv, oct_mul, oct_norm2
from .errors import GridMismatchError, ReconstructionError
from .report import InequalityReport
from .signal import (
    PARITY_LABELS,
    Grid1D,
    Grid3D,
    SampledSignal1D,
    SampledSignal3D,
    correlation_1d_all,
    correlation_3d_slab,
    parity_parts,
)
from .transforms import (
    UnimodularParams,
    _check_params3,
    apply_axis,
    default_olct_grid,
    kernel_phase,
    olct_3d_inv_values,
    olct_3d_values,
    olct_via_oft_values,
)


def max_workers() -> int:
    """Thread cap for point-parallel field evaluation (``OCTO_WDOL_THREADS``)."""
    env = os.environ.get("OCTO_WDOL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def _map_ordered(fn, items):
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --- 1-D ----------------------------------------------------------------------


@dataclass(frozen=True)
class WdolField1D:
    tgrid: Grid1D
    wgrid: Grid1D
    values: np.ndarray
    params: UnimodularParams
    convention: str = "bracket"

    def __post_init__(self):
        if self.values.shape != (self.tgrid.n, self.wgrid.n, 8):
            raise ValueError("field shape does not match its grids")

    @property
    def lag_grid(self) -> Grid1D:
        return self.tgrid.lag_grid()

    def norm2(self) -> float:
        return float(np.sum(oct_norm2(self.values)) * self.tgrid.step * self.wgrid.step)

    def magnitude(self) -> np.ndarray:
        return np.sqrt(oct_norm2(self.values))


def default_wdol_grid(grid: Grid1D, params: UnimodularParams) -> Grid1D:
    """Frequency grid matched to the lag grid (step ``pi |b| / (n step)``)."""
    return default_olct_grid(grid.lag_grid(), params)


def default_wdol_grid_3d(grid: Grid3D, params: Sequence[UnimodularParams]) -> Grid3D:
    return Grid3D(tuple(default_wdol_grid(g, p) for g, p in zip(grid.axes, params)))


def wdol_1d(
    f: SampledSignal1D,
    g: SampledSignal1D,
    params: UnimodularParams,
    wgrid: Grid1D | None = None,
    convention: str = "bracket",
) -> WdolField1D:
    """``W(t, w) = sum_x h_t(x) K(x, w) * lag_step`` for every signal-grid ``t``."""
    if f.grid != g.grid:
        raise GridMismatchError("f and g must share a grid")
    wgrid = wgrid or default_wdol_grid(f.grid, params)
    lag = f.grid.lag_grid()
    h = correlation_1d_all(f, g)
    phase = kernel_phase(params, lag.points[:, None], wgrid.points[None, :], convention)
    vals = apply_axis(h, 1, phase, params.amplitude * lag.step, 4)
    return WdolField1D(f.grid, wgrid, vals, params, convention)


def wdol_1d_via_oft(
    f: SampledSignal1D,
    g: SampledSignal1D,
    params: UnimodularParams,
    wgrid: Grid1D | None = None,
) -> WdolField1D:
    """The same field through the chirp / Fourier / phase factorization."""
    if f.grid != g.grid:
        raise GridMismatchError("f and g must share a grid")
    wgrid = wgrid or default_wdol_grid(f.grid, params)
    h = correlation_1d_all(f, g)
    vals = olct_via_oft_values(h, f.grid.lag_grid(), params, wgrid.points, ax=1)
    return WdolField1D(f.grid, wgrid, vals, params, "global")


def _origin_inverse(g, eps: float) -> np.ndarray:
    g0 = g.at_origin()
    if np.sqrt(oct_norm2(g0)) <= eps:
        raise ReconstructionError("reconstruction requires g(0) != 0")
    # f(xi) conj(g(0)) is what the inverse transform returns; undo it on the right.
    return oct_inv(oct_conj(g0))


def representable_offsets(n: int) -> np.ndarray:
    """Offsets ``k`` (from the center) with ``2k`` still inside an ``n``-point grid."""
    m = (n - 1) // 2
    k = np.arange(-m, m + 1)
    return k[np.abs(2 * k) <= m]


def even_subgrid(grid: Grid1D) -> Grid1D:
    return Grid1D(len(representable_offsets(grid.n)), 2.0 * grid.step)


def even_index_values(f: SampledSignal1D | SampledSignal3D) -> np.ndarray:
    """Samples at the even offsets from the origin, where reconstruction is exact."""
    if isinstance(f, SampledSignal1D):
        m = f.grid.half
        return f.values[m + 2 * representable_offsets(f.grid.n)]
    idx = [g.half + 2 * representable_offsets(g.n) for g in f.grid.axes]
    return f.values[np.ix_(*idx)]


def reconstruct_1d(W: WdolField1D, g: SampledSignal1D, eps_g: float = 1e-10) -> SampledSignal1D:
    """Recover ``f`` at even-offset samples from ``W`` and the window ``g``.

    ``f(xi) = [sum_w W(xi/2, w) K^{-t4}(xi, w) dw] * conj(g(0))^{-1}``.
    """
    if g.grid != W.tgrid:
        raise GridMismatchError("window grid must equal the field's time grid")
    ginv = _origin_inverse(g, eps_g)
    n, m = W.tgrid.n, W.tgrid.half
    lag = W.lag_grid
    offs = representable_offsets(n)
    rows = m + offs
    xi = lag.points[rows]
    # K^{-t4}(xi, w) = K_{inverse}(w, xi)
    phase = kernel_phase(W.params.inverse(), W.wgrid.points[:, None], xi[None, :], W.convention)
    c, s = np.cos(phase), np.sin(phase)
    Wr = W.values[rows]
    t4 = basis(4)
    h = np.einsum("wi,iwk->ik", c, Wr) + np.einsum("wi,iwk->ik", s, oct_mul(Wr, t4))
    h *= W.params.amplitude * W.wgrid.step
    return SampledSignal1D(even_subgrid(W.tgrid), oct_mul(h, ginv))


def plancherel_check_1d(
    f: SampledSignal1D,
    g: SampledSignal1D,
    params: UnimodularParams,
    wgrid: Grid1D | None = None,
    tol: float = 0.01,
) -> InequalityReport:
    """``||W||^2`` against ``||f||^2 ||g||^2``; also reports the ``2 pi |b|``-scaled ratio."""
    W = wdol_1d(f, g, params, wgrid)
    lhs = W.norm2()
    rhs = f.norm2() * g.norm2()
    scale = 2.0 * np.pi * abs(params.b)
    return InequalityReport(
        "plancherel-1d",
        lhs,
        rhs,
        relation="eq",
        tol=tol,
        meta={
            "ratio_unscaled": lhs / rhs if rhs else None,
            "ratio_scaled_2pi_b": scale * lhs / rhs if rhs else None,
            "scale_2pi_b": scale,
        },
    )


# --- 3-D ----------------------------------------------------------------------


@dataclass(frozen=True)
class WdolField3D:
    tgrid: Grid3D
    wgrid: Grid3D
    values: np.ndarray
    params: tuple[UnimodularParams, UnimodularParams, UnimodularParams]
    convention: str = "bracket"

    def __post_init__(self):
        if self.values.shape != self.tgrid.shape + self.wgrid.shape + (8,):
            raise ValueError("field shape does not match its grids")

    @property
    def lag_grid(self) -> Grid3D:
        return self.tgrid.lag_grid()

    @property
    def measure(self) -> float:
        return self.tgrid.cell * self.wgrid.cell

    def norm2(self) -> float:
        return float(np.sum(oct_norm2(self.values)) * self.measure)

    def magnitude(self) -> np.ndarray:
        return np.sqrt(oct_norm2(self.values))


def _wdol_slab(f, g, params, wgrid, convention, i1, units=(1, 2, 4)):
    h = correlation_3d_slab(f, g, i1)
    W = olct_3d_values(h, f.grid.lag_grid(), params, wgrid, offset=2, units=units, convention=convention)
    return h, W


def iter_wdol_3d(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    convention: str = "bracket",
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(t1_index, h_slab, W_slab)`` one first-time-index slab at a time.

    ``h_slab`` has shape ``(n_t2, n_t3, n_x1, n_x2, n_x3, 8)`` and ``W_slab``
    ``(n_t2, n_t3, n_w1, n_w2, n_w3, 8)``.  Keeps memory at one slab for large grids.
    """
    if f.grid != g.grid:
        raise GridMismatchError("f and g must share a grid")
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    workers = max_workers()
    n1 = f.grid.shape[0]
    for start in range(0, n1, workers):
        batch = range(start, min(n1, start + workers))
        for i1, (h, W) in zip(batch, _map_ordered(lambda i: _wdol_slab(f, g, params, wgrid, convention, i), batch)):
            yield i1, h, W


def wdol_3d(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    convention: str = "bracket",
) -> WdolField3D:
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    out = np.empty(f.grid.shape + wgrid.shape + (8,))
    for i1, _, W in iter_wdol_3d(f, g, params, wgrid, convention):
        out[i1] = W
    return WdolField3D(f.grid, wgrid, out, params, convention)


def reconstruct_3d(
    W: WdolField3D,
    g: SampledSignal3D,
    eps_g: float = 1e-10,
    kernel: str = "inverse",
) -> SampledSignal3D:
    """Recover ``f`` at even-offset samples.

    ``kernel="inverse"`` right-applies ``K_{inv 3}(w3, y3) K_{inv 2}(w2, y2)
    K_{inv 1}(w1, y1)``, i.e. ``conj(K_k(y_k, w_k))``.  ``kernel="swapped"``
    applies ``conj(K_k(w_k, y_k))`` with the arguments swapped; the two agree
    only when ``a_k == d_k``.
    """
    if g.grid != W.tgrid:
        raise GridMismatchError("window grid must equal the field's time grid")
    ginv = _origin_inverse(g, eps_g)
    lag = W.lag_grid
    offs = [representable_offsets(gr.n) for gr in W.tgrid.axes]
    rows = [gr.half + o for gr, o in zip(W.tgrid.axes, offs)]
    if kernel == "inverse":
        params = W.params
    elif kernel == "swapped":
        # conj(K_L(w, y)) == K_{L^-1}(y, w) with L^-1 = (d, -b, -c, a); the inverse
        # routine evaluates K_{P^-1}(w, y), so P^-1 must be (a, -b, ., d).
        params = tuple(UnimodularParams(p.d, p.b, p.c, p.a) for p in W.params)
    else:
        raise ValueError("kernel must be 'inverse' or 'swapped'")
    out = np.empty(tuple(len(r) for r in rows) + (8,))
    for a, i1 in enumerate(rows[0]):
        inv = olct_3d_inv_values(W.values[i1], W.wgrid, params, lag, offset=2, convention=W.convention)
        for b_, i2 in enumerate(rows[1]):
            for c_, i3 in enumerate(rows[2]):
                out[a, b_, c_] = inv[i2, i3, i1, i2, i3]
    sub = Grid3D(tuple(even_subgrid(gr) for gr in W.tgrid.axes))
    return SampledSignal3D(sub, oct_mul(out, ginv))


def rayleigh_check_3d(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    tol: float = 0.05,
) -> InequalityReport:
    """``2 pi |b3| ||W||^2`` against ``||f||^2 ||g||^2`` (slab-wise, no full field)."""
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    total = 0.0
    for _, _, W in iter_wdol_3d(f, g, params, wgrid):
        total += float(np.sum(oct_norm2(W)))
    energy = total * f.grid.cell * wgrid.cell
    scale = 2.0 * np.pi * abs(params[2].b)
    rhs = f.norm2() * g.norm2()
    return InequalityReport(
        "rayleigh-3d",
        scale * energy,
        rhs,
        relation="eq",
        tol=tol,
        meta={"wdol_energy": energy, "scale_2pi_b3": scale, "ratio_unscaled": energy / rhs if rhs else None},
    )


def boundary_shell_mask(wgrid: Grid3D) -> np.ndarray:
    """Frequency points within one step of the grid boundary on any axis."""
    masks = []
    for g in wgrid.axes:
        idx = np.arange(g.n)
        masks.append((idx <= 1) | (idx >= g.n - 2))
    return masks[0][:, None, None] | masks[1][None, :, None] | masks[2][None, None, :]


def riemann_lebesgue_decay(W: WdolField3D) -> float:
    """Peak ``|W|`` on the outer frequency shell over the global peak (0 if ``W == 0``)."""
    mag = W.magnitude()
    peak = float(mag.max()) if mag.size else 0.0
    if peak == 0.0:
        return 0.0
    shell = boundary_shell_mask(W.wgrid)
    return float(mag[..., shell].max() / peak)


def riemann_lebesgue_check(W: WdolField3D, tol: float = 0.05) -> InequalityReport:
    ratio = riemann_lebesgue_decay(W)
    return InequalityReport(
        "riemann-lebesgue-3d",
        ratio,
        tol,
        relation="le",
        meta={"degenerate": bool(W.magnitude().max() == 0.0), "w_extent": [g.extent for g in W.wgrid.axes]},
    )


# --- parity decomposition ---------------------------------------------------------

# Basis unit paired with each parity label and the cos/sin pattern of its weight.
PARITY_UNITS = {"eee": 0, "oee": 1, "eoe": 2, "ooe": 3, "eeo": 4, "oeo": 5, "eoo": 6, "ooo": 7}


def _trig_weight(label: str):
    """Label letter ``e`` pairs with cos, ``o`` with sin (the Euler expansion pattern)."""
    return tuple(np.cos if ch == "e" else np.sin for ch in label)


def _real_axis(values, ax, mat, weight):
    u = np.moveaxis(values, ax, 0)
    return np.moveaxis(weight * np.tensordot(mat.T, u, axes=([1], [0])), 0, ax)


def _trig_integral(h, lag: Grid3D, wgrid: Grid3D, params, label, offset, convention):
    out = h
    for k, fn in enumerate(_trig_weight(label)):
        g, wg, p = lag.axes[k], wgrid.axes[k], params[k]
        th = kernel_phase(p, g.points[:, None], wg.points[None, :], convention)
        out = _real_axis(out, offset + k, fn(th), p.amplitude * g.step)
    return out


@dataclass(frozen=True)
class WdolParityComponents:
    """Eight component fields keyed by parity label.

    ``restricted`` marks the form that integrates only the matching parity
    part ``h^{lmn}`` against each trigonometric weight.  Components are
    octonion arrays; they are real-valued exactly when ``h`` is.
    """

    tgrid: Grid3D
    wgrid: Grid3D
    components: dict[str, np.ndarray] = field(repr=False)
    restricted: bool = True

    def recombine(self, fold: bool | None = None) -> np.ndarray:
        """Sum the components times their units.

        ``fold=False`` right-multiplies the single unit ``t_unit(lmn)``;
        ``fold=True`` right-multiplies the per-axis units one at a time
        (``((W t1) t2) t4`` for ``ooo``), which is what the left-folded kernel
        produces for octonion-valued ``h``.  The two agree when ``h`` is real.
        Defaults to folding for the unrestricted form only.
        """
        if fold is None:
            fold = not self.restricted
        total = 0.0
        for k in PARITY_LABELS:
            term = self.components[k]
            if fold:
                for ch, unit in zip(k, (1, 2, 4)):
                    if ch == "o":
                        term = oct_mul(term, basis(unit))
            else:
                term = oct_mul(term, basis(PARITY_UNITS[k]))
            total = total + term
        return total


def parity_components_3d(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    restricted: bool = True,
    convention: str = "bracket",
) -> WdolParityComponents:
    """Component ``lmn`` is ``A * sum_x h^{lmn}_t(x) w_1 w_2 w_3`` with cos/sin weights.

    With ``restricted=False`` the whole ``h_t`` is integrated against each
    weight instead of its matching parity part; with folded units that form
    recombines to the WDOL exactly for any kernel phase and any octonion ``h``.
    """
    if f.grid != g.grid:
        raise GridMismatchError("f and g must share a grid")
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    lag = f.grid.lag_grid()
    comps = {k: np.empty(f.grid.shape + wgrid.shape + (8,)) for k in PARITY_LABELS}
    for i1 in range(f.grid.shape[0]):
        h = correlation_3d_slab(f, g, i1)
        parts = parity_parts(h, spatial_axes=(2, 3, 4)) if restricted else None
        for label in PARITY_LABELS:
            src = parts[label] if restricted else h
            comps[label][i1] = _trig_integral(src, lag, wgrid, params, label, 2, convention)
    return WdolParityComponents(f.grid, wgrid, comps, restricted)


# --- relation to quaternion Wigner distributions ---------------------------------


@dataclass(frozen=True)
class QuaternionSplitTerms:
    """Per-point squared magnitudes of the quaternion-path terms.

    ``four_term``: ``|T1|^2 + |T2|^2 + |T3|^2 + |T4|^2`` from the parity-split
    quaternion transforms.  ``exact``: ``|E1|^2 + |E2|^2`` with
    ``W = E1 + E2 t4``; equals ``|W|^2`` identically.
    """

    wdol2: np.ndarray
    four_term: np.ndarray
    exact: np.ndarray


def _quaternion_part(h, hat: bool):
    out = np.zeros_like(h)
    out[..., :4] = h[..., 4:] if hat else h[..., :4]
    return out


def wdqlct_split_terms(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    convention: str = "bracket",
) -> QuaternionSplitTerms:
    """Evaluate both quaternion decompositions of ``|W|^2`` on the full grid.

    With ``h = h~ + h^ t4``, ``U = h~ K1 K2`` and ``V = h^ conj(K1) conj(K2)``
    (quaternion transforms over x1, x2), the WDOL is
    ``A3 [int (c3 U - s3 V) dx3] + A3 [int (s3 U + c3 V) dx3] t4``.
    """
    if f.grid != g.grid:
        raise GridMismatchError("f and g must share a grid")
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    lag = f.grid.lag_grid()
    p1, p2, p3 = params
    th = [kernel_phase(p, gr.points[:, None], wg.points[None, :], convention) for p, gr, wg in zip(params, lag.axes, wgrid.axes)]
    w1 = p1.amplitude * lag.axes[0].step
    w2 = p2.amplitude * lag.axes[1].step
    w3 = p3.amplitude * lag.axes[2].step
    c3, s3 = np.cos(th[2]), np.sin(th[2])
    shape = f.grid.shape + wgrid.shape
    wd2 = np.empty(shape)
    four_term = np.empty(shape)
    exact = np.empty(shape)

    def q12(x, conj):
        sgn = -1.0 if conj else 1.0
        y = apply_axis(x, 2, sgn * th[0], w1, 1)
        return apply_axis(y, 3, sgn * th[1], w2, 2)

    def x3(x, mat):
        return _real_axis(x, 4, mat, w3)

    for i1 in range(f.grid.shape[0]):
        h = correlation_3d_slab(f, g, i1)
        W = olct_3d_values(h, lag, params, wgrid, offset=2, convention=convention)
        wd2[i1] = oct_norm2(W)
        ht, hh = _quaternion_part(h, False), _quaternion_part(h, True)
        U, V = q12(ht, False), q12(hh, True)
        e1 = x3(U, c3) - x3(V, s3)
        e2 = x3(U, s3) + x3(V, c3)
        exact[i1] = oct_norm2(e1) + oct_norm2(e2)
        flip = lambda a: np.flip(a, axis=4)
        Ue, Uo = 0.5 * (U + flip(U)), 0.5 * (U - flip(U))
        Ve, Vo = 0.5 * (V + flip(V)), 0.5 * (V - flip(V))
        four_term[i1] = oct_norm2(x3(Ue, c3)) + oct_norm2(x3(Vo, s3)) + oct_norm2(x3(Ve, c3)) + oct_norm2(x3(Uo, s3))
    return QuaternionSplitTerms(wd2, four_term, exact)


def _peak_relative(a: np.ndarray, b: np.ndarray) -> float:
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    diff = float(np.max(np.abs(a - b))) if a.size else 0.0
    if scale == 0.0:
        return diff
    return diff / scale


def wdqlct_split_check(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    tol: float = 1e-10,
) -> InequalityReport:
    """Max deviation of the four-term quaternion split from ``|W|^2``.

    Deviations are relative to the peak of ``|W|^2``.  ``lhs`` is the
    four-term form; ``meta`` also carries the exact two-term form and the
    deviation of the totals integrated over ``(t, w)``.
    """
    terms = wdqlct_split_terms(f, g, params, wgrid)
    dev = _peak_relative(terms.wdol2, terms.four_term)
    total = float(terms.wdol2.sum())
    return InequalityReport(
        "wdqlct-split",
        dev,
        tol,
        relation="le",
        meta={
            "exact_form_deviation": _peak_relative(terms.wdol2, terms.exact),
            "integrated_relative_deviation": abs(total - float(terms.four_term.sum())) / total if total else 0.0,
        },
    )


# --- relation to the real-axis (t1-only) Wigner distribution -------------------------


def wdlct_field(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D,
    convention: str = "bracket",
) -> np.ndarray:
    """3-D Wigner distribution whose three kernels all use the unit ``t1``."""
    params = _check_params3(params)
    out = np.empty(f.grid.shape + wgrid.shape + (8,))
    for i1 in range(f.grid.shape[0]):
        _, out[i1] = _wdol_slab(f, g, params, wgrid, convention, i1, units=(1, 1, 1))
    return out


def wdlct_combination(f, g, params, wgrid, convention: str = "bracket") -> np.ndarray:
    """Combine four sign-flipped ``t1``-only fields with ``t3`` and ``t5`` factors.

    ``P = (Wa + Wb)/2 + ((Wb - Wa)/2) t3`` over ``(L1, L2, L3) / (L1, L2', L3)``,
    ``Q`` likewise with ``L3'``, result ``(P + Q)/2 + ((P - Q)/2) t5``.
    """
    p1, p2, p3 = _check_params3(params)
    t3, t5 = basis(3), basis(5)
    Wa = wdlct_field(f, g, (p1, p2, p3), wgrid, convention)
    Wb = wdlct_field(f, g, (p1, p2.flipped(), p3), wgrid, convention)
    Wc = wdlct_field(f, g, (p1, p2, p3.flipped()), wgrid, convention)
    Wd = wdlct_field(f, g, (p1, p2.flipped(), p3.flipped()), wgrid, convention)
    P = 0.5 * (Wa + Wb) + oct_mul(0.5 * (Wb - Wa), t3)
    Q = 0.5 * (Wc + Wd) + oct_mul(0.5 * (Wd - Wc), t3)
    return 0.5 * (P + Q) + oct_mul(0.5 * (P - Q), t5)


def wdlct_relation_check(
    f: SampledSignal3D,
    g: SampledSignal3D,
    params: Sequence[UnimodularParams],
    wgrid: Grid3D | None = None,
    tol: float = 1e-10,
) -> InequalityReport:
    """Max deviation of :func:`wdlct_combination` from the WDOL, relative to peak ``|W|``."""
    params = _check_params3(params)
    wgrid = wgrid or default_wdol_grid_3d(f.grid, params)
    W = wdol_3d(f, g, params, wgrid).values
    combo = wdlct_combination(f, g, params, wgrid)
    peak = float(np.sqrt(oct_norm2(W)).max())
    diff = float(np.sqrt(oct_norm2(W - combo)).max())
    return InequalityReport(
        "wdlct-relation",
        diff / peak if peak else diff,
        tol,
        relation="le",
        meta={"peak_wdol": peak, "max_abs_deviation": diff},
    )


# --- export -------------------------------------------------------------------------


def _params_text(params) -> str:
    if isinstance(params, UnimodularParams):
        params = (params,)
    return ";".join(",".join(repr(v) for v in (p.a, p.b, p.c, p.d)) for p in params)


def field_to_csv(W: WdolField1D | WdolField3D, magnitude_only: bool = False) -> str:
    """Rows ``t_indices, w_indices, s0..s7`` (or ``|W|``) after a metadata header.

    The header line lists the time grid, the frequency grid and the
    parameter sets, e.g. ``# t=257,0.05 w=257,0.12 lambda=0.0,1.0,-1.0,0.0``.
    """
    if isinstance(W, WdolField1D):
        taxes, waxes = (W.tgrid,), (W.wgrid,)
    else:
        taxes, waxes = W.tgrid.axes, W.wgrid.axes
    grid_txt = lambda axes: ";".join(f"{g.n},{g.step!r}" for g in axes)
    buf = io.StringIO()
    buf.write(f"# t={grid_txt(taxes)} w={grid_txt(waxes)} lambda={_params_text(W.params)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    shape = tuple(g.n for g in taxes) + tuple(g.n for g in waxes)
    flat = W.values.reshape(-1, 8)
    mags = np.sqrt(oct_norm2(flat))
    for k, idx in enumerate(itertools.product(*(range(n) for n in shape))):
        if magnitude_only:
            writer.writerow([*idx, repr(float(mags[k]))])
        else:
            writer.writerow([*idx, *(repr(float(v)) for v in flat[k])])
    return buf.getvalue()
