"""Octonion-valued signals on centered uniform grids.

Grids have an odd number of points ``x_j = (j - (n-1)/2) * step`` so the
origin is always a sample.  The instantaneous correlation
``h_t(x) = f(t + x/2) conj(g(t - x/2))`` is sampled on a lag grid with twice
the signal step, which lands ``t +/- x/2`` on signal samples exactly; reads
outside the signal grid are zero.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from .algebra import oct_conj, oct_exp_axis, oct_mul, oct_norm2, real
from .errors import GridMismatchError, SampleError, SignalFormatError


@dataclass(frozen=True)
class Grid1D:
    """``n`` (odd) points spaced ``step`` apart, centered on zero."""

    n: int
    step: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1 or self.n % 2 == 0:
            raise ValueError(f"grid size must be a positive odd integer, got {self.n}")
        if not np.isfinite(self.step) or self.step <= 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "step", float(self.step))

    @property
    def half(self) -> int:
        return (self.n - 1) // 2

    @property
    def points(self) -> np.ndarray:
        return (np.arange(self.n) - self.half) * self.step

    @property
    def extent(self) -> float:
        """Largest ``|x|`` on the grid."""
        return self.half * self.step

    def lag_grid(self) -> Grid1D:
        """Lag grid used by the correlation: same count, doubled step."""
        return Grid1D(self.n, 2.0 * self.step)


# Frequency grids have the same shape and invariants.
FreqGrid1D = Grid1D


@dataclass(frozen=True)
class Grid3D:
    axes: tuple[Grid1D, Grid1D, Grid1D]

    def __post_init__(self):
        if len(self.axes) != 3 or not all(isinstance(g, Grid1D) for g in self.axes):
            raise ValueError("Grid3D needs three Grid1D axes")
        object.__setattr__(self, "axes", tuple(self.axes))

    @classmethod
    def cube(cls, n: int, step: float) -> Grid3D:
        g = Grid1D(n, step)
        return cls((g, g, g))

    @property
    def shape(self) -> tuple[int, int, int]:
        return tuple(g.n for g in self.axes)

    @property
    def cell(self) -> float:
        """Volume element, the product of the steps."""
        return float(np.prod([g.step for g in self.axes]))

    def lag_grid(self) -> Grid3D:
        return Grid3D(tuple(g.lag_grid() for g in self.axes))

    def mesh(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(np.meshgrid(*(g.points for g in self.axes), indexing="ij"))

    def radius(self) -> np.ndarray:
        """Euclidean distance to the origin at every grid point."""
        x1, x2, x3 = self.mesh()
        return np.sqrt(x1**2 + x2**2 + x3**2)


FreqGrid3D = Grid3D


def _check_values(values: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    # Copy so freezing the samples never touches the caller's array.
    values = np.array(values, dtype=float)
    if values.shape != shape + (8,):
        raise ValueError(f"values shape {values.shape} does not match grid {shape + (8,)}")
    bad = ~np.isfinite(values).all(axis=-1)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise SampleError(f"non-finite sample at grid index {idx if len(idx) > 1 else idx[0]}")
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class SampledSignal1D:
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values, (self.grid.n,)))

    def norm2(self) -> float:
        """Discrete squared L2 norm."""
        return float(np.sum(oct_norm2(self.values)) * self.grid.step)

    def at_origin(self) -> np.ndarray:
        return self.values[self.grid.half]


@dataclass(frozen=True)
class SampledSignal3D:
    grid: Grid3D
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values, self.grid.shape))

    def norm2(self) -> float:
        return float(np.sum(oct_norm2(self.values)) * self.grid.cell)

    def at_origin(self) -> np.ndarray:
        return self.values[tuple(g.half for g in self.grid.axes)]


def norm_p(values: np.ndarray, cell: float, p: float) -> float:
    """Discrete ``L^p`` norm of octonion samples with volume element ``cell``."""
    mags = np.sqrt(oct_norm2(values))
    return float((np.sum(mags**p) * cell) ** (1.0 / p))


def inner_product(f: SampledSignal3D, g: SampledSignal3D) -> float:
    """Real part of the discrete inner product, ``sum <f, g> * cell``."""
    if f.grid != g.grid:
        raise GridMismatchError("inner product needs a shared grid")
    return float(np.sum(f.values * g.values) * f.grid.cell)


# --- sampling ---------------------------------------------------------------


def sample_1d(func: Callable[[float], np.ndarray], grid: Grid1D) -> SampledSignal1D:
    """Evaluate ``func`` (returning a length-8 octonion) at each grid point."""
    vals = np.empty((grid.n, 8))
    for j, x in enumerate(grid.points):
        v = np.asarray(func(float(x)), dtype=float)
        if not np.isfinite(v).all():
            raise SampleError(f"non-finite sample at grid index {j}")
        vals[j] = v
    return SampledSignal1D(grid, vals)


def sample_3d(func: Callable[[float, float, float], np.ndarray], grid: Grid3D) -> SampledSignal3D:
    vals = np.empty(grid.shape + (8,))
    pts = [g.points for g in grid.axes]
    for idx in itertools.product(*(range(n) for n in grid.shape)):
        x = tuple(float(pts[k][idx[k]]) for k in range(3))
        v = np.asarray(func(*x), dtype=float)
        if not np.isfinite(v).all():
            raise SampleError(f"non-finite sample at grid index {idx}")
        vals[idx] = v
    return SampledSignal3D(grid, vals)


# --- instantaneous correlation -----------------------------------------------


def _shift_pairs(n: int, t_index: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For lag offsets k = -m..m, signal indices t+k, t-k and an in-range mask."""
    m = (n - 1) // 2
    k = np.arange(-m, m + 1)
    up, down = t_index + k, t_index - k
    ok = (up >= 0) & (up < n) & (down >= 0) & (down < n)
    return np.clip(up, 0, n - 1), np.clip(down, 0, n - 1), ok


def correlation_1d(f: SampledSignal1D, g: SampledSignal1D, t_index: int) -> SampledSignal1D:
    """``h_t(x) = f(t + x/2) conj(g(t - x/2))`` on the doubled-step lag grid."""
    if f.grid != g.grid:
        raise GridMismatchError("correlation needs f and g on the same grid")
    n = f.grid.n
    if not 0 <= t_index < n:
        raise IndexError(f"t_index {t_index} outside 0..{n - 1}")
    up, down, ok = _shift_pairs(n, t_index)
    h = oct_mul(f.values[up], oct_conj(g.values[down]))
    h[~ok] = 0.0
    return SampledSignal1D(f.grid.lag_grid(), h)


def correlation_1d_all(f: SampledSignal1D, g: SampledSignal1D) -> np.ndarray:
    """Correlation for every ``t`` on the signal grid, shape ``(n_t, n_lag, 8)``."""
    if f.grid != g.grid:
        raise GridMismatchError("correlation needs f and g on the same grid")
    return np.stack([correlation_1d(f, g, i).values for i in range(f.grid.n)])


def correlation_3d(f: SampledSignal3D, g: SampledSignal3D, t_index: tuple[int, int, int]) -> SampledSignal3D:
    """Per-axis extension of :func:`correlation_1d`."""
    if f.grid != g.grid:
        raise GridMismatchError("correlation needs f and g on the same grid")
    if len(t_index) != 3:
        raise ValueError("t_index must be a triple")
    ups, downs, oks = [], [], []
    for ax, (gr, ti) in enumerate(zip(f.grid.axes, t_index)):
        if not 0 <= ti < gr.n:
            raise IndexError(f"t_index[{ax}]={ti} outside 0..{gr.n - 1}")
        u, d, o = _shift_pairs(gr.n, ti)
        ups.append(u)
        downs.append(d)
        oks.append(o)
    fu = f.values[np.ix_(*ups)]
    gd = g.values[np.ix_(*downs)]
    h = oct_mul(fu, oct_conj(gd))
    mask = oks[0][:, None, None] & oks[1][None, :, None] & oks[2][None, None, :]
    h[~mask] = 0.0
    return SampledSignal3D(f.grid.lag_grid(), h)


def correlation_3d_slab(f: SampledSignal3D, g: SampledSignal3D, t1_index: int) -> np.ndarray:
    """Correlations for every ``t`` with first index ``t1_index``.

    Shape ``(n_t2, n_t3, n_x1, n_x2, n_x3, 8)``.
    """
    if f.grid != g.grid:
        raise GridMismatchError("correlation needs f and g on the same grid")
    n1, n2, n3 = f.grid.shape
    out = np.empty((n2, n3, n1, n2, n3, 8))
    for i2 in range(n2):
        for i3 in range(n3):
            out[i2, i3] = correlation_3d(f, g, (t1_index, i2, i3)).values
    return out


# --- decompositions -----------------------------------------------------------


def quat_components(f: SampledSignal3D) -> tuple[SampledSignal3D, SampledSignal3D]:
    """Pointwise split ``f = tilde + hat * t4``; both parts quaternion-valued."""
    tilde = np.zeros_like(f.values)
    hat = np.zeros_like(f.values)
    tilde[..., :4] = f.values[..., :4]
    hat[..., :4] = f.values[..., 4:]
    return SampledSignal3D(f.grid, tilde), SampledSignal3D(f.grid, hat)


def _reflect(values: np.ndarray, axes: Iterable[int]) -> np.ndarray:
    return np.flip(values, axis=tuple(axes))


def even_odd_split_x3(f: SampledSignal3D) -> tuple[SampledSignal3D, SampledSignal3D]:
    """Even and odd parts with respect to the third coordinate."""
    r = _reflect(f.values, [2])
    return SampledSignal3D(f.grid, 0.5 * (f.values + r)), SampledSignal3D(f.grid, 0.5 * (f.values - r))


PARITY_LABELS = tuple("".join(p) for p in itertools.product("eo", repeat=3))


def parity_parts(values: np.ndarray, spatial_axes: tuple[int, int, int] = (0, 1, 2)) -> dict[str, np.ndarray]:
    """Eight parity components of an array over the three given axes.

    Component ``lmn`` is even/odd in each axis per its letters.  The axes
    must be sampled symmetrically about zero so reflection is an index flip.
    """
    out = {}
    for label in PARITY_LABELS:
        acc = np.zeros_like(values)
        # (1/8) sum over reflections R of sign(R) * values(R x)
        for flips in itertools.product((False, True), repeat=3):
            axes = [spatial_axes[k] for k in range(3) if flips[k]]
            sign = 1.0
            for k in range(3):
                if flips[k] and label[k] == "o":
                    sign = -sign
            acc += sign * (np.flip(values, axis=tuple(axes)) if axes else values)
        out[label] = acc / 8.0
    return out


@dataclass(frozen=True)
class ParityOctet:
    """Eight components of a 3-D signal keyed ``eee``, ``eeo``, ..., ``ooo``."""

    components: dict[str, SampledSignal3D]

    def __getitem__(self, label: str) -> SampledSignal3D:
        return self.components[label]

    def total(self) -> np.ndarray:
        return sum(self.components[k].values for k in PARITY_LABELS)


def parity_split_8(f: SampledSignal3D) -> ParityOctet:
    parts = parity_parts(f.values)
    return ParityOctet({k: SampledSignal3D(f.grid, v) for k, v in parts.items()})


# --- signal families ----------------------------------------------------------

SIGNAL_FAMILIES = ("gaussian", "lfm-chirp", "random-smooth")


@dataclass(frozen=True)
class SignalSpec:
    """A named test-signal family.

    ``width`` is the standard deviation of the Gaussian envelope
    ``exp(-|x|^2 / (2 width^2))``; ``exp(-pi x^2)`` has width ``1/sqrt(2 pi)``.
    The chirp is ``amplitude * exp(t4 (alpha |x|^2 + beta sum(x))) * envelope``.
    """

    family: str = "gaussian"
    width: float = 1.0 / np.sqrt(2.0 * np.pi)
    alpha: float = 0.0
    beta: float = 0.0
    amplitude: tuple[float, ...] = (1.0, 0, 0, 0, 0, 0, 0, 0)
    seed: int = 0
    bumps: int = 3

    def __post_init__(self):
        if self.family not in SIGNAL_FAMILIES:
            raise ValueError(f"unknown signal family {self.family!r}; choose from {SIGNAL_FAMILIES}")
        if not self.width > 0:
            raise ValueError("width must be positive")
        if len(self.amplitude) != 8:
            raise ValueError("amplitude needs eight octonion coefficients")


def _check_support(spec: SignalSpec, extent: float) -> None:
    if 4.0 * spec.width > extent * (1 + 1e-12):
        raise ValueError(
            f"signal not grid-supported: 4 widths ({4 * spec.width:g}) exceed grid extent {extent:g}"
        )


def _family_values(spec: SignalSpec, coords: list[np.ndarray]) -> np.ndarray:
    r2 = sum(c**2 for c in coords)
    amp = np.asarray(spec.amplitude, dtype=float)
    if spec.family == "gaussian":
        env = np.exp(-r2 / (2 * spec.width**2))
        return env[..., None] * amp
    if spec.family == "lfm-chirp":
        env = np.exp(-r2 / (2 * spec.width**2))
        phase = spec.alpha * r2 + spec.beta * sum(coords)
        return oct_mul(amp, oct_exp_axis(4, phase)) * env[..., None]
    rng = np.random.default_rng(spec.seed)
    out = np.zeros(coords[0].shape + (8,))
    for _ in range(spec.bumps):
        center = rng.uniform(-spec.width, spec.width, size=len(coords))
        coeff = rng.normal(size=8)
        d2 = sum((c - c0) ** 2 for c, c0 in zip(coords, center))
        out += np.exp(-d2 / (2 * spec.width**2))[..., None] * coeff
    return out


def make_signal_1d(spec: SignalSpec, grid: Grid1D) -> SampledSignal1D:
    _check_support(spec, grid.extent)
    return SampledSignal1D(grid, _family_values(spec, [grid.points]))


def make_signal_3d(spec: SignalSpec, grid: Grid3D) -> SampledSignal3D:
    for g in grid.axes:
        _check_support(spec, g.extent)
    return SampledSignal3D(grid, _family_values(spec, list(grid.mesh())))


# --- CSV ----------------------------------------------------------------------


def _fmt(x: float) -> str:
    return repr(float(x))


def signal_to_csv(sig: SampledSignal1D | SampledSignal3D) -> str:
    """Serialize to ``# n,step[,n2,step2,n3,step3]`` then one row per point."""
    buf = io.StringIO()
    axes = (sig.grid,) if isinstance(sig, SampledSignal1D) else sig.grid.axes
    buf.write("# " + ",".join(f"{g.n},{_fmt(g.step)}" for g in axes) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    shape = tuple(g.n for g in axes)
    flat = sig.values.reshape(-1, 8)
    for row, idx in zip(flat, itertools.product(*(range(n) for n in shape))):
        w.writerow([*idx, *(_fmt(v) for v in row)])
    return buf.getvalue()


def signal_from_csv(text: str) -> SampledSignal1D | SampledSignal3D:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise SignalFormatError("missing '# n,step' header")
    try:
        head = [h.strip() for h in lines[0][1:].split(",")]
        if len(head) not in (2, 6):
            raise SignalFormatError(f"header must carry 1 or 3 (n,step) pairs, got {len(head)} fields")
        axes = [Grid1D(int(head[i]), float(head[i + 1])) for i in range(0, len(head), 2)]
        dim = len(axes)
        shape = tuple(g.n for g in axes)
        vals = np.full(shape + (8,), np.nan)
        seen = np.zeros(shape, dtype=bool)
        for lineno, row in enumerate(csv.reader(lines[1:]), start=2):
            if not row:
                continue
            if len(row) != dim + 8:
                raise SignalFormatError(f"line {lineno}: expected {dim + 8} fields, got {len(row)}")
            idx = tuple(int(v) for v in row[:dim])
            if any(not 0 <= i < n for i, n in zip(idx, shape)):
                raise SignalFormatError(f"line {lineno}: index {idx} outside grid")
            vals[idx] = [float(v) for v in row[dim:]]
            seen[idx] = True
    except (ValueError, IndexError) as exc:
        if isinstance(exc, SignalFormatError):
            raise
        raise SignalFormatError(str(exc)) from exc
    if not seen.all():
        raise SignalFormatError("signal file does not cover every grid point")
    if dim == 1:
        return SampledSignal1D(axes[0], vals)
    return SampledSignal3D(Grid3D(tuple(axes)), vals)


def write_signal(sig, path: str | Path) -> None:
    Path(path).write_text(signal_to_csv(sig))


def read_signal(path: str | Path):
    return signal_from_csv(Path(path).read_text())


def constant_signal_1d(grid: Grid1D, value: float = 1.0) -> SampledSignal1D:
    return SampledSignal1D(grid, real(np.full(grid.n, value)))
