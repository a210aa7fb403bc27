"""Desk-scale verification batteries used by ``octowdol verify``.

Each battery returns a list of :class:`InequalityReport`.  Identity checks
are reported as ``deviation <= tolerance``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    MUL_INDEX,
    MUL_SIGN,
    cayley_dickson_table,
    left_fold_product,
    tau4_identities,
    oct_exp_axis,
    oct_mul,
    oct_norm,
)
from .report import InequalityReport
from .signal import (
    Grid1D,
    Grid3D,
    SampledSignal3D,
    SignalSpec,
    correlation_3d,
    make_signal_1d,
    make_signal_3d,
)
from .transforms import (
    UnimodularParams,
    euler_product_expand,
    olct_1d,
    olct_1d_inv,
    olct_3d,
    olct_3d_direct,
    olct_3d_inv,
    oft_1d,
    oft_1d_inv,
)
from .uncertainty import (
    UPConstants,
    hausdorff_young_olct_check,
    hausdorff_young_wdol_report,
    heisenberg_check,
    logarithmic_check,
    spread_sums,
)
from .wigner import (
    default_wdol_grid_3d,
    parity_components_3d,
    wdlct_relation_check,
    wdol_3d,
    wdqlct_split_check,
)

BATTERIES = ("algebra", "transforms", "wigner-identities", "uncertainty", "all")

P = UnimodularParams

# Generic parameter triple: no symmetric a = d, mixed signs of b.
MIXED_PARAMS = (P.from_abd(0.5, 1.2, 1.1), P(0.0, 1.0, -1.0, 0.0), P.from_abd(1.3, -0.8, 0.2))
# |b_k| = 1 everywhere, b_k > 0 so the Heisenberg bound is not trivially negative.
UNIT_B_PARAMS = (P(0.0, 1.0, -1.0, 0.0), P.from_abd(0.3, 1.0, 0.5), P.from_abd(1.2, 1.0, 0.1))
# Non-unit b for runs that supply their own log_b.
GENERAL_PARAMS = (P.from_abd(0.0, 1.5, 0.0), P.from_abd(0.4, 0.8, 0.9), P.from_abd(1.1, 1.25, 0.3))

HOLDER_PS = (1.25, 1.5, 2.0)
GAUSSIAN_WIDTHS = (0.3, 0.4, 0.6)
CHIRPS = ((0.5, 0.5), (1.0, 1.0))


@dataclass(frozen=True)
class BatteryConfig:
    seed: int = 0
    n: int = 257
    n3: int = 5
    unit_b: bool = True
    log_b: float | None = None
    holder_p: float | None = None
    holder_q: float | None = None


def _dev(name: str, deviation: float, tol: float, **meta) -> InequalityReport:
    return InequalityReport(name, deviation, tol, relation="le", meta={"tolerance": tol, **meta})


def _rel_l2(a: np.ndarray, b: np.ndarray) -> float:
    den = float(np.linalg.norm(b))
    return float(np.linalg.norm(a - b)) / den if den else float(np.linalg.norm(a))


def algebra_battery(cfg: BatteryConfig) -> list[InequalityReport]:
    rng = np.random.default_rng(cfg.seed)
    idx, sgn = cayley_dickson_table()
    mismatches = int(np.sum((idx != MUL_INDEX) | (sgn != MUL_SIGN)))
    out = [_dev("table-vs-doubling", mismatches, 0.0, products=64)]

    a, b = rng.standard_normal((2, 10_000, 8))
    lhs = oct_norm(oct_mul(a, b))
    rhs = oct_norm(a) * oct_norm(b)
    out.append(_dev("norm-composition", float(np.max(np.abs(lhs - rhs) / rhs)), 1e-12, pairs=10_000))

    qa, qb = rng.standard_normal((2, 4))
    out.append(_dev("t4-identities", max(tau4_identities(qa, qb).values()), 1e-14))

    th = rng.uniform(-np.pi, np.pi, size=(3, 10_000))
    fold = left_fold_product([oct_exp_axis(1, th[0]), oct_exp_axis(2, th[1]), oct_exp_axis(4, th[2])])
    out.append(_dev("euler-product", float(np.max(np.abs(fold - euler_product_expand(*th)))), 1e-14, triples=10_000))
    return out


def transforms_battery(cfg: BatteryConfig) -> list[InequalityReport]:
    grid = Grid1D(cfg.n, 10.0 / cfg.n)
    f = make_signal_1d(SignalSpec("gaussian"), grid)
    out = []
    F = oft_1d(f)
    out.append(_dev("oft-1d-roundtrip", _rel_l2(oft_1d_inv(F, grid).values, f.values), 1e-3, n=cfg.n))
    p = P.from_abd(0.7, 1.3, 0.4)
    L = olct_1d(f, p)
    out.append(_dev("olct-1d-roundtrip", _rel_l2(olct_1d_inv(L, p, grid).values, f.values), 1e-3, n=cfg.n))

    g3 = Grid3D.cube(17, 0.15)
    f3 = make_signal_3d(SignalSpec("lfm-chirp", width=0.3, alpha=0.5, beta=0.5), g3)
    L3 = olct_3d(f3, MIXED_PARAMS)
    back = olct_3d_inv(L3, MIXED_PARAMS, g3)
    out.append(_dev("olct-3d-roundtrip", _rel_l2(back.values, f3.values), 1e-2, n=17))

    g5 = Grid3D.cube(5, 0.5)
    rng = np.random.default_rng(cfg.seed)
    r = SampledSignal3D(g5, rng.standard_normal((5, 5, 5, 8)))
    sep = olct_3d(r, MIXED_PARAMS)
    direct = olct_3d_direct(r, MIXED_PARAMS, sep.grid)
    out.append(_dev("olct-3d-separable-vs-direct", float(np.max(np.abs(sep.values - direct.values))), 1e-12, n=5))
    return out


def _random_pair(n: int, seed: int) -> tuple[SampledSignal3D, SampledSignal3D]:
    rng = np.random.default_rng(seed)
    grid = Grid3D.cube(n, 0.5)
    return (
        SampledSignal3D(grid, rng.standard_normal((n, n, n, 8))),
        SampledSignal3D(grid, rng.standard_normal((n, n, n, 8))),
    )


def wdol_identity_deviation(f, g, params, t_indices) -> float:
    """Max ``|W(t, w) - L[h_t](w)|`` with ``L`` the brute-force left-folded transform."""
    wgrid = default_wdol_grid_3d(f.grid, params)
    W = wdol_3d(f, g, params, wgrid).values
    worst = 0.0
    for t in t_indices:
        h = correlation_3d(f, g, t)
        L = olct_3d_direct(h, params, wgrid).values
        worst = max(worst, float(np.max(np.abs(W[t] - L))))
    return worst


def wigner_identities_battery(cfg: BatteryConfig) -> list[InequalityReport]:
    f, g = _random_pair(cfg.n3, cfg.seed)
    params = MIXED_PARAMS
    W = wdol_3d(f, g, params).values
    peak = float(np.max(np.abs(W)))
    m = cfg.n3 // 2
    ts = [(m, m, m), (0, m, cfg.n3 - 1), (1, 2, 0)]
    out = [_dev("wdol-equals-olct-of-correlation", wdol_identity_deviation(f, g, params, ts) / peak, 1e-14, n=cfg.n3)]
    restricted = parity_components_3d(f, g, params, restricted=True)
    out.append(_dev("parity-recombination", float(np.max(np.abs(restricted.recombine() - W))) / peak, 1e-12, n=cfg.n3))
    exact = parity_components_3d(f, g, params, restricted=False)
    out.append(
        _dev("parity-recombination-unrestricted", float(np.max(np.abs(exact.recombine() - W))) / peak, 1e-12, n=cfg.n3)
    )
    out.append(wdqlct_split_check(f, g, params))
    out.append(wdlct_relation_check(f, g, params))
    return out


def uncertainty_battery(cfg: BatteryConfig) -> list[InequalityReport]:
    if cfg.unit_b:
        params, log_b = UNIT_B_PARAMS, 0.0
    else:
        if cfg.log_b is None:
            raise ValueError("log_b must be given when the parameters are not unit-|b|")
        params, log_b = GENERAL_PARAMS, cfg.log_b
    ps = (cfg.holder_p,) if cfg.holder_p is not None else HOLDER_PS
    specs = [SignalSpec("gaussian", width=w) for w in GAUSSIAN_WIDTHS]
    specs += [SignalSpec("lfm-chirp", width=0.4, alpha=a, beta=b) for a, b in CHIRPS]
    out = []
    for spec in specs:
        grid = Grid3D.cube(9, spec.width if spec.family == "gaussian" else 0.4)
        f = make_signal_3d(spec, grid)
        tag = f"{spec.family}-w{spec.width:g}" + (f"-a{spec.alpha:g}" if spec.family == "lfm-chirp" else "")
        sums = spread_sums(f, f, params)
        for rep in (
            heisenberg_check(f, f, params, sums=sums),
            logarithmic_check(f, f, params, UPConstants(log_b), sums=sums),
        ):
            out.append(_tagged(rep, tag))
        if spec.family != "gaussian":
            continue
        for p in ps:
            q = cfg.holder_q if cfg.holder_p is not None else None
            consts = UPConstants(log_b, p, q)
            out.append(_tagged(hausdorff_young_olct_check(f, params, consts), f"{tag}-p{p:g}"))
            out.append(_tagged(hausdorff_young_wdol_report(f, f, params, consts.holder_q), f"{tag}-q{consts.holder_q:g}"))
    out.append(e_min_stability(out))
    return out


def _tagged(rep: InequalityReport, tag: str) -> InequalityReport:
    return InequalityReport(f"{rep.name}[{tag}]", rep.lhs, rep.rhs, rep.relation, rep.tol, rep.meta)


def e_min_stability(reports: list[InequalityReport]) -> InequalityReport:
    """Spread ``max / min`` of ``E_min`` per exponent across the Gaussian widths, must stay within 2."""
    by_q: dict[float, list[float]] = {}
    for r in reports:
        if r.name.startswith("hausdorff-young-wdol"):
            by_q.setdefault(r.meta["q"], []).append(r.meta["E_min"])
    spreads = {repr(q): (max(v) / min(v) if min(v) > 0 else math.inf) for q, v in by_q.items()}
    worst = max(spreads.values()) if spreads else 1.0
    return InequalityReport("e-min-stability", worst, 2.0, relation="le", meta={"spread_by_q": spreads})


def run_battery(name: str, cfg: BatteryConfig | None = None) -> list[InequalityReport]:
    cfg = cfg or BatteryConfig()
    runners = {
        "algebra": algebra_battery,
        "transforms": transforms_battery,
        "wigner-identities": wigner_identities_battery,
        "uncertainty": uncertainty_battery,
    }
    if name == "all":
        return [r for key in runners for r in runners[key](cfg)]
    if name not in runners:
        raise ValueError(f"unknown battery {name!r}; choose from {BATTERIES}")
    return runners[name](cfg)
