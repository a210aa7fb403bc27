import numpy as np
import pytest

from octowdol.algebra import oct_norm2, real
from octowdol.errors import GridMismatchError, ReconstructionError
from octowdol.signal import (
    Grid1D,
    Grid3D,
    SampledSignal1D,
    SampledSignal3D,
    SignalSpec,
    correlation_3d,
    make_signal_1d,
    make_signal_3d,
    sample_1d,
    sample_3d,
)
from octowdol.transforms import UnimodularParams as P, olct_3d_direct
from octowdol.wigner import (
    WdolField3D,
    default_wdol_grid,
    default_wdol_grid_3d,
    even_index_values,
    field_to_csv,
    iter_wdol_3d,
    parity_components_3d,
    plancherel_check_1d,
    rayleigh_check_3d,
    reconstruct_1d,
    reconstruct_3d,
    riemann_lebesgue_check,
    riemann_lebesgue_decay,
    wdlct_combination,
    wdol_1d,
    wdol_1d_via_oft,
    wdol_3d,
    wdqlct_split_terms,
)

FOURIER = P(0, 1, -1, 0)
MIXED = (P.from_abd(0.5, 1.2, 1.1), P(0, 1, -1, 0), P.from_abd(1.3, -0.8, 0.2))


def gauss1(n=129, step=0.05):
    return sample_1d(lambda x: real(np.exp(-np.pi * x * x)), Grid1D(n, step))


def gauss3(n=9, step=0.25):
    return sample_3d(lambda a, b, c: real(np.exp(-np.pi * (a * a + b * b + c * c))), Grid3D.cube(n, step))


def rand3(n=5, seed=0, quaternion=False):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, n, n, 8))
    if quaternion:
        v[..., 4:] = 0
    return SampledSignal3D(Grid3D.cube(n, 0.5), v)


def test_gaussian_closed_form_1d():
    # exp(-pi t^2) with itself, Fourier parameters:
    # W = exp(-2 pi t^2) exp(-w^2 / (2 pi)) / sqrt(pi) * (cos(pi/4) - t4 sin(pi/4))
    f = gauss1(257)
    W = wdol_1d(f, f, FOURIER)
    t, w = W.tgrid.points[:, None], W.wgrid.points[None, :]
    amp = np.exp(-2 * np.pi * t * t) * np.exp(-w * w / (2 * np.pi)) / np.sqrt(np.pi)
    assert np.max(np.abs(W.values[..., 0] - amp * np.cos(np.pi / 4))) < 1e-12
    assert np.max(np.abs(W.values[..., 4] + amp * np.sin(np.pi / 4))) < 1e-12
    peak = np.unravel_index(np.argmax(W.magnitude()), W.values.shape[:2])
    assert peak == (128, 128)


def test_wdol_1d_via_oft_matches_for_fourier_parameters():
    f = make_signal_1d(SignalSpec("lfm-chirp", width=0.4, alpha=1.0, beta=1.0), Grid1D(65, 0.05))
    a, b = wdol_1d(f, f, FOURIER), wdol_1d_via_oft(f, f, FOURIER)
    assert np.max(np.abs(a.values - b.values)) < 1e-13
    p = P.from_abd(0.4, 2.0, 0.3)
    c, d = wdol_1d(f, f, p, convention="global"), wdol_1d_via_oft(f, f, p)
    assert np.max(np.abs(c.values - d.values)) < 1e-13


def test_default_wdol_grid_step():
    g = Grid1D(9, 0.25)
    p = P.from_abd(0.2, 1.5, 0.1)
    assert default_wdol_grid(g, p).step == pytest.approx(np.pi * 1.5 / (9 * 0.25))


def test_bilinearity_and_peak_location():
    f = make_signal_1d(SignalSpec("random-smooth", width=0.2, seed=3), Grid1D(33, 0.05))
    g = gauss1(33, 0.05)
    p = P.from_abd(0.7, 1.3, 0.4)
    W = wdol_1d(f, g, p)
    assert np.allclose(wdol_1d(SampledSignal1D(f.grid, 2.5 * f.values), g, p).values, 2.5 * W.values)
    assert np.argmax(wdol_1d(SampledSignal1D(f.grid, 3 * f.values), g, p).magnitude()) == np.argmax(W.magnitude())


def test_plancherel_1d_unscaled():
    f = gauss1(257)
    rep = plancherel_check_1d(f, f, P.from_abd(0.7, 1.3, 0.4))
    assert rep.passed
    assert rep.meta["ratio_unscaled"] == pytest.approx(1.0, abs=1e-10)
    assert rep.meta["ratio_scaled_2pi_b"] == pytest.approx(2 * np.pi * 1.3, rel=1e-10)


def test_reconstruct_1d_exact_on_even_offsets():
    f = make_signal_1d(SignalSpec("lfm-chirp", width=0.3, alpha=1.0, beta=0.5, amplitude=(1, 0.5, 0, 0.2, 0.1, 0, 0, 0.3)), Grid1D(65, 0.05))
    g = gauss1(65, 0.05)
    for p in (FOURIER, P.from_abd(0.7, -1.3, 0.4)):
        r = reconstruct_1d(wdol_1d(f, g, p), g)
        assert r.grid == Grid1D(33, 0.1)
        assert np.max(np.abs(r.values - even_index_values(f))) < 1e-12


def test_reconstruct_requires_window_at_origin():
    f = gauss1(33)
    vals = np.array(f.values)
    vals[16] = 0
    g = SampledSignal1D(f.grid, vals)
    with pytest.raises(ReconstructionError, match="g\\(0\\)"):
        reconstruct_1d(wdol_1d(f, g, FOURIER), g)
    with pytest.raises(GridMismatchError):
        reconstruct_1d(wdol_1d(f, f, FOURIER), gauss1(35))


def test_wdol_3d_matches_direct_transform_of_correlation():
    f, g = rand3(seed=1), rand3(seed=2)
    wgrid = default_wdol_grid_3d(f.grid, MIXED)
    W = wdol_3d(f, g, MIXED, wgrid)
    for t in [(2, 2, 2), (0, 4, 1)]:
        L = olct_3d_direct(correlation_3d(f, g, t), MIXED, wgrid).values
        assert np.max(np.abs(W.values[t] - L)) < 1e-13


def test_wdol_3d_separable_magnitude():
    g3 = gauss3(7, 0.25)
    W3 = wdol_3d(g3, g3, (FOURIER,) * 3)
    g1 = gauss1(7, 0.25)
    m1 = wdol_1d(g1, g1, FOURIER).magnitude()
    prod = m1[:, None, None, :, None, None] * m1[None, :, None, None, :, None] * m1[None, None, :, None, None, :]
    assert np.max(np.abs(W3.magnitude() - prod)) < 1e-14


def test_slab_iteration_thread_cap(monkeypatch):
    f, g = rand3(seed=3), rand3(seed=4)
    ref = wdol_3d(f, g, MIXED).values
    monkeypatch.setenv("OCTO_WDOL_THREADS", "1")
    seen = []
    for i1, h, W in iter_wdol_3d(f, g, MIXED):
        seen.append(i1)
        assert np.array_equal(W, ref[i1])
    assert seen == list(range(5))


def test_reconstruct_3d():
    f = make_signal_3d(SignalSpec("lfm-chirp", width=0.25, alpha=0.5, beta=0.5), Grid3D.cube(9, 0.25))
    g = gauss3(9, 0.25)
    W = wdol_3d(f, g, MIXED)
    r = reconstruct_3d(W, g)
    assert r.grid == Grid3D.cube(5, 0.5)
    assert np.max(np.abs(r.values - even_index_values(f))) < 1e-12
    swapped = reconstruct_3d(W, g, kernel="swapped")
    assert np.max(np.abs(swapped.values - even_index_values(f))) > 1e-2
    zero = SampledSignal3D(f.grid, np.zeros(f.values.shape))
    assert np.max(np.abs(reconstruct_3d(wdol_3d(zero, g, MIXED), g).values)) == 0.0


def test_reconstruct_3d_agrees_with_1d_for_separable_real_signals():
    g3, g1 = gauss3(9, 0.25), gauss1(9, 0.25)
    r3 = reconstruct_3d(wdol_3d(g3, g3, (FOURIER,) * 3), g3)
    r1 = reconstruct_1d(wdol_1d(g1, g1, FOURIER), g1).values[:, 0]
    assert np.allclose(r3.values[..., 0], r1[:, None, None] * r1[None, :, None] * r1[None, None, :], atol=1e-13)


def test_rayleigh_3d():
    f = gauss3()
    rep = rayleigh_check_3d(f, f, MIXED)
    assert rep.meta["ratio_unscaled"] == pytest.approx(1.0, abs=1e-3)
    assert rep.ratio == pytest.approx(2 * np.pi * 0.8 * rep.meta["ratio_unscaled"])
    double = rayleigh_check_3d(SampledSignal3D(f.grid, 2 * f.values), f, MIXED)
    assert double.ratio == pytest.approx(rep.ratio, rel=1e-12)
    zero = SampledSignal3D(f.grid, np.zeros(f.values.shape))
    z = rayleigh_check_3d(zero, f, MIXED)
    assert z.lhs == 0 and z.rhs == 0 and z.passed and z.ratio is None


def test_riemann_lebesgue_decay_shrinks_with_wider_grid():
    f = gauss3(7, 0.25)
    ratios = []
    for step in (1.0, 1.4, 1.8):
        wg = Grid3D.cube(9, step)
        ratios.append(riemann_lebesgue_decay(wdol_3d(f, f, (FOURIER,) * 3, wg)))
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] <= 0.05
    zero = SampledSignal3D(f.grid, np.zeros(f.values.shape))
    Z = wdol_3d(f, zero, (FOURIER,) * 3)
    rep = riemann_lebesgue_check(Z)
    assert rep.lhs == 0.0 and rep.meta["degenerate"]


def test_parity_unrestricted_recombines_exactly():
    f, g = rand3(seed=5), rand3(seed=6)
    W = wdol_3d(f, g, MIXED).values
    comps = parity_components_3d(f, g, MIXED, restricted=False)
    assert np.max(np.abs(comps.recombine() - W)) < 1e-13
    # unfolded units are not enough for octonion-valued correlations
    assert np.max(np.abs(comps.recombine(fold=False) - W)) > 1e-2


def test_parity_unrestricted_real_signals_single_unit():
    rng = np.random.default_rng(7)
    grid = Grid3D.cube(5, 0.5)
    f = SampledSignal3D(grid, np.concatenate([rng.standard_normal((5, 5, 5, 1)), np.zeros((5, 5, 5, 7))], -1))
    W = wdol_3d(f, f, MIXED).values
    comps = parity_components_3d(f, f, MIXED, restricted=False)
    assert np.max(np.abs(comps.recombine(fold=False) - W)) < 1e-13
    assert np.max(np.abs(comps.components["eoo"][..., 1:])) == 0.0


def test_parity_restricted_even_correlation():
    # real even f, g: at t = 0 the correlation is even, so only 'eee' survives
    f = gauss3(5, 0.25)
    comps = parity_components_3d(f, f, MIXED, restricted=True)
    for k, v in comps.components.items():
        if k != "eee":
            assert np.max(np.abs(v[2, 2, 2])) < 1e-15
    assert np.max(np.abs(comps.components["eee"][2, 2, 2])) > 1e-3


def test_quaternion_split_exact_form():
    f, g = rand3(seed=8), rand3(seed=9)
    terms = wdqlct_split_terms(f, g, MIXED)
    assert np.max(np.abs(terms.exact - terms.wdol2)) <= 1e-12 * terms.wdol2.max()
    fq, gq = rand3(seed=10, quaternion=True), rand3(seed=11, quaternion=True)
    tq = wdqlct_split_terms(fq, gq, MIXED)
    assert np.max(np.abs(tq.exact - tq.wdol2)) <= 1e-12 * tq.wdol2.max()
    zero = SampledSignal3D(f.grid, np.zeros(f.values.shape))
    tz = wdqlct_split_terms(f, zero, MIXED)
    assert tz.wdol2.max() == tz.four_term.max() == tz.exact.max() == 0.0


def test_wdlct_combination_zero_window():
    f = rand3(seed=12)
    zero = SampledSignal3D(f.grid, np.zeros(f.values.shape))
    wg = default_wdol_grid_3d(f.grid, MIXED)
    assert np.max(np.abs(wdlct_combination(f, zero, MIXED, wg))) == 0.0


def test_field_csv():
    f = gauss1(9, 0.25)
    W = wdol_1d(f, f, FOURIER)
    full = field_to_csv(W).splitlines()
    assert full[0].startswith("# t=9,0.25 w=9,")
    assert full[0].endswith("lambda=0.0,1.0,-1.0,0.0")
    assert len(full) == 1 + 81 and len(full[1].split(",")) == 10
    mag = field_to_csv(W, magnitude_only=True).splitlines()
    assert len(mag[1].split(",")) == 3
    assert float(mag[41].split(",")[2]) == pytest.approx(np.sqrt(oct_norm2(W.values[4, 4])))
    assert field_to_csv(W) == field_to_csv(wdol_1d(f, f, FOURIER))


def test_field_shape_checked():
    g = Grid3D.cube(3, 1.0)
    with pytest.raises(ValueError):
        WdolField3D(g, g, np.zeros((3, 3, 3, 8)), (FOURIER,) * 3)
