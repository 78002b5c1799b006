"""Scenario engine: end-to-end pipeline and experiment recipes.

A scenario fixes one array architecture (or several, for comparisons), a
channel/pattern parameterization, and an experiment family:

* ``heatmap`` / ``cdf``: one probe user at a time at fixed power, swept over
  grid cells or uniform random locations (optionally assigned to the nearest
  of K optimized beam centers).
* ``single`` and the ``power_sweep`` / ``k_sweep`` / ``mk_sweep`` families:
  the full pipeline - gain matrix, greedy selection, matched-filter
  beamforming folded into the closed form, and bisection power control.
* ``beam_footprint``: K fixed-power beams at explicit centers, evaluated on
  a grid with the strongest beam serving each cell.

Two SINR evaluation modes are exposed: ``noise_limited`` rates links against
receiver noise only, while ``closed_form`` also counts matched-filter
self-interference and inter-beam leakage.  Noise can be taken per-Hz from
the spectral density plus noise figure (``per_hz``) or integrated over the
bandwidth (``integrated``).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .channel import ChannelParams, link_budget, noise_power
from .element_gain import GainPattern, gain_matrix
from .geometry import (
    HALF_WAVELENGTH_M,
    Architecture,
    ArrayGeometry,
    UserField,
    build_cylindrical,
    build_hemispherical,
    build_hybrid,
    build_rectangular,
    geometry_table,
)
from .link_rate import rate, sinr_coefficients
from .power_control import BisectionConfig, max_min_power_coeffs
from .selection import SelectionMatrix, select_greedy

EXPERIMENTS = (
    "single",
    "heatmap",
    "cdf",
    "power_sweep",
    "k_sweep",
    "mk_sweep",
    "beam_footprint",
)
SINR_MODES = ("noise_limited", "closed_form")
NOISE_MODES = ("per_hz", "integrated")
POWER_MODES = ("max_min", "fixed_per_user")
PLACEMENTS = ("uniform", "grid", "explicit")
CDF_MODES = ("single_probe", "beam_assigned")

PROBE_CHUNK = 2000


@dataclass(frozen=True)
class ScenarioConfig:
    """Declarative experiment description with defaults for the urban case."""

    architecture: tuple[str, ...] = ("hemispherical",)
    experiment: str = "single"
    k: int = 16
    m: int = 2650
    m_k: int = 64
    p_haps_w: float = 100.0
    bandwidth_hz: float = 20.0e6
    area_side_m: float = 60000.0
    altitude_m: float = 20000.0
    # geometry shapes
    radius_m: float = 3.0
    rect_rows: int = 50
    rect_cols: int = 53
    cyl_rings: int = 50
    cyl_per_ring: int = 53
    m_cyl: int = 2000
    m_rect: int = 650
    spacing_m: float = HALF_WAVELENGTH_M
    # channel
    f_c_hz: float = 2.0e9
    eta_los_db: float = 1.0
    eta_nlos_db: float = 20.0
    env_a: float = 9.61
    env_b: float = 0.16
    plos_formula: str = "standard"
    noise_mode: str = "per_hz"
    noise_figure_db: float = 7.0
    # element pattern
    theta_3db: float = 25.0
    gamma_max_db: float = 30.0
    # evaluation
    sinr_mode: str = "noise_limited"
    power_mode: str = "max_min"
    power_w: float = 1.0
    m_element_cap: int | None = None
    eta_min: float = 0.0
    eta_max: float = 1500.0
    epsilon: float = 0.01
    # placement / experiment shape
    seed: int = 1
    placement: str = "uniform"
    users_xy: tuple = ()
    grid_n: int = 100
    cdf_count: int = 10000
    cdf_mode: str = "single_probe"
    sweep: tuple = ()
    beam_centers: tuple = ()

    def __post_init__(self):
        arch = self.architecture
        if isinstance(arch, str):
            arch = (arch,)
        arch = tuple(Architecture(a).value for a in arch)
        object.__setattr__(self, "architecture", arch)
        object.__setattr__(self, "users_xy", tuple(map(tuple, self.users_xy)))
        object.__setattr__(self, "beam_centers", tuple(map(tuple, self.beam_centers)))
        object.__setattr__(self, "sweep", tuple(self.sweep))
        _check_in(self.experiment, EXPERIMENTS, "experiment")
        _check_in(self.sinr_mode, SINR_MODES, "sinr_mode")
        _check_in(self.noise_mode, NOISE_MODES, "noise_mode")
        _check_in(self.power_mode, POWER_MODES, "power_mode")
        _check_in(self.placement, PLACEMENTS, "placement")
        _check_in(self.cdf_mode, CDF_MODES, "cdf_mode")
        _positive(self.k, "k")
        _positive(self.m, "m")
        _positive(self.m_k, "m_k")
        _positive(self.p_haps_w, "p_haps_w")
        _positive(self.bandwidth_hz, "bandwidth_hz")
        _positive(self.area_side_m, "area_side_m")
        _positive(self.altitude_m, "altitude_m")
        _positive(self.radius_m, "radius_m")
        _positive(self.spacing_m, "spacing_m")
        _positive(self.power_w, "power_w")
        _positive(self.grid_n, "grid_n")
        _positive(self.cdf_count, "cdf_count")
        if not (0.0 < self.theta_3db <= 180.0):
            raise ValueError("theta_3db must lie in (0, 180]")
        if self.gamma_max_db < 0.0:
            raise ValueError("gamma_max_db must be non-negative")
        if self.m_k > self.m:
            raise ValueError("m_k cannot exceed m")
        if self.sweep and list(self.sweep) != sorted(set(self.sweep)):
            raise ValueError("sweep values must be strictly increasing")
        if self.experiment.endswith("sweep") and not self.sweep:
            raise ValueError("sweep experiments need a non-empty sweep list")
        if self.experiment == "beam_footprint" and not self.beam_centers:
            raise ValueError("beam_footprint needs beam_centers")
        if self.placement == "explicit" and not self.users_xy:
            raise ValueError("explicit placement needs users_xy")

    @property
    def sigma_sq(self) -> float:
        bw = 1.0 if self.noise_mode == "per_hz" else self.bandwidth_hz
        return noise_power(bw, self.noise_figure_db)

    def channel_params(self) -> ChannelParams:
        return ChannelParams(
            f_c=self.f_c_hz,
            eta_los_db=self.eta_los_db,
            eta_nlos_db=self.eta_nlos_db,
            env_a=self.env_a,
            env_b=self.env_b,
            noise_power_w=self.sigma_sq,
            plos_formula=self.plos_formula,
        )

    def pattern(self) -> GainPattern:
        return GainPattern(theta_3db=self.theta_3db, gamma_max_db=self.gamma_max_db)

    def bisection(self) -> BisectionConfig:
        return BisectionConfig(eta_min=self.eta_min, eta_max=self.eta_max, epsilon=self.epsilon)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def config_hash(self) -> str:
        blob = json.dumps(self.as_dict(), sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _check_in(value, allowed, name):
    if value not in allowed:
        raise ValueError(f"{name} must be one of {allowed}, got {value!r}")


def _positive(value, name):
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")


@dataclass
class ScenarioResult:
    """Tabular experiment output plus reproducibility metadata."""

    experiment: str
    seed: int
    config_hash: str
    tables: dict = field(default_factory=dict)  # name -> (columns, rows)
    metadata: dict = field(default_factory=dict)

    def table(self, name):
        return self.tables[name]


def build_geometry(config: ScenarioConfig, architecture: str) -> ArrayGeometry:
    arch = Architecture(architecture)
    if arch is Architecture.HEMISPHERICAL:
        return build_hemispherical(config.m, config.radius_m, config.altitude_m)
    if arch is Architecture.CYLINDRICAL:
        if config.cyl_rings * config.cyl_per_ring != config.m:
            raise ValueError("cyl_rings * cyl_per_ring must equal m")
        return build_cylindrical(
            config.cyl_rings, config.cyl_per_ring,
            spacing=config.spacing_m, altitude=config.altitude_m,
        )
    if arch is Architecture.RECTANGULAR:
        if config.rect_rows * config.rect_cols != config.m:
            raise ValueError("rect_rows * rect_cols must equal m")
        return build_rectangular(
            config.rect_rows, config.rect_cols,
            spacing=config.spacing_m, altitude=config.altitude_m,
        )
    if config.m_cyl + config.m_rect != config.m:
        raise ValueError("m_cyl + m_rect must equal m")
    return build_hybrid(
        config.m_cyl, config.m_rect, cyl_rings=config.cyl_rings,
        spacing=config.spacing_m, altitude=config.altitude_m,
    )


def _uniform_xy(rng: np.random.Generator, count: int, side: float) -> np.ndarray:
    return rng.uniform(-side / 2.0, side / 2.0, size=(count, 2))


def _grid_xy(n: int, side: float) -> np.ndarray:
    axis = np.linspace(-side / 2.0, side / 2.0, n)
    xx, yy = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([xx.ravel(), yy.ravel()])


def _top_mk_stats(gains: np.ndarray, m_k: int):
    """Greedy per-row top-m_k amplitude/power sums (T, S) without the matrix."""
    order = np.argsort(-gains, axis=1, kind="stable")[:, :m_k]
    top = np.take_along_axis(gains, order, axis=1)
    return np.sqrt(top).sum(axis=1), top.sum(axis=1)


def probe_spectral_efficiency(config: ScenarioConfig, architecture: str,
                              xy: np.ndarray) -> np.ndarray:
    """One-probe-at-a-time spectral efficiency (bit/s/Hz) at fixed power.

    Each location is served alone by its m_k best elements at ``power_w``;
    there is no inter-user interference by construction, and the
    ``closed_form`` mode adds the matched-filter self-term.
    """
    geometry = build_geometry(config, architecture)
    pattern = config.pattern()
    params = config.channel_params()
    sigma = config.sigma_sq
    out = np.empty(xy.shape[0])
    for start in range(0, xy.shape[0], PROBE_CHUNK):
        chunk = xy[start:start + PROBE_CHUNK]
        users = UserField(chunk, altitude=config.altitude_m)
        g = gain_matrix(geometry, users, pattern)
        t, s = _top_mk_stats(g, config.m_k)
        beta = link_budget(users, params).beta_sq
        num = config.power_w * beta * t * t / config.m_k
        den = sigma + (
            config.power_w * beta * s / config.m_k
            if config.sinr_mode == "closed_form" else 0.0
        )
        out[start:start + chunk.shape[0]] = np.log2(1.0 + num / den)
    return out


@dataclass
class PipelinePoint:
    """Solved pipeline state for one scenario instance."""

    users: UserField
    selection: SelectionMatrix
    beta_sq: np.ndarray
    p: np.ndarray
    sinr: np.ndarray
    trace: list
    sum_rate_bps: float


def solve_pipeline(config: ScenarioConfig, architecture: str,
                   xy: np.ndarray) -> PipelinePoint:
    """Selection, beamforming-folded SINR coefficients, and power control.

    Steps: per-user element gains, greedy selection, closed-form SINR
    coefficients (matched-filter beamforming is implicit in them), then
    either bisection max-min power control or fixed per-user power.
    """
    geometry = build_geometry(config, architecture)
    users = UserField(xy, altitude=config.altitude_m)
    g = gain_matrix(geometry, users, config.pattern())
    selection = select_greedy(g, config.m_k, config.m_element_cap)
    beta = link_budget(users, config.channel_params()).beta_sq
    a, b = sinr_coefficients(selection, g, beta)
    if config.sinr_mode == "noise_limited":
        b = np.zeros_like(b)
    sigma = config.sigma_sq
    trace = []
    if config.power_mode == "max_min":
        result = max_min_power_coeffs(a, b, sigma, config.p_haps_w, config.bisection())
        p, sinr, trace = result.allocation.p, result.sinr, result.trace
    else:
        p = np.full(users.n_users, config.power_w)
        sinr = a * p / (b @ p + sigma)
    rates = rate(sinr, config.bandwidth_hz)
    return PipelinePoint(
        users=users,
        selection=selection,
        beta_sq=beta,
        p=p,
        sinr=sinr,
        trace=trace,
        sum_rate_bps=float(rates.sum()),
    )


RATE_COLUMNS = (
    "scheme", "sweep_value", "user", "x_m", "y_m",
    "sinr_db", "se_bps_per_hz", "rate_bps", "power_w", "sum_rate_bps",
)


def _rate_rows(scheme, sweep_value, config, point: PipelinePoint):
    se = np.log2(1.0 + point.sinr)
    rows = []
    for k in range(point.users.n_users):
        rows.append(
            (
                scheme,
                sweep_value,
                k,
                point.users.xy[k, 0],
                point.users.xy[k, 1],
                10.0 * math.log10(point.sinr[k]) if point.sinr[k] > 0 else -math.inf,
                se[k],
                se[k] * config.bandwidth_hz,
                point.p[k],
                point.sum_rate_bps,
            )
        )
    return rows


def _placed_users(config: ScenarioConfig, rng: np.random.Generator,
                  count: int) -> np.ndarray:
    if config.placement == "explicit":
        xy = np.asarray(config.users_xy, dtype=float)
        if xy.shape[0] != count:
            raise ValueError(f"explicit placement needs {count} users, got {xy.shape[0]}")
        return xy
    if config.placement == "grid":
        return beam_center_grid(count, config.area_side_m)
    return _uniform_xy(rng, count, config.area_side_m)


def beam_center_grid(k: int, side: float) -> np.ndarray:
    """K beam centers on the smallest square grid covering the area."""
    n = math.ceil(math.sqrt(k))
    axis = (np.arange(n) + 0.5) / n * side - side / 2.0
    xx, yy = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([xx.ravel(), yy.ravel()])[:k]


def run_single(config: ScenarioConfig) -> ScenarioResult:
    rng = np.random.default_rng(config.seed)
    result = _new_result(config)
    sweep_rows, selection_rows, convergence_rows = [], [], []
    xy = _placed_users(config, rng, config.k)  # same user field for every scheme
    for scheme in config.architecture:
        point = solve_pipeline(config, scheme, xy)
        sweep_rows += _rate_rows(scheme, config.p_haps_w, config, point)
        selection_rows += [(scheme, u, e) for u, e in point.selection.pairs()]
        convergence_rows += [
            (scheme, config.p_haps_w, it, lo, hi, int(ok)) for it, lo, hi, ok in point.trace
        ]
        result.metadata[f"sum_rate_bps/{scheme}"] = point.sum_rate_bps
    result.tables["sweep"] = (RATE_COLUMNS, sweep_rows)
    result.tables["selection"] = (("scheme", "user", "element"), selection_rows)
    result.tables["convergence"] = (
        ("scheme", "sweep_value", "iteration", "eta_min", "eta_max", "feasible"),
        convergence_rows,
    )
    return result


def run_heatmap(config: ScenarioConfig) -> ScenarioResult:
    result = _new_result(config)
    xy = _grid_xy(config.grid_n, config.area_side_m)
    rows = []
    for scheme in config.architecture:
        se = probe_spectral_efficiency(config, scheme, xy)
        rows += [
            (scheme, xy[i, 0], xy[i, 1], se[i]) for i in range(xy.shape[0])
        ]
        result.metadata[f"cov/{scheme}"] = float(np.std(se) / np.mean(se))
    result.tables["heatmap"] = (("scheme", "x_m", "y_m", "se_bps_per_hz"), rows)
    return result


def run_cdf(config: ScenarioConfig) -> ScenarioResult:
    result = _new_result(config)
    rows = []
    for scheme in config.architecture:
        rng = np.random.default_rng(config.seed)  # same draw for every scheme
        xy = _uniform_xy(rng, config.cdf_count, config.area_side_m)
        if config.cdf_mode == "single_probe":
            se = probe_spectral_efficiency(config, scheme, xy)
        else:
            se = _beam_assigned_se(config, scheme, xy)
        se = np.sort(se)
        ordinates = np.arange(1, se.size + 1) / se.size
        rows += [(scheme, se[i], ordinates[i]) for i in range(se.size)]
        result.metadata[f"median_se/{scheme}"] = float(np.median(se))
    result.tables["cdf"] = (("scheme", "se_bps_per_hz", "cdf"), rows)
    return result


def _beam_assigned_se(config: ScenarioConfig, scheme: str, xy: np.ndarray) -> np.ndarray:
    """Users served by the nearest of K optimized beam centers."""
    centers = beam_center_grid(config.k, config.area_side_m)
    point = solve_pipeline(config, scheme, centers)
    geometry = build_geometry(config, scheme)
    params = config.channel_params()
    pattern = config.pattern()
    sigma = config.sigma_sq
    mask = point.selection.a.astype(float)  # (K, M)
    counts = point.selection.m_k.astype(float)
    out = np.empty(xy.shape[0])
    for start in range(0, xy.shape[0], PROBE_CHUNK):
        chunk = xy[start:start + PROBE_CHUNK]
        users = UserField(chunk, altitude=config.altitude_m)
        g = gain_matrix(geometry, users, pattern)
        beta = link_budget(users, params).beta_sq
        t_ub = np.sqrt(g) @ mask.T  # (n, K) amplitude sums per beam
        s_ub = g @ mask.T
        d2 = ((chunk[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        assigned = np.argmin(d2, axis=1)
        idx = np.arange(chunk.shape[0])
        num = point.p[assigned] * beta * t_ub[idx, assigned] ** 2 / counts[assigned]
        if config.sinr_mode == "closed_form":
            den = beta * (s_ub / counts[None, :]) @ point.p + sigma
        else:
            den = sigma
        out[start:start + chunk.shape[0]] = np.log2(1.0 + num / den)
    return out


def run_sweep(config: ScenarioConfig) -> ScenarioResult:
    """Rerun the pipeline per sweep value of power (dBm), K, or m_k."""
    result = _new_result(config)
    sweep_rows, convergence_rows = [], []
    base_rng = np.random.default_rng(config.seed)
    base_xy = _placed_users(config, base_rng, config.k)
    for scheme in config.architecture:
        for value in config.sweep:
            cfg, xy = _sweep_instance(config, value, base_xy)
            point = solve_pipeline(cfg, scheme, xy)
            sweep_rows += _rate_rows(scheme, value, cfg, point)
            convergence_rows += [
                (scheme, value, it, lo, hi, int(ok)) for it, lo, hi, ok in point.trace
            ]
            result.metadata[f"sum_rate_bps/{scheme}/{value}"] = point.sum_rate_bps
    result.tables["sweep"] = (RATE_COLUMNS, sweep_rows)
    result.tables["convergence"] = (
        ("scheme", "sweep_value", "iteration", "eta_min", "eta_max", "feasible"),
        convergence_rows,
    )
    return result


def _sweep_instance(config: ScenarioConfig, value, base_xy: np.ndarray):
    if config.experiment == "power_sweep":
        watts = 10.0 ** ((value - 30.0) / 10.0)  # sweep values in dBm
        return replace(config, p_haps_w=watts), base_xy
    if config.experiment == "mk_sweep":
        return replace(config, m_k=int(value)), base_xy
    if config.experiment == "k_sweep":
        k = int(value)
        rng = np.random.default_rng((config.seed, k))
        return replace(config, k=k), _uniform_xy(rng, k, config.area_side_m)
    raise ValueError(f"{config.experiment} is not a sweep experiment")


def run_beam_footprint(config: ScenarioConfig) -> ScenarioResult:
    """Fixed-power beams at explicit centers, mapped over the area grid."""
    result = _new_result(config)
    centers = np.asarray(config.beam_centers, dtype=float)
    fixed = replace(
        config,
        power_mode="fixed_per_user",
        k=centers.shape[0],
        placement="explicit",
        users_xy=tuple(map(tuple, centers)),
    )
    xy = _grid_xy(config.grid_n, config.area_side_m)
    rows = []
    for scheme in config.architecture:
        point = solve_pipeline(fixed, scheme, centers)
        se = _footprint_se(fixed, scheme, point, xy)
        rows += [(scheme, xy[i, 0], xy[i, 1], se[i]) for i in range(xy.shape[0])]
    result.tables["heatmap"] = (("scheme", "x_m", "y_m", "se_bps_per_hz"), rows)
    return result


def _footprint_se(config, scheme, point: PipelinePoint, xy: np.ndarray) -> np.ndarray:
    geometry = build_geometry(config, scheme)
    params = config.channel_params()
    pattern = config.pattern()
    sigma = config.sigma_sq
    mask = point.selection.a.astype(float)
    counts = point.selection.m_k.astype(float)
    out = np.empty(xy.shape[0])
    for start in range(0, xy.shape[0], PROBE_CHUNK):
        chunk = xy[start:start + PROBE_CHUNK]
        users = UserField(chunk, altitude=config.altitude_m)
        g = gain_matrix(geometry, users, pattern)
        beta = link_budget(users, params).beta_sq
        t_ub = np.sqrt(g) @ mask.T
        s_ub = g @ mask.T
        num_all = point.p[None, :] * beta[:, None] * t_ub**2 / counts[None, :]
        num = num_all.max(axis=1)  # strongest beam serves the cell
        if config.sinr_mode == "closed_form":
            den = beta * (s_ub / counts[None, :]) @ point.p + sigma
        else:
            den = sigma
        out[start:start + chunk.shape[0]] = np.log2(1.0 + num / den)
    return out


def _new_result(config: ScenarioConfig) -> ScenarioResult:
    return ScenarioResult(
        experiment=config.experiment,
        seed=config.seed,
        config_hash=config.config_hash(),
        tables={},
        metadata={},
    )


_RUNNERS = {
    "single": run_single,
    "heatmap": run_heatmap,
    "cdf": run_cdf,
    "power_sweep": run_sweep,
    "k_sweep": run_sweep,
    "mk_sweep": run_sweep,
    "beam_footprint": run_beam_footprint,
}


def run_pipeline(config: ScenarioConfig) -> ScenarioResult:
    """Run the configured experiment; deterministic for a fixed seed."""
    return _RUNNERS[config.experiment](config)


def geometry_rows(config: ScenarioConfig, architecture: str | None = None):
    arch = architecture or config.architecture[0]
    return geometry_table(build_geometry(config, arch))
