"""Array geometries and ground-user coordinates.

Coordinate frame: the array origin sits at the platform center, +z points up,
and the ground plane is z = -altitude.  Zenith angles (theta) are measured
from the downward axis, so the nadir direction has theta = 0 and the horizon
theta = 90.  Elevation above the horizon is therefore 90 - theta.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299792458.0
DEFAULT_ALTITUDE_M = 20000.0
DEFAULT_CARRIER_HZ = 2.0e9
HALF_WAVELENGTH_M = SPEED_OF_LIGHT / DEFAULT_CARRIER_HZ / 2.0

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class Architecture(enum.Enum):
    HEMISPHERICAL = "hemispherical"
    CYLINDRICAL = "cylindrical"
    RECTANGULAR = "rectangular"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class ElementPose:
    """Single element: Cartesian position, unit boresight, polar coordinates.

    ``polar`` is (d_m meters, theta_m degrees from the down axis, phi_m
    degrees azimuth).
    """

    position: np.ndarray
    boresight: np.ndarray
    polar: tuple[float, float, float]


@dataclass(frozen=True)
class ArrayGeometry:
    """Immutable element layout for one array architecture.

    positions/boresights are (M, 3) arrays; polar coordinates of the element
    positions are exposed as d_m / theta_m_deg / phi_m_deg vectors.
    """

    architecture: Architecture
    positions: np.ndarray
    boresights: np.ndarray
    nominal_radius: float
    origin_altitude: float = DEFAULT_ALTITUDE_M
    d_m: np.ndarray = field(init=False, repr=False)
    theta_m_deg: np.ndarray = field(init=False, repr=False)
    phi_m_deg: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        bor = np.asarray(self.boresights, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3 or pos.shape[0] == 0:
            raise ValueError("positions must be a non-empty (M, 3) array")
        if bor.shape != pos.shape:
            raise ValueError("boresights must match positions in shape")
        norms = np.linalg.norm(bor, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("every boresight must have unit norm")
        d = np.linalg.norm(pos, axis=1)
        if np.any(d > 2.0 * self.nominal_radius + 1e-9):
            raise ValueError("element positions exceed 2x the nominal array radius")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "boresights", bor)
        object.__setattr__(self, "d_m", d)
        # Degenerate on-origin elements keep a defined (0, 0) polar direction.
        with np.errstate(invalid="ignore"):
            cos_down = np.where(d > 0.0, -pos[:, 2] / np.where(d > 0.0, d, 1.0), 1.0)
        theta = np.degrees(np.arccos(np.clip(cos_down, -1.0, 1.0)))
        phi = np.degrees(np.arctan2(pos[:, 1], pos[:, 0]))
        object.__setattr__(self, "theta_m_deg", np.where(d > 0.0, theta, 0.0))
        object.__setattr__(self, "phi_m_deg", np.where(d > 0.0, phi, 0.0))

    @property
    def n_elements(self) -> int:
        return self.positions.shape[0]

    def element(self, index: int) -> ElementPose:
        return ElementPose(
            position=self.positions[index].copy(),
            boresight=self.boresights[index].copy(),
            polar=(
                float(self.d_m[index]),
                float(self.theta_m_deg[index]),
                float(self.phi_m_deg[index]),
            ),
        )

    @property
    def elements(self) -> list[ElementPose]:
        return [self.element(i) for i in range(self.n_elements)]


@dataclass(frozen=True)
class UserField:
    """Ground users at z = 0 relative to the ground plane (z = -altitude here).

    Derived per user: slant range d_k to the array origin, zenith-from-nadir
    angle theta_k, azimuth phi_k, and elevation above the horizon.
    """

    xy: np.ndarray
    altitude: float = DEFAULT_ALTITUDE_M
    d_k: np.ndarray = field(init=False, repr=False)
    theta_k_deg: np.ndarray = field(init=False, repr=False)
    phi_k_deg: np.ndarray = field(init=False, repr=False)
    elevation_deg: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        xy = np.atleast_2d(np.asarray(self.xy, dtype=float))
        if xy.shape[1] != 2 or xy.shape[0] == 0:
            raise ValueError("xy must be a non-empty (K, 2) array of ground coordinates")
        if self.altitude <= 0.0:
            raise ValueError("altitude must be positive")
        rho = np.hypot(xy[:, 0], xy[:, 1])
        d = np.hypot(rho, self.altitude)
        theta = np.degrees(np.arctan2(rho, self.altitude))
        object.__setattr__(self, "xy", xy)
        object.__setattr__(self, "d_k", d)
        object.__setattr__(self, "theta_k_deg", theta)
        object.__setattr__(self, "phi_k_deg", np.degrees(np.arctan2(xy[:, 1], xy[:, 0])))
        object.__setattr__(self, "elevation_deg", 90.0 - theta)

    @property
    def n_users(self) -> int:
        return self.xy.shape[0]

    def directions(self) -> np.ndarray:
        """Unit vectors from the array origin toward each user, (K, 3)."""
        vec = np.column_stack(
            [self.xy[:, 0], self.xy[:, 1], np.full(self.n_users, -self.altitude)]
        )
        return vec / self.d_k[:, None]


def build_hemispherical(m: int, radius: float = 3.0, altitude: float = DEFAULT_ALTITUDE_M) -> ArrayGeometry:
    """Quasi-uniform Fibonacci lattice on the lower hemisphere of ``radius``.

    Boresights are the outward radial directions, so every element looks at
    the patch of ground it faces.  Placement is deterministic and
    index-ordered from nadir outward.
    """
    if m <= 0:
        raise ValueError("element count m must be positive")
    if radius <= 0.0:
        raise ValueError("hemisphere radius must be positive")
    i = np.arange(m)
    # z uniform in (-1, 0) gives constant area density; index 0 sits nadir-most
    z = (i + 0.5) / m - 1.0
    phi = i * _GOLDEN_ANGLE
    rho = np.sqrt(1.0 - z * z)
    unit = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    return ArrayGeometry(
        architecture=Architecture.HEMISPHERICAL,
        positions=radius * unit,
        boresights=unit,
        nominal_radius=radius,
        origin_altitude=altitude,
    )


def build_cylindrical(
    rings: int = 50,
    per_ring: int = 53,
    radius: float | None = None,
    spacing: float = HALF_WAVELENGTH_M,
    altitude: float = DEFAULT_ALTITUDE_M,
) -> ArrayGeometry:
    """Side-facing elements on ``rings`` stacked circles of ``per_ring`` each.

    The default radius makes the circumferential spacing equal to ``spacing``
    (half a wavelength at 2 GHz); rings are stacked at the same spacing and
    centered vertically on the origin.  Boresights are horizontal outward
    radials.
    """
    if rings <= 0 or per_ring <= 0:
        raise ValueError("rings and per_ring must be positive")
    if spacing <= 0.0:
        raise ValueError("spacing must be positive")
    if radius is None:
        radius = per_ring * spacing / (2.0 * math.pi)
    if radius <= 0.0:
        raise ValueError("cylinder radius must be positive")
    az = 2.0 * math.pi * np.arange(per_ring) / per_ring
    zs = (np.arange(rings) - (rings - 1) / 2.0) * spacing
    phi = np.tile(az, rings)
    z = np.repeat(zs, per_ring)
    positions = np.column_stack([radius * np.cos(phi), radius * np.sin(phi), z])
    boresights = np.column_stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)])
    half_height = (rings - 1) / 2.0 * spacing
    return ArrayGeometry(
        architecture=Architecture.CYLINDRICAL,
        positions=positions,
        boresights=boresights,
        nominal_radius=math.hypot(radius, half_height),
        origin_altitude=altitude,
    )


def build_rectangular(
    rows: int = 50,
    cols: int = 53,
    spacing: float = HALF_WAVELENGTH_M,
    altitude: float = DEFAULT_ALTITUDE_M,
    z_offset: float = 0.0,
) -> ArrayGeometry:
    """Planar rows x cols grid with all boresights pointing straight down."""
    if rows <= 0 or cols <= 0:
        raise ValueError("rows and cols must be positive")
    if spacing <= 0.0:
        raise ValueError("spacing must be positive")
    xs = (np.arange(rows) - (rows - 1) / 2.0) * spacing
    ys = (np.arange(cols) - (cols - 1) / 2.0) * spacing
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    positions = np.column_stack(
        [xx.ravel(), yy.ravel(), np.full(rows * cols, z_offset)]
    )
    boresights = np.tile([0.0, 0.0, -1.0], (rows * cols, 1))
    half_diag = 0.5 * math.hypot((rows - 1) * spacing, (cols - 1) * spacing)
    return ArrayGeometry(
        architecture=Architecture.RECTANGULAR,
        positions=positions,
        boresights=boresights,
        nominal_radius=max(math.hypot(half_diag, abs(z_offset)), spacing),
        origin_altitude=altitude,
    )


def _rect_factor(n: int) -> tuple[int, int]:
    """Most-square rows x cols factorization of n."""
    r = int(math.isqrt(n))
    while n % r != 0:
        r -= 1
    return r, n // r


def build_hybrid(
    m_cyl: int = 2000,
    m_rect: int = 650,
    cyl_rings: int = 50,
    cyl_per_ring: int | None = None,
    spacing: float = HALF_WAVELENGTH_M,
    altitude: float = DEFAULT_ALTITUDE_M,
) -> ArrayGeometry:
    """Cylinder side-wall plus a downward rectangular panel underneath it.

    ``m_cyl`` must equal cyl_rings * cyl_per_ring (per_ring is derived when
    omitted); the rectangular panel holds ``m_rect`` elements in the most
    square grid, centered under the cylinder one spacing below its bottom
    ring.
    """
    if m_cyl <= 0 or m_rect <= 0:
        raise ValueError("hybrid element counts must be positive")
    if cyl_per_ring is None:
        if m_cyl % cyl_rings != 0:
            raise ValueError("m_cyl must be divisible by cyl_rings")
        cyl_per_ring = m_cyl // cyl_rings
    if cyl_rings * cyl_per_ring != m_cyl:
        raise ValueError("cyl_rings * cyl_per_ring must equal m_cyl")
    cyl = build_cylindrical(cyl_rings, cyl_per_ring, spacing=spacing, altitude=altitude)
    rows, cols = _rect_factor(m_rect)
    z_bottom = cyl.positions[:, 2].min() - spacing
    rect = build_rectangular(rows, cols, spacing=spacing, altitude=altitude, z_offset=z_bottom)
    positions = np.vstack([cyl.positions, rect.positions])
    boresights = np.vstack([cyl.boresights, rect.boresights])
    return ArrayGeometry(
        architecture=Architecture.HYBRID,
        positions=positions,
        boresights=boresights,
        nominal_radius=float(np.linalg.norm(positions, axis=1).max()),
        origin_altitude=altitude,
    )


def build_array(architecture, **params) -> ArrayGeometry:
    """Dispatch to the architecture-specific builder.

    ``architecture`` may be an Architecture or its string value.  Unknown
    parameters raise, and every builder validates its own dimensions.
    """
    arch = Architecture(architecture) if not isinstance(architecture, Architecture) else architecture
    builders = {
        Architecture.HEMISPHERICAL: build_hemispherical,
        Architecture.CYLINDRICAL: build_cylindrical,
        Architecture.RECTANGULAR: build_rectangular,
        Architecture.HYBRID: build_hybrid,
    }
    return builders[arch](**params)


def boresight_angle_matrix(geometry: ArrayGeometry, users: UserField) -> np.ndarray:
    """Angle (degrees, (K, M)) between each element boresight and each user.

    User directions are taken from the array origin (far-field convention:
    the array is meters across while users are kilometers away).  For
    hemispherical arrays this equals the angle between the element's radial
    direction and the user direction.
    """
    cosang = users.directions() @ geometry.boresights.T
    return np.degrees(np.arccos(np.clip(cosang, -1.0, 1.0)))


def distance_matrix(geometry: ArrayGeometry, users: UserField) -> np.ndarray:
    """Exact element-to-user distances (meters, (K, M)) via the triangle law.

    Equivalent to sqrt(d_k^2 + d_m^2 - 2 d_k d_m cos a_km) with a_km the angle
    at the origin between the element position and the user direction, which
    is the Euclidean distance between the two points.
    """
    diff = users.directions() @ geometry.positions.T  # d_k * cos(a_km) scaled
    dk2 = (users.d_k**2)[:, None]
    dm2 = (geometry.d_m**2)[None, :]
    return np.sqrt(np.maximum(dk2 + dm2 - 2.0 * users.d_k[:, None] * diff, 0.0))


def distance_from_polar(d_k: float, d_m: float, theta_km_deg: float) -> float:
    """Triangle-law distance for origin ranges d_k, d_m separated by theta_km."""
    if d_k <= 0.0 or d_m < 0.0:
        raise ValueError("ranges must satisfy d_k > 0 and d_m >= 0")
    c = math.cos(math.radians(theta_km_deg))
    return math.sqrt(max(d_k * d_k + d_m * d_m - 2.0 * d_k * d_m * c, 0.0))


def angle_element_user(element: ElementPose, users: UserField, index: int = 0) -> float:
    """Boresight-to-user angle in degrees for one element/user pair."""
    u = users.directions()[index]
    cosang = float(np.dot(element.boresight, u))
    return math.degrees(math.acos(min(1.0, max(-1.0, cosang))))


def distance_element_user(element: ElementPose, users: UserField, index: int = 0) -> float:
    """Exact distance in meters for one element/user pair."""
    u = users.directions()[index] * users.d_k[index]
    return float(np.linalg.norm(u - element.position))


def angle_between_polar(theta_a_deg, phi_a_deg, theta_b_deg, phi_b_deg):
    """Angle between two directions given as (zenith, azimuth) degree pairs.

    arccos of the spherical dot product
    sin(ta) sin(tb) cos(pa) cos(pb) + sin(ta) sin(tb) sin(pa) sin(pb)
    + cos(ta) cos(tb).
    """
    ta, pa = np.radians(theta_a_deg), np.radians(phi_a_deg)
    tb, pb = np.radians(theta_b_deg), np.radians(phi_b_deg)
    c = (
        np.sin(ta) * np.sin(tb) * np.cos(pa) * np.cos(pb)
        + np.sin(ta) * np.sin(tb) * np.sin(pa) * np.sin(pb)
        + np.cos(ta) * np.cos(tb)
    )
    return np.degrees(np.arccos(np.clip(c, -1.0, 1.0)))


def geometry_table(geometry: ArrayGeometry):
    """Rows (index, x, y, z, bx, by, bz, d_m, theta_m, phi_m) for CSV dumps."""
    rows = []
    for i in range(geometry.n_elements):
        p = geometry.positions[i]
        b = geometry.boresights[i]
        rows.append(
            (
                i,
                p[0],
                p[1],
                p[2],
                b[0],
                b[1],
                b[2],
                geometry.d_m[i],
                geometry.theta_m_deg[i],
                geometry.phi_m_deg[i],
            )
        )
    return rows
