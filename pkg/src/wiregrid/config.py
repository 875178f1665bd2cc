"""Experiment configuration and derived geometry.

All lengths are stored in metres and all angles in radians.  A validated
``ExperimentConfig`` is immutable and safe to share between threads; every
other module in the package accepts only validated configurations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigError

# Reference desk-scale setup: 638 nm light, six 32 um wires at 319 um pitch
# placed where two 2.55 mm square beams cross at 2 mrad.
DEFAULTS = dict(
    wavelength=638e-9,
    wire_thickness=32e-6,
    wire_pitch=319e-6,
    wire_count=6,
    beam_side=2.55e-3,
    crossing_angle=0.002,
    detector_half_width=0.0005,
    photon_count=1_000_000,
)

# Small-angle scalar treatment breaks down well before this.
MAX_CROSSING_ANGLE = 0.1


@dataclass(frozen=True)
class ExperimentConfig:
    """Physical parameters of the crossed-beam wire-grid setup.

    Attributes
    ----------
    wavelength : float
        Vacuum wavelength of the light [m].
    wire_thickness : float
        Width of each absorbing wire [m].
    wire_pitch : float
        Centre-to-centre wire separation [m].
    wire_count : int
        Number of wires; must be even so the grid is symmetric about the
        pattern centre.
    beam_side : float
        Side of the square beam cross section [m].
    crossing_angle : float
        Full angle between the two beams [rad].
    detector_half_width : float
        Angular half-acceptance of each detector window [rad].  The
        detectors themselves sit at +-crossing_angle/2.
    photon_count : int
        Photons per source arm used for count-based reporting.
    """

    wavelength: float = DEFAULTS["wavelength"]
    wire_thickness: float = DEFAULTS["wire_thickness"]
    wire_pitch: float = DEFAULTS["wire_pitch"]
    wire_count: int = DEFAULTS["wire_count"]
    beam_side: float = DEFAULTS["beam_side"]
    crossing_angle: float = DEFAULTS["crossing_angle"]
    detector_half_width: float = DEFAULTS["detector_half_width"]
    photon_count: int = DEFAULTS["photon_count"]

    def replace(self, **changes) -> "ExperimentConfig":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return dict(
            wavelength=self.wavelength,
            wire_thickness=self.wire_thickness,
            wire_pitch=self.wire_pitch,
            wire_count=self.wire_count,
            beam_side=self.beam_side,
            crossing_angle=self.crossing_angle,
            detector_half_width=self.detector_half_width,
            photon_count=self.photon_count,
        )


@dataclass(frozen=True)
class DerivedGeometry:
    """Secondary quantities shared by the analysis modules.

    ``fringe_consistency`` is |fringe_spacing - wire_pitch| / wire_pitch;
    callers should warn when it is not small, because the model places the
    wires at dark-fringe centres spaced by the pitch.
    """

    wavenumber: float
    fringe_spacing: float
    detector_angles: tuple[float, float]
    beam_area: float
    fringe_consistency: float


def validate_config(config: ExperimentConfig) -> ExperimentConfig:
    """Check every invariant, returning the config unchanged if all hold.

    Raises ConfigError naming the offending field and bound otherwise.
    """
    positive_lengths = (
        ("wavelength", config.wavelength),
        ("wire_thickness", config.wire_thickness),
        ("wire_pitch", config.wire_pitch),
        ("beam_side", config.beam_side),
    )
    for name, value in positive_lengths:
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise ConfigError(f"{name} must be a positive finite length, got {value!r}")
    for name, value in (
        ("crossing_angle", config.crossing_angle),
        ("detector_half_width", config.detector_half_width),
    ):
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise ConfigError(f"{name} must be a positive finite angle, got {value!r}")
    if not isinstance(config.wire_count, int) or config.wire_count < 2:
        raise ConfigError(f"wire_count must be an integer >= 2, got {config.wire_count!r}")
    if config.wire_count % 2 != 0:
        raise ConfigError(
            f"wire_count must be even so the grid is symmetric about the "
            f"pattern centre, got {config.wire_count}"
        )
    if not isinstance(config.photon_count, int) or config.photon_count < 1:
        raise ConfigError(f"photon_count must be a positive integer, got {config.photon_count!r}")
    if config.wire_thickness >= config.wire_pitch:
        raise ConfigError(
            f"wires must not touch: wire_thickness ({config.wire_thickness:g} m) "
            f"must be < wire_pitch ({config.wire_pitch:g} m)"
        )
    if config.wire_count * config.wire_pitch > config.beam_side:
        raise ConfigError(
            f"grid does not fit inside the beam: wire_count * wire_pitch = "
            f"{config.wire_count * config.wire_pitch:g} m exceeds beam_side "
            f"({config.beam_side:g} m)"
        )
    if config.crossing_angle >= MAX_CROSSING_ANGLE:
        raise ConfigError(
            f"crossing_angle ({config.crossing_angle:g} rad) must be < "
            f"{MAX_CROSSING_ANGLE} rad for the small-angle scalar model"
        )
    return config


def derive_geometry(config: ExperimentConfig) -> DerivedGeometry:
    """Compute wavenumber, fringe spacing, detector angles and beam area."""
    validate_config(config)
    wavenumber = 2.0 * math.pi / config.wavelength
    fringe_spacing = config.wavelength / (2.0 * math.sin(config.crossing_angle / 2.0))
    half = config.crossing_angle / 2.0
    return DerivedGeometry(
        wavenumber=wavenumber,
        fringe_spacing=fringe_spacing,
        detector_angles=(-half, +half),
        beam_area=config.beam_side**2,
        fringe_consistency=abs(fringe_spacing - config.wire_pitch) / config.wire_pitch,
    )


def wire_centers(config: ExperimentConfig) -> list[float]:
    """Wire centre positions, symmetric about the pattern centre.

    The wires sit at consecutive dark fringes of the crossed-beam field,
    at +-pitch/2, +-3*pitch/2, ... up to +-(wire_count-1)*pitch/2.
    """
    d = config.wire_pitch
    out = []
    for n in range(1, config.wire_count // 2 + 1):
        xc = (2 * n - 1) * d / 2.0
        out.extend((-xc, +xc))
    out.sort()
    return out
