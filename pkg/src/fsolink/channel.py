"""Free-space channel: beam-divergence geometric loss plus atmospheric loss.

The beam leaves a transmit aperture of diameter d_tx, spreads with full
divergence angle theta over range L, and is collected by a receive
aperture of diameter d_rx. The captured fraction is the aperture-area
ratio

    r = (d_rx / (d_tx + theta * L))^2      clamped to <= 1

so a collector wider than the arriving spot captures everything rather
than amplifying. Atmospheric extinction is alpha dB/km over L meters.
Both losses act on power; the field envelope is scaled by the square
root of the combined linear transmission.
"""

import math
from dataclasses import dataclass

from fsolink.signals import OpticalField


@dataclass(frozen=True)
class ChannelParams:
    range_m: float = 2000.0
    attenuation_db_per_km: float = 10.0
    divergence_rad: float = 2e-3
    tx_aperture_m: float = 0.10
    rx_aperture_m: float = 1.50

    def __post_init__(self):
        if not math.isfinite(self.range_m) or self.range_m < 0:
            raise ValueError("range_m must be finite and >= 0")
        if not math.isfinite(self.attenuation_db_per_km) or self.attenuation_db_per_km < 0:
            raise ValueError("attenuation_db_per_km must be finite and >= 0")
        if not math.isfinite(self.divergence_rad) or self.divergence_rad < 0:
            raise ValueError("divergence_rad must be finite and >= 0")
        if self.tx_aperture_m <= 0 or self.rx_aperture_m <= 0:
            raise ValueError("aperture diameters must be positive")


def geometric_loss_db(params: ChannelParams) -> float:
    """Divergence spill loss in dB (>= 0); 0 when the spot fits the collector."""
    spot = params.tx_aperture_m + params.divergence_rad * params.range_m
    ratio = (params.rx_aperture_m / spot) ** 2
    if ratio >= 1.0:
        return 0.0
    return -10.0 * math.log10(ratio)


def atmospheric_loss_db(params: ChannelParams) -> float:
    """Extinction over the path: alpha [dB/km] times range [km]."""
    return params.attenuation_db_per_km * (params.range_m / 1000.0)


def total_loss_db(params: ChannelParams) -> float:
    return geometric_loss_db(params) + atmospheric_loss_db(params)


def apply_channel(field: OpticalField, params: ChannelParams) -> OpticalField:
    """Attenuate the field by the total link loss (power-domain dB)."""
    transmission = 10.0 ** (-total_loss_db(params) / 10.0)
    return OpticalField(field.envelope * math.sqrt(transmission), field.sample_rate)
