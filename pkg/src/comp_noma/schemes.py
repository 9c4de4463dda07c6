"""Instantaneous per-user rates for the four transmission schemes.

JT-CoMP VP-NOMA follows the printed SINR expressions: each near user keeps the
whole band with SIC residual rho*upsilon, each far user gets one third of the
band with all three base stations combining non-coherently. The OMA, NOMA and
plain VP-NOMA baselines reuse the same power and bandwidth budgets so the
scheme comparison is fair.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .channel import ChannelRealization, LinkStatistics
from .geometry import FAR_USERS, NEAR_USERS, USERS, user_index


class SchemeId(enum.Enum):
    OMA = "oma"
    NOMA = "noma"
    VPNOMA = "vpnoma"
    COMP_VPNOMA = "comp-vpnoma"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> "SchemeId":
        for scheme in cls:
            if scheme.value == token.strip().lower():
                return scheme
        raise ValueError(f"unknown scheme {token!r}; expected one of "
                         f"{', '.join(s.value for s in cls)}")

    @property
    def code(self) -> int:
        return _SCHEME_CODES[self]


_SCHEME_CODES = {
    SchemeId.OMA: kernels.OMA_CODE,
    SchemeId.NOMA: kernels.NOMA_CODE,
    SchemeId.VPNOMA: kernels.VPNOMA_CODE,
    SchemeId.COMP_VPNOMA: kernels.COMP_VPNOMA_CODE,
}


@dataclass(frozen=True)
class SystemParams:
    """Scalar knobs of the transmission protocol.

    alpha is the near-user power fraction; the far-user fraction is always
    beta = (1 - alpha)/3, which keeps beta > alpha for alpha < 1/4 and the
    total power normalized to 1. rho is the transmit SNR in linear units.
    """

    alpha: float = 0.1
    rho: float = 10.0
    upsilon: float = 0.01
    band_fractions: tuple = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)

    def __post_init__(self):
        if not 0.0 < self.alpha < 0.25:
            raise ValueError(f"alpha must lie in (0, 0.25), got {self.alpha}")
        if not self.rho > 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if self.upsilon < 0:
            raise ValueError(f"upsilon must be nonnegative, got {self.upsilon}")
        fractions = tuple(float(b) for b in self.band_fractions)
        if len(fractions) != 3 or any(b <= 0 for b in fractions):
            raise ValueError("band_fractions must be three positive reals")
        if abs(sum(fractions) - 1.0) > 1e-12:
            raise ValueError(f"band_fractions must sum to 1, got {sum(fractions)}")
        object.__setattr__(self, "band_fractions", fractions)

    @property
    def beta(self) -> float:
        return (1.0 - self.alpha) / 3.0


@dataclass(frozen=True)
class RateBreakdown:
    """Instantaneous rates of one realization, bits/s/Hz (bandwidth-normalized)."""

    per_user: dict
    per_subband_sum: tuple
    total: float


def near_rate_subband(realization: ChannelRealization, stats: LinkStatistics,
                      params: SystemParams, cell: int, subband: int) -> float:
    """Rate of near user `cell` on sub-band `subband` under (CoMP) VP-NOMA.

    SIC has removed every far-user signal, leaving the other cells' near-user
    transmissions, the CSI-error terms, and the SIC residue in the denominator;
    the SINR is therefore the same on every sub-band.
    """
    j = user_index(cell)
    if not 1 <= subband <= 3:
        raise ValueError(f"sub-band index must be 1..3, got {subband}")
    g = realization.gain
    arho = params.alpha * params.rho
    cross = float(g[:, j].sum() - g[j, j])
    noise = params.rho * float(stats.sigma_eps[:, j].sum())
    sinr = arho * g[j, j] / (arho * cross + noise + params.rho * params.upsilon + 1.0)
    return params.band_fractions[subband - 1] * float(np.log2(1.0 + sinr))


def far_rate_comp(realization: ChannelRealization, stats: LinkStatistics,
                  params: SystemParams, far_user) -> float:
    """Rate of a far user with all three base stations jointly transmitting."""
    u = user_index(far_user)
    if u < 3:
        raise ValueError(f"{far_user!r} is not a far user (expected A, B or C)")
    g = realization.gain
    combined = float(g[:, u].sum())
    noise = params.rho * float(stats.sigma_eps[:, u].sum())
    sinr = (params.beta * params.rho * combined
            / (params.alpha * params.rho * combined + noise + 1.0))
    return params.band_fractions[u - 3] * float(np.log2(1.0 + sinr))


def _far_rate_vpnoma(realization, stats, params, far_user) -> float:
    """Non-CoMP far rate: only the serving cell's copy is useful signal."""
    u = user_index(far_user)
    g = realization.gain
    serving = float(g[u - 3, u])
    combined = float(g[:, u].sum())
    noise = params.rho * float(stats.sigma_eps[:, u].sum())
    den = (params.alpha * params.rho * combined
           + params.beta * params.rho * (combined - serving) + noise + 1.0)
    sinr = params.beta * params.rho * serving / den
    return params.band_fractions[u - 3] * float(np.log2(1.0 + sinr))


def total_instantaneous(realization: ChannelRealization, stats: LinkStatistics,
                        params: SystemParams, scheme: SchemeId) -> RateBreakdown:
    """Per-user and total rates of one realization under the given scheme."""
    rates = kernels.scheme_rates(
        realization.gain[None, :, :], scheme.code, params.alpha, params.beta,
        params.rho, params.upsilon, np.asarray(params.band_fractions),
        stats.sigma_eps.sum(axis=0))[0]
    per_user = {label: float(rates[i]) for i, label in enumerate(USERS)}
    total = float(rates.sum())

    if scheme in (SchemeId.COMP_VPNOMA, SchemeId.VPNOMA):
        far_rate = far_rate_comp if scheme is SchemeId.COMP_VPNOMA else _far_rate_vpnoma
        per_subband = tuple(
            sum(near_rate_subband(realization, stats, params, j, m) for j in (1, 2, 3))
            + far_rate(realization, stats, params, FAR_USERS[m - 1])
            for m in (1, 2, 3))
    else:
        # Full-band schemes have no sub-band split; report per-cell pair sums.
        per_subband = tuple(
            per_user[NEAR_USERS[c]] + per_user[FAR_USERS[c]] for c in range(3))
    return RateBreakdown(per_user, per_subband, total)
