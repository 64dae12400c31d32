"""Per-message rate and energy assignment for the three access schemes.

The baseline scheme repeats at a common energy and decodes single slots; the
rate-selection variant keeps the common energy but lets a device pick its
code rate from its own repetition degree; the power-adaptation variant fixes
a common rate and scales each device's transmit energy down with its degree.

Rates are Gaussian-approximation thresholds in bits (log base 2 throughout).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelConfig",
    "SchemeConfig",
    "TransmitProfile",
    "TuningParameterError",
    "InfeasibleOperatingPointError",
    "es_from_reference",
    "rate_irsa",
    "hat_es_from_rate",
    "rate_rs",
    "rs_sinr_target",
    "pa_mean_energy",
    "pa_powers",
    "build_profile",
]

VARIANTS = ("IRSA", "RS", "PA")


class TuningParameterError(ValueError):
    """The (alpha, beta) pair makes the estimated-interference denominator
    non-positive; the grid point must be rejected."""


class InfeasibleOperatingPointError(ValueError):
    """The power-adaptation energy balance has no positive solution at this
    load / rate combination."""


@dataclass(frozen=True)
class ChannelConfig:
    """Static channel and frame parameters.

    ``tilde_Es`` is the reference energy per channel use of the
    everyone-in-every-slot benchmark (uniform-energy experiments);
    ``hat_R`` is the common nominal rate in bits (power-adaptation
    experiments).  Exactly the relevant one needs to be set.
    """

    K: int
    M: int
    L_cu: int
    N0: float = 1.0
    tilde_Es: float | None = None
    hat_R: float | None = None

    def __post_init__(self) -> None:
        if self.K < 1 or self.M < 1 or self.L_cu < 1:
            raise ValueError("K, M and L_cu must be >= 1")
        if self.N0 <= 0:
            raise ValueError("N0 must be positive")
        if self.tilde_Es is not None and self.tilde_Es <= 0:
            raise ValueError("tilde_Es must be positive")
        if self.hat_R is not None and self.hat_R <= 0:
            raise ValueError("hat_R must be positive")

    @property
    def G(self) -> float:
        """Offered load, devices per slot."""
        return self.K / self.M


@dataclass(frozen=True)
class SchemeConfig:
    """Scheme selector plus its tuning parameters.

    alpha/beta belong to rate selection, mu to power adaptation; setting a
    parameter for the wrong variant is rejected.  ``rmax_includes_one``
    chooses between capacity thresholds of the form log2(1 + SINR) (default)
    and the bare log2(SINR).
    """

    variant: str
    alpha: float | None = None
    beta: float | None = None
    mu: float | None = None
    rmax_includes_one: bool = True

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.variant == "RS":
            if self.alpha is None or self.beta is None:
                raise ValueError("RS requires alpha and beta")
            if self.alpha < 0 or self.beta <= 0:
                raise ValueError("RS requires alpha >= 0 and beta > 0")
            if self.mu is not None:
                raise ValueError("mu is a PA parameter")
        elif self.variant == "PA":
            if self.mu is None:
                raise ValueError("PA requires mu")
            if self.mu < 1.0:
                raise ValueError("mu must be >= 1")
            if self.alpha is not None or self.beta is not None:
                raise ValueError("alpha/beta are RS parameters")
        else:
            if self.alpha is not None or self.beta is not None or self.mu is not None:
                raise ValueError("IRSA takes no tuning parameters")


@dataclass(frozen=True)
class TransmitProfile:
    """Energy per channel use and rate for each message of one frame.

    ``sinr_thresholds`` holds the per-message effective-SINR level at which
    the decoder's success test passes; it is the rate threshold inverted once
    so the hot loop compares SINRs instead of taking logs.
    """

    degrees: np.ndarray
    energies: np.ndarray
    rates: np.ndarray
    sinr_thresholds: np.ndarray
    Es: float | None  # uniform per-replica energy; None under power adaptation
    l_avg: float
    r_avg: float

    def __post_init__(self) -> None:
        for field_name in ("energies", "rates", "sinr_thresholds"):
            arr = getattr(self, field_name)
            if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
                raise ValueError(f"{field_name} must be strictly positive and finite")
        if self.Es is not None and np.any(self.energies != self.Es):
            raise ValueError("uniform profile must carry identical energies")


def es_from_reference(cfg: ChannelConfig, l_avg: float) -> float:
    """Per-replica energy that spends the same total frame energy as the
    everyone-in-every-slot reference: Es = M * tilde_Es / l_avg."""
    if cfg.tilde_Es is None:
        raise ValueError("config carries no reference energy tilde_Es")
    if l_avg <= 0:
        raise ValueError("l_avg must be positive")
    return cfg.M * cfg.tilde_Es / l_avg

def rate_irsa(Es: float, N0: float, L_cu: int) -> float:
    """Single-slot rate in bits: (L/2) log2(1 + Es/N0)."""
    return 0.5 * L_cu * math.log2(1.0 + Es / N0)


def hat_es_from_rate(hat_R: float, L_cu: int, N0: float) -> float:
    """Energy per channel use sustaining ``hat_R`` bits without interference:
    the inverse of rate_irsa."""
    if hat_R <= 0:
        raise ValueError("hat_R must be positive")
    return N0 * (2.0 ** (2.0 * hat_R / L_cu) - 1.0)


def rs_sinr_target(
    l_i, Es: float, N0: float, alpha: float, beta: float, r_avg: float
):
    """Estimated effective SINR a degree-l device plans for: its own slot at
    noise only plus (l-1) MRC terms against an assumed load of beta*r_avg
    interferers per slot, scaled by alpha.

    Accepts scalar or array ``l_i``.  Raises TuningParameterError when the
    assumed residual denominator is non-positive.
    """
    den = (beta * r_avg - 1.0) * Es + N0
    if den <= 0:
        raise TuningParameterError(
            f"(beta*r_avg - 1)*Es + N0 = {den!r} <= 0 for beta={beta}, r_avg={r_avg}"
        )
    return Es / N0 + alpha * (np.asarray(l_i) - 1.0) * Es / den


def rate_rs(
    l_i: float,
    Es: float,
    N0: float,
    L_cu: int,
    alpha: float,
    beta: float,
    r_avg: float,
) -> float:
    """Selected rate of a degree-l device, in bits."""
    x = rs_sinr_target(l_i, Es, N0, alpha, beta, r_avg)
    return 0.5 * L_cu * math.log2(1.0 + float(x))


def pa_mean_energy(cfg: ChannelConfig, l_avg: float, r_avg: float) -> float:
    """Uniform per-replica energy that meets the nominal SINR on an
    (l_avg, r_avg) regular graph at the worst decoding step."""
    if cfg.hat_R is None:
        raise ValueError("config carries no nominal rate hat_R")
    hat_es = hat_es_from_rate(cfg.hat_R, cfg.L_cu, cfg.N0)
    den = (1.0 - r_avg) * hat_es / cfg.N0 + l_avg
    if den <= 0:
        raise InfeasibleOperatingPointError(
            f"(1 - r_avg)*hat_Es/N0 + l_avg = {den!r} <= 0 "
            f"(r_avg={r_avg}, hat_Es/N0={hat_es / cfg.N0})"
        )
    return hat_es / den


def pa_powers(
    degrees: np.ndarray,
    cfg: ChannelConfig,
    mu: float,
    l_avg: float,
    r_avg: float,
) -> TransmitProfile:
    """Power-adaptation profile: every device aims its MRC-combined SINR at
    the nominal level assuming r_avg interferers per slot at the mean energy,
    then scales by the safety factor mu.

    The per-device total l_i * E_i is degree independent by construction.
    """
    hat_es = hat_es_from_rate(cfg.hat_R, cfg.L_cu, cfg.N0)
    bar_es = pa_mean_energy(cfg, l_avg, r_avg)
    per_user = (hat_es / cfg.N0) * ((r_avg - 1.0) * bar_es + cfg.N0)  # l_i * check_E_i
    degrees = np.asarray(degrees, dtype=np.int64)
    energies = mu * per_user / degrees
    rates = np.full(len(degrees), float(cfg.hat_R))
    thresholds = np.full(len(degrees), hat_es / cfg.N0)
    return TransmitProfile(
        degrees=degrees,
        energies=energies,
        rates=rates,
        sinr_thresholds=thresholds,
        Es=None,
        l_avg=l_avg,
        r_avg=r_avg,
    )


def build_profile(
    degrees: np.ndarray,
    cfg: ChannelConfig,
    scheme: SchemeConfig,
    l_avg: float,
) -> TransmitProfile:
    """Assign rates and energies to the messages of one frame.

    ``l_avg`` is the analytic mean of the degree distribution; devices plan
    against r_avg = (K/M) * l_avg rather than the realised graph, which they
    cannot observe.
    """
    r_avg = cfg.G * l_avg
    if scheme.variant == "PA":
        return pa_powers(degrees, cfg, scheme.mu, l_avg, r_avg)

    degrees = np.asarray(degrees, dtype=np.int64)
    Es = es_from_reference(cfg, l_avg)
    n = len(degrees)
    if scheme.variant == "IRSA":
        x = np.full(n, Es / cfg.N0)
    else:  # RS
        x = rs_sinr_target(degrees, Es, cfg.N0, scheme.alpha, scheme.beta, r_avg)
    rates = 0.5 * cfg.L_cu * np.log2(1.0 + x)
    # Success test is rate <= (L/2)log2(1 + sinr)  <=>  sinr >= x; without the
    # "1 +" the equivalent threshold is 1 + x.  Either way no log roundtrip.
    thresholds = x if scheme.rmax_includes_one else 1.0 + x
    return TransmitProfile(
        degrees=degrees,
        energies=np.full(n, Es),
        rates=rates,
        sinr_thresholds=thresholds,
        Es=Es,
        l_avg=l_avg,
        r_avg=r_avg,
    )
