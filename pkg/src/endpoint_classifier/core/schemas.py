"""Core schema definitions for the endpoint classifier.

This module contains the Pydantic models used throughout the package: verdicts
produced by the analytic criteria, reports of the numerical Weyl probes, Hardy
checks, radial-channel classifications, and the settings models that validate
each configuration section.

Example:
    Building a verdict by hand:

    >>> verdict = CriterionVerdict(
    ...     kind=Classification.LIMIT_CIRCLE,
    ...     endpoint=Endpoint.ZERO,
    ...     N=0,
    ...     eps="1/2",
    ...     margin=0.5,
    ...     window=(1e-12, 1e-3),
    ... )
    >>> verdict.to_report()["kind"]
    'LimitCircle'
"""

import math
from enum import StrEnum
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Classification(StrEnum):
    """Endpoint classification outcomes shared by all routes."""

    LIMIT_POINT = "LimitPoint"
    LIMIT_POINT_NONOSCILLATORY = "LimitPointNonoscillatory"
    LIMIT_CIRCLE = "LimitCircle"
    INCONCLUSIVE = "Inconclusive"

    @property
    def is_limit_point(self) -> bool:
        return self in (Classification.LIMIT_POINT, Classification.LIMIT_POINT_NONOSCILLATORY)

    def coarse(self) -> "Classification":
        """Collapse the nonoscillatory refinement onto plain limit point."""
        if self is Classification.LIMIT_POINT_NONOSCILLATORY:
            return Classification.LIMIT_POINT
        return self


class Endpoint(StrEnum):
    ZERO = "Zero"
    INFINITY = "Infinity"


class L2Judgement(StrEnum):
    """Square-integrability judgement of a single probe solution."""

    L2 = "L2"
    NOT_L2 = "NotL2"
    INCONCLUSIVE = "Inconclusive"


class OscillationVerdict(StrEnum):
    NONOSCILLATORY = "Nonoscillatory"
    OSCILLATION_SUSPECTED = "OscillationSuspected"


class Method(StrEnum):
    ANALYTIC = "analytic-criterion"
    EULER = "euler-exact"
    COMPARISON = "comparison"
    WEYL = "weyl-numeric"


def agree(a: Classification, b: Classification) -> bool:
    """Whether two verdicts are compatible; Inconclusive never disagrees."""
    if Classification.INCONCLUSIVE in (a, b):
        return True
    return a.coarse() is b.coarse()


# ----------------------------------------------------------------------
# Verdicts
# ----------------------------------------------------------------------


class CriterionVerdict(BaseModel):
    """Conclusion of an analytic dominance criterion on a sampled window.

    Attributes:
        kind: LimitPointNonoscillatory, LimitPoint (at infinity), LimitCircle or Inconclusive.
        endpoint: Endpoint the verdict refers to.
        N: Iterated-log depth of the witnessing threshold.
        eps: Witnessing epsilon as a rational literal (``"1/4"``), if any.
        margin: Minimum relative slack of the dominance inequality over the grid.
        window: Sampling window ``(x_lo, x_hi)``; None for exact classifications.
        method: Route that produced the verdict.
        nonoscillatory: Oscillation flag where the route decides it.
        details: Free-form evidence (shrink rounds, potential text, ...).
    """

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "kind": "LimitCircle",
                "endpoint": "Zero",
                "N": 1,
                "eps": "1/4",
                "margin": 0.0,
                "window": [1e-12, 1e-3],
                "method": "analytic-criterion",
            }
        }
    )

    kind: Classification = Field(description="Classification outcome.")
    endpoint: Endpoint = Field(default=Endpoint.ZERO, description="Endpoint classified.")
    N: int | None = Field(default=None, ge=0, le=4, description="Depth of the witness.")
    eps: str | None = Field(default=None, description="Witnessing epsilon as 'p/q'.")
    margin: float = Field(default=0.0, description="Minimum relative slack over the grid.")
    window: tuple[float, float] | None = Field(default=None, description="Sampling window.")
    method: Method = Field(default=Method.ANALYTIC, description="Producing route.")
    nonoscillatory: bool | None = Field(default=None, description="Oscillation flag.")
    details: dict[str, Any] = Field(default_factory=dict, description="Supporting evidence.")

    @field_validator("eps", mode="before")
    @classmethod
    def normalize_eps(cls, v: Any) -> str | None:
        """Store epsilon as a canonical rational literal."""
        if v is None:
            return None
        return str(Fraction(str(v)))

    @field_validator("window")
    @classmethod
    def validate_window(cls, v: tuple[float, float] | None) -> tuple[float, float] | None:
        if v is not None and not v[0] < v[1]:
            raise ValueError(f"Window must satisfy x_lo < x_hi, got {v}")
        return v

    @model_validator(mode="after")
    def validate_margin(self) -> "CriterionVerdict":
        if self.kind is not Classification.INCONCLUSIVE and self.margin < 0:
            raise ValueError(f"Margin must be nonnegative for {self.kind}, got {self.margin}")
        return self

    @property
    def eps_fraction(self) -> Fraction | None:
        return None if self.eps is None else Fraction(self.eps)

    def to_report(self) -> dict[str, Any]:
        """JSON payload ``{endpoint, kind, N, eps, margin, window, method}``."""
        report: dict[str, Any] = {
            "endpoint": self.endpoint.value,
            "kind": self.kind.value,
            "N": self.N,
            "eps": self.eps,
            "margin": self.margin,
            "window": list(self.window) if self.window else None,
            "method": self.method.value,
        }
        if self.nonoscillatory is not None:
            report["nonoscillatory"] = self.nonoscillatory
        if self.details:
            report["details"] = self.details
        return report


class SolutionProbe(BaseModel):
    """Evidence gathered for one solution integrated toward an endpoint."""

    initial: tuple[float, float] = Field(description="Initial (u, u_quasi) at the anchor.")
    judgement: L2Judgement = Field(description="Square-integrability judgement.")
    log_masses: list[float] = Field(description="Natural logs of the per-window L2 masses.")
    ratios: list[float] = Field(description="Successive window mass ratios I_(k+1)/I_k.")
    growth: float = Field(description="Factor by which the partial sums grew over the run.")
    tail_bound: float | None = Field(default=None, description="Relative geometric tail bound.")


class WeylReport(BaseModel):
    """Result of a numerical Weyl-alternative probe at one endpoint.

    Attributes:
        kind: LimitPoint, LimitCircle or Inconclusive.
        endpoint: Endpoint probed.
        z_real: Real part of the spectral parameter.
        z_imag: Imaginary part of the spectral parameter.
        anchor: Interior point where the probes start.
        deepest_x: Closest point to the endpoint reached.
        probes: Per-solution evidence.
        regular: Whether the endpoint was declared regular (no probe run).
    """

    kind: Classification
    endpoint: Endpoint = Endpoint.ZERO
    z_real: float = 0.0
    z_imag: float = 1.0
    anchor: float | None = None
    deepest_x: float | None = None
    probes: list[SolutionProbe] = Field(default_factory=list)
    regular: bool = False

    @model_validator(mode="after")
    def validate_evidence(self) -> "WeylReport":
        """LimitCircle needs every probe L2; LimitPoint needs one non-L2 probe."""
        if self.regular:
            return self
        judgements = [p.judgement for p in self.probes]
        if self.kind is Classification.LIMIT_CIRCLE and (
            not judgements or any(j is not L2Judgement.L2 for j in judgements)
        ):
            raise ValueError("LimitCircle requires every probe to be judged L2")
        if self.kind.is_limit_point and L2Judgement.NOT_L2 not in judgements:
            raise ValueError("LimitPoint requires at least one probe judged non-L2")
        return self

    @property
    def z(self) -> complex:
        return complex(self.z_real, self.z_imag)

    def to_report(self) -> dict[str, Any]:
        """JSON payload ``{kind, method, z, deepest_x, ratios, window_masses}``."""
        return {
            "endpoint": self.endpoint.value,
            "kind": self.kind.value,
            "method": Method.WEYL.value,
            "z": [self.z_real, self.z_imag],
            "anchor": self.anchor,
            "deepest_x": self.deepest_x,
            "judgements": [p.judgement.value for p in self.probes],
            "ratios": [p.ratios for p in self.probes],
            "window_masses": [[math.exp(m) for m in p.log_masses] for p in self.probes],
        }


class HardyResult(BaseModel):
    """Outcome of a discrete Hardy-inequality check."""

    model_config = ConfigDict(populate_by_name=True)

    alpha: float
    N: int = Field(ge=0, le=3)
    rho: float = Field(gt=0)
    gamma: float | None = None
    n_grid: int = Field(ge=3)
    form: str = Field(default="squared", description="'power', 'squared' or 'first-power'.")
    min_quotient: float
    passed: bool = Field(alias="pass")

    def to_report(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True)


class ChannelVerdict(BaseModel):
    """Classification of a single radial channel ``(n, l, alpha)``."""

    n: int = Field(ge=2)
    ell: int = Field(ge=0)
    alpha: str
    class_at_zero: Classification
    class_at_R: Classification = Classification.LIMIT_CIRCLE
    nonoscillatory: bool = True

    @field_validator("class_at_zero")
    @classmethod
    def validate_class(cls, v: Classification) -> Classification:
        if v not in (Classification.LIMIT_POINT, Classification.LIMIT_CIRCLE):
            raise ValueError(f"Channel class at zero must be LimitPoint or LimitCircle, got {v}")
        return v


class SelfAdjointnessReport(BaseModel):
    """Self-adjointness certificate assembled from per-channel criteria."""

    n: int = Field(ge=2)
    alpha: str
    potential: str
    certified: bool
    channels: dict[int, CriterionVerdict] = Field(default_factory=dict)

    def to_report(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "potential": self.potential,
            "certified": self.certified,
            "channels": {str(ell): v.to_report() for ell, v in self.channels.items()},
        }


class BoundaryValues(BaseModel):
    """Generalized boundary values from a least-squares fit near the origin."""

    g_tilde0: float = Field(description="Coefficient of the nonprincipal solution.")
    g_tilde_prime0: float = Field(description="Coefficient of the principal solution.")
    residual: float = Field(ge=0, description="Relative residual of the fit.")
    logarithmic: bool = Field(description="Whether the logarithmic nonprincipal shape was used.")
    windows: list[tuple[float, float]] = Field(description="Fit windows used.")
    sensitivity: float = Field(
        ge=0, description="Relative change of g_tilde0 between the two windows."
    )


# ----------------------------------------------------------------------
# Settings
# ----------------------------------------------------------------------


class CriteriaSettings(BaseModel):
    """Settings of the analytic dominance search."""

    window: tuple[float, float] = (1e-12, 1e-3)
    grid_points: int = Field(default=256, ge=64)
    max_N: int = Field(default=4, ge=0, le=4)
    eps_ladder: list[str] = Field(default_factory=lambda: ["1/2", "1/4", "1/8", "1/16"])
    rel_tol: float = Field(default=1e-9, ge=0)
    auto_shrink: bool = False
    shrink_rounds: int = Field(default=3, ge=0)
    shrink_factor: float = Field(default=1e-3, gt=0, lt=1)

    @field_validator("eps_ladder")
    @classmethod
    def validate_ladder(cls, v: list[str]) -> list[str]:
        values = [Fraction(str(e)) for e in v]
        if not values or any(e <= 0 for e in values):
            raise ValueError("eps_ladder must list positive rationals")
        return [str(e) for e in values]

    @property
    def ladder(self) -> list[Fraction]:
        return [Fraction(e) for e in self.eps_ladder]


class WeylSettings(BaseModel):
    """Settings and heuristics of the numerical Weyl probes."""

    z_real: float = 0.0
    z_imag: float = 1.0
    anchor: float | None = None
    t_max: float = Field(default=60.0, gt=0)
    rtol: float = Field(default=1e-10, gt=0)
    atol: float = Field(default=1e-14, gt=0)
    method: str = "DOP853"
    rho_max: float = Field(default=0.9, gt=0, lt=1)
    m: int = Field(default=6, ge=1)
    growth: float = Field(default=1e8, gt=1)
    persist_tol: float = Field(default=1e-6, ge=0, lt=1)
    tail_tol: float = Field(default=1e-3, gt=0)
    samples_per_window: int = Field(default=64, ge=64)


class HardySettings(BaseModel):
    """Settings of the discrete Hardy checks."""

    n_grid: int = Field(default=2000, ge=3)
    x_min_ratio: float = Field(default=1e-6, gt=0, lt=1)
    rtol: float = Field(default=1e-10, gt=0)
    max_iter: int = Field(default=200, ge=1)
    pass_tol: float = Field(default=1e-8, ge=0)
    quadrature_order: int = Field(default=3, ge=1)


class MultidimSettings(BaseModel):
    """Settings of the radial-channel reports and boundary fits."""

    ell_max: int = Field(default=8, ge=0)
    x0: float = Field(default=1e-3, gt=0)
    fit_points: int = Field(default=64, ge=4)
    fit_tol: float = Field(default=1e-4, gt=0)
