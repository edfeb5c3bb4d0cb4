"""Eigenvalue-threshold entanglement certification.

A squeezing-matrix eigenvalue below 1 witnesses particle entanglement; a
mode-separability eigenvalue below 1/k rules out k-producibility over the
modes and therefore certifies genuine (k+1)-partite mode entanglement. The
certification margin is deliberately strict (1e-12 below a threshold) so
rounding can never over-claim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DomainError
from .matrices import MatrixKind, TaggedMatrix

__all__ = [
    "CERTIFICATION_MARGIN",
    "HIERARCHY_SLACK",
    "DepthCertificate",
    "WitnessReport",
    "shot_noise_witness",
    "k_producibility_witness",
    "qfi_depth_witness",
    "hierarchy_check",
    "witness_report",
]

# A bound 1/k counts as violated only if the eigenvalue is below it by more
# than this margin.
CERTIFICATION_MARGIN = 1e-12
# Numerical slack allowed when asserting the measurement-vs-Fisher hierarchy.
HIERARCHY_SLACK = 1e-9


@dataclass(frozen=True)
class DepthCertificate:
    """Which k-producibility bounds a matrix eigenvalue violates.

    ``certified_depth`` is the largest violated k (1 when nothing is
    violated, distinguishable via the empty ``thresholds_crossed``);
    ``genuine_parties`` is the certified entanglement depth k+1, capped at
    the mode count, or None without a violation.
    """

    value: float
    thresholds_crossed: tuple = field(default_factory=tuple)

    @property
    def largest_violated_k(self) -> int | None:
        return max((k for k, _ in self.thresholds_crossed), default=None)

    @property
    def certified_depth(self) -> int:
        k = self.largest_violated_k
        return 1 if k is None else k

    @property
    def genuine_parties(self) -> int | None:
        k = self.largest_violated_k
        return None if k is None else k + 1


def _depth_certificate(value: float, modes: int) -> DepthCertificate:
    crossed = tuple(
        (k, 1.0 / k) for k in range(1, modes)
        if value < 1.0 / k - CERTIFICATION_MARGIN
    )
    return DepthCertificate(value, crossed)


def shot_noise_witness(xi2: TaggedMatrix) -> bool:
    """True iff the squeezing matrix certifies particle entanglement."""
    if xi2.kind is not MatrixKind.XI2:
        raise DomainError("shot-noise witness needs an XI2 matrix")
    return xi2.lambda_min() < 1.0 - 1e-10


def k_producibility_witness(xi2_ms: TaggedMatrix) -> DepthCertificate:
    """Mode-entanglement depth certified by the mode-separability matrix.

    Any M-mode state is M-producible, so only bounds with k < M are
    testable; the certified party count is capped at M accordingly.
    """
    if xi2_ms.kind is not MatrixKind.XI2_MS:
        raise DomainError("k-producibility witness needs an XI2_MS matrix")
    return _depth_certificate(xi2_ms.lambda_min(), xi2_ms.dim)


def qfi_depth_witness(chi_ms: TaggedMatrix) -> DepthCertificate:
    """Depth certificate from the Fisher-matrix bound 1/lambda_max >= 1/k."""
    if chi_ms.kind is not MatrixKind.CHI_INV2_MS:
        raise DomainError("Fisher depth witness needs a CHI_INV2_MS matrix")
    return _depth_certificate(1.0 / chi_ms.lambda_max(), chi_ms.dim)


def hierarchy_check(xi_like: TaggedMatrix, chi_like: TaggedMatrix,
                    kind: str = "standard") -> bool:
    """lambda_min(squeezing) >= 1 / lambda_max(Fisher) within slack.

    The gap between the two sides measures how much of the state's
    sensitivity the chosen local observables fail to extract.
    """
    expected = {
        "standard": (MatrixKind.XI2, MatrixKind.CHI_INV2),
        "mode_sep": (MatrixKind.XI2_MS, MatrixKind.CHI_INV2_MS),
    }
    if kind not in expected:
        raise DomainError(f"unknown hierarchy kind {kind!r}")
    want_xi, want_chi = expected[kind]
    if xi_like.kind is not want_xi or chi_like.kind is not want_chi:
        raise DomainError("matrix kinds do not match the requested hierarchy")
    if xi_like.dim != chi_like.dim:
        raise DomainError("dimension mismatch")
    return xi_like.lambda_min() >= 1.0 / chi_like.lambda_max() - HIERARCHY_SLACK


@dataclass(frozen=True)
class WitnessReport:
    """Full certification summary for one state.

    Reports both the raw hierarchy quantities and the derived flags; the
    depth fields disambiguate the off-by-one between "largest violated k"
    and "certified genuine (k+1)-partite entanglement".
    """

    lambda_min_xi2: float
    lambda_min_xi2_ms: float
    inv_lambda_max_chi2: float | None
    inv_lambda_max_chi2_ms: float | None
    particle_entangled: bool
    certified_depth: int
    genuine_parties: int | None
    thresholds_crossed: tuple

    def to_dict(self) -> dict:
        return {
            "lambda_min_xi2": self.lambda_min_xi2,
            "lambda_min_xi2_ms": self.lambda_min_xi2_ms,
            "inv_lambda_max_chi2": self.inv_lambda_max_chi2,
            "inv_lambda_max_chi2_ms": self.inv_lambda_max_chi2_ms,
            "particle_entangled": self.particle_entangled,
            "certified_depth": self.certified_depth,
            "genuine_parties": self.genuine_parties,
            "thresholds_crossed": [
                {"k": k, "bound": bound} for k, bound in self.thresholds_crossed
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def witness_report(
    xi2: TaggedMatrix,
    xi2_ms: TaggedMatrix,
    chi_inv2: TaggedMatrix | None = None,
    chi_inv2_ms: TaggedMatrix | None = None,
) -> WitnessReport:
    """Assemble the certification report from the available matrices."""
    cert = k_producibility_witness(xi2_ms)
    return WitnessReport(
        lambda_min_xi2=xi2.lambda_min(),
        lambda_min_xi2_ms=cert.value,
        inv_lambda_max_chi2=(1.0 / chi_inv2.lambda_max()) if chi_inv2 else None,
        inv_lambda_max_chi2_ms=(1.0 / chi_inv2_ms.lambda_max()) if chi_inv2_ms else None,
        particle_entangled=shot_noise_witness(xi2),
        certified_depth=cert.certified_depth,
        genuine_parties=cert.genuine_parties,
        thresholds_crossed=cert.thresholds_crossed,
    )
