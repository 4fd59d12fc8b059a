"""Closed-form eavesdropping analysis.

Computes what an eavesdropper's channel leaks about the message bit
(Shannon mutual information between the message and the string of coded
bit-announcements, averaged over string lengths with binomial weights) and
how much disturbance it causes (probability of a mismatch in the receiver's
channel check), for arbitrary Kraus channels and for the builtin damping
family.

All logarithms are base 2, so information is in bits and the one-bit
message bounds every result by 1.  0 * log 0 is 0 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from sealsim.qubit import (
    KrausChannel,
    MeasurementBasis,
    MeasurementResult,
    ProtocolPureState,
    apply_channel,
    measurement_prob,
    state_density,
    validate_channel,
)

_DISTRIBUTION_TOL = 1e-12
# Probabilities below this are flushed to zero before logs are taken.
_PROB_FLOOR = 1e-300
_DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class AnnouncementDistribution:
    """Per-announcement probabilities over the four-symbol alphabet.

    ``probs_given_b[b]`` is the distribution of a single bit-announcement
    conditioned on message bit b, ordered as
    [(sigma1, c=0), (sigma1, c=1), (sigma3, c=0), (sigma3, c=1)].
    Flipping the message swaps the two c-values within each basis.
    """

    probs_given_b: tuple[tuple[float, float, float, float], tuple[float, float, float, float]]

    def __post_init__(self):
        rows = tuple(tuple(float(p) for p in row) for row in self.probs_given_b)
        if len(rows) != 2 or any(len(r) != 4 for r in rows):
            raise ValueError("expected two 4-vectors of probabilities")
        for row in rows:
            if any(p < -_DISTRIBUTION_TOL or p > 1.0 + _DISTRIBUTION_TOL for p in row):
                raise ValueError(f"probabilities out of range: {row}")
            if abs(sum(row) - 1.0) > _DISTRIBUTION_TOL:
                raise ValueError(f"probabilities must sum to 1: {row}")
        swapped = (rows[1][1], rows[1][0], rows[1][3], rows[1][2])
        if any(abs(a - b) > _DISTRIBUTION_TOL for a, b in zip(rows[0], swapped)):
            raise ValueError("distributions for the two message values must be c-swaps")
        object.__setattr__(self, "probs_given_b", rows)


@dataclass(frozen=True)
class MIResult:
    """Expected mutual information plus truncation diagnostics."""

    mi_bits: float
    k_terms_used: int
    truncation_mass: float

    def __post_init__(self):
        if not -1e-12 <= self.mi_bits <= 1.0 + 1e-12:
            raise ValueError(f"mutual information out of [0, 1]: {self.mi_bits}")
        object.__setattr__(self, "mi_bits", min(max(self.mi_bits, 0.0), 1.0))


@dataclass(frozen=True)
class StringCountClass:
    """Strings of k bit-announcements grouped by their sigma3 symbol counts.

    ``d3`` and ``d4`` count (sigma3, c=0) and (sigma3, c=1).  The two sigma1
    symbols are interchangeable for the damping family (equal probability 1/4
    under either message value), so only their total k - d3 - d4 matters.
    """

    k: int
    d3: int
    d4: int

    def __post_init__(self):
        if self.d3 < 0 or self.d4 < 0 or self.d3 + self.d4 > self.k:
            raise ValueError(f"invalid counts ({self.d3}, {self.d4}) for k={self.k}")

    @property
    def sigma1_count(self) -> int:
        return self.k - self.d3 - self.d4

    def string_count(self) -> int:
        """Number of distinct strings in this class.

        Multinomial placement of the symbol groups times 2 per sigma1 slot
        (either c-value).
        """
        n = math.factorial(self.k) // (
            math.factorial(self.d3) * math.factorial(self.d4) * math.factorial(self.sigma1_count)
        )
        return n * 2**self.sigma1_count


class MismatchProbability(NamedTuple):
    per_shot: float
    matched_basis_conditional: float


def _log_factorials(n: int) -> np.ndarray:
    table = np.zeros(n + 1)
    if n >= 2:
        table[2:] = np.cumsum(np.log(np.arange(2.0, n + 1.0)))
    return table


def _safe_log(values: np.ndarray) -> np.ndarray:
    out = np.full_like(values, -np.inf)
    mask = values > _PROB_FLOOR
    out[mask] = np.log(values[mask])
    return out


def _jsd_bits(p0: np.ndarray, p1: np.ndarray) -> float:
    """Sum of 0.5*[p0 log2(p0/m) + p1 log2(p1/m)], m the midpoint.

    This is the mutual information contributed by outcome groups with
    conditional masses p0 and p1 under a uniform binary prior.
    """
    mid = 0.5 * (p0 + p1)
    with np.errstate(divide="ignore", invalid="ignore"):
        t0 = np.where(p0 > 0.0, p0 * np.log2(np.where(p0 > 0.0, p0 / mid, 1.0)), 0.0)
        t1 = np.where(p1 > 0.0, p1 * np.log2(np.where(p1 > 0.0, p1 / mid, 1.0)), 0.0)
    total = 0.5 * float(t0.sum() + t1.sum())
    return max(total, 0.0)


def bit_announcement_probs(eve: KrausChannel) -> AnnouncementDistribution:
    """Single-announcement probabilities induced by the channel.

    Only the image of the maximally mixed state matters: with Bloch
    coordinates (lam, v) of that image,
    Pr(sigma_i, c=b | b) = (1 + lam*v_i)/4 and
    Pr(sigma_i, c!=b | b) = (1 - lam*v_i)/4 for i in {1, 3}.
    """
    report = validate_channel(eve)
    if not report.passes:
        raise ValueError(
            f"channel {eve.label!r} fails completeness (deviation {report.deviation:.3e})"
        )
    bloch = report.chaotic_image
    r1 = bloch.lam * bloch.v[0]
    r3 = bloch.lam * bloch.v[2]
    given_0 = (0.25 * (1 + r1), 0.25 * (1 - r1), 0.25 * (1 + r3), 0.25 * (1 - r3))
    given_1 = (given_0[1], given_0[0], given_0[3], given_0[2])
    return AnnouncementDistribution((given_0, given_1))


def mutual_information_k(dist: AnnouncementDistribution, k: int) -> float:
    """I(announcement string : message) in bits for strings of length k.

    Strings sharing a symbol-count profile (d1, d2, d3, d4) are grouped; the
    group's total conditional mass is the multinomial coefficient times the
    per-string product, accumulated in log space.
    """
    if k < 0:
        raise ValueError("string length must be non-negative")
    if k == 0:
        return 0.0
    log_a0 = _safe_log(np.array(dist.probs_given_b[0]))
    log_a1 = _safe_log(np.array(dist.probs_given_b[1]))
    lf = _log_factorials(k)

    idx = np.arange(k + 1)
    d1, d2, d3 = np.meshgrid(idx, idx, idx, indexing="ij")
    keep = d1 + d2 + d3 <= k
    d1, d2, d3 = d1[keep], d2[keep], d3[keep]
    d4 = k - d1 - d2 - d3

    log_mult = lf[k] - lf[d1] - lf[d2] - lf[d3] - lf[d4]
    counts = (d1, d2, d3, d4)
    with np.errstate(invalid="ignore"):
        lp0 = log_mult + sum(
            np.where(d > 0, d * la, 0.0) for d, la in zip(counts, log_a0)
        )
        lp1 = log_mult + sum(
            np.where(d > 0, d * la, 0.0) for d, la in zip(counts, log_a1)
        )
    return _jsd_bits(np.exp(lp0), np.exp(lp1))


def _binomial_pmf(n: int, p: float) -> np.ndarray:
    """Exact-to-rounding binomial weights for k = 0..n via log factorials."""
    if p == 0.0:
        out = np.zeros(n + 1)
        out[0] = 1.0
        return out
    if p == 1.0:
        out = np.zeros(n + 1)
        out[n] = 1.0
        return out
    k = np.arange(n + 1.0)
    lf = _log_factorials(n)
    log_pmf = lf[n] - lf[: n + 1] - lf[::-1] + k * math.log(p) + (n - k) * math.log1p(-p)
    return np.exp(log_pmf)


def _expected_mi(
    per_k: Callable[[int], float], n_shots: int, p_announce: float, tail_tol: float
) -> MIResult:
    if n_shots < 1:
        raise ValueError("need at least one shot")
    if not 0.0 <= p_announce <= 1.0:
        raise ValueError(f"announcement probability must lie in [0, 1], got {p_announce}")
    if not 0.0 < tail_tol <= 1e-6:
        raise ValueError(f"tail tolerance must lie in (0, 1e-6], got {tail_tol}")

    pmf = _binomial_pmf(n_shots, p_announce)
    # keep the most likely string lengths until the omitted mass is negligible
    order = np.argsort(-pmf, kind="stable")
    included: list[int] = []
    mass = 0.0
    for k in order:
        included.append(int(k))
        mass += pmf[k]
        if 1.0 - mass < tail_tol:
            break
    # fixed ascending-k summation order for bitwise reproducibility
    mi = 0.0
    for k in sorted(included):
        if pmf[k] > 0.0 and k > 0:
            mi += float(pmf[k]) * per_k(k)
    return MIResult(mi, len(included), float(max(1.0 - mass, 0.0)))


def expected_mutual_information(
    dist: AnnouncementDistribution,
    n_shots: int,
    p_announce: float,
    tail_tol: float = _DEFAULT_TAIL_TOL,
) -> MIResult:
    """Binomially weighted mutual information over announcement-string lengths.

    Returns sum_k Pr(k bit-announcements) * I(string of length k : message),
    summing string lengths in decreasing-probability order until the omitted
    binomial mass drops below ``tail_tol`` (recorded as ``truncation_mass``).
    """
    return _expected_mi(lambda k: mutual_information_k(dist, k), n_shots, p_announce, tail_tol)


def seal_class_masses(
    x: float, k: int
) -> list[tuple[StringCountClass, float, float]]:
    """Class-total string probabilities for the damping family.

    For each symbol-count class, returns the total probability of all its
    strings conditioned on each message value: the class string count times
    (1/4)^k (1 +/- x)^d3 (1 -/+ x)^d4.  Summed over classes each column is 1.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"damping strength must lie in [0, 1], got {x}")
    if k < 0:
        raise ValueError("string length must be non-negative")
    lf = _log_factorials(k)
    log_quarter = math.log(0.25)
    log_plus = math.log1p(x)
    log_minus = math.log1p(-x) if x < 1.0 else -math.inf
    log2 = math.log(2.0)

    out = []
    for d3 in range(k + 1):
        for d4 in range(k - d3 + 1):
            cls = StringCountClass(k, d3, d4)
            m = cls.sigma1_count
            log_mult = lf[k] - lf[d3] - lf[d4] - lf[m] + m * log2
            base = log_mult + k * log_quarter
            lp = base + (d3 * log_plus if d3 else 0.0) + (d4 * log_minus if d4 else 0.0)
            lq = base + (d3 * log_minus if d3 else 0.0) + (d4 * log_plus if d4 else 0.0)
            out.append((cls, math.exp(lp), math.exp(lq)))
    return out


def seal_mutual_information_k(x: float, k: int) -> float:
    """Damping-family specialization of :func:`mutual_information_k`.

    Works on sigma3-count classes only; the two sigma1 symbols are grouped,
    which loses nothing because their likelihood ratio between the two
    message values is exactly 1.
    """
    masses = seal_class_masses(x, k)
    p0 = np.array([m[1] for m in masses])
    p1 = np.array([m[2] for m in masses])
    return _jsd_bits(p0, p1)


def seal_expected_mutual_information(
    x: float,
    n_shots: int,
    p_announce: float,
    tail_tol: float = _DEFAULT_TAIL_TOL,
) -> MIResult:
    """Expected mutual information for the damping family at strength x.

    Same binomial weighting as :func:`expected_mutual_information` but with
    the grouped-class per-length evaluator; the two must agree to well under
    1e-9 bits.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"damping strength must lie in [0, 1], got {x}")
    return _expected_mi(lambda k: seal_mutual_information_k(x, k), n_shots, p_announce, tail_tol)


_MISMATCH_EVENTS = (
    (ProtocolPureState.PLUS, MeasurementBasis.SIGMA1, MeasurementResult.MINUS),
    (ProtocolPureState.MINUS, MeasurementBasis.SIGMA1, MeasurementResult.PLUS),
    (ProtocolPureState.ZERO, MeasurementBasis.SIGMA3, MeasurementResult.MINUS),
    (ProtocolPureState.ONE, MeasurementBasis.SIGMA3, MeasurementResult.PLUS),
)


def mismatch_probability(eve: KrausChannel) -> MismatchProbability:
    """Probability that a shot contradicts the receiver's preparation.

    ``per_shot`` averages the four contradiction events over the uniform
    preparation (1/4) and measurement (1/2) choices;
    ``matched_basis_conditional`` conditions on the basis having matched,
    which removes one factor of 1/2.  Unlike the announcement distribution,
    this depends on the channel's action on each pure state separately, not
    just on its action on the maximally mixed state.
    """
    per_shot = 0.0
    for prep, basis, result in _MISMATCH_EVENTS:
        evolved = apply_channel(eve, state_density(prep))
        per_shot += 0.125 * measurement_prob(evolved, basis, result)
    return MismatchProbability(per_shot, 2.0 * per_shot)


def decode_success_probability(n_shots: int, p_announce: float) -> float:
    """Chance the receiver gets at least one usable announcement.

    A shot contributes a decoding vote when it is a bit-announcement (prob
    p_announce) on a matched basis (prob 1/2), so over an undisturbed run of
    N shots the receiver can decode with probability 1 - (1 - p_announce/2)^N.
    Read as the per-run decode probability; a per-shot reading would conflict
    with the matched-basis rate being exactly 1/2.
    """
    if n_shots < 1:
        raise ValueError("need at least one shot")
    if not 0.0 <= p_announce <= 1.0:
        raise ValueError(f"announcement probability must lie in [0, 1], got {p_announce}")
    return 1.0 - (1.0 - 0.5 * p_announce) ** n_shots
