"""Shot-level state machine of the sealed-message protocol.

One shot: the message receiver prepares one of four pure states uniformly at
random and sends the particle; an eavesdropper's channel may act in transit;
the message sender measures sigma1 or sigma3 uniformly at random, announces
the basis, then with probability ``p_announce`` announces a coded bit (the
message bit, flipped when her result was -1) and otherwise announces the raw
result.  Roles are fixed: the particle flows from the message receiver to
the message sender, and only announcements flow back.

The module also provides the receiver's decoding and mismatch accounting and
a seeded Monte Carlo harness.  Randomness contract: a run is a pure function
of (params, channel, stream); Monte Carlo trial t uses stream t, derived from
the root seed by a spawn key, so trials can run in any order or in parallel
without changing anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

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

# Fixed ordering of the four bit-announcement symbols used everywhere
# frequencies or probabilities are reported as 4-vectors.
BIT_ANNOUNCEMENT_ALPHABET: tuple[tuple[MeasurementBasis, int], ...] = (
    (MeasurementBasis.SIGMA1, 0),
    (MeasurementBasis.SIGMA1, 1),
    (MeasurementBasis.SIGMA3, 0),
    (MeasurementBasis.SIGMA3, 1),
)

_STATES = tuple(ProtocolPureState)
_BASES = (MeasurementBasis.SIGMA1, MeasurementBasis.SIGMA3)

# the basis whose eigenstates include the preparation
_MATCHING_BASIS = {
    ProtocolPureState.ZERO: MeasurementBasis.SIGMA3,
    ProtocolPureState.ONE: MeasurementBasis.SIGMA3,
    ProtocolPureState.PLUS: MeasurementBasis.SIGMA1,
    ProtocolPureState.MINUS: MeasurementBasis.SIGMA1,
}

# result the receiver expects on a matched basis from an undisturbed particle
_PREDICTED_RESULT = {
    ProtocolPureState.ZERO: MeasurementResult.PLUS,
    ProtocolPureState.PLUS: MeasurementResult.PLUS,
    ProtocolPureState.ONE: MeasurementResult.MINUS,
    ProtocolPureState.MINUS: MeasurementResult.MINUS,
}


@dataclass(frozen=True)
class ProtocolParams:
    """Knobs of a run: shot count N, bit-announcement probability, message, seed."""

    n_shots: int
    p_announce: float
    message_bit: int
    seed: int

    def __post_init__(self):
        if self.n_shots < 1:
            raise ValueError("need at least one shot")
        if not 0.0 <= self.p_announce <= 1.0:
            raise ValueError(f"announcement probability must lie in [0, 1], got {self.p_announce}")
        if self.message_bit not in (0, 1):
            raise ValueError("message bit must be 0 or 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True, slots=True)
class BitAnnouncement:
    """Coded bit c: equals the message bit iff the measurement gave +1."""

    c: int


@dataclass(frozen=True, slots=True)
class ResultAnnouncement:
    """Raw measurement result; carries nothing about the message."""

    m: MeasurementResult


Announcement = BitAnnouncement | ResultAnnouncement


@dataclass(frozen=True, slots=True)
class ShotRecord:
    prep: ProtocolPureState
    basis: MeasurementBasis
    result: MeasurementResult
    announcement: Announcement


@dataclass(frozen=True)
class PublicTranscript:
    """What everyone hears: per shot, the basis and the announcement only."""

    entries: tuple[tuple[MeasurementBasis, Announcement], ...]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class RunOutcome:
    """The receiver's view of one run: decode result and noise check."""

    decoded_bit: int | None
    matched_bit_announcements: int
    matched_result_announcements: int
    mismatch_count: int


def matching_basis(prep: ProtocolPureState, basis: MeasurementBasis) -> bool:
    return _MATCHING_BASIS[prep] is basis


def predicted_result(prep: ProtocolPureState) -> MeasurementResult:
    return _PREDICTED_RESULT[prep]


class ShotSampler:
    """Per-channel sampler with the eight Born probabilities precomputed."""

    def __init__(self, eve: KrausChannel):
        report = validate_channel(eve)
        if not report.passes:
            raise ValueError(
                f"channel {eve.label!r} fails completeness (deviation {report.deviation:.3e})"
            )
        self.channel = eve
        self._p_plus = [
            [
                measurement_prob(apply_channel(eve, state_density(s)), b, MeasurementResult.PLUS)
                for b in _BASES
            ]
            for s in _STATES
        ]

    def from_variates(
        self,
        prep_idx: int,
        basis_idx: int,
        u_result: float,
        u_announce: float,
        message_bit: int,
        p_announce: float,
    ) -> ShotRecord:
        result = (
            MeasurementResult.PLUS
            if u_result < self._p_plus[prep_idx][basis_idx]
            else MeasurementResult.MINUS
        )
        if u_announce < p_announce:
            announcement: Announcement = BitAnnouncement(
                message_bit ^ (result is MeasurementResult.MINUS)
            )
        else:
            announcement = ResultAnnouncement(result)
        return ShotRecord(_STATES[prep_idx], _BASES[basis_idx], result, announcement)

    def sample(self, rng: np.random.Generator, message_bit: int, p_announce: float) -> ShotRecord:
        return self.from_variates(
            int(rng.integers(4)),
            int(rng.integers(2)),
            float(rng.random()),
            float(rng.random()),
            message_bit,
            p_announce,
        )


def run_shot(
    rng: np.random.Generator,
    message_bit: int,
    p_announce: float,
    eve: KrausChannel,
) -> ShotRecord:
    """One protocol shot, drawing from the given generator.

    The channel acts between preparation and measurement: the result is
    sampled from the Born rule on the evolved state by comparing one uniform
    variate against Pr(+1).  Draw order per shot is fixed: preparation,
    basis, result variate, announcement-type variate.
    """
    if message_bit not in (0, 1):
        raise ValueError("message bit must be 0 or 1")
    if not 0.0 <= p_announce <= 1.0:
        raise ValueError(f"announcement probability must lie in [0, 1], got {p_announce}")
    return ShotSampler(eve).sample(rng, message_bit, p_announce)


def _decode_votes(shots) -> list[int]:
    votes = []
    for rec in shots:
        if isinstance(rec.announcement, BitAnnouncement) and matching_basis(rec.prep, rec.basis):
            flip = predicted_result(rec.prep) is MeasurementResult.MINUS
            votes.append(rec.announcement.c ^ flip)
    return votes


def bob_decode(shots) -> int | None:
    """Majority vote over matched-basis bit-announcements.

    Each such shot contributes the announced bit, flipped when the
    preparation was |1> or |->.  Returns None when there are no votes or the
    vote ties.
    """
    votes = _decode_votes(shots)
    ones = sum(votes)
    zeros = len(votes) - ones
    if ones == zeros:
        return None
    return 1 if ones > zeros else 0


def tally_mismatches(shots) -> tuple[int, int]:
    """(mismatches, matched-basis result-announcements) for one run.

    Only result-announcements on a matched basis are usable for the noise
    check; a mismatch is one whose result contradicts the preparation.
    """
    matched = 0
    mismatches = 0
    for rec in shots:
        if isinstance(rec.announcement, ResultAnnouncement) and matching_basis(
            rec.prep, rec.basis
        ):
            matched += 1
            if rec.result is not predicted_result(rec.prep):
                mismatches += 1
    return mismatches, matched


def public_transcript(shots) -> PublicTranscript:
    return PublicTranscript(tuple((rec.basis, rec.announcement) for rec in shots))


def _stream_rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stream,)))


def run_protocol(
    params: ProtocolParams, eve: KrausChannel, stream: int = 0
) -> tuple[list[ShotRecord], PublicTranscript, RunOutcome]:
    """One full run of ``params.n_shots`` shots.

    Deterministic in (params, eve, stream): the per-shot variates are drawn
    as one block from the stream's generator, so shot s always sees the same
    four variates no matter how the run is scheduled.  ``stream`` selects a
    substream of the root seed; Monte Carlo trial t uses stream t.
    """
    sampler = ShotSampler(eve)
    return _run_with_sampler(params, sampler, stream)


def _run_with_sampler(
    params: ProtocolParams, sampler: ShotSampler, stream: int
) -> tuple[list[ShotRecord], PublicTranscript, RunOutcome]:
    n = params.n_shots
    rng = _stream_rng(params.seed, stream)
    preps = rng.integers(0, 4, n)
    bases = rng.integers(0, 2, n)
    u_result = rng.random(n)
    u_announce = rng.random(n)
    b = params.message_bit
    pa = params.p_announce
    shots = [
        sampler.from_variates(preps[s], bases[s], u_result[s], u_announce[s], b, pa)
        for s in range(n)
    ]
    mismatches, matched_ra = tally_mismatches(shots)
    votes = _decode_votes(shots)
    ones = sum(votes)
    zeros = len(votes) - ones
    decoded = None if ones == zeros else (1 if ones > zeros else 0)
    outcome = RunOutcome(decoded, len(votes), matched_ra, mismatches)
    return shots, public_transcript(shots), outcome


def _freq_and_se(count: int, total: int) -> tuple[float, float]:
    if total == 0:
        return math.nan, math.nan
    f = count / total
    return f, math.sqrt(f * (1.0 - f) / total)


@dataclass(frozen=True)
class SimStats:
    """Aggregated Monte Carlo counts with frequency and standard-error views.

    Bit-announcement counts follow :data:`BIT_ANNOUNCEMENT_ALPHABET` order and
    frequencies are conditioned on the shot being a bit-announcement, which
    is what the single-announcement probabilities predict.
    """

    trials: int
    shots: int
    bit_announcement_counts: tuple[int, int, int, int]
    matched_result_announcements: int
    mismatch_count: int
    decode_success_count: int
    decode_correct_count: int

    @property
    def bit_announcement_total(self) -> int:
        return sum(self.bit_announcement_counts)

    @property
    def bit_announcement_freqs(self) -> tuple[float, float, float, float]:
        total = self.bit_announcement_total
        return tuple(_freq_and_se(c, total)[0] for c in self.bit_announcement_counts)

    @property
    def bit_announcement_errs(self) -> tuple[float, float, float, float]:
        total = self.bit_announcement_total
        return tuple(_freq_and_se(c, total)[1] for c in self.bit_announcement_counts)

    @property
    def mismatch_rate(self) -> float:
        return _freq_and_se(self.mismatch_count, self.matched_result_announcements)[0]

    @property
    def mismatch_rate_err(self) -> float:
        return _freq_and_se(self.mismatch_count, self.matched_result_announcements)[1]

    @property
    def decode_success_rate(self) -> float:
        return _freq_and_se(self.decode_success_count, self.trials)[0]

    @property
    def decode_success_err(self) -> float:
        return _freq_and_se(self.decode_success_count, self.trials)[1]

    @property
    def decode_correct_rate(self) -> float:
        """Fraction of successful decodes that recovered the true bit."""
        return _freq_and_se(self.decode_correct_count, self.decode_success_count)[0]

    @property
    def decode_correct_err(self) -> float:
        return _freq_and_se(self.decode_correct_count, self.decode_success_count)[1]


def _announcement_index(basis: MeasurementBasis, c: int) -> int:
    return (2 if basis is MeasurementBasis.SIGMA3 else 0) + c


def monte_carlo(params: ProtocolParams, eve: KrausChannel, trials: int) -> SimStats:
    """Run ``trials`` independent runs and aggregate order-independent counts."""
    if trials < 1:
        raise ValueError("need at least one trial")
    sampler = ShotSampler(eve)
    ba_counts = [0, 0, 0, 0]
    matched_ra = 0
    mismatches = 0
    successes = 0
    correct = 0
    for t in range(trials):
        shots, _, outcome = _run_with_sampler(params, sampler, t)
        for rec in shots:
            ann = rec.announcement
            if type(ann) is BitAnnouncement:
                ba_counts[_announcement_index(rec.basis, ann.c)] += 1
        matched_ra += outcome.matched_result_announcements
        mismatches += outcome.mismatch_count
        if outcome.decoded_bit is not None:
            successes += 1
            if outcome.decoded_bit == params.message_bit:
                correct += 1
    return SimStats(
        trials=trials,
        shots=trials * params.n_shots,
        bit_announcement_counts=tuple(ba_counts),
        matched_result_announcements=matched_ra,
        mismatch_count=mismatches,
        decode_success_count=successes,
        decode_correct_count=correct,
    )


_PREP_LABEL = {
    ProtocolPureState.ZERO: "0",
    ProtocolPureState.ONE: "1",
    ProtocolPureState.PLUS: "+",
    ProtocolPureState.MINUS: "-",
}


def transcript_lines(shots, public: bool = False):
    """CSV lines for a run's records (full, or the public projection)."""
    if public:
        yield "shot_index,basis,announcement_kind,announced_value"
    else:
        yield "shot_index,prep,basis,result,announcement_kind,announced_value"
    for idx, rec in enumerate(shots):
        ann = rec.announcement
        if isinstance(ann, BitAnnouncement):
            kind, value = "bit", str(ann.c)
        else:
            kind, value = "result", f"{int(ann.m):+d}"
        if public:
            yield f"{idx},{rec.basis.value},{kind},{value}"
        else:
            yield (
                f"{idx},{_PREP_LABEL[rec.prep]},{rec.basis.value},"
                f"{int(rec.result):+d},{kind},{value}"
            )


def export_transcript(shots, path: str | Path, public: bool = False, comments=()) -> None:
    lines = [f"# {c}" for c in comments]
    lines.extend(transcript_lines(shots, public=public))
    Path(path).write_text("\n".join(lines) + "\n")
