"""Sealed-message protocol simulator and eavesdropping analysis toolkit.

``qubit`` holds the two-level state and channel arithmetic, ``protocol`` the
shot-level state machine and Monte Carlo harness, ``analysis`` the
closed-form information-gain and disturbance formulas, ``channel_file`` the
JSON channel format, and ``cli`` the command-line front end.
"""

from sealsim.analysis import (
    AnnouncementDistribution,
    MIResult,
    MismatchProbability,
    StringCountClass,
    bit_announcement_probs,
    decode_success_probability,
    expected_mutual_information,
    mismatch_probability,
    mutual_information_k,
    seal_class_masses,
    seal_expected_mutual_information,
    seal_mutual_information_k,
)
from sealsim.channel_file import (
    ChannelFormatError,
    channel_to_json,
    load_channel,
    parse_channel,
    save_channel,
)
from sealsim.protocol import (
    BIT_ANNOUNCEMENT_ALPHABET,
    Announcement,
    BitAnnouncement,
    ProtocolParams,
    PublicTranscript,
    ResultAnnouncement,
    RunOutcome,
    ShotRecord,
    SimStats,
    bob_decode,
    export_transcript,
    matching_basis,
    monte_carlo,
    predicted_result,
    public_transcript,
    run_protocol,
    run_shot,
    tally_mismatches,
)
from sealsim.qubit import (
    BlochVector,
    ChannelValidation,
    DensityMatrix,
    KrausChannel,
    MeasurementBasis,
    MeasurementResult,
    ProtocolPureState,
    apply_channel,
    bloch_from_density,
    density_from_bloch,
    dephasing_channel,
    depolarizing_channel,
    identity_channel,
    maximally_mixed,
    measurement_prob,
    seal_channel,
    state_density,
    state_vector,
    validate_channel,
)

__all__ = [
    "Announcement",
    "AnnouncementDistribution",
    "BIT_ANNOUNCEMENT_ALPHABET",
    "BitAnnouncement",
    "BlochVector",
    "ChannelFormatError",
    "ChannelValidation",
    "DensityMatrix",
    "KrausChannel",
    "MIResult",
    "MeasurementBasis",
    "MeasurementResult",
    "MismatchProbability",
    "ProtocolParams",
    "ProtocolPureState",
    "PublicTranscript",
    "ResultAnnouncement",
    "RunOutcome",
    "ShotRecord",
    "SimStats",
    "StringCountClass",
    "apply_channel",
    "bit_announcement_probs",
    "bloch_from_density",
    "bob_decode",
    "channel_to_json",
    "decode_success_probability",
    "density_from_bloch",
    "dephasing_channel",
    "depolarizing_channel",
    "expected_mutual_information",
    "export_transcript",
    "identity_channel",
    "load_channel",
    "matching_basis",
    "maximally_mixed",
    "measurement_prob",
    "mismatch_probability",
    "monte_carlo",
    "mutual_information_k",
    "parse_channel",
    "predicted_result",
    "public_transcript",
    "run_protocol",
    "run_shot",
    "save_channel",
    "seal_channel",
    "seal_class_masses",
    "seal_expected_mutual_information",
    "seal_mutual_information_k",
    "state_density",
    "state_vector",
    "tally_mismatches",
    "validate_channel",
]

__version__ = "0.1.0"
