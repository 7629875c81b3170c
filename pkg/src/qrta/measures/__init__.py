"""Coherence, discord and geometric measure of entanglement."""
from .coherence import closest_incoherent, coherence_frobenius
from .discord import (
    Bipartition,
    DiscordResult,
    MeasurementBasis,
    all_splits,
    conditional_entropy_after_measurement,
    discord,
    discord_details,
    mutual_information,
)
from .geometric import GMResult, ProductAnsatz, canonical_angles, gm, gm_from_lambda2, gm_lambda2, product_overlap

__all__ = [
    "Bipartition",
    "DiscordResult",
    "GMResult",
    "MeasurementBasis",
    "ProductAnsatz",
    "all_splits",
    "canonical_angles",
    "closest_incoherent",
    "coherence_frobenius",
    "conditional_entropy_after_measurement",
    "discord",
    "discord_details",
    "gm",
    "gm_from_lambda2",
    "gm_lambda2",
    "mutual_information",
    "product_overlap",
]
