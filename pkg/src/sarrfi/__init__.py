"""Simulation, focusing, prediction and mitigation of LFM mutual interference in SAR images."""

from .analysis import (
    Spectrogram,
    SupportBox,
    measure_support,
    rank_error_curve,
    relative_error,
    ridge_slope,
    singular_values,
    stft,
)
from .artefact import (
    DerivedRates,
    SincModeError,
    artefact_closed_form,
    constant_phase,
    derived_rates,
    doppler_rate,
    doppler_to_eta,
    eta_to_doppler,
    k_i_prime,
    least_squares_scale,
    predict_footprint,
    rank1_estimate,
    rank1_model,
    taylor_rank_bound,
)
from .container import (
    BadMagicError,
    ContainerError,
    DimensionOverflowError,
    TruncatedPayloadError,
    read_matrix,
    write_matrix,
)
from .core import (
    DOMAIN_TAGS,
    ArtefactFootprint,
    Axis,
    ComplexMatrix,
    ConfigError,
    InterferenceConfig,
    LowRankSplit,
    PixelFootprint,
    RadarConfig,
    TileReport,
    axis_to_pixel,
    interference_config_from_dict,
    interference_config_to_dict,
    pixel_to_axis,
    radar_config_from_dict,
    radar_config_to_dict,
    validate_pair,
)
from .focusing import (
    FocusPlan,
    azimuth_match_phase,
    d_factor,
    focus_omegak,
    lfm_spectrum,
    reference_phase,
    unfold_doppler,
)
from .lowrank import (
    RpcaOptions,
    blockwise,
    pca_mitigate,
    rpca_mitigate,
    soft_threshold,
    svd,
    svt,
)
from .repro import (
    c_band_interference,
    c_band_profile,
    report_json,
    run_repro,
    simulate_artefact,
)
from .simulate import (
    PointScatterer,
    Scene,
    inject_interference,
    instantaneous_doppler,
    interference_row,
    scene_from_dict,
    simulate_echo,
    slant_range,
)

__version__ = "0.1.0"

__all__ = [
    "ArtefactFootprint",
    "Axis",
    "BadMagicError",
    "ComplexMatrix",
    "ConfigError",
    "ContainerError",
    "DOMAIN_TAGS",
    "DerivedRates",
    "DimensionOverflowError",
    "FocusPlan",
    "InterferenceConfig",
    "LowRankSplit",
    "PixelFootprint",
    "PointScatterer",
    "RadarConfig",
    "RpcaOptions",
    "Scene",
    "SincModeError",
    "Spectrogram",
    "SupportBox",
    "TileReport",
    "TruncatedPayloadError",
    "artefact_closed_form",
    "axis_to_pixel",
    "azimuth_match_phase",
    "blockwise",
    "c_band_interference",
    "c_band_profile",
    "constant_phase",
    "d_factor",
    "derived_rates",
    "doppler_rate",
    "doppler_to_eta",
    "eta_to_doppler",
    "focus_omegak",
    "inject_interference",
    "instantaneous_doppler",
    "interference_config_from_dict",
    "interference_config_to_dict",
    "interference_row",
    "k_i_prime",
    "least_squares_scale",
    "lfm_spectrum",
    "measure_support",
    "pca_mitigate",
    "pixel_to_axis",
    "predict_footprint",
    "radar_config_from_dict",
    "radar_config_to_dict",
    "rank1_estimate",
    "rank1_model",
    "rank_error_curve",
    "read_matrix",
    "reference_phase",
    "relative_error",
    "report_json",
    "ridge_slope",
    "rpca_mitigate",
    "run_repro",
    "scene_from_dict",
    "simulate_artefact",
    "simulate_echo",
    "singular_values",
    "slant_range",
    "soft_threshold",
    "stft",
    "svd",
    "svt",
    "taylor_rank_bound",
    "unfold_doppler",
    "validate_pair",
]
