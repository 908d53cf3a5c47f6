"""Entanglement detection with bordered realignment matrices."""

from ._entdetect import (
    DensityMatrix,
    DimensionError,
    Error,
    FormatError,
    InvalidArgument,
    NoThresholdFound,
    __version__,
    bell_state,
    bordered_matrix,
    bound,
    detect,
    family_ids,
    family_state,
    ghz3_state,
    horodecki_2x4,
    horodecki_3x3,
    mix_with_white_noise,
    partial_trace,
    partial_transpose,
    random_biseparable,
    random_mixed,
    random_pure,
    random_separable,
    read_state,
    realign,
    reproduce,
    reproduce_ids,
    threshold,
    tiles_upb_state,
    trace_norm,
    validate,
    w_bar_state,
    write_state,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
