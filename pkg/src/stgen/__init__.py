"""Staircase-generator codes, their list decoder and matrix embedding."""
from __future__ import annotations

from .analysis import (DistortionProfile, ListDynamicsReport, binary_entropy, distortion_profile,
                       efficiency_bound, entropy_inverse, list_dynamics_report)
from .codes import (PRACTICAL_ROWS, BaseCode, ParameterError, StGenCode, StGenParams, base_catalog, base_code,
                    build_code, encode, from_descriptor, g_prefix, generator_matrix, load_code,
                    parity_check_matrix, save_code, syndrome, practical_params, to_descriptor)
from .decoder import DecodeFailure, DecodeResult, DecoderConfig, ListEntry, decode_close, decode_reference
from .embed import StegoContext, emb, ext, rate_and_efficiency
from .gf2 import BitMatrix, BitVector, DimensionError
from .oracle import average_distance, covering_radius, nearest_codeword

__all__ = [name for name in dir() if not name.startswith("_")]
