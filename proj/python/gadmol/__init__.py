#
# Project gadmol - Copyright 2026 The gadmol Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Python bindings for the gadmol core."""

from ._gadmol import (  # noqa: F401
    ConfigError,
    Error,
    ParseError,
    __version__,
    canonical,
    constrained_fitness,
    decode,
    encode,
    fitness,
    kill_probabilities,
    normalize_config,
    properties,
    run,
    tanimoto,
)
