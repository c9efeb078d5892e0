"""Exact slow continued fraction algorithms, their symbolic dynamics and Cuntz algebra labels."""

from .cuntz import CuntzMonomial, Unknown, classify, equivalent_reps, verify_isometry_family
from .errors import SlowCFError
from .exact import IDENTITY, Mobius, QuadraticSurd, compare, format_number, parse_number
from .jump import JumpSpec, jump_blocks, jump_words, partial_quotients
from .render import render_svg
from .scfa import Scfa, UnimodularInterval, builtin, load_scfa, validate_partition
from .sternbrocot import build_transducer_fn, flip_normalize, psi_embedding
from .symbolic import (
    OMEGA,
    EventuallyPeriodic,
    RcfStream,
    StreamPrefix,
    atom_count,
    decode,
    encode,
    encode_stream,
    eventual_equivalent,
    tail_equivalent,
)

__version__ = "0.1.0"
