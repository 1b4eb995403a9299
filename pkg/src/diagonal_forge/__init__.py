"""Exact-arithmetic engine for constructive escapes from enumerated reals.

Given any enumerated list of reals in [0,1], each constructor emits a
certified nested-interval (or digit-stream) representation of a number
provably absent from the list's scanned prefix, alongside cover/measure
algorithms and interval/digit games with machine-checked strategies.
"""

from .constructors import (
    CauchyReal,
    ExclusionCertificate,
    ExclusionReason,
    audit_certificate,
    baire_point,
    cantor1874,
    diagonal,
    eta,
    perfect_escape,
    trisect,
    verify_certificate,
    wenner_escape,
)
from .core import (
    Cmp,
    DigitStream,
    IntervalKind,
    IntervalQ,
    NestedReal,
    QuadraticSurd,
    Rational,
    TailConvention,
    compare,
    to_digits,
)
from .covers import (
    Cover,
    LengthLedger,
    bw_locate,
    cover_length_lower_bound,
    heine_borel_subcover,
    measure_zero_cover,
    nested_witness,
)
from .enumerations import Enumeration, load_file
from .finite_cantor import (
    BinaryMatrix,
    FiniteSet,
    cantor_metric,
    diagonal_row,
    powerset_check,
)
from .games import (
    GameKind,
    alice_move,
    bob_move,
    game_result,
    new_game,
    round_certificate,
    run_game,
)

__all__ = [
    "BinaryMatrix",
    "CauchyReal",
    "Cmp",
    "Cover",
    "DigitStream",
    "Enumeration",
    "ExclusionCertificate",
    "ExclusionReason",
    "FiniteSet",
    "GameKind",
    "IntervalKind",
    "IntervalQ",
    "LengthLedger",
    "NestedReal",
    "QuadraticSurd",
    "Rational",
    "TailConvention",
    "alice_move",
    "audit_certificate",
    "baire_point",
    "bob_move",
    "bw_locate",
    "cantor1874",
    "cantor_metric",
    "compare",
    "cover_length_lower_bound",
    "diagonal",
    "diagonal_row",
    "eta",
    "game_result",
    "heine_borel_subcover",
    "load_file",
    "measure_zero_cover",
    "nested_witness",
    "new_game",
    "perfect_escape",
    "powerset_check",
    "round_certificate",
    "run_game",
    "to_digits",
    "trisect",
    "verify_certificate",
    "wenner_escape",
]

__version__ = "0.1.0"
