"""SD-REE: a Caesar-style byte cipher whose shift grows polynomially with position.

Educational classical cryptography. The cipher is trivially breakable and must
not be used to protect real data.

The scikit-learn wrappers ``SDREECipher`` and ``RepetitionStats`` are imported
lazily so the command line tool does not pay for importing scikit-learn.
"""
from .analysis import (
    AnalysisReport,
    ByteHistogram,
    ByteStats,
    analyze,
    chi_square_uniform,
    histogram,
    index_of_coincidence,
    max_run_length,
    render_report,
)
from .cipher import (
    StreamCipher,
    decrypt,
    decrypt_with_key,
    encrypt,
    encrypt_with_key,
    params_from_key,
)
from .exceptions import (
    DegenerateKeyError,
    EmptyKeyError,
    IndexOutOfRangeError,
    InsufficientDataError,
    KeyTooLongError,
    SDREEError,
)
from .keyderive import (
    KeyDerivationTrace,
    derive_code,
    derive_key,
    derive_power_ex,
    digit_sum,
    weighted_checksum,
)
from .numtheory import (
    CipherParams,
    ShiftStream,
    mod_pow,
    nth_prime,
    params_from_derivation,
    shift_stream,
    shift_term_at,
    shift_terms_at,
)

__version__ = "0.1.0"

_LAZY = {"SDREECipher", "RepetitionStats"}


def __getattr__(name):
    if name in _LAZY:
        from . import estimator

        return getattr(estimator, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
