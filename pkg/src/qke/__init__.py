"""Two-component public-key secret establishment over safe-prime groups.

Public keys are pairs (g^(x+z), g^(y+z)) mod p; two parties exchange one
intermediate each and finish with g^(w_a w_b (x_a x_b + y_a y_b)) mod p.
"""

from .errors import (
    FormatError,
    IncompleteFrameError,
    NotInvertibleError,
    ParameterError,
    ProtocolOrderError,
    QKEError,
    ScaleError,
    UnsupportedMessageError,
    ValidationError,
    WidthError,
)
from .keys import PrivateKey, PublicKey, generate_keypair, keypair_from_exponents, validate_public_key
from .modmath import DomainParams, generate_params, generate_safe_prime, mod_exp, mod_inv
from .protocol import (
    DegenerateKeyWarning,
    IntermediateValue,
    Role,
    Session,
    SessionState,
    ratchet_next_key,
    run_exchange,
    start_session,
)

__version__ = "0.1.0"
