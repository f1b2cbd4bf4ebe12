from typing import Final, Dict
import os

#
# Sampling
#

# number of generic lifts drawn when a lift sample is needed
DEFAULT_SAMPLES: Final[int] = 5
DEFAULT_SEED: Final[int] = 0

# generic lifts perturb t^v to t^v + c*t^(v - e) with c = m/COEFF_DENOMINATOR
# and e = k/EXPONENT_DENOMINATOR, 0 < e < 1/2
GENERIC_EXPONENT_DENOMINATOR: Final[int] = 8
GENERIC_COEFF_DENOMINATOR: Final[int] = 97
LIFT_RESAMPLE_BUDGET: Final[int] = 64

#
# Search budgets
#

FACE_SEARCH_DEPTH: Final[int] = 16
SCARF_GENERATOR_LIMIT: Final[int] = 20
EXTREME_SET_PAIRS: Final[int] = 200

#
# Logging
#

LOG_FORMAT: Final[str] = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVEL: Final[str] = os.environ.get("TROPOHULL_LOG_LEVEL", "WARNING").upper()

# exit codes for the command line
EXIT_CODES: Final[Dict[str, int]] = {
    "ok": 0,
    "input": 2,
    "invariant": 3,
}
