""" SFT-Lift - subshifts of finite type on finitely generated groups, their lifts
along translation-like actions and desk-scale emptiness and periodicity probes
"""

__version__ = "1.0.0"

from sft_lift import utils
from sft_lift.limiter import Limiter
from sft_lift.groups import Ball, FreeAbelian, FreeGroup, MonoidPresentation, WordOracle, ball
from sft_lift.sft import Alphabet, Pattern, ProductAlphabet, Sft, make_sft
from sft_lift.lift import LiftSpec, build_lifted_sft, verify_tla
from sft_lift.solver import Certificate, aperiodicity_probe, ball_admissible, emptiness_probe, quotient_point
from sft_lift.freqlin import frequency_probe
from sft_lift.verify import verify_certificate
from sft_lift import zoo
