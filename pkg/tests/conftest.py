from __future__ import annotations

import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

UNKNOT = ""
KINK = "O1+,U1+"
TREFOIL = "O1+,U2+,O3+,U1+,O2+,U3+"
TREFOIL_MIRROR = "U1-,O2-,U3-,O1-,U2-,O3-"
VIRTUAL_TREFOIL = "O1+,O2+,U1+,U2+"
KISHINO = "O1-,U2+,U3-,O4+,O3-,U4+,U1-,O2+"
HOPF = "O1+,U2+;U1+,O2+"
# interlacement graph with odd degrees and no two vertices that are never separated
IRREDUCIBLY_ODD = {0: {1, 2, 5}, 1: {0, 2, 4}, 2: {0, 1, 3}, 3: {2}, 4: {1}, 5: {0}}
