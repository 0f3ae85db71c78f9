import os
import sys

from hypothesis import settings

import leibniz_gsb.gsb as gsb_module

sys.path.insert(0, os.path.dirname(__file__))

# expensive certificate verification is on for the whole suite: every
# reduction recomputes its trace and checks reconstruction and the
# strictly decreasing realized leads
gsb_module._VERIFY_TRACES = True

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")
