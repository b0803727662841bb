import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))   # make `oracles` importable


def pytest_collection_modifyitems(config, items):
    if os.environ.get("HOMREG_RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="long-running; set HOMREG_RUN_SLOW=1 to enable")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
