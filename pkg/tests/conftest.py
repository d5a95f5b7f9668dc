import os
import tempfile

# state (logs, reports) must not land in the user's directory; set before the package is imported
os.environ.setdefault("BLOWUP_FUTAKI_STATE", tempfile.mkdtemp(prefix="blowup_futaki_test_"))

import pytest  # noqa: E402
from hypothesis import settings  # noqa: E402

from blowup_futaki.algebra.poly import universe  # noqa: E402

# exact arithmetic has slow first calls (ring construction, caches)
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


@pytest.fixture
def U2():
    return universe(2)

