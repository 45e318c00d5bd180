import os

import hypothesis
from hypothesis import HealthCheck

from src.utils.logger import Logger

hypothesis.settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile(
    "acceptance", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

Logger.configure("WARNING")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: takes several seconds")
