import os
import sys


def in_test() -> bool:
    return "pytest" in sys.modules

def slow_tests_enabled() -> bool:
    return os.environ.get("MBMOD_RUN_SLOW") == "1"
