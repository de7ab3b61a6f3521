import sys

from utils.config import config


def log(*data: object) -> None:
    if config["debug"]:
        print(*data, file=sys.stderr)

def log_error(*data: object) -> None:
    print(*data, file=sys.stderr)
