import numba

from utils.config import config
from utils.logger import log


def thread_count() -> int:
    requested = config["threads"]
    available = numba.config.NUMBA_NUM_THREADS
    if requested <= 0:
        return available

    return min(requested, available)


def apply_thread_limit() -> int:
    count = thread_count()
    numba.set_num_threads(count)
    log(f"Using {count} threads")
    return count


def split_tokens(text: str) -> list[str]:
    return [token.strip() for token in text.split(",") if token.strip() != ""]
