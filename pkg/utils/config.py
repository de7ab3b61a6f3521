import os
import yaml
from typing import Any, TypedDict

from utils.test_utils import in_test

class GeneratorSettings(TypedDict):
    max_retries: int
    rational_numerator_bound: int
    rational_denominator_bound: int
    chunk_rows: int

class OracleSettings(TypedDict):
    max_size: int
    components_limit: int
    minimal_limit: int

class Config(TypedDict):
    debug: bool
    threads: int
    generator: GeneratorSettings
    oracle: OracleSettings


default_config: Config = {
    "debug": False,
    "threads": 0,
    "generator": {
        "max_retries": 64,
        "rational_numerator_bound": 9,
        "rational_denominator_bound": 9,
        "chunk_rows": 65536,
    },
    "oracle": {
        "max_size": 20,
        "components_limit": 10,
        "minimal_limit": 12,
    },
}

def config_path() -> str:
    if in_test():
        return os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "tests", "test_config.yaml")
    return os.environ.get("MBMOD_CONFIG", "config.yaml")

def load_config(path: str) -> Config:
    loaded: dict[str, Any] = {}
    if os.path.exists(path):
        with open(path) as config_file:
            loaded = yaml.safe_load(config_file) or {}

    result: dict[str, Any] = {}
    for key, default in default_config.items():
        if isinstance(default, dict):
            result[key] = {**default, **(loaded.get(key) or {})}
        else:
            result[key] = loaded.get(key, default)

    threads = os.environ.get("MBMOD_THREADS")
    if threads is not None and threads.strip() != "":
        result["threads"] = int(threads)

    return Config(**result)  # type: ignore[typeddict-item]


config: Config = load_config(config_path())
