import os

from dotenv import load_dotenv

load_dotenv()

BUILTIN_INSTANCES = {
    "p2": "Projective plane, compact, rank 1 (deformed Q2 terms active)",
    "curve": "Total space of a line bundle over a curve, open, rank 0",
    "parabolic": "Curve ring extended by eigen-line classes p_{q,i}",
}

# Default instance strings used in docs and examples
DEFAULT_INSTANCES = {
    "relations": "p2",
    "w": "curve:g=1,e=1",
    "degenerate": "curve:g=0,e=1",
    "parabolic": "parabolic:g=0,e=1,r=2,pts=1",
}

RELATION_SUITES = ["Q0", "Q1", "Q2", "Q3", "oracle", "cubic"]
W_SUITES = ["undeformed", "lehn", "fprobe"]
DEGENERATION_SUITES = ["weyl", "tildeD", "sl2", "reduced", "unred", "parabolic"]
LEFSCHETZ_ACTIONS = ["weight-filtration", "verify", "random"]
H2_ACTIONS = ["bracket", "verify"]

OUTPUT_FORMATS = ["text", "json"]

DEFAULT_BOUNDS = {
    "max_degree": 8,
    "max_index": 3,
    "max_length": 2,
    "order": 4,
    "window": 6,
    "index_cap": 4,
    "degree_cap": 6,
    "interp_max": 5,
}


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        return default


def default_jobs() -> int:
    return max(1, _env_int("HECKE_JOBS", 1))


def default_max_degree() -> int:
    return _env_int("HECKE_MAX_DEGREE", DEFAULT_BOUNDS["max_degree"])


def report_dir() -> str:
    return os.getenv("HECKE_REPORT_DIR", "")


def log_level() -> str:
    return os.getenv("HECKE_LOG_LEVEL", "WARNING").upper()
