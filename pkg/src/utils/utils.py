import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, List, Sequence, Union

import sympy as sp

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, str]


def parse_rational(value: Number) -> Fraction:
    """Parse "num/den", ints or Fractions into an exact Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    text = str(value).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not an exact rational: {value!r}") from e


def to_sympy(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def from_sympy(value: Any) -> Fraction:
    value = sp.sympify(value)
    if not value.is_Rational:
        raise ValueError(f"Expected an exact rational, got {value}")
    return Fraction(int(value.p), int(value.q))


def load_matrix(path: str) -> sp.Matrix:
    """Read {"dim": n, "entries": [["num/den", ...], ...]}"""
    with open(path, "r", encoding="utf-8") as fin:
        payload = json.load(fin)
    return matrix_from_json(payload)


def matrix_from_json(payload: dict) -> sp.Matrix:
    dim = int(payload["dim"])
    rows = payload["entries"]
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise ValueError(f"Matrix entries do not match dim={dim}")
    return sp.Matrix(dim, dim, [to_sympy(parse_rational(x)) for row in rows for x in row])


def matrix_to_json(matrix: sp.Matrix) -> dict:
    return {
        "dim": matrix.rows,
        "entries": [[str(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)],
    }


def save_report(text: str, name: str, directory: str) -> str:
    """Write a report file and return its path"""
    Path(directory).mkdir(parents=True, exist_ok=True)
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as fout:
        fout.write(text)
    logger.info(f"Report written to {path}")
    return path


def run_tasks(worker: Callable[[Any], Any], tasks: Sequence[Any], jobs: int = 1) -> List[Any]:
    """Run pure tasks, in a process pool when jobs > 1; results keep task order"""
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    logger.info(f"Dispatching {len(tasks)} tasks to {jobs} workers")
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))
