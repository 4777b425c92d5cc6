"""
Resolve ring specifications from instance strings or JSON files
"""
import json
import logging
import os
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from src.algebra.errors import RingValidationError
from src.algebra.ring.instances import (
    make_curve_ring,
    make_parabolic_ring,
    make_projective_plane_ring,
)
from src.algebra.ring.ring_core import BasisElement, Parity, RingKind, RingSpec
from src.utils.utils import parse_rational

logger = logging.getLogger(__name__)

_PARAM_ALIASES = {"pts": "points", "points": "points", "g": "g", "e": "e", "r": "r"}


def _parse_params(text: str) -> Dict[str, int]:
    params: Dict[str, int] = {}
    if not text:
        return params
    for item in text.split(","):
        if "=" not in item:
            raise RingValidationError(f"Malformed instance parameter {item!r}")
        key, value = item.split("=", 1)
        key = _PARAM_ALIASES.get(key.strip())
        if key is None:
            raise RingValidationError(f"Unknown instance parameter in {item!r}")
        try:
            params[key] = int(value)
        except ValueError as e:
            raise RingValidationError(f"Parameter {item!r} is not an integer") from e
    return params


@lru_cache(maxsize=None)
def resolve_ring(instance: str) -> RingSpec:
    """
    Resolve an instance string such as "p2", "curve:g=1,e=1",
    "parabolic:g=0,e=1,r=2,pts=1" or a path to a JSON ring spec.

    Args:
        instance: instance string or JSON path

    Returns:
        validated RingSpec (shared, treat as read-only)
    """
    name, _, rest = instance.partition(":")
    name = name.strip().lower()
    if name == "p2" and not rest:
        return make_projective_plane_ring()
    if name == "curve":
        params = _parse_params(rest)
        return make_curve_ring(params.get("g", 0), params.get("e", 0))
    if name == "parabolic":
        params = _parse_params(rest)
        return make_parabolic_ring(
            params.get("g", 0), params.get("e", 0), params.get("r", 2), params.get("points", 1)
        )
    if os.path.exists(instance):
        return load_ring_json(instance)
    raise RingValidationError(f"Unknown ring instance {instance!r}")


def load_ring_json(path: str) -> RingSpec:
    with open(path, "r", encoding="utf-8") as fin:
        payload = json.load(fin)
    name = os.path.splitext(os.path.basename(path))[0]
    logger.info(f"Loading ring spec {name} from {path}")
    return ring_from_json(payload, name=name)


def _sparse(entries: Optional[List[Any]]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for k, c in entries or []:
        out[int(k)] = parse_rational(c)
    return out


def ring_from_json(payload: Dict[str, Any], name: str = "json") -> RingSpec:
    """Build and validate a RingSpec from the JSON ring-spec format"""
    try:
        basis = [
            BasisElement(b["name"], int(b["degree"]), Parity(b.get("parity", "even")))
            for b in payload["basis"]
        ]
        mul: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for i, j, terms in payload.get("mul", []):
            mul[(int(i), int(j))] = _sparse(terms)
        # the unit row and column are implied
        for k in range(len(basis)):
            mul.setdefault((0, k), {k: Fraction(1)})
            mul.setdefault((k, 0), {k: Fraction(1)})
        diag = {(int(i), int(j)): parse_rational(c) for i, j, c in payload.get("diag", [])}
        aug = payload.get("aug")
        ring = RingSpec(
            name=payload.get("name", name),
            basis=basis,
            mul=mul,
            diag=diag,
            c1=_sparse(payload.get("c1")),
            c2=_sparse(payload.get("c2")),
            aug=None if aug is None else _sparse(aug),
            kind=RingKind(payload.get("kind", "compact")),
            rank=int(payload.get("rank", 1 if payload.get("kind", "compact") == "compact" else 0)),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, RingValidationError):
            raise
        raise RingValidationError(f"Malformed ring spec {name}: {e}") from e
    return ring.validate()


def ring_to_json(ring: RingSpec) -> Dict[str, Any]:
    return {
        "name": ring.name,
        "basis": [{"name": b.name, "degree": b.degree, "parity": b.parity.value} for b in ring.basis],
        "mul": [
            [i, j, [[k, str(c)] for k, c in sorted(ring.mul_basis(i, j).items())]]
            for i in range(ring.dim)
            for j in range(ring.dim)
            if ring.mul_basis(i, j)
        ],
        "diag": [[i, j, str(c)] for (i, j), c in sorted(ring.diag.items())],
        "c1": [[k, str(c)] for k, c in ring.c1.items()],
        "c2": [[k, str(c)] for k, c in ring.c2.items()],
        "aug": None if ring.aug is None else [[k, str(c)] for k, c in sorted(ring.aug.items())],
        "kind": ring.kind.value,
        "rank": ring.rank,
    }
