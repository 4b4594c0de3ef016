"""JSON space descriptions.

::

    {"weights": [0.5, 0.5],
     "blocks": [[0, 1]],
     "functions": {"u": [[1.0, 0.0], [2.0, 0.0]], "w": [[1, 0], [1, 0]]},
     "p": 2.0}

Complex numbers are ``[re, im]`` pairs; atom ids are 0-based.  Optional
keys: ``p``, ``labels`` (the point each atom stands for), ``family`` and
``params`` (which gallery constructor made the space).
"""

import json
import math

import numpy as np

from .errors import SpecError, WctError
from .measure import build_partition, build_space


def encode_complex(z):
    z = complex(z)
    return [_num(z.real), _num(z.imag)]


def encode_array(a):
    return [encode_complex(z) for z in np.asarray(a).ravel()]


def _num(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"refusing to serialize non-finite number {x!r}")
    # plain ints keep golden output short and stable
    return int(x) if x.is_integer() and abs(x) < 2**53 else x


def to_spec(space, partition, functions=None, **extra):
    spec = {
        "weights": [float(x) for x in space.weights],
        "blocks": partition.as_lists(),
        "functions": {k: encode_array(v) for k, v in (functions or {}).items()},
    }
    if not np.array_equal(space.labels, np.arange(space.n)):
        spec["labels"] = [_num(x) for x in space.labels]
    if space.family:
        spec["family"] = space.family
        spec["params"] = list(space.params)
    spec.update(extra)
    return spec


def _decode_fn(name, raw, n):
    field = f"functions.{name}"
    if not isinstance(raw, list) or len(raw) != n:
        raise SpecError(field, f"expected a list of {n} [re, im] pairs")
    out = np.empty(n, dtype=complex)
    for i, z in enumerate(raw):
        if isinstance(z, (int, float)) and not isinstance(z, bool):
            out[i] = z
        elif (
            isinstance(z, list)
            and len(z) == 2
            and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in z)
        ):
            out[i] = complex(z[0], z[1])
        else:
            raise SpecError(f"{field}[{i}]", "expected [re, im]")
        if not np.isfinite(out[i]):
            raise SpecError(f"{field}[{i}]", "non-finite value")
    return out


def from_spec(spec):
    """Parse a space description.

    Returns ``(space, partition, functions, p)``; ``p`` is ``None`` when the
    description does not set it.

    Raises
    ------
    SpecError
        Naming the offending field.
    """
    if not isinstance(spec, dict):
        raise SpecError("<root>", "expected a JSON object")
    weights = spec.get("weights")
    if not isinstance(weights, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in weights
    ):
        raise SpecError("weights", "expected a list of numbers")
    labels = spec.get("labels")
    family = spec.get("family", "")
    params = spec.get("params", [])
    try:
        space = build_space(weights, labels, family=family, params=tuple(params))
    except WctError as e:
        raise SpecError("weights", str(e)) from e
    blocks = spec.get("blocks")
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise SpecError("blocks", "expected a list of lists of atom ids")
    if not all(isinstance(a, int) and not isinstance(a, bool) for b in blocks for a in b):
        raise SpecError("blocks", "atom ids must be integers")
    try:
        partition = build_partition(space, blocks)
    except WctError as e:
        raise SpecError("blocks", f"{type(e).__name__}: {e}") from e
    raw_fns = spec.get("functions", {})
    if not isinstance(raw_fns, dict):
        raise SpecError("functions", "expected an object of named functions")
    functions = {k: _decode_fn(k, v, space.n) for k, v in raw_fns.items()}
    p = spec.get("p")
    if p is not None and (not isinstance(p, (int, float)) or isinstance(p, bool) or not p >= 1):
        raise SpecError("p", "expected a number >= 1")
    return space, partition, functions, None if p is None else float(p)


def dumps(obj):
    """Deterministic JSON (no NaN or infinity allowed)."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError("<root>", f"invalid JSON: {e}") from e
