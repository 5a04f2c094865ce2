"""JSON and CSV formats for signals, lattices, matrices and spreading functions.

Complex arrays are stored as parallel ``re``/``im`` arrays.  Lattices store only
their group and generators; elements are recomputed on load.
"""

from __future__ import annotations

import io
import json
from pathlib import Path

import numpy as np

from .errors import GaborError, SchemaError
from .group import GroupSpec, Lattice, enumerate_subgroup, make_group
from .tfa import PlaneFunction, Signal


def _group(obj) -> GroupSpec:
    try:
        return make_group(obj["group"])
    except KeyError as exc:
        raise SchemaError("missing 'group' field") from exc
    except GaborError as exc:
        raise SchemaError(str(exc)) from exc
    except TypeError as exc:
        raise SchemaError(f"'group' must be a list of integers: {exc}") from exc


def _complex(obj, shape=None) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=np.float64)
        im = np.asarray(obj["im"], dtype=np.float64)
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"'re'/'im' must be numeric arrays: {exc}") from exc
    if re.shape != im.shape:
        raise SchemaError(f"'re' shape {re.shape} differs from 'im' shape {im.shape}")
    if shape is not None and re.shape != shape:
        raise SchemaError(f"expected arrays of shape {shape}, got {re.shape}")
    return re + 1j * im


def signal_to_json(f: Signal) -> dict:
    return {
        "group": list(f.group.orders),
        "re": [float(x) for x in f.values.real],
        "im": [float(x) for x in f.values.imag],
    }


def signal_from_json(obj) -> Signal:
    if not isinstance(obj, dict):
        raise SchemaError("signal JSON must be an object")
    G = _group(obj)
    return Signal(G, _complex(obj, (G.order,)))


def lattice_to_json(lattice: Lattice) -> dict:
    return {
        "group": list(lattice.group.orders),
        "generators": [list(p.time) + list(p.freq) for p in lattice.generators],
    }


def lattice_from_json(obj) -> Lattice:
    if not isinstance(obj, dict):
        raise SchemaError("lattice JSON must be an object")
    G = _group(obj)
    gens = obj.get("generators", [])
    try:
        points = [G.point(list(g)) for g in gens]
    except (GaborError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad generator list: {exc}") from exc
    return enumerate_subgroup(G, points)


def matrix_to_json(A, group: GroupSpec) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    return {
        "group": list(group.orders),
        "re": A.real.tolist(),
        "im": A.imag.tolist(),
    }


def matrix_from_json(obj) -> tuple[GroupSpec, np.ndarray]:
    if not isinstance(obj, dict):
        raise SchemaError("matrix JSON must be an object")
    G = _group(obj)
    return G, _complex(obj, (G.order, G.order))


def parse_generators(text: str, group: GroupSpec):
    """Parse the ``"k,r;k,r"`` flag grammar (time coordinates, then frequency)."""
    text = text.strip()
    if not text:
        return []
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            coords = [int(c) for c in chunk.split(",")]
        except ValueError as exc:
            raise SchemaError(f"bad generator {chunk!r}: {exc}") from exc
        if len(coords) != 2 * group.rank:
            raise SchemaError(
                f"generator {chunk!r} needs {2 * group.rank} coordinates for group {list(group.orders)}"
            )
        points.append(group.point(coords))
    return points


def parse_group(text: str) -> GroupSpec:
    try:
        return make_group([int(c) for c in text.split(",") if c.strip()])
    except (ValueError, GaborError) as exc:
        raise SchemaError(f"bad group {text!r}: {exc}") from exc


def spreading_csv(eta: PlaneFunction, reference: float | None = None) -> str:
    """CSV rows ``k_index,r_index,re,im,abs`` in plane index order.

    With ``reference`` (normally ||A||_Fro^2 / |G|) a trailing comment line
    reports the column sum of abs^2 next to it.
    """
    n = eta.group.order
    buf = io.StringIO()
    buf.write("k_index,r_index,re,im,abs\n")
    for i, v in enumerate(eta.values):
        k, r = divmod(i, n)
        buf.write(f"{k},{r},{float(v.real)!r},{float(v.imag)!r},{float(abs(v))!r}\n")
    if reference is not None:
        total = float(np.sum(np.abs(eta.values) ** 2))
        buf.write(f"# sum_abs2={total!r},expected={float(reference)!r}\n")
    return buf.getvalue()


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
