# -*- coding: utf-8 -*-
"""json with numpy support and schema validation"""

import enum
import functools
import json
import math

import jsonschema
import numpy as np

__all__ = ["dumps", "loads", "validate_json", "to_jsonable"]


def to_jsonable(obj):
    """Recursively convert numpy/enum content into plain JSON types.

    Non-finite floats become None so the output stays strict JSON.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, enum.Enum):
        return to_jsonable(obj.value)
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj


class NumpyJSONEncoder(json.JSONEncoder):
    def __init__(self, **kwargs):
        super(NumpyJSONEncoder, self).__init__(**kwargs)
        if kwargs.get("default") is not None:
            self.default = kwargs.get("default")

    def default(self, obj):
        if isinstance(obj, (np.ndarray, np.generic, enum.Enum)):
            return to_jsonable(obj)
        return super(NumpyJSONEncoder, self).default(obj)


_dumps = functools.partial(
    json.dumps, cls=NumpyJSONEncoder, sort_keys=True, indent=2
)


def dumps(obj, **kwargs):
    """Deterministic JSON text: sorted keys, fixed indent, strict floats."""
    return _dumps(to_jsonable(obj), allow_nan=False, **kwargs)


def validate_json(data, schema):
    """Validates a JSON object against a schema."""
    schema_validator = jsonschema.Draft7Validator(schema)
    return schema_validator.validate(data)


def loads(s, schema=None, **kwargs):
    """Loads a JSON string into a Python object."""
    source = json.loads(s, **kwargs)
    if schema:
        validate_json(source, schema)
    return source
