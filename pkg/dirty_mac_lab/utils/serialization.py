"""JSON helpers: non-finite floats are written as the strings "inf", "-inf" and "nan"."""
import json
import math
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel


def jsonable(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return jsonable(obj.model_dump())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def dumps(obj: Any) -> str:
    """Deterministic JSON text (stable key order as built, no NaN/Infinity literals)."""
    return json.dumps(jsonable(obj), indent=2, allow_nan=False, ensure_ascii=False)
