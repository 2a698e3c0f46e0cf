"""JSON helpers for scenario merging and machine-readable summaries."""

import copy
import json
import math
from pathlib import Path
from typing import Any

import numpy as np


class JsonUtils:
    """Utility class for JSON operations including deep merging."""

    @staticmethod
    def deep_merge(
        base: dict[str, Any],
        override: dict[str, Any],
    ) -> dict[str, Any]:
        """Deep merge two dictionaries without mutating either.

        - Dictionaries: recursively merged
        - Arrays (including arrays of tables): replaced entirely
        - Scalars: overridden

        Args:
            base: The base dictionary with default values.
            override: The override dictionary with values to merge in.

        Returns:
            A new merged dictionary.
        """
        result = copy.deepcopy(base)
        for key, value in override.items():
            current = result.get(key)
            if isinstance(current, dict) and isinstance(value, dict):
                result[key] = JsonUtils.deep_merge(current, value)
            else:
                result[key] = copy.deepcopy(value)
        return result

    @staticmethod
    def to_jsonable(value: Any) -> Any:
        """Convert numpy scalars/arrays and non-finite floats to plain JSON values.

        Non-finite floats become the strings ``"inf"``, ``"-inf"`` or ``"nan"`` so
        the output stays strict JSON.
        """
        if isinstance(value, dict):
            return {str(k): JsonUtils.to_jsonable(v) for k, v in value.items()}
        if isinstance(value, list | tuple):
            return [JsonUtils.to_jsonable(v) for v in value]
        if isinstance(value, np.ndarray):
            return [JsonUtils.to_jsonable(v) for v in value.tolist()]
        if isinstance(value, np.bool_):
            return bool(value)
        if isinstance(value, np.integer):
            return int(value)
        if isinstance(value, np.floating):
            value = float(value)
        if isinstance(value, float) and not math.isfinite(value):
            return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
        return value

    @staticmethod
    def write_json(path: Path, data: dict[str, Any]) -> None:
        """Write ``data`` as indented JSON with sorted keys and a trailing newline.

        Output is byte-stable for equal inputs.

        Args:
            path: Destination file; parent directories are created.
            data: Mapping to serialize (numpy values allowed).
        """
        path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(JsonUtils.to_jsonable(data), indent=2, sort_keys=True)
        path.write_text(text + "\n", encoding="utf-8")
