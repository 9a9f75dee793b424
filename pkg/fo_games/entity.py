# SPDX-FileCopyrightText: 2024-2025 fo-games contributors
# SPDX-License-Identifier: Apache-2.0
# isort: skip_file

from __future__ import annotations

import json
from typing import Any, Mapping

try:
    from pydantic.v1 import BaseModel as PydanticBaseModel
except (ImportError, AttributeError):
    from pydantic import BaseModel as PydanticBaseModel  # type: ignore[no-redef, assignment]


class BaseModel(PydanticBaseModel):
    """Frozen pydantic model shared by every value object that leaves a module.

    Formula trees are stored as arbitrary types and serialized through their canonical text.
    """

    class Config:  # noqa: WPS431
        frozen = True
        arbitrary_types_allowed = True
        allow_population_by_field_name = True

    def serialize(self) -> dict:
        return json.loads(self.to_json())

    def to_json(self, **kwargs) -> str:
        return self.json(encoder=self._encode, **kwargs)

    @classmethod
    def deserialize(cls, inp: dict):
        return cls.parse_obj(inp)

    @classmethod
    def _encode(cls, obj: Any) -> Any:
        to_text = getattr(obj, "to_text", None)
        if to_text is not None:
            return to_text()
        # frozendict is not natively serializable to JSON
        if isinstance(obj, Mapping):
            return dict(obj)
        return cls.__json_encoder__(obj)
