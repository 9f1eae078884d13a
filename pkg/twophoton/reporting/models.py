"""Pydantic models for run artifacts."""

from datetime import datetime, timezone
from typing import Any

from pydantic import BaseModel, Field

from .. import __version__
from ..model.params import ModelParams, TruncationSpec

# layout of manifest.json itself; each CSV carries its own header_version
SCHEMA_VERSION = 2


class OutputFile(BaseModel):
    """One emitted file and the digest of its bytes."""

    name: str
    sha256: str
    columns: list[str] = Field(default_factory=list, description="CSV header, in order")
    header_version: int = Field(
        default=1, ge=1, description="Bumped whenever a column of this file is added, removed or renamed"
    )


class RunManifest(BaseModel):
    """Describes one CLI run; written after every other output."""

    command: str
    params: ModelParams | None = None
    trunc: TruncationSpec | None = None
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
    options: dict[str, Any] = Field(default_factory=dict, description="Remaining CLI options")
    outputs: list[OutputFile] = Field(default_factory=list)
