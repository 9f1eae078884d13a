"""Run manifests and CSV emission."""

from .models import SCHEMA_VERSION, OutputFile, RunManifest
from .storage import MANIFEST_NAME, RunWriter, format_value, sha256_of

__all__ = [
    "SCHEMA_VERSION",
    "OutputFile",
    "RunManifest",
    "MANIFEST_NAME",
    "RunWriter",
    "format_value",
    "sha256_of",
]
