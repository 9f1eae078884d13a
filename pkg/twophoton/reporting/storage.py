"""Plain-text storage backend for run outputs."""

import csv
import hashlib
import io
import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from .models import OutputFile, RunManifest

logger = logging.getLogger("twophoton.reporting.storage")

MANIFEST_NAME = "manifest.json"


def format_value(value: Any) -> str:
    """12 significant digits for numbers, empty for missing, str otherwise."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)) or hasattr(value, "dtype"):
        number = float(value)
        if math.isnan(number):
            return "nan"
        if isinstance(value, int):
            return str(value)
        return f"{number:.12g}"
    return str(value)


def sha256_of(path: str | Path) -> str:
    """Hex digest of a file's bytes."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class RunWriter:
    """Single writer for one run directory: CSV files first, manifest last."""

    def __init__(self, out_dir: str | Path):
        """Create the output directory if needed."""
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self._outputs: list[OutputFile] = []

    @property
    def outputs(self) -> list[OutputFile]:
        return list(self._outputs)

    def write_csv(
        self,
        name: str,
        header: Sequence[str],
        rows: Iterable[Sequence[Any]],
        header_version: int = 1,
    ) -> Path:
        """
        Write one CSV with a single header line.

        Args:
            name: File name inside the run directory
            header: Column names
            rows: Row values; numbers are printed with 12 significant digits
            header_version: Column-layout version recorded in the manifest

        Returns:
            Path of the written file
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"{name}: row has {len(row)} fields, header has {len(header)}")
            writer.writerow([format_value(v) for v in row])
            count += 1

        path = self.out_dir / name
        data = buffer.getvalue().encode("utf-8")
        path.write_bytes(data)
        self._outputs.append(OutputFile(
            name=name,
            sha256=hashlib.sha256(data).hexdigest(),
            columns=list(header),
            header_version=header_version,
        ))
        logger.debug(f"Wrote {path} ({count} rows)")
        return path

    def write_manifest(self, manifest: RunManifest) -> Path:
        """Attach the digests collected so far and write ``manifest.json``."""
        manifest = manifest.model_copy(update={"outputs": self.outputs})
        path = self.out_dir / MANIFEST_NAME
        path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info(f"Run manifest written to {path}")
        return path
