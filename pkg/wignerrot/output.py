# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
"""
Writers for the records and tables the commands produce.

Every float leaves through `format_number`, so a table depends only on the
computed values and not on how the platform prints floats.
"""
import contextlib
import csv
import hashlib
import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, IO, Iterable, Iterator, Optional, Sequence

from . import __version__

SIGNIFICANT_DIGITS = 9
FORMATS = ("text", "csv", "json")
MANIFEST_SUFFIX = ".manifest.json"


def format_number(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


def _rounded(value: Any) -> Any:
    # JSON keeps numbers as numbers, at the same precision as CSV
    if isinstance(value, float) and math.isfinite(value):
        return float(format_number(value))
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, dict):
        return {key: _rounded(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(item) for item in value]
    return value


def canonical_json(data: Any) -> str:
    return json.dumps(_rounded(data), sort_keys=True, separators=(",", ":"))


@dataclass
class RunManifest:
    """
    What produced a data file. Two manifests with the same
    `parameters_sha256` describe runs with identical output.
    """
    command: str
    parameters: Dict[str, Any]
    version: str = __version__
    seed: Optional[int] = None
    timestamp: str = field(default_factory=lambda: datetime.now(
        timezone.utc).isoformat(timespec="seconds"))

    @property
    def parameters_sha256(self) -> str:
        payload = canonical_json({
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "seed": self.seed,
        })
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "parameters": _rounded(self.parameters),
            "version": self.version,
            "seed": self.seed,
            "timestamp": self.timestamp,
            "parameters_sha256": self.parameters_sha256,
        }

    def write(self, data_path: str) -> str:
        path = data_path + MANIFEST_SUFFIX
        with open(path, "w", encoding="utf-8", newline="") as manifest_file:
            json.dump(self.as_dict(), manifest_file, indent=2, sort_keys=True)
            manifest_file.write("\n")
        return path


@contextlib.contextmanager
def open_output(path: Optional[str]) -> Iterator[IO[str]]:
    """
    The file at `path`, or standard output when no path is given.
    """
    if path is None:
        yield sys.stdout
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as stream:
        yield stream


def write_csv(stream: IO[str], header: Sequence[str],
              rows: Iterable[Sequence[Any]]):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(value) for value in row])


def write_text(stream: IO[str], record: Dict[str, Any]):
    width = max((len(key) for key in record), default=0)
    for key, value in record.items():
        if isinstance(value, (list, tuple)):
            value = ", ".join(format_number(item) for item in value)
        else:
            value = format_number(value)
        stream.write(f"{key.ljust(width)}  {value}\n")


def write_json(stream: IO[str], payload: Dict[str, Any]):
    json.dump(_rounded(payload), stream, indent=2, sort_keys=True)
    stream.write("\n")


def emit_record(record: Dict[str, Any], format_: str, out: Optional[str],
                manifest: RunManifest):
    """
    Write a single record in the requested format.

    A file given by `out` gets a manifest next to it; JSON carries its
    manifest inline as well.
    """
    with open_output(out) as stream:
        if format_ == "json":
            write_json(stream, {"manifest": manifest.as_dict(),
                                "result": record})
        elif format_ == "csv":
            flat = {key: value for key, value in record.items()
                    if not isinstance(value, (list, tuple, dict))}
            write_csv(stream, list(flat), [list(flat.values())])
        else:
            write_text(stream, record)
    if out is not None:
        manifest.write(out)


def emit_table(header: Sequence[str], rows: Sequence[Sequence[Any]],
               format_: str, out: Optional[str], manifest: RunManifest):
    with open_output(out) as stream:
        if format_ == "json":
            write_json(stream, {
                "manifest": manifest.as_dict(),
                "rows": [dict(zip(header, row)) for row in rows],
            })
        else:
            write_csv(stream, header, rows)
    if out is not None:
        manifest.write(out)
