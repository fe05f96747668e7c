# -*- coding: utf-8 -*-
"""
Deterministic export of result documents to JSON, CSV and JSON lines.

The `DocWriter` class is normally used via `triway.cli`. Floats are written
with a fixed number of significant digits and keys are sorted, so the same
document always produces the same bytes.

"""

import csv
import io
import json
import math
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from triway.core import ConfigError


class DocWriter:
    """
    Document output class
    """

    def __init__(self, digits: int = 9):
        """
        Initialize the DocWriter class

        Parameters
        ----------
        digits : int, optional
            Significant digits of every float. The default is 9.

        Returns
        -------
        None.

        """
        self.digits = digits

    def __float(self, x: float):
        if not math.isfinite(x):
            return None
        v = float("%.*g" % (self.digits, x))
        return 0.0 if v == 0 else v

    def normalize(self, obj):
        """Plain JSON-ready copy of a document with rounded floats."""
        if hasattr(obj, "to_dict"):
            return self.normalize(obj.to_dict())
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, dict):
            return {str(k.name if isinstance(k, Enum) else k): self.normalize(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self.normalize(v) for v in obj]
        if isinstance(obj, np.ndarray):
            return [self.normalize(v) for v in obj.tolist()]
        if isinstance(obj, (bool, np.bool_)):
            return bool(obj)
        if isinstance(obj, (int, np.integer)):
            return int(obj)
        if isinstance(obj, (float, np.floating)):
            return self.__float(float(obj))
        return obj

    def to_json(self, document) -> bytes:
        text = json.dumps(self.normalize(document), sort_keys=True, indent=2, ensure_ascii=False)
        return (text + "\n").encode("utf-8")

    def to_jsonl(self, records: Iterable) -> bytes:
        lines = [json.dumps(self.normalize(r), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
                 for r in records]
        return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")

    def to_csv(self, rows: Iterable[dict], columns: Sequence[str]) -> bytes:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            row = self.normalize(row)
            writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
        return buf.getvalue().encode("utf-8")

    def emit(self, document, fmt: str = "json", columns: Sequence[str] = ()) -> bytes:
        """
        Serialize a document.

        Parameters
        ----------
        document : object
            A dictionary, a list or any object with a `to_dict` method. For
            'csv' and 'jsonl' it must be an iterable of rows or records.
        fmt : str, optional
            'json', 'csv' or 'jsonl'. The default is 'json'.
        columns : sequence of str, optional
            CSV columns.

        Returns
        -------
        bytes

        """
        if fmt == "json":
            return self.to_json(document)
        if fmt == "csv":
            return self.to_csv(document, columns)
        if fmt == "jsonl":
            return self.to_jsonl(document)
        raise ConfigError("unknown output format %r" % fmt)

    def write(self, data: bytes, filename: str = None, stream=None):
        """
        Write emitted bytes to a file, or to `stream` (a binary buffer) when
        no filename is given.
        """
        if filename:
            with open(filename, "wb") as f:
                f.write(data)
        elif stream is not None:
            stream.write(data)
            stream.flush()
