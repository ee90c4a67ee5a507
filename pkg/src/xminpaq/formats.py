# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
"""Reading and writing the JSON and CSV files of the command line tool.

CSV floats are written with 17 significant digits and JSON floats in their shortest
round-trip form, so files reproduce exactly.
Every file is written to a temporary name first and renamed into place.
"""

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy

from xminpaq.core.covariance import CovarianceMatrix3
from xminpaq.error import DomainError, FormatError, XminError
from xminpaq.tail.grid import MinSampleSet, TailGrid
from xminpaq.utilities import format_float

TAIL_HEADER = ("t", "m", "stderr")
SAMPLES_HEADER = ("xmin",)
PROFILE_HEADER = ("rho", "value")


def jsonable(value):
    """Plain JSON types for nested numpy values; non-finite floats become null."""
    if isinstance(value, (float, numpy.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, numpy.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, numpy.integer):
        return int(value)
    if isinstance(value, numpy.bool_):
        return bool(value)
    return value


def write_atomic(path, text):
    """Write text to ``path`` through a temporary file in the same directory."""
    path = Path(path)
    handle, temporary = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", newline="") as f:
            f.write(text)
        os.replace(temporary, path)
    except BaseException:
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise


def write_json(path, data):
    write_atomic(path, json.dumps(jsonable(data), indent=2, sort_keys=True) + "\n")


def read_json(path):
    """Parse a JSON file.

    :raises FormatError: If the file is not valid JSON.
    """
    with open(path, "r") as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}")


def write_csv(path, header, columns):
    """Write equally long columns under a header.  None entries are left empty."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow("" if v is None else format_float(v) for v in row)
    write_atomic(path, buffer.getvalue())


def read_csv(path):
    """Return the header and rows of a CSV file, skipping blank lines.

    :raises FormatError: If the file is empty.
    """
    with open(path, "r", newline="") as f:
        rows = [row for row in csv.reader(f) if row and any(cell.strip() for cell in row)]
    if not rows:
        raise FormatError(f"{path}: empty file")
    header = tuple(cell.strip() for cell in rows[0])
    return header, rows[1:]


def _column(rows, index, path, optional=False):
    values = []
    for number, row in enumerate(rows, start=2):
        try:
            cell = row[index].strip()
            if optional and not cell:
                values.append(None)
                continue
            values.append(float(cell))
        except (IndexError, ValueError):
            raise FormatError(f"{path}:{number}: malformed row {row!r}")
    return values


def read_sigma(path):
    """Read a covariance from ``{"sigma": [[...], [...], [...]]}``.

    :rtype: CovarianceMatrix3
    :raises FormatError: If the file is not such an object.
    """
    try:
        return CovarianceMatrix3.from_dict(read_json(path))
    except (DomainError, ValueError, TypeError) as exc:
        raise FormatError(f"{path}: not a 3x3 covariance: {exc}")


def write_sigma(path, sigma):
    write_json(path, sigma.to_dict())


def write_tail(path, tail):
    """Write a tail as "t,m,stderr", the last column empty for noiseless tails."""
    stderr = [None] * len(tail) if tail.stderr is None else tail.stderr
    write_csv(path, TAIL_HEADER, (tail.t, tail.m, stderr))


def write_samples(path, samples):
    write_csv(path, SAMPLES_HEADER, (samples.values,))


def write_profile(path, profile):
    write_csv(path, PROFILE_HEADER, (profile.rho, profile.values))


def read_tail_or_samples(path):
    """Read a tail ("t,m,stderr") or a set of samples ("xmin").

    A tail without standard errors is taken as numerically exact.  A tail with
    standard errors is empirical, its sample count inferred from m (1 - m) / stderr^2.

    :rtype: TailGrid or MinSampleSet
    :raises FormatError: If the header is unknown or a row is malformed.
    """
    header, rows = read_csv(path)
    if not rows:
        raise FormatError(f"{path}: no data rows")
    try:
        if header == SAMPLES_HEADER:
            return MinSampleSet(_column(rows, 0, path))
        if header[:2] != TAIL_HEADER[:2]:
            raise FormatError(f"{path}: unknown header {','.join(header)}")
        t = numpy.array(_column(rows, 0, path))
        m = numpy.array(_column(rows, 1, path))
        stderr = _column(rows, 2, path, optional=True) if len(header) > 2 else [None]
        if all(s is None for s in stderr):
            return TailGrid(t, m, provenance="quadrature")
        if any(s is None for s in stderr):
            raise FormatError(f"{path}: standard errors must be given for all rows or none")
        stderr = numpy.array(stderr)
        informative = stderr > 0
        if not numpy.any(informative):
            raise FormatError(f"{path}: all standard errors are zero")
        mi = m[informative]
        n = int(round(float(numpy.median(mi * (1 - mi) / stderr[informative] ** 2))))
        return TailGrid(t, m, provenance="empirical", stderr=stderr, n_samples=n)
    except FormatError:
        raise
    except XminError as exc:
        raise FormatError(f"{path}: {exc}")
