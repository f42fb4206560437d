# spectrum/services/io.py
import csv
import json
import logging
from pathlib import Path

import numpy as np

from spectrum.exceptions import CircleMapError, InputFormatError
from spectrum.services.transforms import synthesize
from spectrum.types import CircleSamples, FourierCoeffs

logger = logging.getLogger(__name__)

COEFF_HEADER = ['n', 're', 'im']
SAMPLE_HEADER = ['j', 're', 'im']


def format_float(x):
    return format(float(x), '.17g')


def _parse_row(path, line, row, index_name):
    try:
        return int(row[index_name]), float(row['re']), float(row['im'])
    except (KeyError, TypeError, ValueError):
        raise InputFormatError(path, line, f"expected integer {index_name} and numeric re, im; got {row}")


def _read_csv_rows(path, header):
    rows = []
    with open(path, newline='') as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != header:
            raise InputFormatError(path, 1, f"header must be {','.join(header)}")
        reader.fieldnames = header
        for row in reader:
            if not any((value or '').strip() for value in row.values()):
                continue
            rows.append((reader.line_num, row))
    return rows


def _read_json_rows(path):
    try:
        with open(path) as handle:
            records = json.load(handle)
    except json.JSONDecodeError as e:
        raise InputFormatError(path, e.lineno, e.msg)
    if not isinstance(records, list):
        raise InputFormatError(path, 1, "expected a JSON array of {n, re, im} objects")
    # JSON arrays carry no line numbers; report the 1-based record position instead
    return [(position, record if isinstance(record, dict) else {})
            for position, record in enumerate(records, start=1)]


def read_coeffs(path, M=None):
    """Load a coefficient file (CSV n,re,im or JSON array); absent indices are zero."""
    path = Path(path)
    if not path.exists():
        raise InputFormatError(path, 0, "file does not exist")
    rows = _read_json_rows(path) if path.suffix.lower() == '.json' else _read_csv_rows(path, COEFF_HEADER)
    mapping = {}
    for line, row in rows:
        n, re, im = _parse_row(path, line, row, 'n')
        if n in mapping:
            raise InputFormatError(path, line, f"index {n} listed twice")
        mapping[n] = complex(re, im)
    if not mapping:
        raise InputFormatError(path, 1, "no coefficients found")
    try:
        coeffs = FourierCoeffs.from_mapping(mapping, M)
    except CircleMapError as e:
        raise InputFormatError(path, 0, str(e))
    logger.info("read %d coefficients from %s (M=%d)", len(mapping), path, coeffs.M)
    return coeffs


def write_coeffs(coeffs, path, threshold=None):
    """Write n,re,im rows; with a threshold, rows with |a_n| <= threshold are skipped."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(COEFF_HEADER)
        for n, a in zip(coeffs.indices, coeffs.values):
            if threshold is None or abs(a) > threshold:
                writer.writerow([int(n), format_float(a.real), format_float(a.imag)])
    return path


def read_samples(path):
    """Load a sample file j,re,im; N is the row count and j must cover 0..N-1."""
    path = Path(path)
    if not path.exists():
        raise InputFormatError(path, 0, "file does not exist")
    rows = _read_csv_rows(path, SAMPLE_HEADER)
    N = len(rows)
    values = np.full(N, np.nan, dtype=np.complex128)
    for line, row in rows:
        j, re, im = _parse_row(path, line, row, 'j')
        if not 0 <= j < N:
            raise InputFormatError(path, line, f"sample index {j} outside 0..{N - 1}")
        if not np.isnan(values[j]):
            raise InputFormatError(path, line, f"sample index {j} listed twice")
        values[j] = complex(re, im)
    try:
        return CircleSamples(values)
    except CircleMapError as e:
        raise InputFormatError(path, N + 1, str(e))


def write_samples(samples, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    values = np.asarray(samples.values, dtype=np.complex128)
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(SAMPLE_HEADER)
        for j, v in enumerate(values):
            writer.writerow([j, format_float(v.real), format_float(v.imag)])
    return path


def read_map(path, N):
    """Samples of a map from either file kind: sample files are used as is, coefficient files synthesized on N points."""
    path = Path(path)
    if not path.exists():
        raise InputFormatError(path, 0, "file does not exist")
    if path.suffix.lower() != '.json':
        with open(path, newline='') as handle:
            first = handle.readline().strip().split(',')
        if first and first[0].strip() == SAMPLE_HEADER[0]:
            return read_samples(path)
    coeffs = read_coeffs(path)
    try:
        return synthesize(coeffs, N)
    except CircleMapError as e:
        raise InputFormatError(path, 0, str(e))
