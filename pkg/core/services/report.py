# core/services/report.py
import csv
import hashlib
import json
import logging
from pathlib import Path

import numpy as np

from spectrum.services.io import format_float

logger = logging.getLogger(__name__)


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__} in a report")


def json_text(payload):
    """Stable JSON encoding: sorted keys, shortest round-trip floats, trailing newline."""
    return json.dumps(payload, default=_jsonable, sort_keys=True, indent=2) + '\n'


def report_bytes(report):
    return json_text(report.as_dict()).encode('utf-8')


def write_json(payload, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json_text(payload))
    return path


def write_report(report, path):
    """Write the JSON report and return its SHA-256."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = report_bytes(report)
    path.write_bytes(data)
    digest = hashlib.sha256(data).hexdigest()
    logger.info("report written to %s (sha256 %s)", path, digest[:12])
    return digest


def write_table(rows, columns, path):
    """CSV with a header; floats carry 17 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([
                format_float(row[c]) if isinstance(row[c], (float, np.floating)) else row[c]
                for c in columns
            ])
    logger.info("wrote %d rows to %s", len(rows), path)
    return path


SWEEP_COLUMNS = ['s', 'conjugate', 'a', 'k', 'M', 'one_sided', 'two_sided', 'one_sided_norm', 'gap_slope', 'k_slope']


def sweep_rows(table):
    """Table rows with the slope of the gap (or conjugate) law at their k and of the k law at their a."""
    by_param = {fit['param']: fit['slope'] for fit in table.fits}
    return [
        {
            's': table.s,
            'conjugate': int(table.conjugate),
            **row,
            'gap_slope': by_param.get(f"k={row['k']}", ''),
            'k_slope': by_param.get(f"a={row['a']:.17g}", ''),
        }
        for row in table.rows
    ]


def write_sweep_csv(tables, path):
    return write_table([row for table in tables for row in sweep_rows(table)], SWEEP_COLUMNS, path)


def write_outputs(report, tables, out_dir):
    """Write sweep.csv (when sweeps ran) and report.json into out_dir; returns (report path, sha256)."""
    out_dir = Path(out_dir)
    if tables:
        write_sweep_csv(tables, out_dir / 'sweep.csv')
        # names only, so the report bytes do not depend on where it was written
        report.artefacts['sweep_csv'] = 'sweep.csv'
    path = out_dir / 'report.json'
    return path, write_report(report, path)
