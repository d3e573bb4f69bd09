"""
Result files of a scenario run. Every file carries the config hash: CSVs in a leading comment line,
the summary as a field, the ECDF plot in a comment and in its title.
"""
import csv
import json
import logging
import os
from typing import Dict, Iterable, List, Mapping, Sequence

import numpy as np

from uvstat.common import JsonEncoder

logger = logging.getLogger("uvstat.experiment.artifacts")

SCHEMA_VERSION = 1
SAMPLE_COLUMNS = ("source", "n", "replicate", "value")
DISTANCE_COLUMNS = ("n", "R", "limit", "ks", "w1", "pass")

SVG_WIDTH, SVG_HEIGHT, SVG_MARGIN = 640, 400, 48
SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def hash_comment(config_hash: str) -> str:
    return f"# uvstat config_hash={config_hash}\n"


def _cell(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return ""
    return value


def write_csv(path: str, config_hash: str, fieldnames: Sequence[str], rows: Iterable[Mapping]):
    with open(path, "w", newline="") as f:
        f.write(hash_comment(config_hash))
        w = csv.DictWriter(f, fieldnames=list(fieldnames), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: _cell(row.get(k)) for k in fieldnames})


def read_csv(path: str) -> List[Dict[str, str]]:
    with open(path, newline="") as f:
        return list(csv.DictReader(line for line in f if not line.startswith("#")))


def write_samples(path: str, config_hash: str, samples: Iterable):
    """
    one line per replicate value; samples are (source, n, values) triples
    """

    def rows():
        for source, n, values in samples:
            for rid, value in enumerate(np.asarray(values, dtype=np.float64)):
                yield {"source": source, "n": n, "replicate": rid, "value": value}

    write_csv(path, config_hash, SAMPLE_COLUMNS, rows())


def write_distances(path: str, config_hash: str, rows: Iterable):
    write_csv(
        path,
        config_hash,
        DISTANCE_COLUMNS,
        (
            {"n": r.n, "R": r.replicates, "limit": r.limit, "ks": r.ks, "w1": r.w1, "pass": r.passed}
            for r in rows
        ),
    )


def write_matrix(path: str, config_hash: str, matrix: np.ndarray):
    """
    dim header line followed by the dense rows
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    with open(path, "w") as f:
        f.write(hash_comment(config_hash))
        f.write(f"dim,{matrix.shape[0]}\n")
        for row in matrix:
            f.write(",".join(repr(float(v)) for v in row) + "\n")


def write_summary(path: str, summary: Dict):
    with open(path, "w") as f:
        json.dump(dict(summary, schema_version=SCHEMA_VERSION), f, cls=JsonEncoder, indent=2, sort_keys=True)
        f.write("\n")


def _step_points(values: np.ndarray, lo: float, hi: float) -> str:
    sx = (SVG_WIDTH - 2 * SVG_MARGIN) / (hi - lo)
    sy = SVG_HEIGHT - 2 * SVG_MARGIN
    values = np.sort(values)
    heights = np.arange(1, values.size + 1) / values.size
    points = [(SVG_MARGIN, SVG_HEIGHT - SVG_MARGIN)]
    previous = 0.0
    for x, y in zip(values, heights):
        px = SVG_MARGIN + (x - lo) * sx
        points.append((px, SVG_HEIGHT - SVG_MARGIN - previous * sy))
        points.append((px, SVG_HEIGHT - SVG_MARGIN - y * sy))
        previous = y
    points.append((SVG_WIDTH - SVG_MARGIN, SVG_MARGIN))
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in points)


def render_ecdf_svg(curves: Mapping[str, np.ndarray], title: str, config_hash: str) -> str:
    """
    empirical CDFs as step polylines on a shared axis, clipped to the 0.5%..99.5% quantile range
    """
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}">',
        f"<!-- uvstat config_hash={config_hash} -->",
        f"<title>{title} ({config_hash[:12]})</title>",
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{SVG_MARGIN}" y="{SVG_MARGIN / 2:.0f}" font-size="14">{title}</text>',
    ]
    curves = {k: np.asarray(v, dtype=np.float64) for k, v in curves.items() if np.size(v)}
    if curves:
        pooled = np.concatenate(list(curves.values()))
        lo, hi = np.quantile(pooled, [0.005, 0.995])
        if hi <= lo:
            lo, hi = lo - 0.5, hi + 0.5
        lines.append(
            f'<path d="M{SVG_MARGIN},{SVG_MARGIN} V{SVG_HEIGHT - SVG_MARGIN} H{SVG_WIDTH - SVG_MARGIN}" '
            'stroke="black" fill="none"/>'
        )
        lines.append(f'<text x="{SVG_MARGIN}" y="{SVG_HEIGHT - SVG_MARGIN / 3:.0f}" font-size="11">{lo:.3g}</text>')
        lines.append(
            f'<text x="{SVG_WIDTH - SVG_MARGIN}" y="{SVG_HEIGHT - SVG_MARGIN / 3:.0f}" font-size="11" '
            f'text-anchor="end">{hi:.3g}</text>'
        )
        for i, (label, values) in enumerate(curves.items()):
            color = SVG_COLORS[i % len(SVG_COLORS)]
            clipped = np.clip(values, lo, hi)
            lines.append(
                f'<polyline fill="none" stroke="{color}" stroke-width="1.2" '
                f'points="{_step_points(clipped, lo, hi)}"/>'
            )
            lines.append(
                f'<text x="{SVG_WIDTH - SVG_MARGIN - 4}" y="{SVG_MARGIN + 16 * (i + 1)}" font-size="12" '
                f'text-anchor="end" fill="{color}">{label}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_ecdf_svg(path: str, curves: Mapping[str, np.ndarray], title: str, config_hash: str):
    with open(path, "w") as f:
        f.write(render_ecdf_svg(curves, title, config_hash))


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
