"""CSV / JSON emission of sweep and spectrum rows.

Numbers are written with 17 significant digits so a JSON round trip
reproduces every float bit-exactly.
"""
from __future__ import annotations

import json

from .scenarios import SpectrumRow, SweepRow


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _row_dict(row: SweepRow) -> dict:
    data = {"sweep_value": row.sweep_value}
    if row.analytic is not None:
        data["analytic"] = list(row.analytic)
    data["numeric"] = list(row.numeric)
    if row.max_abs_err is not None:
        data["max_abs_err"] = row.max_abs_err
    data["dt_deviation"] = row.dt_deviation
    if row.extras:
        data.update(row.extras)
    return data


def _row_from_dict(data: dict) -> SweepRow:
    known = {"sweep_value", "analytic", "numeric", "max_abs_err",
             "dt_deviation"}
    return SweepRow(
        sweep_value=data["sweep_value"],
        numeric=tuple(data.get("numeric", ())),
        analytic=tuple(data["analytic"]) if "analytic" in data else None,
        max_abs_err=data.get("max_abs_err"),
        dt_deviation=data.get("dt_deviation", 0.0),
        extras={k: v for k, v in data.items() if k not in known},
    )


def _sweep_header(rows: list[SweepRow]) -> list[str]:
    header = ["sweep_value"]
    n_analytic = max((len(r.analytic) for r in rows
                      if r.analytic is not None), default=0)
    n_numeric = max((len(r.numeric) for r in rows), default=0)
    header += [f"analytic_{j}" for j in range(n_analytic)]
    header += [f"numeric_{j}" for j in range(n_numeric)]
    if any(r.max_abs_err is not None for r in rows):
        header.append("max_abs_err")
    header.append("dt_deviation")
    extras = sorted({k for r in rows for k in r.extras})
    header += extras
    return header


def _sweep_csv_lines(rows: list[SweepRow]) -> list[str]:
    header = _sweep_header(rows)
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for col in header:
            if col == "sweep_value":
                cells.append(_fmt(row.sweep_value))
            elif col.startswith("analytic_"):
                j = int(col.split("_")[1])
                cells.append(_fmt(row.analytic[j])
                             if row.analytic is not None
                             and j < len(row.analytic) else "")
            elif col.startswith("numeric_"):
                j = int(col.split("_")[1])
                cells.append(_fmt(row.numeric[j])
                             if j < len(row.numeric) else "")
            elif col == "max_abs_err":
                cells.append(_fmt(row.max_abs_err)
                             if row.max_abs_err is not None else "")
            elif col == "dt_deviation":
                cells.append(_fmt(row.dt_deviation))
            else:
                cells.append(_fmt(row.extras[col])
                             if col in row.extras else "")
        lines.append(",".join(cells))
    return lines


def _spectrum_csv_lines(rows: list[SpectrumRow]) -> list[str]:
    dim = len(rows[0].energies) if rows else 0
    lines = [",".join(["t"] + [f"lambda_{j}" for j in range(dim)])]
    for row in rows:
        lines.append(",".join([_fmt(row.t)]
                              + [_fmt(e) for e in row.energies]))
    return lines


def emit(rows, fmt: str, path, scenario: str | None = None,
         model: dict | None = None, config: dict | None = None) -> None:
    """Write rows to a file as csv or json."""
    spectrum = bool(rows) and isinstance(rows[0], SpectrumRow)
    if fmt == "csv":
        if spectrum:
            lines = _spectrum_csv_lines(rows)
        else:
            lines = _sweep_csv_lines(rows)
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        return
    if fmt == "json":
        if spectrum:
            payload_rows = [{"t": r.t, "energies": list(r.energies)}
                            for r in rows]
        else:
            payload_rows = [_row_dict(r) for r in rows]
        payload = {"scenario": scenario, "model": model, "config": config,
                   "rows": payload_rows}
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        return
    raise ValueError(f"unknown format {fmt!r}")


def read_rows(path) -> list[SweepRow]:
    """Read back a JSON emit; floats round-trip bit-exactly."""
    with open(path) as fh:
        payload = json.load(fh)
    return [_row_from_dict(d) for d in payload["rows"]]
