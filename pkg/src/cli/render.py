"""
输出渲染
所有格式都按固定列序输出、不依赖 locale，同样的输入逐字节相同。
"""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.core.dyck import DyckPath, peaks, render_grid
from src.core.models import ConjectureFit, OutputFormat, ParkingOutcome, Provenance, SuiteResult

PROVENANCE_TAGS = {
    Provenance.ORACLE: "o",
    Provenance.CLOSED_FORM: "c",
    Provenance.PUBLISHED_CONSTANT: "p",
}


@dataclass
class Grid:
    """
    待输出的数值块
    rows 为行主序；provenance 与 rows 同形，为 None 时不标注来源
    """
    title: str
    column_labels: List[str]
    rows: List[List[int]]
    row_labels: List[str] = field(default_factory=list)
    provenance: Optional[List[List[Provenance]]] = None
    metadata: Dict[str, Any] = field(default_factory=dict)


def _cell(value: int, prov: Optional[Provenance]) -> str:
    return f"{value}" if prov is None else f"{value}[{PROVENANCE_TAGS[prov]}]"


def _cells(grid: Grid, show_provenance: bool) -> List[List[str]]:
    out = []
    for r, row in enumerate(grid.rows):
        provs = grid.provenance[r] if show_provenance and grid.provenance else [None] * len(row)
        out.append([_cell(v, p) for v, p in zip(row, provs)])
    return out


def render_text(grid: Grid, show_provenance: bool = False) -> str:
    """
    单空格分隔
    带行标签的矩阵按列右对齐（列宽取该列最长项）；单行序列不补空格，如 '1296 908 783 708 625'
    """
    header = ([""] if grid.row_labels else []) + grid.column_labels
    body = [([grid.row_labels[r]] if grid.row_labels else []) + cells
            for r, cells in enumerate(_cells(grid, show_provenance))]
    if grid.row_labels:
        widths = [max(len(line[c]) for line in [header] + body) for c in range(len(header))]
    else:
        widths = [0] * len(header)
    lines = [grid.title] if grid.title else []
    for line in [header] + body:
        lines.append(" ".join(cell.rjust(w) for cell, w in zip(line, widths)).rstrip())
    if show_provenance and grid.provenance:
        legend = ", ".join(f"[{tag}] {prov.value}" for prov, tag in PROVENANCE_TAGS.items())
        lines.append(f"provenance: {legend}")
    return "\n".join(lines) + "\n"


def render_csv(grid: Grid, show_provenance: bool = False) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow((["row"] if grid.row_labels else []) + grid.column_labels)
    for r, cells in enumerate(_cells(grid, show_provenance)):
        writer.writerow(([grid.row_labels[r]] if grid.row_labels else []) + cells)
    return buffer.getvalue()


def render_json(grid: Grid, show_provenance: bool = False) -> str:
    """元数据在前、矩阵行主序；每行单独一行便于 diff"""
    head = dict(grid.metadata)
    head["columns"] = grid.column_labels
    if grid.row_labels:
        head["rows"] = grid.row_labels
    lines = ["{"]
    for key, value in head.items():
        lines.append(f"  {json.dumps(key)}: {json.dumps(value)},")
    lines.append('  "matrix": [')
    lines.append(",\n".join(f"    {json.dumps(row)}" for row in grid.rows))
    if show_provenance and grid.provenance:
        lines.append("  ],")
        lines.append('  "provenance": [')
        lines.append(",\n".join(f"    {json.dumps([p.value for p in row])}" for row in grid.provenance))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_bfile(values: Sequence[Tuple[int, int]]) -> str:
    """b-file：每行 'index value'"""
    return "".join(f"{index} {value}\n" for index, value in values)


def render_grid_as(grid: Grid, fmt: OutputFormat, show_provenance: bool = False) -> str:
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.TEXT:
        return render_text(grid, show_provenance)
    if fmt == OutputFormat.CSV:
        return render_csv(grid, show_provenance)
    if fmt == OutputFormat.JSON:
        return render_json(grid, show_provenance)
    flat = [v for row in grid.rows for v in row]
    return render_bfile(list(enumerate(flat, start=1)))


# --- 其他命令的文本输出 ---
def render_outcome(outcome: ParkingOutcome) -> str:
    lines = [f"preferences: {' '.join(map(str, outcome.prefs))}"]
    lines.append("parking function: " + ("yes" if outcome.success else "no"))
    for car in range(1, outcome.n + 1):
        spot = outcome.car_spot.get(car)
        where = "exits" if spot is None else f"spot {spot}"
        mark = " (lucky)" if car in outcome.lucky_cars else ""
        lines.append(f"  car {car} prefers {outcome.prefs[car - 1]} -> {where}{mark}")
    lines.append(f"lucky cars: {_join(outcome.lucky_cars)}")
    lines.append(f"lucky spots: {_join(outcome.lucky_spots)}")
    if outcome.exited_cars:
        lines.append(f"exited cars: {_join(outcome.exited_cars)}")
    return "\n".join(lines) + "\n"


def _join(values) -> str:
    return ",".join(str(v) for v in sorted(values)) or "-"


def render_path(path: DyckPath, with_grid: bool = False) -> str:
    lines = [path.steps]
    if with_grid:
        lines.append(render_grid(path))
    return "\n".join(lines) + "\n"


def render_peaks(path: DyckPath) -> str:
    lines = ["car spot corner"]
    for pk in peaks(path):
        lines.append(f"{pk.car} {pk.spot} ({pk.corner[0]},{pk.corner[1]})")
    return "\n".join(lines) + "\n"


def render_fit(fit: ConjectureFit) -> str:
    if fit.exploratory:
        status = "exploratory (unverified: no held-out sample)"
    elif fit.degree_claim_holds:
        status = "verified"
    else:
        status = "REJECTED"
    lines = [
        f"j = {fit.j}",
        f"f_{fit.j}(n) = {fit.f_poly.format('n')}",
        f"degree: {fit.f_poly.degree()} (claim <= {fit.j - 2})",
        f"status: {status}",
        f"r_{fit.j} = {fit.r_j}",
        f"predicted rho_{fit.j} = {fit.predicted_rho.exact_text()} ~ {fit.predicted_rho.numeric:.6f}",
        "samples:",
    ]
    for s in fit.samples_used:
        role = "support" if s.n in fit.support else ("MISMATCH" if s.n in fit.mismatches else "held-out")
        lines.append(f"  n={s.n} S={s.value} [{s.provenance.value}] {role}")
    return "\n".join(lines) + "\n"


def render_report(result: SuiteResult) -> str:
    lines = [f"suite {result.suite} (nmax={result.nmax})"]
    for check in result.checks:
        flag = "PASS" if check.passed else "FAIL"
        detail = f" :: {check.detail}" if check.detail and not check.passed else ""
        lines.append(f"  [{flag}] {check.name} -- {check.reference}{detail}")
    passed = sum(c.passed for c in result.checks)
    lines.append(f"{passed}/{len(result.checks)} checks passed")
    return "\n".join(lines) + "\n"
