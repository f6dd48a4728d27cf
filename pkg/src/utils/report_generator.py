# src/utils/report_generator.py
import os
from collections import defaultdict
from datetime import datetime
from typing import Dict, List, Sequence

from src.utils.config import REPORTS_DIR
from src.utils.logger import logger


def get_report_filename(out_csv: str = None) -> str:
    """
    Markdown summary path for a bench run. Sits next to the CSV when one
    is given, otherwise a timestamped file under the reports directory.
    """
    if out_csv:
        stem, _ = os.path.splitext(out_csv)
        return f"{stem}_summary.md"
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    return os.path.join(REPORTS_DIR, f"bench_{timestamp}_summary.md")


def default_csv_filename() -> str:
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    return os.path.join(REPORTS_DIR, f"bench_{timestamp}.csv")


def summarize(rows: Sequence, labels: Sequence[str]) -> Dict[str, Dict[str, float]]:
    """
    Per configuration: solved, timeouts, errors, total wall time of solved
    instances, `u` (instances only this configuration solved) and `bt`
    (solved instances where it was fastest; ties count for everyone tied).
    """
    summary = {label: {"solved": 0, "timeouts": 0, "errors": 0, "time_ms": 0.0, "u": 0, "bt": 0}
               for label in labels}
    by_instance = defaultdict(list)
    for row in rows:
        stats = summary.setdefault(row.engine, {"solved": 0, "timeouts": 0, "errors": 0,
                                                "time_ms": 0.0, "u": 0, "bt": 0})
        if row.solved:
            stats["solved"] += 1
            stats["time_ms"] += row.wall_ms
            by_instance[row.instance].append(row)
        elif row.status == "timeout":
            stats["timeouts"] += 1
        else:
            stats["errors"] += 1

    for solved_rows in by_instance.values():
        if len(solved_rows) == 1:
            summary[solved_rows[0].engine]["u"] += 1
        fastest = min(r.wall_ms for r in solved_rows)
        for r in solved_rows:
            if r.wall_ms == fastest:
                summary[r.engine]["bt"] += 1
    return summary


def generate_report(rows: Sequence, labels: Sequence[str], csv_path: str = None) -> str:
    """Markdown comparison of the configurations of one bench run."""
    logger.debug("Generating bench report.")
    summary = summarize(rows, labels)
    instances = sorted({r.instance for r in rows})
    disagreements: List = [r for r in rows if r.oracle_agreement is False]

    report_lines = []
    report_lines.append("# omt-bits Bench Report\n")
    report_lines.append(f"**Summary:** {len(instances)} instance(s), {len(summary)} configuration(s), "
                        f"{len(rows)} run(s).\n")
    if csv_path:
        report_lines.append(f"Raw rows: `{csv_path}`\n")

    report_lines.append("| config | solved | timeouts | errors | time (ms) | u | bt |")
    report_lines.append("|---|---|---|---|---|---|---|")
    for label, s in summary.items():
        report_lines.append(f"| {label} | {s['solved']} | {s['timeouts']} | {s['errors']} | "
                            f"{s['time_ms']:.1f} | {s['u']} | {s['bt']} |")

    report_lines.append("\n## Oracle agreement\n")
    if not disagreements:
        report_lines.append("All completed runs agree with the oracle.")
    else:
        report_lines.append(f"Found {len(disagreements)} disagreement(s):\n")
        for r in disagreements:
            report_lines.append(f"- `{r.instance}` with **{r.engine}**: {r.status} {r.optimum}")

    report_lines.append("\n---\n*End of Report*\n")
    return "\n".join(report_lines)


def write_report(content: str, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(content)
    logger.info(f"Report saved to: {path}")
    return path
