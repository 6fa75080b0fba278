"""Report envelope, JSON schema, and the rendered suite artifacts.

Reports print to stdout as one canonical JSON document.  When a report
directory is requested, the same results are also written as a CSV table
with matplotlib figures (verdict matrix, verdict counts) next to it.
"""

from __future__ import annotations

import csv
import json
import os

FORMAT_VERSION = 1

VERDICTS = [
    "linked",
    "not-linked",
    "ok",
    "fail",
    "hypotheses-failed",
    "inconclusive",
    "resource",
    "error",
]

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "linkagelab report",
    "type": "object",
    "required": ["format", "command", "status", "exit_code", "results"],
    "properties": {
        "format": {"const": FORMAT_VERSION},
        "command": {"type": "string"},
        "session": {"type": ["string", "null"]},
        "seeds": {"type": ["integer", "null"]},
        "status": {"enum": ["ok", "fail", "hypotheses-failed", "inconclusive", "resource", "error"]},
        "exit_code": {"type": "integer", "minimum": 0, "maximum": 5},
        "error": {"type": ["string", "null"]},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["fixture", "verdict"],
                "properties": {
                    "fixture": {"type": "string"},
                    "verifier": {"type": "string"},
                    "verdict": {"enum": VERDICTS},
                    "hypotheses": {"type": "object"},
                    "conclusions": {"type": "object"},
                    "witnesses": {"type": "array"},
                    "derived": {"type": "object"},
                    "timings": {"type": "object"},
                },
            },
        },
    },
}


def exit_code_for(results) -> int:
    verdicts = {r.get("verdict") for r in results}
    if "error" in verdicts:
        return 5
    if "resource" in verdicts:
        return 5
    if "fail" in verdicts:
        return 1
    if "hypotheses-failed" in verdicts:
        return 2
    if "inconclusive" in verdicts:
        return 3
    return 0


def status_for(exit_code: int) -> str:
    return {0: "ok", 1: "fail", 2: "hypotheses-failed", 3: "inconclusive", 4: "error", 5: "resource"}[
        exit_code
    ]


def envelope(command: str, results, session=None, seeds=None, error=None, exit_code=None):
    code = exit_code if exit_code is not None else exit_code_for(results)
    return {
        "format": FORMAT_VERSION,
        "command": command,
        "session": session,
        "seeds": seeds,
        "status": status_for(code),
        "exit_code": code,
        "error": error,
        "results": results,
    }


def emit(doc) -> str:
    """Canonical JSON text: stable key order, two-space indent."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# delimited output and figures


def _detail(rep) -> str:
    keep = {k: v for k, v in rep.get("conclusions", {}).items()}
    return json.dumps(keep, sort_keys=True)


def write_csv(results, path: str):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fixture", "verifier", "verdict", "detail"])
        for rep in results:
            writer.writerow(
                [rep.get("fixture", ""), rep.get("verifier", ""), rep.get("verdict", ""), _detail(rep)]
            )


_VERDICT_COLOR = {
    "linked": "#2a9d8f",
    "ok": "#2a9d8f",
    "not-linked": "#8ab17d",
    "inconclusive": "#e9c46a",
    "hypotheses-failed": "#f4a261",
    "fail": "#e76f51",
    "resource": "#9b5de5",
    "error": "#9b5de5",
}


def render_figures(results, outdir: str):
    """Verdict matrix and per-verifier verdict counts as PNG files."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Patch

    fixtures = sorted({r.get("fixture", "") for r in results})
    verifiers = sorted({r.get("verifier", "") for r in results})
    lookup = {(r.get("fixture", ""), r.get("verifier", "")): r.get("verdict") for r in results}

    fig_h = max(2.5, 0.28 * len(fixtures) + 1.2)
    fig_w = max(4.0, 0.55 * len(verifiers) + 2.5)
    fig, ax = plt.subplots(figsize=(fig_w, fig_h))
    for yi, fx in enumerate(fixtures):
        for xi, vf in enumerate(verifiers):
            verdict = lookup.get((fx, vf))
            if verdict is None:
                continue
            ax.add_patch(
                plt.Rectangle((xi, yi), 0.92, 0.92, color=_VERDICT_COLOR.get(verdict, "#cccccc"))
            )
    ax.set_xlim(0, len(verifiers))
    ax.set_ylim(0, len(fixtures))
    ax.set_xticks([i + 0.46 for i in range(len(verifiers))])
    ax.set_xticklabels(verifiers, rotation=45, ha="right", fontsize=7)
    ax.set_yticks([i + 0.46 for i in range(len(fixtures))])
    ax.set_yticklabels(fixtures, fontsize=6)
    ax.invert_yaxis()
    ax.set_title("verdicts by fixture and verifier")
    seen = sorted({v for v in lookup.values() if v})
    ax.legend(
        handles=[Patch(color=_VERDICT_COLOR.get(v, "#cccccc"), label=v) for v in seen],
        loc="upper left",
        bbox_to_anchor=(1.01, 1.0),
        fontsize=7,
    )
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "verdict_matrix.png"), dpi=150)
    plt.close(fig)

    counts = {}
    for rep in results:
        key = rep.get("verifier", "")
        counts.setdefault(key, {})
        v = rep.get("verdict", "")
        counts[key][v] = counts[key].get(v, 0) + 1
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(counts) + 2.0), 3.2))
    bottoms = {k: 0 for k in counts}
    order = [v for v in VERDICTS if any(v in c for c in counts.values())]
    xs = sorted(counts)
    for verdict in order:
        heights = [counts[k].get(verdict, 0) for k in xs]
        ax.bar(
            range(len(xs)),
            heights,
            bottom=[bottoms[k] for k in xs],
            color=_VERDICT_COLOR.get(verdict, "#cccccc"),
            label=verdict,
        )
        for k, h in zip(xs, heights):
            bottoms[k] += h
    ax.set_xticks(range(len(xs)))
    ax.set_xticklabels(xs, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel("reports")
    ax.set_title("verdict counts by verifier")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(os.path.join(outdir, "verdict_counts.png"), dpi=150)
    plt.close(fig)


def write_report_dir(doc, outdir: str):
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "report.json"), "w") as fh:
        fh.write(emit(doc))
    write_csv(doc["results"], os.path.join(outdir, "results.csv"))
    render_figures(doc["results"], outdir)
