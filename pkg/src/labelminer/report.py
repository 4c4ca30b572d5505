"""Report structures shared by the CLI and the scripting bindings.

The JSON report is the machine-readable artifact: stable, timestamp-free,
byte-identical across runs on the same inputs. Both front ends build it
through this module so their outputs cannot drift apart.
"""

from __future__ import annotations

import json
from dataclasses import asdict

from .corpus import LabeledTransactionSet
from .patterns import render
from .search import MiningResult, SearchConfig

SCHEMA_VERSION = 1


def _lift(u_plus: int, u_minus: int, n_plus: int, n_minus: int) -> float | None:
    if n_plus == 0 or n_minus == 0:
        return None
    if u_minus == 0:
        return None  # infinite lift serializes as null
    return (u_plus / n_plus) / (u_minus / n_minus)


def build_report(
    db: LabeledTransactionSet, result: MiningResult, config: SearchConfig
) -> dict:
    """Assemble the report document for one mining run."""
    records = []
    for entry in result.entries:
        records.append(
            {
                "pattern": render(entry.pattern, db.vocab),
                "target": entry.target,
                "support_plus": entry.u_plus,
                "support_minus": entry.u_minus,
                "gain_bits": entry.gain_bits,
                "lift": _lift(entry.u_plus, entry.u_minus, db.n_plus, db.n_minus),
            }
        )
    return {
        "schema": SCHEMA_VERSION,
        "metadata": {
            "n": db.n,
            "m": db.m,
            "n_plus": db.n_plus,
            "n_minus": db.n_minus,
            "total_bits_start": result.total_bits_start,
            "total_bits_end": result.total_bits_end,
            "rounds": result.rounds,
            "warnings": list(result.warnings),
            "config": asdict(config),
        },
        "patterns": records,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def report_text(report: dict, unicode_ops: bool = False) -> str:
    """Human-readable rendering: one pattern per line with supports,
    gain, and lift."""
    meta = report["metadata"]
    lines = [
        f"instances: {meta['n']}  (plus: {meta['n_plus']}, minus: {meta['n_minus']})"
        f"  vocabulary: {meta['m']}",
        f"total bits: {meta['total_bits_start']:.2f} -> {meta['total_bits_end']:.2f}"
        f"  rounds: {meta['rounds']}",
    ]
    for warning in meta["warnings"]:
        lines.append(f"warning: {warning}")
    if not report["patterns"]:
        lines.append("no label-descriptive patterns found")
    else:
        lines.append("")
        for record in report["patterns"]:
            pattern = record["pattern"]
            if unicode_ops:
                pattern = pattern.replace("AND(", "∧(").replace(
                    "XOR(", "⊕("
                )
            lift = record["lift"]
            lift_text = "inf" if lift is None else f"{lift:.3f}"
            lines.append(
                f"[{record['target']}] {pattern}  "
                f"u+={record['support_plus']} u-={record['support_minus']}  "
                f"gain={record['gain_bits']:.3f} bits  lift={lift_text}"
            )
    return "\n".join(lines) + "\n"
