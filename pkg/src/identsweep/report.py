"""Serialization of verification records (JSONL, CSV) and sweep summaries.

Integers are written as exact decimal strings; JSON numbers are not used
for identity values.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Any

from identsweep.identities import registry_lookup
from identsweep.records import IdentityId, VerificationRecord

SCHEMA_VERSION = "1"


def _decimal(value: int) -> str:
    try:
        return str(value)
    except ValueError:
        # interpreter cap on int -> str digits (CPython >= 3.10.7)
        limit = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return str(value)
        finally:
            sys.set_int_max_str_digits(limit)


def output_record(record: VerificationRecord) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "identity": record.identity.value,
        "params": record.params.named(),
        "lhs": _decimal(record.lhs),
        "rhs": _decimal(record.rhs),
        "residual": _decimal(record.residual),
        "holds": record.holds,
        "in_domain": record.in_domain,
    }


def jsonl_line(record: VerificationRecord) -> str:
    return json.dumps(output_record(record), ensure_ascii=False, separators=(",", ":")) + "\n"


def csv_header(identity: IdentityId) -> list[str]:
    params = [name for name in ("k", "m", "n", "i", "j") if name in registry_lookup(identity).arity]
    return ["schema_version", "identity", *params, "lhs", "rhs", "residual", "holds", "in_domain"]


def csv_row(record: VerificationRecord) -> list[str]:
    out = output_record(record)
    return [
        out["schema_version"],
        out["identity"],
        *(str(v) for v in out["params"].values()),
        out["lhs"],
        out["rhs"],
        out["residual"],
        "true" if record.holds else "false",
        "true" if record.in_domain else "false",
    ]


def csv_line(fields: list[str]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\r\n").writerow(fields)
    return buf.getvalue()
