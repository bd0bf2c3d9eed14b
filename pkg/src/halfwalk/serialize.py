"""JSON-ready forms of the exact objects.  Rationals are always "p/q" or "p" strings."""
from __future__ import annotations

import json
from typing import Any, List

from .exact_series import LaurentPoly, LaurentSeriesT, SeriesT, rat, rat_str


def dumps(obj: Any) -> str:
    """Canonical JSON text; re-serialising parsed output gives the same bytes."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def poly_to_json(p: LaurentPoly) -> List[list]:
    return [[e, rat_str(c)] for e, c in p.items()]


def poly_from_json(data) -> LaurentPoly:
    return LaurentPoly({int(e): rat(c) for e, c in data})


def series_to_json(S: SeriesT) -> dict:
    return {"order": S.order, "coeffs": [poly_to_json(c) for c in S.coeffs]}


def series_from_json(data) -> SeriesT:
    return SeriesT([poly_from_json(c) for c in data["coeffs"]], data["order"])


def laurent_series_to_json(S: LaurentSeriesT) -> dict:
    return {
        "valuation": S.valuation,
        "order": S.order,
        "coeffs": [poly_to_json(c) for c in S.coeffs],
    }


def count_table_to_json(T) -> dict:
    return {
        "max_len": T.max_len,
        "rows": [[[i, rat_str(c)] for i, c in sorted(row.items())] for row in T.rows],
    }


def count_table_from_json(data):
    from .walk_engine import CountTable

    rows = tuple({int(i): rat(c) for i, c in row} for row in data["rows"])
    return CountTable(int(data["max_len"]), rows)


def upoly_to_json(p) -> List[str]:
    return [rat_str(c) for c in p.coeffs]


def tripoly_to_json(P) -> dict:
    """Exponent-map form: {"vars": [...], "terms": [[[i, j, k], "c"], ...]}."""
    return {
        "vars": list(P.vars),
        "terms": [[list(e), rat_str(c)] for e, c in sorted(P.terms.items())],
    }


def tripoly_from_json(data):
    from .polys import MPoly

    return MPoly(data["vars"], {tuple(e): rat(c) for e, c in data["terms"]})
