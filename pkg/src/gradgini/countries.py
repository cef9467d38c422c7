"""Bundled Gini values for countries and cities, with their graduation degrees."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import DomainError
from .model import bracket, classify, degree_for_gini

__all__ = ["CountryRecord", "load_countries", "find_by_gini", "printed_m_note", "graduation_row"]

# printed degrees further than this from 2g/(1-g) are flagged
PRINTED_M_TOL = 5e-4


@dataclass(frozen=True)
class CountryRecord:
    name: str
    gini: float
    year: int | None
    kind: str = "country"
    printed_m: float | None = None
    note: str = ""

    def __post_init__(self):
        if not 0 < self.gini < 1:
            raise DomainError(f"{self.name}: Gini must lie in (0, 1), got {self.gini}")
        if self.year is not None and not 1900 <= self.year <= 2100:
            raise DomainError(f"{self.name}: year {self.year} outside 1900..2100")

    @property
    def m(self) -> float:
        return degree_for_gini(self.gini)

    @property
    def printed_m_consistent(self) -> bool | None:
        if self.printed_m is None:
            return None
        return abs(self.printed_m - self.m) <= PRINTED_M_TOL


@lru_cache(maxsize=1)
def load_countries() -> tuple[CountryRecord, ...]:
    text = resources.files("gradgini").joinpath("data/countries.csv").read_text("utf-8")
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append(
            CountryRecord(
                name=row["name"],
                kind=row["kind"],
                gini=float(row["gini"]),
                year=int(row["year"]) if row["year"] else None,
                printed_m=float(row["printed_m"]) if row["printed_m"] else None,
                note=row["note"],
            )
        )
    return tuple(rows)


def find_by_gini(g: float, tol: float = 1e-12) -> list[CountryRecord]:
    return [r for r in load_countries() if abs(r.gini - g) <= tol]


def printed_m_note(rec: CountryRecord) -> str:
    if rec.printed_m_consistent is False:
        return (
            f"printed m={rec.printed_m:g} for {rec.name} does not follow from "
            f"m = 2G/(1-G), which gives {rec.m:.3f}"
        )
    return ""


def graduation_row(rec: CountryRecord) -> dict:
    notes = [n for n in (rec.note, printed_m_note(rec)) if n]
    return {
        "name": rec.name,
        "kind": rec.kind,
        "year": rec.year,
        "gini": rec.gini,
        "m": rec.m,
        "classification": classify(rec.m),
        "bracket": bracket(rec.m),
        "printed_m": rec.printed_m,
        "printed_m_consistent": rec.printed_m_consistent,
        "notes": notes,
    }
