"""Arity-indexed dimension tables, optionally refined by the bracket-weight
grading (entries become polynomials in the parameter u)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .upoly import UPoly


@dataclass(frozen=True)
class DimensionTable:
    operad_key: str
    symmetrize: bool
    entries: dict  # arity -> int
    graded_entries: dict = field(default_factory=dict)  # arity -> UPoly

    def dim(self, n: int) -> int:
        return self.entries[n]

    def graded(self, n: int) -> UPoly:
        return self.graded_entries[n]

    @property
    def max_arity(self) -> int:
        return max(self.entries)

    def prefix(self, upto: int | None = None) -> tuple:
        upto = self.max_arity if upto is None else upto
        return tuple(self.entries[n] for n in range(1, upto + 1))

    def check_consistency(self) -> None:
        """Graded entries evaluated at u = 1 must match the plain entries."""
        for n, poly in self.graded_entries.items():
            if n in self.entries and poly.subs_one() != self.entries[n]:
                raise AssertionError(
                    f"graded entry at arity {n} evaluates to "
                    f"{poly.subs_one()}, table says {self.entries[n]}"
                )

    def to_json(self) -> dict:
        out = {
            "operad_key": self.operad_key,
            "symmetrize": self.symmetrize,
            "entries": {str(n): d for n, d in sorted(self.entries.items())},
        }
        if self.graded_entries:
            out["graded_entries"] = {
                str(n): poly.to_json()
                for n, poly in sorted(self.graded_entries.items())
            }
        return out


def table_from_dims(operad_key: str, dims, symmetrize: bool = False) -> DimensionTable:
    return DimensionTable(
        operad_key=operad_key,
        symmetrize=symmetrize,
        entries={n: int(d) for n, d in enumerate(dims, start=1)},
    )


def graded_table(operad_key: str, polys, symmetrize: bool = False) -> DimensionTable:
    graded = {n: p if isinstance(p, UPoly) else UPoly.const(p) for n, p in enumerate(polys, start=1)}
    return DimensionTable(
        operad_key=operad_key,
        symmetrize=symmetrize,
        entries={n: int(p.subs_one()) for n, p in graded.items()},
        graded_entries=graded,
    )
