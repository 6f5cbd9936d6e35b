"""Row manifests, the row pipeline, and the built-in reproduction fixtures.

A RowManifest pins everything a construction needs: q, n, m, the
multiplier s, the ring roots, the Gray matrix V, the component subset,
the code kind and (for extensions) gamma.  `run_row` builds the splitting,
the idempotents, the code over R, its Gray image, duality flags and a
distance report.  The TABLE1/TABLE2 fixtures carry the expected
parameters, flags and distances next to each manifest; `run_table` runs
them and marks mismatches.

Field elements in manifests may be plain integers (image of the integer),
base-p coordinate vectors, or strings like "g2" / "-g3" denoting powers of
the canonical field generator (used for the q = 9 rows).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Sequence

from . import analysis, duadic, gf, splittings
from .errors import ConstructionError, ParameterError
from .ring import NonChainRing, make_ring

KINDS = ("typeI", "typeII-even", "typeII-odd", "typeII-extended")
_GEN_POWER = re.compile(r"^(-?)g(\d*)$")


def parse_element(F: gf.Field, spec) -> int:
    """An element given as an int, a coordinate vector, or a generator power."""
    if isinstance(spec, bool):
        raise ParameterError(f"bad element spec {spec!r}")
    if isinstance(spec, int):
        return spec % F.p
    if isinstance(spec, str):
        m = _GEN_POWER.match(spec.strip())
        if m:
            e = int(m.group(2) or 1)
            val = F.pow(F.generator, e)
            return F.neg(val) if m.group(1) else val
        try:
            return int(spec) % F.p
        except ValueError:
            raise ParameterError(f"bad element spec {spec!r}") from None
    if isinstance(spec, (list, tuple)):
        return F.from_coeffs(spec)
    raise ParameterError(f"bad element spec {spec!r}")


@dataclass(frozen=True)
class RowManifest:
    """Everything needed to rebuild one table row."""

    q: int
    n: int
    m: int
    s: int
    kind: str
    roots: tuple
    V: tuple
    subset: frozenset[int] = frozenset({1})
    gamma: object = None
    mu_minus1: str | None = None
    distance_budget: object = "default"  # "default" | "bounds" | int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown kind {self.kind!r}")

    def to_dict(self, F: gf.Field | None = None) -> dict:
        F = F or gf.field_for_order(self.q)
        return {
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "s": self.s,
            "kind": self.kind,
            "roots": [list(F.coeffs(parse_element(F, r))) for r in self.roots],
            "V": [[list(F.coeffs(parse_element(F, v))) for v in row] for row in self.V],
            "subset": sorted(self.subset),
            "gamma": list(F.coeffs(parse_element(F, self.gamma))) if self.gamma is not None else None,
            "mu_minus1": self.mu_minus1,
            "distance_budget": self.distance_budget,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RowManifest":
        try:
            return cls(
                q=int(data["q"]),
                n=int(data["n"]),
                m=int(data["m"]),
                s=int(data["s"]),
                kind=data["kind"],
                roots=tuple(data["roots"]),
                V=tuple(tuple(row) for row in data["V"]),
                subset=frozenset(data.get("subset") or [1]),
                gamma=data.get("gamma"),
                mu_minus1=data.get("mu_minus1"),
                distance_budget=data.get("distance_budget", "default"),
            )
        except KeyError as missing:
            raise ParameterError(f"manifest is missing field {missing}") from None


@dataclass(frozen=True)
class RowReport:
    manifest: RowManifest
    field_info: dict
    splitting: splittings.Splitting
    gray_length: int
    gray_dimension: int
    size_exponent: int
    flags: analysis.DualityFlags
    distance: analysis.DistanceReport
    gamma: int | None

    def to_dict(self) -> dict:
        F = gf.field_for_order(self.manifest.q)
        return {
            "manifest": self.manifest.to_dict(F),
            "field": self.field_info,
            "splitting": self.splitting.to_dict(),
            "gray": {"length": self.gray_length, "dimension": self.gray_dimension},
            "size_exponent": self.size_exponent,
            "flags": self.flags.to_dict(),
            "distance": self.distance.to_dict(),
            "gamma": list(F.coeffs(self.gamma)) if self.gamma is not None else None,
        }


def _budgets(policy) -> tuple[int, int | None]:
    if policy == "default":
        return analysis.DEFAULT_ENUM_BUDGET, None
    if policy == "bounds":
        return 0, 0
    if isinstance(policy, int) and policy >= 0:
        return policy, policy
    raise ParameterError(f"bad distance budget {policy!r}")


def build_code(manifest: RowManifest):
    """(field, ring, splitting, code-over-R, gamma) for a manifest.

    The canonical splitting is the first one enumerated for the manifest's
    multiplier, filtered by the mu_minus1 regime when the manifest pins one
    (the same s can admit splittings in both regimes).
    """
    F = gf.field_for_order(manifest.q)
    n, m = manifest.n, manifest.m
    if len(manifest.roots) != m:
        raise ParameterError(f"expected {m} roots, got {len(manifest.roots)}")
    roots = tuple(parse_element(F, r) for r in manifest.roots)
    ringR = make_ring(F, roots)
    if gcd(manifest.s, 2 * n) != 1:
        raise ParameterError(f"multiplier {manifest.s} is not a unit mod {2 * n}")
    base_kind = splittings.TYPE_I if manifest.kind == "typeI" else splittings.TYPE_II
    found = splittings.find_splittings(
        manifest.q, n, base_kind,
        multiplier=manifest.s, mu_minus1=manifest.mu_minus1, max_count=1,
    )
    if not found:
        raise ConstructionError(
            f"no {base_kind} splitting with multiplier {manifest.s}"
            + (f" in the {manifest.mu_minus1!r} regime" if manifest.mu_minus1 else "")
        )
    split = found[0]
    gamma = parse_element(F, manifest.gamma) if manifest.gamma is not None else None
    if manifest.kind == "typeI":
        base = duadic.typeI_pair(split, F)
        E = duadic.family_idempotent(manifest.subset, "F", ringR, base, n)
        code = duadic.code_from_idempotent(E)
    else:
        base = duadic.typeII_quintet(split, F)
        fam = "E" if manifest.kind == "typeII-even" else "D"
        E = duadic.family_idempotent(manifest.subset, fam, ringR, base, n)
        code = duadic.code_from_idempotent(E)
        if manifest.kind == "typeII-extended":
            if gamma is None:
                raise ParameterError("extended kind requires gamma in the manifest")
            code = duadic.extend_code(code, gamma)
    return F, ringR, split, code, gamma


def run_row(manifest: RowManifest, budget_override=None) -> RowReport:
    """Construct, classify and measure one row."""
    F, ringR, split, code, gamma = build_code(manifest)
    V = analysis.gray_matrix(F, [[parse_element(F, v) for v in row] for row in manifest.V])
    C = analysis.gray_image(code, V)
    witness = analysis.IsodualWitness(code, V, split.s) if V.lam is not None else None
    flags = analysis.classify_duality(C, witness=witness)
    policy = manifest.distance_budget if budget_override is None else budget_override
    enum_budget, column_budget = _budgets(policy)
    dist = analysis.min_distance(
        C,
        enum_budget=enum_budget,
        column_budget=column_budget,
        lower_hint=code.bch_lower_bound(),
        samples=4000,
    )
    size_exp = code.size_exponent
    return RowReport(
        manifest=manifest,
        field_info=F.to_dict(),
        splitting=split,
        gray_length=C.length,
        gray_dimension=C.k,
        size_exponent=size_exp,
        flags=flags,
        distance=dist,
        gamma=gamma,
    )


# ---------------------------------------------------------------------------
# fixtures for the two published tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RowFixture:
    label: str
    manifest: RowManifest
    expected_length: int
    expected_dimension: int
    expected_flags: tuple[str, ...]
    expected_distance: int | None = None
    note: str | None = None

    def check(self, report: RowReport) -> dict:
        """Compare a report against the recorded expectations."""
        flags = report.flags
        flag_ok = {}
        for name in self.expected_flags:
            if name == "self-dual":
                flag_ok[name] = flags.self_dual
            elif name == "self-orthogonal":
                flag_ok[name] = flags.self_orthogonal
            elif name == "lcd":
                flag_ok[name] = flags.lcd
            elif name == "isodual":
                flag_ok[name] = bool(flags.isodual_by_multiplier) or flags.self_dual
            else:
                raise ParameterError(f"unknown expected flag {name!r}")
        params_ok = (report.gray_length, report.gray_dimension) == (
            self.expected_length, self.expected_dimension)
        dist = report.distance
        if self.expected_distance is None:
            distance_ok = True
        elif dist.exact:
            distance_ok = dist.value == self.expected_distance
        else:
            distance_ok = dist.lower <= self.expected_distance <= dist.upper
        return {
            "label": self.label,
            "expected": {
                "length": self.expected_length,
                "dimension": self.expected_dimension,
                "flags": list(self.expected_flags),
                "distance": self.expected_distance,
            },
            "note": self.note,
            "checks": {
                "parameters": params_ok,
                "flags": flag_ok,
                "distance": distance_ok,
            },
            "match": params_ok and distance_ok and all(flag_ok.values()),
        }


def _t1(label, q, n, m, s, roots, V, d, flag, policy="default", regime=None, note=None,
        length=None, dim=None):
    return RowFixture(
        label=label,
        manifest=RowManifest(q=q, n=n, m=m, s=s, kind="typeI", roots=tuple(roots),
                             V=tuple(tuple(r) for r in V), mu_minus1=regime,
                             distance_budget=policy),
        expected_length=length if length is not None else m * n,
        expected_dimension=dim if dim is not None else m * n // 2,
        expected_flags=(flag,),
        expected_distance=d,
        note=note,
    )


_V4_13 = [[1, 12, 1, 1], [-12, 1, 1, -1], [-1, -1, 1, 12], [-1, 1, -12, 1]]


def table1_fixtures() -> list[RowFixture]:
    return [
        _t1("T1r1", 5, 18, 2, -1, [2, 4], [[2, 3], [-3, 2]], 4, "self-dual"),
        _t1("T1r2", 5, 18, 3, -1, [2, 3, 4], [[4, 4, -2], [-2, 4, 4], [4, -2, 4]],
            8, "self-dual", policy="bounds"),
        _t1("T1r3", 5, 22, 4, -1, [0, 1, 3, 4], _V4_13, 12, "self-dual", policy="bounds"),
        _t1("T1r4", 9, 4, 2, 3, ["g", "g2"], [["1", "g"], ["-g", "1"]],
            4, "isodual", regime="fixes"),
        _t1("T1r5", 9, 4, 4, 3, ["g", "g2", "g4", "g6"],
            [["g", "-g2", "1", "1"], ["-1", "1", "g", "g2"],
             ["g2", "g", "-1", "1"], ["1", "1", "g2", "-g"]],
            6, "isodual", regime="fixes"),
        _t1("T1r6", 13, 6, 3, -1, [-1, 3, 4], [[2, -2, 1], [1, 2, 2], [2, 1, -2]],
            6, "self-dual",
            note="printed V has two equal rows (singular); circulant pattern restored"),
        _t1("T1r7", 13, 6, 4, -1, [0, 3, -3, -4], _V4_13, 7, "self-dual"),
        _t1("T1r8", 13, 6, 5, -1, [0, 3, 4, 8, -2],
            [[8, 11, 11, 2, 12], [12, 8, 11, 11, 2], [2, 12, 8, 11, 11],
             [11, 2, 12, 8, 11], [11, 11, 2, 12, 8]],
            8, "self-dual", policy="bounds",
            note="printed V repeats a row; right-circulant of (8,11,11,2,12) restored"),
    ]


def _t2(label, q, n, m, s, gamma, roots, V, kind, length, dim, d, flag,
        policy="default", regime=None, note=None):
    return RowFixture(
        label=label,
        manifest=RowManifest(q=q, n=n, m=m, s=s, kind=kind, roots=tuple(roots),
                             V=tuple(tuple(r) for r in V), gamma=gamma,
                             mu_minus1=regime, distance_budget=policy),
        expected_length=length,
        expected_dimension=dim,
        expected_flags=(flag,),
        expected_distance=d,
        note=note,
    )


_V2_12 = [[1, 2], [-2, 1]]
_V3_CIRC = [[2, -2, 1], [1, 2, 2], [2, 1, -2]]
_V4_7 = [[2, -2, 1, 1], [-1, 1, 2, 2], [2, 2, 1, -1], [1, 1, -2, 2]]
_V4_11 = [[1, 3, 1, 9], [-3, 1, 9, -1], [-1, -9, 1, 3], [-9, 1, -3, 1]]
_V3_13 = [[4, 4, -2], [-2, 4, 4], [4, -2, 4]]


def table2_fixtures() -> list[RowFixture]:
    rows: list[RowFixture] = []
    rows += [
        _t2("T2r1-even", 3, 10, 2, -1, 1, [0, 2], _V2_12, "typeII-even", 20, 8, 6, "self-orthogonal"),
        _t2("T2r1-ext", 3, 10, 2, -1, 1, [0, 2], _V2_12, "typeII-extended", 24, 12, 6, "self-dual"),
        _t2("T2r2-even", 3, 22, 2, -1, 1, [1, 2], _V2_12, "typeII-even", 44, 20, 9,
            "self-orthogonal", policy="bounds"),
        _t2("T2r2-ext", 3, 22, 2, -1, 1, [1, 2], _V2_12, "typeII-extended", 48, 24, 9,
            "self-dual", policy="bounds"),
        _t2("T2r3-even", 3, 22, 3, -1, 1, [0, 1, 2],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "typeII-even", 66, 30, 6,
            "self-orthogonal", policy="bounds"),
        _t2("T2r3-ext", 3, 22, 3, -1, 1, [0, 1, 2],
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "typeII-extended", 72, 36, 6,
            "self-dual", policy="bounds"),
        _t2("T2r4-even", 7, 10, 3, -1, 2, [3, 4, 6], _V3_CIRC, "typeII-even", 30, 12, 8,
            "self-orthogonal", policy="bounds"),
        _t2("T2r4-ext", 7, 10, 3, -1, 2, [3, 4, 6], _V3_CIRC, "typeII-extended", 36, 18, 6,
            "self-dual", policy="bounds"),
        _t2("T2r5-even", 7, 10, 4, -1, 2, [2, 3, 4, 6], _V4_7, "typeII-even", 40, 16, 12,
            "self-orthogonal", policy="bounds",
            note="printed V row (1,1,2,2) breaks V V^T = lam I; sign restored to (-1,1,2,2)"),
        _t2("T2r5-ext", 7, 10, 4, -1, 2, [2, 3, 4, 6], _V4_7, "typeII-extended", 48, 24, 6,
            "self-dual", policy="bounds"),
        _t2("T2r6-even", 11, 26, 2, -1, 4, [4, 5], [[1, 1], [-1, 1]], "typeII-even", 52, 24, 10,
            "self-orthogonal", policy="bounds",
            note="table prints length 54; the Gray image of a length-26 code over m=2 has length 52"),
        _t2("T2r6-ext", 11, 26, 2, -1, 4, [4, 5], [[1, 1], [-1, 1]], "typeII-extended", 56, 28, 10,
            "self-dual", policy="bounds"),
        _t2("T2r7-even", 11, 10, 4, -1, None, [2, 7, 8, 10], _V4_11, "typeII-even", 40, 16, 8,
            "self-orthogonal", policy="bounds",
            note="2 + gamma^2 * 10 = 0 has no root mod 11; no extended code for this row"),
        _t2("T2r8-even", 13, 34, 2, 9, 4, [1, 2], [[1, 1], [-1, 1]], "typeII-even", 68, 32, None,
            "lcd", policy="bounds", regime="fixes",
            note="printed V row (-2,1) breaks V V^T = lam I, restored to (-1,1); the printed "
                 "[68,36,12] matches the odd-like code, the even-like image is [68,32]"),
        _t2("T2r8-odd", 13, 34, 2, 9, 4, [1, 2], [[1, 1], [-1, 1]], "typeII-odd", 68, 36, 12,
            "lcd", policy="bounds", regime="fixes"),
        _t2("T2r8-ext", 13, 34, 2, 9, 4, [1, 2], [[1, 1], [-1, 1]], "typeII-extended", 72, 36, 12,
            "isodual", policy="bounds", regime="fixes"),
        _t2("T2r9-even", 13, 6, 2, 5, 2, [2, 3], _V2_12, "typeII-even", 12, 4, 7,
            "lcd", regime="fixes"),
        _t2("T2r9-ext", 13, 6, 2, 5, 2, [2, 3], _V2_12, "typeII-extended", 16, 8, 4,
            "isodual", regime="fixes"),
        _t2("T2r10-even", 13, 6, 3, 5, 2, [3, 4, 8], _V3_13, "typeII-even", 18, 6, 9,
            "lcd", regime="fixes"),
        _t2("T2r10-ext", 13, 6, 3, 5, 2, [3, 4, 8], _V3_13, "typeII-extended", 24, 12, 4,
            "isodual", regime="fixes"),
    ]
    return rows


def table_fixtures(which: int) -> list[RowFixture]:
    if which == 1:
        return table1_fixtures()
    if which == 2:
        return table2_fixtures()
    raise ParameterError("table number must be 1 or 2")


def run_table(which: int, budget_override=None) -> list[dict]:
    """Run every fixture of a table; each result embeds the expectation check."""
    results = []
    for fixture in table_fixtures(which):
        report = run_row(fixture.manifest, budget_override=budget_override)
        entry = report.to_dict()
        entry.update(fixture.check(report))
        results.append(entry)
    return results
