"""Central hyperplane arrangements over Q: flats, lower covers, and chambers of 2-plane slices.

A flat is stored through its normal space (the span of the normals of the
hyperplanes containing it), canonicalised by reduced row echelon form, so two
intersections are equal exactly when their echelon bases are.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from pathlib import Path
from typing import Optional, Sequence

from .report import Report

Vector = tuple[Fraction, ...]

# Set to a file with one hyperplane normal per line to run the G5 profile.
G5_ENV = "ISOSING_G5_ARRANGEMENT"
G5_FILE = "G5_arrangement.txt"
G5_PROFILE = {2, 3, 4, 6}


def echelon(rows: Sequence[Sequence[Fraction]]) -> tuple[Vector, ...]:
    """Nonzero rows of the reduced row echelon form."""
    M = [list(map(Fraction, r)) for r in rows]
    if not M:
        return ()
    ncols = len(M[0])
    out: list[list[Fraction]] = []
    for c in range(ncols):
        piv = next((i for i, r in enumerate(M) if r[c] != 0), None)
        if piv is None:
            continue
        row = M.pop(piv)
        row = [v / row[c] for v in row]
        M = [[a - r[c] * b for a, b in zip(r, row)] for r in M]
        out = [[a - r[c] * b for a, b in zip(r, row)] for r in out]
        out.append(row)
    out.sort(key=lambda r: next(i for i, v in enumerate(r) if v != 0))
    return tuple(tuple(r) for r in out)


def in_span(v: Sequence[Fraction], basis: tuple[Vector, ...]) -> bool:
    return len(echelon(list(basis) + [tuple(v)])) == len(basis)


@dataclass
class Arrangement:
    dim: int
    normals: list[Vector]

    def __post_init__(self):
        seen = set()
        normals = []
        for n in self.normals:
            n = tuple(Fraction(v) for v in n)
            if len(n) != self.dim:
                raise ValueError(f"normal {n} is not in dimension {self.dim}")
            if not any(n):
                raise ValueError("zero normal")
            key = echelon([n])
            if key in seen:
                raise ValueError(f"hyperplane {n} repeated")
            seen.add(key)
            normals.append(n)
        self.normals = normals

    @classmethod
    def from_text(cls, text: str) -> "Arrangement":
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append(tuple(Fraction(tok) for tok in line.replace(",", " ").split()))
        if not rows:
            return cls(0, [])
        return cls(len(rows[0]), rows)

    @classmethod
    def load(cls, path) -> "Arrangement":
        return cls.from_text(Path(path).read_text())


@dataclass
class FlatPoset:
    flats: list[tuple[Vector, ...]]
    rank: list[int]
    lower: list[list[int]] = field(default_factory=list)

    def rank_function(self, i: int) -> int:
        return self.rank[i]

    def lower_covers(self, i: int) -> list[int]:
        return self.lower[i]

    def of_rank(self, r: int) -> list[int]:
        return [i for i, k in enumerate(self.rank) if k == r]


def intersection_poset(arr: Arrangement) -> FlatPoset:
    """All intersections of hyperplanes, ordered by reverse inclusion and ranked by codimension."""
    bottom: tuple[Vector, ...] = ()
    index = {bottom: 0}
    flats = [bottom]
    frontier = [bottom]
    while frontier:
        nxt = []
        for F in frontier:
            for n in arr.normals:
                if in_span(n, F):
                    continue
                G = echelon(list(F) + [n])
                if G not in index:
                    index[G] = len(flats)
                    flats.append(G)
                    nxt.append(G)
        frontier = nxt
    rank = [len(F) for F in flats]
    lower = [[] for _ in flats]
    for i, F in enumerate(flats):
        for j, G in enumerate(flats):
            if rank[j] == rank[i] - 1 and all(in_span(v, F) for v in G):
                lower[i].append(j)
    return FlatPoset(flats, rank, lower)


def rank2_cover_profile(arr: Arrangement) -> set[int]:
    P = intersection_poset(arr)
    return {len(P.lower_covers(i)) for i in P.of_rank(2)}


def braid_arrangement(n: int) -> Arrangement:
    """``x_i = x_j`` in Q^(n+1): the arrangement of type A_n."""
    normals = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            v = [0] * (n + 1)
            v[i], v[j] = 1, -1
            normals.append(tuple(v))
    return Arrangement(n + 1, normals)


# -- chambers of a 2-plane slice ------------------------------------------------------


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def slice_chambers(normals: Sequence[Sequence[Fraction]]) -> list[tuple[int, ...]]:
    """Sign vectors of the open sectors cut out by lines through 0 in a real 2-plane.

    Rays of all lines are sorted by angle; one sample point per gap between
    consecutive rays is classified by its signs against every normal.
    """
    normals = [tuple(n) for n in normals]  # ints or Fractions; exact either way
    if not normals:
        return [()]
    rays = []
    for a, b in normals:
        rays.append((-b, a))
        rays.append((b, -a))
    rays.sort(key=cmp_to_key(_angle_cmp))
    distinct = [r for k, r in enumerate(rays) if k == 0 or _angle_cmp(rays[k - 1], r) != 0]
    samples = []
    m = len(distinct)
    for k in range(m):
        u, v = distinct[k], distinct[(k + 1) % m]
        s = (u[0] + v[0], u[1] + v[1])
        if s == (0, 0):  # opposite rays: step a quarter turn counter-clockwise from u
            s = (-u[1], u[0])
        samples.append(s)
    signs = []
    for s in samples:
        sv = tuple((n[0] * s[0] + n[1] * s[1] > 0) - (n[0] * s[0] + n[1] * s[1] < 0) for n in normals)
        if 0 in sv:
            raise ArithmeticError("sample point lies on a line")
        signs.append(sv)
    return signs


def slice_lines(k: int) -> list[tuple[int, int]]:
    """``k`` distinct lines through the origin, normals (1, j) and (0, 1)."""
    return [(0, 1)] + [(1, j) for j in range(k - 1)]


def slice_chamber_count(k: int) -> int:
    if k < 1:
        raise ValueError("need at least one line")
    return len(set(slice_chambers(slice_lines(k))))


def verify_arrangement_profile(kmax: int = 100) -> Report:
    rep = Report("arrangement-profile")
    bad = [k for k in range(1, kmax + 1) if slice_chamber_count(k) != 2 * k]
    rep.check(f"k lines in a 2-plane give 2k chambers for k <= {kmax}", not bad, str(bad[:5]))
    rep.check("3 lines give 6 chambers", slice_chamber_count(3) == 6)
    rep.check("6 lines give 12 chambers", slice_chamber_count(6) == 12)
    prof = rank2_cover_profile(braid_arrangement(3))
    rep.data["braid_A3_profile"] = sorted(prof)
    rep.check("braid arrangement A3: rank-2 lower-cover profile {2, 3}", prof == {2, 3}, str(sorted(prof)))
    return rep


def g5_arrangement_path(corpus_dir: Optional[Path] = None) -> Optional[Path]:
    env = os.environ.get(G5_ENV)
    if env:
        return Path(env)
    if corpus_dir is not None and (Path(corpus_dir) / G5_FILE).exists():
        return Path(corpus_dir) / G5_FILE
    return None


def verify_g5_profile(path: Optional[Path] = None) -> Report:
    rep = Report("arrangement-g5")
    if path is None or not Path(path).exists():
        rep.skipped = f"no G5 arrangement file (set {G5_ENV} or place {G5_FILE} in the corpus directory)"
        return rep
    prof = rank2_cover_profile(Arrangement.load(path))
    rep.data["profile"] = sorted(prof)
    rep.check("rank-2 lower-cover profile {2, 3, 4, 6}", prof == G5_PROFILE, str(sorted(prof)))
    return rep
