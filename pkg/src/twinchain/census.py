"""Exhaustive small-d census of twinned chain polytopes.

P runs over comparability-graph classes (the facet count only sees G_P),
Q over labeled comparability graphs on [d], pruned to orbits of Aut(G_P).
Shards are P classes; each finished shard is written to its own JSONL file
and listed in a manifest so an interrupted run can resume.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np

from . import _kernels
from .chains import maximal_chain_masks, moon_moser_cap
from .errors import BoundViolation, GoldenMismatch, SizeError
from .poset import (
    ONE,
    Poset,
    _permute_masks,
    antichain,
    canonical_code,
    chain,
    comparability_graph,
    disjoint_union,
    graph_automorphisms,
    graph_canonical_code,
    induced_by_mask,
    ordinal_sum,
    poset_from_code,
)
from .twinned import bound, chain_table, facet_count, facet_chain_list, is_i2_tower

log = logging.getLogger(__name__)

MAX_ENUM_D = 8
THEOREM_D = 5
EXTENDED_THEOREM_D = 6


# ---------------------------------------------------------------------------
# generation

def _down_sets(P: Poset) -> list[int]:
    out = []
    for m in range(1 << P.d):
        if all(P.down[i] & ~m == 0 for i in range(P.d) if m >> i & 1):
            out.append(m)
    return out


@lru_cache(maxsize=None)
def _poset_codes(d: int) -> tuple[bytes, ...]:
    if d == 0:
        return (canonical_code(Poset(0, ())),)
    codes = set()
    new = 1 << (d - 1)
    for code in _poset_codes(d - 1):
        P = poset_from_code(code)
        for D in _down_sets(P):
            # new top-of-its-downset element d-1, maximal, with down-set D
            up = tuple(m | new if D >> i & 1 else m for i, m in enumerate(P.up)) + (0,)
            codes.add(canonical_code(Poset(d, up)))
    return tuple(sorted(codes))


def enumerate_posets(d: int) -> list[Poset]:
    """One poset per isomorphism class, in canonical-code order."""
    if not 0 <= d <= MAX_ENUM_D:
        raise SizeError(f"poset enumeration supports 0 <= d <= {MAX_ENUM_D}, got {d}")
    return [poset_from_code(c) for c in _poset_codes(d)]


@lru_cache(maxsize=None)
def comparability_classes(d: int) -> tuple[tuple[bytes, Poset], ...]:
    """(graph code, representative poset) per comparability-graph class."""
    seen: dict[bytes, Poset] = {}
    for P in enumerate_posets(d):
        g = graph_canonical_code(comparability_graph(P))
        seen.setdefault(g, P)
    return tuple(sorted(seen.items()))


def count_comparability_graphs(d: int, long: bool = False) -> tuple[int, int]:
    """Number g of comparability graphs on d vertices and g(g+1)/2 unordered pairs."""
    top = 8 if long else 6
    if not 2 <= d <= top:
        raise SizeError(f"d = {d} outside 2..{top}" + ("" if long else " (d = 7, 8 need long=True)"))
    g = len(comparability_classes(d))
    return g, g * (g + 1) // 2


@lru_cache(maxsize=None)
def labeled_posets(d: int) -> tuple[Poset, ...]:
    """Every poset on the labeled set [d], sorted by relation masks."""
    if d > 6:
        raise SizeError("labeled enumeration is limited to d <= 6")
    from itertools import permutations

    out = set()
    for P in enumerate_posets(d):
        for perm in permutations(range(d)):
            out.add(_permute_masks(P.up, perm))
    return tuple(Poset(d, up) for up in sorted(out))


@lru_cache(maxsize=None)
def labeled_comparability_reps(d: int) -> tuple[Poset, ...]:
    """One labeled poset per labeled comparability graph on [d], sorted by G."""
    by_graph: dict[tuple[int, ...], Poset] = {}
    for P in labeled_posets(d):
        by_graph.setdefault(P.comp, P)
    return tuple(by_graph[k] for k in sorted(by_graph))


# ---------------------------------------------------------------------------
# theorem verification

@dataclass
class CensusRecord:
    d: int
    p_code: str
    q_relabel_id: int
    n_facets: int
    bound: str
    is_max: bool
    equality: bool

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass
class TheoremReport:
    d: int
    max_count: int
    bound: Fraction
    maxima: list[CensusRecord]
    equality_verified: bool | None
    n_pairs: int
    n_labeled_pairs: int
    records: list[CensusRecord] = field(repr=False, default_factory=list)

    def summary(self) -> str:
        lines = [
            f"d = {self.d}: max = {self.max_count} at {len(self.maxima)} class pair"
            + ("" if len(self.maxima) == 1 else "s"),
            f"bound = {self.bound}; pairs evaluated = {self.n_pairs}; labeled pairs covered = {self.n_labeled_pairs}",
        ]
        if self.equality_verified is not None:
            verdict = "verified" if self.equality_verified else "FAILED"
            lines.append(f"equality <=> I_2 tower twin condition: {verdict}")
        return "\n".join(lines)


def _masks_key(comps: np.ndarray, d: int) -> np.ndarray:
    key = np.zeros(len(comps), dtype=np.int64)
    for i in range(d):
        key |= comps[:, i].astype(np.int64) << (d * i)
    return key


@lru_cache(maxsize=4)
def _q_context(d: int, q_mode: str):
    if q_mode == "graphs":
        Qs = labeled_comparability_reps(d)
    elif q_mode == "posets":
        Qs = labeled_posets(d)
    elif q_mode == "classes":
        Qs = tuple(P for _, P in comparability_classes(d))
    else:
        raise ValueError(f"unknown q_mode {q_mode!r}")
    n = 1 << d
    q_offs = np.empty((len(Qs), n + 1), dtype=np.int64)
    parts = []
    base = 0
    for k, Q in enumerate(Qs):
        off, ch = chain_table(Q)
        q_offs[k] = off + base
        parts.append(ch)
        base += len(ch)
    q_ch = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    comps = np.array([Q.comp for Q in Qs], dtype=np.int64).reshape(len(Qs), d)
    # graph-level identity of each Q: posets sharing G_Q are interchangeable
    return Qs, q_offs, q_ch, comps


def _orbit_reps(P: Poset, comps: np.ndarray, d: int, q_mode: str) -> tuple[np.ndarray, np.ndarray]:
    """Indices of Q orbit representatives under Aut(G_P) and the orbit sizes."""
    nq = len(comps)
    if q_mode != "graphs":
        return np.arange(nq), np.ones(nq, dtype=np.int64)
    keys = _masks_key(comps, d)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    rep = np.arange(nq)
    for sigma in graph_automorphisms(comparability_graph(P)):
        table = np.array([_map_bits(m, sigma) for m in range(1 << d)], dtype=np.int64)
        moved = np.empty_like(comps)
        moved[:, list(sigma)] = table[comps]
        idx = order[np.searchsorted(sorted_keys, _masks_key(moved, d))]
        rep = np.minimum(rep, idx)
    reps = np.nonzero(rep == np.arange(nq))[0]
    sizes = np.bincount(rep, minlength=nq)[reps]
    return reps, sizes


def _map_bits(m: int, sigma) -> int:
    out = 0
    for j, s in enumerate(sigma):
        if m >> j & 1:
            out |= 1 << s
    return out


def _shard(d: int, index: int, q_mode: str) -> tuple[list[dict], int]:
    """Evaluate one P class against every Q orbit representative."""
    g_code, P = comparability_classes(d)[index]
    Qs, q_offs, q_ch, comps = _q_context(d, q_mode)
    reps, sizes = _orbit_reps(P, comps, d, q_mode)
    p_off, p_ch = chain_table(P)
    counts = _kernels.facet_counts_batch(d, p_off, p_ch, q_offs[reps], q_ch)
    bnd = bound(d)
    even = d % 2 == 0
    p_tower = even and is_i2_tower(P)
    out = []
    for k, n in zip(reps.tolist(), counts.tolist()):
        Q = Qs[k]
        eq = bool(p_tower and is_i2_tower(Q) and P.comp == Q.comp)
        if n > bnd:
            raise BoundViolation(P, Q, n, bnd)
        out.append({"d": d, "p_code": g_code.hex(), "q_relabel_id": k, "n_facets": n,
                    "bound": str(bnd), "equality": eq})
    return out, int(sizes.sum())


def _write_atomic(path: Path, text: str):
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def verify_theorem(
    d: int,
    exhaustive_labels: bool = True,
    extended: bool = False,
    jobs: int = 1,
    out_dir: str | os.PathLike | None = None,
    q_mode: str | None = None,
) -> TheoremReport:
    """Maximum facet count over all pairs at dimension d, with equality audit.

    ``q_mode`` is "graphs" (labeled comparability graphs modulo Aut(G_P), the
    default), "posets" (every labeled poset, no pruning) or "classes" (one
    fixed labeling per graph class; used when ``exhaustive_labels`` is off).
    """
    top = EXTENDED_THEOREM_D if extended else THEOREM_D
    if not 1 <= d <= top:
        raise SizeError(f"theorem census supports 1 <= d <= {top}, got {d}")
    if q_mode is None:
        q_mode = "graphs" if exhaustive_labels else "classes"
    classes = comparability_classes(d)
    done: dict[int, tuple[list[dict], int]] = {}
    manifest_path = None
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        manifest_path = out / "manifest.json"
        params = {"d": d, "q_mode": q_mode}
        if manifest_path.exists():
            manifest = json.loads(manifest_path.read_text())
            if manifest.get("params") != params:
                raise ValueError(f"{manifest_path} belongs to a different run: {manifest.get('params')}")
            for s in manifest["completed"]:
                lines = (out / f"shard-{s:04d}.jsonl").read_text().splitlines()
                done[s] = ([json.loads(x) for x in lines], manifest["covered"][str(s)])
            log.info("resuming: %d of %d shards already complete", len(done), len(classes))
        else:
            manifest = {"params": params, "completed": [], "covered": {}}

    todo = [i for i in range(len(classes)) if i not in done]

    def record(i, result):
        done[i] = result
        if manifest_path is not None:
            text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in result[0])
            _write_atomic(manifest_path.parent / f"shard-{i:04d}.jsonl", text)
            manifest["completed"] = sorted(done)
            manifest["covered"][str(i)] = result[1]
            _write_atomic(manifest_path, json.dumps(manifest, indent=1, sort_keys=True))

    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futures = {i: ex.submit(_shard, d, i, q_mode) for i in todo}
            for i in todo:
                record(i, futures[i].result())
    else:
        for i in todo:
            record(i, _shard(d, i, q_mode))

    rows = sorted((r for i in sorted(done) for r in done[i][0]), key=lambda r: (r["p_code"], r["q_relabel_id"]))
    max_count = max(r["n_facets"] for r in rows)
    records = [CensusRecord(is_max=r["n_facets"] == max_count, **r) for r in rows]
    bnd = bound(d)
    verified = None
    if d % 2 == 0:
        verified = all((r.n_facets == bnd) == r.equality for r in records) and max_count == bnd
    report = TheoremReport(
        d=d,
        max_count=max_count,
        bound=bnd,
        maxima=[r for r in records if r.is_max],
        equality_verified=verified,
        n_pairs=len(records),
        n_labeled_pairs=sum(c for _, c in done.values()),
        records=records,
    )
    if out_dir is not None:
        out = Path(out_dir)
        _write_atomic(out / "records.jsonl", "".join(r.to_json() + "\n" for r in records))
        _write_atomic(out / "summary.txt", report.summary() + "\n")
    return report


def pair_from_record(rec: CensusRecord, q_mode: str = "graphs") -> tuple[Poset, Poset]:
    P = dict(comparability_classes(rec.d))[bytes.fromhex(rec.p_code)]
    Qs = _q_context(rec.d, q_mode)[0]
    return P, Qs[rec.q_relabel_id]


# ---------------------------------------------------------------------------
# table reproduction

@dataclass
class TableReport:
    table: str
    rows: list[tuple[str, object, object, bool]]  # label, computed, golden, passed

    @property
    def passed(self) -> bool:
        return all(r[3] for r in self.rows)

    def check(self):
        bad = [(lab, got, want) for lab, got, want, ok in self.rows if not ok]
        if bad:
            raise GoldenMismatch(self.table, bad)

    def render(self) -> str:
        w = max(len(r[0]) for r in self.rows)
        lines = [f"[{self.table}]"]
        for lab, got, want, ok in self.rows:
            lines.append(f"  {lab:<{w}}  {str(got):>12}  golden {str(want):>12}  {'PASS' if ok else 'FAIL'}")
        return "\n".join(lines)


T1_GOLDEN = {2: (2, 3), 3: (4, 10), 4: (11, 66), 5: (33, 561), 6: (144, 10440),
             7: (824, 339900), 8: (6793, 23075821)}
T3_GOLDEN = {3: (13, 14), 5: (82, 84), 7: (496, 504), 9: (2971, 3024), 11: (17756, 18144),
             13: (106522, 108864), 15: (640651, 653184)}

D3_POSETS = {
    "1+C2": disjoint_union(ONE, chain(2)),
    "C3": chain(3),
    "I3": antichain(3),
    "1(+)I2": ordinal_sum(ONE, antichain(2)),
}
# (row Q, column P) -> exact value, ("<=", cap) or ("set", {...})
T4_GOLDEN = {
    ("1+C2", "1+C2"): ("<=", 12),
    ("1+C2", "C3"): 11,
    ("1+C2", "I3"): ("<=", 12),
    ("1+C2", "1(+)I2"): ("<=", 12),
    ("C3", "C3"): 8,
    ("C3", "I3"): 13,
    ("C3", "1(+)I2"): 10,
    ("I3", "I3"): 12,
    ("I3", "1(+)I2"): 13,
    ("1(+)I2", "1(+)I2"): ("set", frozenset({11, 12})),
}

# p_3 below p_1, p_2 in both (a) and (b); Q of (b) has q_2 at the bottom
EXAMPLE_A = (Poset(3, (0, 0, 0b011)), Poset(3, (0, 0, 0b011)))
EXAMPLE_B = (Poset(3, (0, 0, 0b011)), Poset(3, (0, 0b101, 0)))


def sum_binom_moon_moser(d: int) -> int:
    return sum(comb(d, i) * moon_moser_cap(i) for i in range(d + 1))


def table_t1(long: bool = False) -> TableReport:
    rows = []
    for d in range(2, 9 if long else 7):
        got = count_comparability_graphs(d, long=long)
        want = T1_GOLDEN[d]
        rows.append((f"d={d} graphs", got[0], want[0], got[0] == want[0]))
        rows.append((f"d={d} pairs", got[1], want[1], got[1] == want[1]))
    return TableReport("T1", rows)


def table_t3() -> TableReport:
    rows = []
    for d, (s_want, b_want) in T3_GOLDEN.items():
        s = sum_binom_moon_moser(d)
        b = bound(d)
        rows.append((f"d={d} sum", s, s_want, s == s_want and s < b))
        rows.append((f"d={d} bound", b, b_want, b == b_want))
    return TableReport("T3", rows)


def _labelings_of(P: Poset) -> list[Poset]:
    code = canonical_code(P)
    return [Q for Q in labeled_posets(P.d) if canonical_code(Q) == code]


def table_t4() -> TableReport:
    rows = []
    for (qn, pn), want in T4_GOLDEN.items():
        P = D3_POSETS[pn]
        values = frozenset(facet_count(P, Q) for Q in _labelings_of(D3_POSETS[qn]))
        if isinstance(want, tuple) and want[0] == "<=":
            got, ok, shown = max(values), max(values) <= want[1], f"<= {want[1]}"
        elif isinstance(want, tuple):
            got, ok, shown = sorted(values), values == want[1], sorted(want[1])
        else:
            got, ok, shown = sorted(values), values == {want}, want
            if len(values) == 1:
                got = next(iter(values))
        rows.append((f"Q={qn} P={pn}", got, shown, ok))
    return TableReport("T4", rows)


def table_d2() -> TableReport:
    from .hull import point_cloud, vertices

    rows = []
    for name, P, Q, want in (("C2,C2", chain(2), chain(2), 4),
                             ("I2,C2", antichain(2), chain(2), 5),
                             ("I2,I2", antichain(2), antichain(2), 6)):
        n = facet_count(P, Q)
        v = len(vertices(point_cloud(P, Q)))
        rows.append((f"{name} facets", n, want, n == want))
        rows.append((f"{name} vertices", v, want, v == want))
    return TableReport("D2", rows)


def table_ex23() -> TableReport:
    rows = []
    for name, (P, Q), want, listed in (("a", EXAMPLE_A, 12, 12), ("b", EXAMPLE_B, 11, 12)):
        n = facet_count(P, Q)
        m = len(facet_chain_list(P, Q))
        rows.append((f"({name}) N", n, want, n == want))
        rows.append((f"({name}) listed", m, listed, m == listed))
    return TableReport("EX23", rows)


TABLES = {"T1": table_t1, "T3": table_t3, "T4": table_t4, "D2": table_d2, "EX23": table_ex23}


def reproduce_tables(which: str = "all", long: bool = False) -> list[TableReport]:
    names = list(TABLES) if which == "all" else [which]
    out = []
    for name in names:
        fn = TABLES[name]
        out.append(fn(long=long) if name == "T1" else fn())
    return out


def moon_moser_violations(d: int) -> list[Poset]:
    cap = moon_moser_cap(d)
    return [P for P in enumerate_posets(d) if len(maximal_chain_masks(P)) > cap]


__all__ = [
    "enumerate_posets", "comparability_classes", "count_comparability_graphs", "labeled_posets",
    "labeled_comparability_reps", "CensusRecord", "TheoremReport", "verify_theorem",
    "pair_from_record", "TableReport", "reproduce_tables", "moon_moser_violations",
    "sum_binom_moon_moser", "induced_by_mask",
]
