"""Executable diagnostics for finished up-growing games.

From a transcript this module computes the layer decomposition induced by
the significant points, the alternating paths that tie the played chains to
a minimum chain cover, and the path statistics; ``check_structure`` and
``check_bounds`` then verify, on that instance, every structural statement
the engine's chain bound rests on.  A failed check is an engine bug, never
a tolerated outcome.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional

from .arena import AssignEvent, PresentEvent, Transcript
from .oracle import min_chain_partition
from .order import SemiOrder
from .partition import ChainPartition


@dataclass(frozen=True)
class LayerDecomposition:
    significant: tuple[int, ...]
    layers: tuple[frozenset[int], ...]  # layers[i] holds layer i+1

    @property
    def m(self) -> int:
        return len(self.layers)

    def layer_of(self, p: int) -> int:
        """1-based layer index of p."""
        for i, layer in enumerate(self.layers):
            if p in layer:
                return i + 1
        raise KeyError(p)


@dataclass(frozen=True)
class AlternatingPath:
    points: tuple[int, ...]
    kind: str  # "up_path" | "down_path"

    @property
    def up_points(self) -> tuple[int, ...]:
        return self.points[0::2]

    @property
    def down_points(self) -> tuple[int, ...]:
        return self.points[1::2]


@dataclass(frozen=True)
class PathStatistics:
    up_paths: int
    layer_indices: tuple[int, ...]  # distinct end layers of down-paths, ascending
    counts: tuple[int, ...]  # counts[j] = down-paths ending at layer >= layer_indices[j]; trailing 0

    @property
    def down_paths(self) -> int:
        return self.counts[0]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, detail if not passed else ""))

    def to_json_obj(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


@dataclass(frozen=True)
class _Arrival:
    point: int
    down: tuple[int, ...]
    then_maximal: frozenset[int]
    alg_tops: frozenset[int]  # tops right before this point was assigned
    chosen_chain: int
    covered_top: Optional[int]  # previous top of the chosen chain, None if fresh


def _replay(transcript: Transcript):
    """Rebuild order, partition and per-arrival snapshots from events."""
    order = SemiOrder()
    partition = ChainPartition()
    arrivals: list[_Arrival] = []
    pending: Optional[tuple[int, tuple[int, ...], frozenset[int], frozenset[int]]] = None
    for event in transcript.events:
        if isinstance(event, PresentEvent):
            then_maximal = frozenset(order.maximal_points())
            order.add_point(event.down, event.up)
            pending = (
                event.id,
                event.down,
                then_maximal,
                frozenset(partition.tops()),
            )
        else:
            assert isinstance(event, AssignEvent) and pending is not None
            pid, down, then_maximal, tops = pending
            choice = event.chain if event.chain < partition.chain_count else None
            covered = partition.top(event.chain) if choice is not None else None
            partition.assign(order, pid, choice)
            arrivals.append(
                _Arrival(pid, down, then_maximal, tops, event.chain, covered)
            )
            pending = None
    return order, partition, arrivals


def significant_points(transcript: Transcript) -> list[int]:
    """Points whose declared down-set contained a then-maximal point, in
    presentation order."""
    _, _, arrivals = _replay(transcript)
    return [
        a.point for a in arrivals if a.then_maximal.intersection(a.down)
    ]


def layers(transcript: Transcript) -> LayerDecomposition:
    """Partition of the final order into the layers cut by the significant
    points; a game without significant points is one big antichain layer."""
    order, _, arrivals = _replay(transcript)
    sig = [a.point for a in arrivals if a.then_maximal.intersection(a.down)]
    everything = frozenset(range(order.size))
    if not sig:
        return LayerDecomposition((), (everything,))
    out: list[frozenset[int]] = []
    prev: set[int] = set()
    for e in sig:
        cur = order.down_set(e)
        out.append(frozenset(cur - prev))
        prev = cur
    out.append(frozenset(everything - prev))
    return LayerDecomposition(tuple(sig), tuple(out))


def alternating_paths(
    transcript: Transcript, opt: ChainPartition
) -> list[AlternatingPath]:
    """One path per played chain: start at its bottom, then alternate the
    cover predecessor and the played-chain successor until undefined."""
    _, partition, _ = _replay(transcript)
    paths = []
    for c in range(partition.chain_count):
        points = [partition.bottom(c)]
        while True:
            last = points[-1]
            if len(points) % 2 == 1:  # even index: step to the cover predecessor
                nxt = opt.predecessor(last)
            else:  # odd index: step to the played successor
                nxt = partition.successor(last)
            if nxt is None:
                break
            points.append(nxt)
        kind = "up_path" if len(points) % 2 == 1 else "down_path"
        paths.append(AlternatingPath(tuple(points), kind))
    return paths


def path_statistics(
    decomposition: LayerDecomposition, paths: list[AlternatingPath]
) -> PathStatistics:
    up_paths = sum(1 for q in paths if q.kind == "up_path")
    end_layers = [
        decomposition.layer_of(q.points[-1]) for q in paths if q.kind == "down_path"
    ]
    indices = tuple(sorted(set(end_layers)))
    counts = tuple(
        sum(1 for e in end_layers if e >= i) for i in indices
    ) + (0,)
    if not indices:
        counts = (0,)
    return PathStatistics(up_paths, indices, counts)


def _goodness(order: SemiOrder, opt: ChainPartition, arrivals) -> dict[int, bool]:
    good = {}
    for a in arrivals:
        pred = opt.predecessor(a.point)
        good[a.point] = pred is not None and pred in a.alg_tops
    return good


def check_structure(
    transcript: Transcript,
    decomposition: LayerDecomposition,
    paths: list[AlternatingPath],
    opt: Optional[ChainPartition] = None,
) -> Report:
    """Verify every structural statement on this instance.

    ``opt`` must be the cover the paths were built from; by default the
    deterministic minimum cover is recomputed.
    """
    order, partition, arrivals = _replay(transcript)
    if opt is None:
        opt = min_chain_partition(order)
    report = Report()
    n = order.size
    layer_of = {}
    for i, layer in enumerate(decomposition.layers):
        for p in layer:
            layer_of[p] = i + 1
    m = decomposition.m
    cum = [0] * (m + 1)  # cum[i] = mask of layers 1..i
    for i in range(1, m + 1):
        mask = 0
        for p in decomposition.layers[i - 1]:
            mask |= 1 << p
        cum[i] = cum[i - 1] | mask
    good = _goodness(order, opt, arrivals)

    # layers partition the points
    report.add(
        "layers_partition",
        cum[m] == (1 << n) - 1
        and sum(len(l) for l in decomposition.layers) == n,
    )

    # strictly nested up-sets across layers
    ok, detail = True, ""
    for i in range(m - 1):
        for d in decomposition.layers[i]:
            for d2 in decomposition.layers[i + 1]:
                ud, ud2 = order.up_mask(d), order.up_mask(d2)
                if not (ud2 & ~ud == 0 and ud & ~ud2):
                    ok, detail = False, f"up-sets of {d} (layer {i+1}) and {d2} (layer {i+2})"
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("layer_upset_nesting", ok, detail)

    # the last layer is exactly the maximal points
    report.add(
        "top_layer_is_maximals",
        decomposition.layers[-1] == frozenset(order.maximal_points()),
    )

    # every layer is an antichain
    ok, detail = True, ""
    for i, layer in enumerate(decomposition.layers):
        mask = cum[i + 1] & ~cum[i]
        for p in layer:
            if order.down_mask(p) & mask:
                ok, detail = False, f"layer {i+1} contains a comparable pair at {p}"
                break
        if not ok:
            break
    report.add("layers_are_antichains", ok, detail)

    # dominating any layer point swallows all lower layers
    ok, detail = True, ""
    for d in range(n):
        i = layer_of[d]
        for p in _bits(order.up_mask(d)):
            if cum[i - 1] & ~order.down_mask(p):
                ok, detail = False, f"{p} > {d} misses part of layers below {i}"
                break
        if not ok:
            break
    report.add("dominator_swallows_lower_layers", ok, detail)

    # not dominating a layer point confines the down-set to its layers
    ok, detail = True, ""
    for d in range(n):
        i = layer_of[d]
        nondom = ((1 << n) - 1) & ~order.up_mask(d)
        for p in _bits(nondom):
            if order.down_mask(p) & ~cum[i]:
                ok, detail = False, f"{p} (not above {d}) reaches beyond layer {i}"
                break
        if not ok:
            break
    report.add("nondominator_within_prefix_layers", ok, detail)

    # earlier points sit below the layer of any later point
    ok, detail = True, ""
    for d in range(n):
        i = layer_of[d]
        for p in range(d):
            if order.down_mask(p) & ~cum[i - 1]:
                ok, detail = False, f"{p} (before {d}) reaches into layer {i}"
                break
        if not ok:
            break
    report.add("earlier_points_below_layer", ok, detail)

    # recorded choices never prefer an earlier layer over a valid later one
    ok, detail = True, ""
    for a in arrivals:
        if a.covered_top is None:
            continue
        chosen_layer = layer_of[a.covered_top]
        down = set(a.down)
        for t in a.alg_tops:
            if t in down and layer_of[t] > chosen_layer:
                ok, detail = (
                    False,
                    f"point {a.point} took top {a.covered_top} (layer {chosen_layer})"
                    f" while top {t} (layer {layer_of[t]}) was valid",
                )
                break
        if not ok:
            break
    report.add("choice_prefers_latest_layer", ok, detail)

    # a fresh chain only when no valid chain existed
    ok, detail = True, ""
    for a in arrivals:
        if a.covered_top is None and set(a.down) & a.alg_tops:
            ok, detail = False, f"point {a.point} opened a chain despite valid tops"
            break
    report.add("greedy_new_only_when_forced", ok, detail)

    # parity-disjoint paths: each point at most once per parity overall
    seen_even: set[int] = set()
    seen_odd: set[int] = set()
    ok, detail = True, ""
    for q in paths:
        for idx, p in enumerate(q.points):
            bucket = seen_even if idx % 2 == 0 else seen_odd
            if p in bucket:
                ok, detail = False, f"point {p} repeats at parity {idx % 2}"
                break
            bucket.add(p)
        if not ok:
            break
    report.add("path_parity_sets_disjoint", ok, detail)

    # chain accounting: one path per chain, up + down = chains
    stats = path_statistics(decomposition, paths)
    report.add(
        "paths_count_chains",
        len(paths) == partition.chain_count
        and stats.up_paths + stats.down_paths == partition.chain_count,
        f"{stats.up_paths}+{stats.down_paths} vs {partition.chain_count}",
    )

    down_paths = [q for q in paths if q.kind == "down_path"]
    indices = stats.layer_indices

    # penultimate point of each down-path is good and in the last layer
    ok, detail = True, ""
    for q in down_paths:
        pen = q.points[-2]
        if not good[pen] or layer_of[pen] != m:
            ok, detail = False, f"penultimate {pen} of path from {q.points[0]}"
            break
    report.add("down_path_penultimate_good_top_layer", ok, detail)

    # ladder of bad up-points with cover predecessors at each end layer
    ok, detail = True, ""
    for q in down_paths:
        end_layer = layer_of[q.points[-1]]
        j = indices.index(end_layer)
        chosen = []
        for k in range(j + 1):
            target = indices[k]
            found = None
            for idx in range(0, len(q.points), 2):
                u = q.points[idx]
                pred = opt.predecessor(u)
                if pred is not None and layer_of[pred] >= target:
                    found = u
                    break
            if (
                found is None
                or good[found]
                or layer_of[opt.predecessor(found)] != target
                or found in chosen
            ):
                ok, detail = False, f"ladder step {k} of path from {q.points[0]}"
                break
            chosen.append(found)
        if not ok:
            break
    report.add("down_path_bad_up_point_ladder", ok, detail)

    # each down-path carries a witness up-point for every end layer
    ok, detail = True, ""
    for j in range(len(indices)):
        for q in down_paths:
            found = False
            for idx in range(0, len(q.points), 2):
                u = q.points[idx]
                pred = opt.predecessor(u)
                if pred is None:
                    continue
                pl = layer_of[pred]
                if layer_of[u] >= indices[j] + 1 and pl == indices[0]:
                    found = True
                    break
                if good[u] and indices[0] + 1 <= pl <= indices[j] - 1:
                    found = True
                    break
            if not found:
                ok, detail = False, f"no witness for layer {indices[j]} on path from {q.points[0]}"
                break
        if not ok:
            break
    report.add("down_path_special_up_point", ok, detail)

    # at most width-many up-paths
    report.add(
        "up_path_count_within_width",
        stats.up_paths <= order.width(),
        f"{stats.up_paths} up-paths, width {order.width()}",
    )

    # every down-path end layer retains a played chain top
    final_tops = set(partition.tops())
    ok, detail = True, ""
    for i in indices:
        if not any(layer_of[t] == i for t in final_tops):
            ok, detail = False, f"no final top in layer {i}"
            break
    report.add("end_layers_have_alg_top", ok, detail)

    # the layers strictly between the first end layer and the top form an antichain
    ok, detail = True, ""
    if indices:
        umask = cum[m - 1] & ~cum[indices[0]]
        for p in _bits(umask):
            if order.down_mask(p) & umask:
                ok, detail = False, f"comparable pair inside middle layers at {p}"
                break
    report.add("middle_layers_antichain", ok, detail)

    return report


def check_bounds(stats: PathStatistics, w: int) -> Report:
    """Verify the counting inequalities the chain bound follows from."""
    report = Report()
    counts = stats.counts
    x0 = counts[0]
    x1 = counts[1] if len(counts) > 1 else 0
    report.add("lead_double_bound", 2 * x0 - x1 <= w, f"2*{x0}-{x1} > {w}")
    ok, detail = True, ""
    s = len(stats.layer_indices) - 1
    for j in range(1, s + 1):
        xj = counts[j]
        xj1 = counts[j + 1] if j + 1 < len(counts) else 0
        lhs = sum(counts[: j + 1]) + xj - xj1
        if lhs > w:
            ok, detail = False, f"index {j}: {lhs} > {w}"
            break
    report.add("prefix_family_bound", ok, detail)
    report.add(
        "golden_ratio_cap",
        x0 <= (isqrt(5 * w * w) - w) // 2,
        f"{x0} exceeds the exact cap for width {w}",
    )
    return report


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
