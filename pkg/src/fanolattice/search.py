"""Enumeration of smooth Fano polytopes anchored at a special facet.

Coordinates are chosen so that a special facet (one whose cone contains
the vertex sum) is ``conv(e_1, ..., e_d)``.  Write ``level(x)`` for the
coordinate sum.  Every other vertex has level ``<= 0`` and, because the
vertex sum has nonnegative level, the levels of the non-facet vertices
add up to at least ``-d``.  This total is the *budget*.

The search runs in two phases.

1. The facet across the ridge ``conv(e_j : j != i)`` adds a vertex
   ``n_i = -e_i + ...`` (the i-th neighbour).  Relabel coordinates so
   that neighbour levels are nonincreasing.  The neighbour facet for
   ``i`` has normal ``(1, ..., 1) + (level(n_i) - 1) e_i``, so any other
   vertex ``x`` with ``x_i < 0`` obeys
   ``|x_i| (1 - level(n_i)) <= -level(x)``.  With sorted levels this forces
   each neighbour to have ``-1`` exactly at the positions it serves, and
   it makes every vertex beyond the first ``d`` neighbours cost at least
   one unit of budget.  Neighbour configurations are enumerated
   exhaustively and reduced modulo relabellings that keep the levels
   sorted.
2. The face fan is closed ridge by ridge.  Across an open ridge ``R`` of
   facet ``F`` with opposite vertex ``v``, unimodularity forces the new
   vertex to be ``-v + (combination of R)``.  Candidates come from the
   existing vertices and from a pool of lattice points with bounded
   coordinates.  Every tentative facet must keep all vertices strictly
   beneath it.

Completed fans whose facet ``conv(e_i)`` is special are kept and
deduplicated by canonical form.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable

import numpy as np

from .canonical import CanonicalForm, canonical_form
from .errors import SearchBudgetExceeded
from .polytope import Facet, LatticePolytope

logger = logging.getLogger(__name__)

#: Published numbers of smooth Fano d-polytopes up to lattice equivalence.
REFERENCE_COUNTS = {1: 1, 2: 5, 3: 18, 4: 124, 5: 866, 6: 7622, 7: 72256, 8: 749892}


@dataclass
class EnumerationResult:
    dim: int
    bound: int
    forms: list[CanonicalForm]
    nodes: int
    seconds: float
    complete: bool  # search ran to the end (no node limit hit)
    bound_sufficient: bool  # pool bound covered the proven coordinate bound everywhere

    @property
    def status(self) -> str:
        if not self.complete:
            return "incomplete"
        if self.bound_sufficient:
            return "complete"
        if REFERENCE_COUNTS.get(self.dim) == len(self.forms):
            return "validated"
        return "bound-limited"


_POOL_CACHE: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}


def candidate_pool(d: int, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Primitive vectors with coordinates in ``[-d, bound]`` and level in
    ``[-d, -1]``, sorted by decreasing level.  Returns (points, levels)."""
    key = (d, bound)
    if key in _POOL_CACHE:
        return _POOL_CACHE[key]
    rng = np.arange(-d, bound + 1, dtype=np.int8)
    pts = np.zeros((1, 0), dtype=np.int8)
    for k in range(d):
        # prune partial sums that can no longer reach the level window
        left = d - k - 1
        new = np.repeat(pts, len(rng), axis=0)
        col = np.tile(rng, len(pts)).reshape(-1, 1)
        pts = np.hstack([new, col])
        s = pts.sum(axis=1, dtype=np.int64)
        keep = (s + left * bound >= -d) & (s - left * d <= -1)
        pts = pts[keep]
    pts = pts.astype(np.int64)
    lev = pts.sum(axis=1)
    g = np.gcd.reduce(np.abs(pts), axis=1)
    keep = (lev <= -1) & (lev >= -d) & (g == 1)
    pts, lev = pts[keep], lev[keep]
    order = np.argsort(-lev, kind="stable")
    pts, lev = pts[order], lev[order]
    _POOL_CACHE[key] = (pts, lev)
    return pts, lev


class _State:
    """Fan under construction.  Vertices live in a preallocated array;
    facets carry their normal and the dual basis of their vertex set."""

    def __init__(self, d: int, capacity: int = 64):
        self.d = d
        self.V = np.zeros((capacity, d), dtype=np.int64)
        self.m = 0
        # each facet: (frozenset of vertex ids, normal, {vertex id: dual row})
        self.facets: list[tuple[frozenset, np.ndarray, dict]] = []
        self.ridges: dict[frozenset, list[int]] = {}
        self.open: dict[frozenset, int] = {}  # open ridge -> facet id
        self.budget = d
        self.colsum = np.zeros(d, dtype=np.int64)  # sum of vertices off conv(e_i)

    def add_vertex(self, x) -> int:
        if self.m == len(self.V):
            self.V = np.vstack([self.V, np.zeros_like(self.V)])
        self.V[self.m] = x
        if self.m >= self.d:
            self.colsum += self.V[self.m]
        self.m += 1
        return self.m - 1

    def pop_vertex(self) -> None:
        self.m -= 1
        if self.m >= self.d:
            self.colsum -= self.V[self.m]

    def ridges_ok(self, members: frozenset, skip: frozenset) -> bool:
        for r in members:
            ridge = members - {r}
            if ridge != skip and len(self.ridges.get(ridge, ())) >= 2:
                return False
        return True

    def add_facet(self, members: frozenset, normal: np.ndarray, duals: dict) -> None:
        fid = len(self.facets)
        self.facets.append((members, normal, duals))
        for r in members:
            ridge = members - {r}
            lst = self.ridges.setdefault(ridge, [])
            lst.append(fid)
            if len(lst) == 1:
                self.open[ridge] = fid
            else:
                self.open.pop(ridge, None)

    def pop_facet(self) -> None:
        fid = len(self.facets) - 1
        members, _, _ = self.facets.pop()
        for r in members:
            ridge = members - {r}
            lst = self.ridges[ridge]
            lst.remove(fid)
            if not lst:
                del self.ridges[ridge]
                self.open.pop(ridge, None)
            else:
                self.open[ridge] = lst[0]


def _flip(duals: dict, out: int, new: int, x: np.ndarray) -> dict:
    """Dual basis after replacing vertex ``out`` by ``x``, whose coefficient
    on ``out`` is -1."""
    h = duals[out]
    res = {}
    for v, row in duals.items():
        if v != out:
            res[v] = row + int(row @ x) * h
    res[new] = -h
    return res


class SmoothFanoSearch:
    def __init__(self, d: int, bound: int | None = None, node_limit: int | None = None,
                 on_polytope: Callable[[LatticePolytope], None] | None = None):
        if not 1 <= d <= 6:
            raise ValueError("enumeration is supported for 1 <= d <= 6")
        self.d = d
        self.bound = d if bound is None else bound
        self.node_limit = node_limit
        self.nodes = 0
        self.forms: dict[CanonicalForm, None] = {}
        self.on_polytope = on_polytope
        self.bound_sufficient = True
        self.pool, self.pool_level = candidate_pool(d, self.bound)
        # float copy so the large products go through BLAS; entries are tiny, so exact
        self.pool_f = self.pool.astype(np.float64)
        self._starts: dict[tuple, np.ndarray] = {}
        self._masks: dict[tuple[int, int], np.ndarray] = {}

    def run(self) -> EnumerationResult:
        start = time.perf_counter()
        d = self.d
        st = _State(d)
        eye = np.eye(d, dtype=np.int64)
        for i in range(d):
            st.add_vertex(eye[i])
        st.add_facet(frozenset(range(d)), np.ones(d, dtype=np.int64), {i: eye[i].copy() for i in range(d)})
        self.state = st
        self.assigned: list[int | None] = [None] * d
        self.levels: list[int | None] = [None] * d
        complete = True
        try:
            self._neighbours(0)
        except SearchBudgetExceeded:
            complete = False
        forms = sorted(self.forms)
        return EnumerationResult(d, self.bound, forms, self.nodes,
                                 time.perf_counter() - start, complete, self.bound_sufficient)

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchBudgetExceeded(f"node limit {self.node_limit} reached")

    # -- phase 1: neighbours of conv(e_i) ------------------------------

    def _neighbours(self, i: int) -> None:
        self._tick()
        d, st = self.d, self.state
        if i >= 2 and not self._prefix_is_minimal(i):
            return
        if i == d:
            self._phase_two_start()
            return
        prev = self.levels[i - 1] if i else 0
        if self.assigned[i] is not None:
            if self.levels[i] <= prev:
                self._neighbours(i + 1)
            return
        floor = -st.budget
        for j in range(i + 1, d):
            if self.assigned[j] is not None:
                floor = max(floor, self.levels[j])
        others = st.V[d:st.m]
        olevel = others.sum(axis=1)
        for level in range(prev, floor - 1, -1):
            # the facet replacing e_s by a level-L vertex has normal
            # (1..1) + (L - 1) e_s; earlier vertices must stay beneath it
            allowed = [bool(np.all(olevel + (level - 1) * others[:, s] <= 0)) for s in range(d)]
            if not allowed[i]:
                continue
            for x, served in self._neighbour_candidates(i, level, allowed):
                self._try_neighbour(i, x, served, level)

    def _neighbour_candidates(self, i: int, level: int, allowed: list[bool]):
        """Vectors with -1 at i, the given level, -1 or >= 0 at later free
        positions, >= 0 at later assigned positions and bounded negative
        entries at earlier positions.  Vectors that already violate the
        vertex-sum condition of :meth:`_mass_ok` are skipped."""
        d, st = self.d, self.state
        colsum = st.colsum.tolist()
        lows = [0] * d
        for j in range(i):
            lows[j] = -((-level) // (1 - self.levels[j]))
        free_later = [j for j in range(i + 1, d) if self.assigned[j] is None]
        budget = st.budget + level
        for mask in range(1 << len(free_later)):
            served = [i] + [free_later[k] for k in range(len(free_later)) if mask >> k & 1]
            if not all(allowed[s] for s in served):
                continue
            free = len(free_later) + 1 - len(served)
            if free and level < 0 and budget < -level:
                continue
            caps = tuple(sorted(level if (lj is None or j in served) else lj
                                for j, lj in enumerate(self.levels)))
            limit = free + _future_mass(caps, budget)
            fixed = sum(max(0, -colsum[s]) for s in served)
            slots = [j for j in range(d) if j not in served]
            thr = [(-colsum[j] if self.assigned[j] is None else -1 - colsum[j]) for j in slots]
            slot_lows = [lows[j] for j in slots]
            for vals in _pruned_compositions(level + len(served), slot_lows, thr, limit - fixed):
                x = [0] * d
                for j in served:
                    x[j] = -1
                for j, v in zip(slots, vals):
                    x[j] = v
                yield x, served

    def _try_neighbour(self, i: int, x: list[int], served: list[int], level: int) -> None:
        d, st = self.d, self.state
        xa = np.array(x, dtype=np.int64)
        xi = st.add_vertex(xa)
        f0 = st.facets[0]
        for s in served:
            self.assigned[s] = xi
            self.levels[s] = level
            normal = np.ones(d, dtype=np.int64)
            normal[s] = level
            members = frozenset([k for k in range(d) if k != s] + [xi])
            st.add_facet(members, normal, _flip(f0[2], s, xi, xa))
        st.budget += level
        self._neighbours(i + 1)
        st.budget -= level
        for s in served:
            st.pop_facet()
            self.assigned[s] = None
            self.levels[s] = None
        st.pop_vertex()

    def _mass_ok(self, cap: int = 0) -> bool:
        """Necessary condition for the vertex sum to end up in the cone
        over conv(e_i): every coordinate sum of the vertices off that facet
        is at least -1.

        Coordinates still below that need positive entries from vertices
        yet to come.  A future vertex of level -l has at most
        ``sum_j floor(l / (1 - L_j))`` units of negative entries, so its
        positive mass is bounded; unassigned positions use ``cap`` (an upper
        bound on their neighbour level) and each still expects the -1 of
        its own neighbour.
        """
        st = self.state
        b = st.budget
        free = 0
        need = 0
        for j, c in enumerate(st.colsum.tolist()):
            if self.assigned[j] is None:
                free += 1
                need += max(0, -c)
            else:
                need += max(0, -1 - c)
        if free and cap < 0 and b < -cap:
            return False
        if need <= free:
            return True
        caps = tuple(sorted(cap if lj is None else lj for lj in self.levels))
        return need <= free + _future_mass(caps, b)

    def _prefix_is_minimal(self, i: int) -> bool:
        """Whether the first ``i`` neighbour rows are lexicographically least
        under relabellings of positions ``< i`` that keep levels fixed.

        Those rows are complete vectors, and such a relabelling never
        touches later rows first, so a strictly smaller image already rules
        out the branch."""
        perms = _block_permutations(tuple(self.levels[:i]))
        if perms is None:
            return True
        d = self.d
        rows = self.state.V[[self.assigned[r] for r in range(i)]]  # row r is n_r
        if i < d:
            rest = np.broadcast_to(np.arange(i, d), (len(perms), d - i))
            cols = np.hstack([perms, rest])
        else:
            cols = perms
        # relabelling k -> pi[k] sends rows[r][k] to position (pi[r], pi[k]);
        # with inv = pi^-1 the new matrix is rows[inv][:, inv]
        moved = rows[perms[:, :, None], cols[:, None, :]].reshape(len(perms), -1)
        diff = moved - rows.reshape(1, -1)
        nz = diff != 0
        first = nz.argmax(axis=1)
        lead = diff[np.arange(len(perms)), first]
        return not np.any(nz.any(axis=1) & (lead < 0))

    # -- phase 2: close the fan ----------------------------------------

    def _neighbour_mask(self, j: int, lj: int) -> np.ndarray:
        key = (j, lj)
        mask = self._masks.get(key)
        if mask is None:
            mask = self.pool_level + (lj - 1) * self.pool[:, j] <= 0
            self._masks[key] = mask
        return mask

    def _phase_two_start(self) -> None:
        st = self.state
        if not self._mass_ok():
            return
        self._check_bound()
        key = (tuple(self.levels), st.budget)
        alive = self._starts.get(key)
        if alive is None:
            hi = int(np.searchsorted(-self.pool_level, st.budget, side="right"))  # level >= -budget
            keep = np.ones(hi, dtype=bool)
            for j in range(self.d):
                keep &= self._neighbour_mask(j, self.levels[j])[:hi]
            alive = self._starts[key] = np.nonzero(keep)[0]
        self._close(self._mass_filter(alive))

    def _mass_filter(self, alive: np.ndarray) -> np.ndarray:
        """Drop points whose negative entries the remaining budget could
        never compensate (see ``_mass_ok``)."""
        st = self.state
        deficit = np.maximum(0, -1 - st.colsum[None, :] - self.pool[alive]).sum(axis=1)
        caps = tuple(sorted(self.levels))
        room = np.array([_future_mass(caps, st.budget - l) for l in range(st.budget + 1)])
        return alive[deficit <= room[-self.pool_level[alive]]]

    def _check_bound(self) -> None:
        """Record whether the pool covers the proven coordinate range for
        new vertices in the current branch."""
        b = self.state.budget
        worst = 0
        for level in range(1, b + 1):
            neg = sum(level // (1 - lj) for lj in self.levels)
            worst = max(worst, neg - level)
        if worst > self.bound:
            self.bound_sufficient = False

    def _best_ridge(self, alive: np.ndarray):
        """Pick the open ridge with the fewest admissible vertices.

        Returns ``None`` if some ridge has none, otherwise (ridge, facet id,
        list of (existing index or None, vector, new normal)).  Raw
        candidates (coefficient -1 on the replaced vertex) come from one
        product for all ridges; the beneath test then runs ridge by ridge.  The scan
        stops early only at a forced move (a single candidate).
        """
        st = self.state
        d, m = self.d, st.m
        V = st.V[:m]
        opened = list(st.open.items())
        R = len(opened)
        H = np.empty((R, d), dtype=np.int64)
        for r, (ridge, fid) in enumerate(opened):
            members, _, duals = st.facets[fid]
            (v,) = members - ridge
            H[r] = duals[v]
        EH = V @ H.T == -1
        PH = self.pool_f[alive] @ H.T.astype(np.float64) == -1
        raw = EH.sum(axis=0) + PH.sum(axis=0)
        if raw.min() == 0:
            return None
        rows = np.nonzero(PH.any(axis=1))[0]
        PH = PH[rows]
        pts = self.pool[alive[rows]]
        best = None
        for r in range(R):
            ridge, fid = opened[r]
            _, normal, _ = st.facets[fid]
            h = H[r]
            ev = np.nonzero(EH[:, r])[0]
            C = np.vstack([V[ev], pts[PH[:, r]]])
            lev = C @ normal
            N = normal[None, :] + (lev - 1)[:, None] * h[None, :]
            bad = V @ N.T > 0
            bad[list(ridge), :] = False
            bad[ev, np.arange(len(ev))] = False
            ok = ~bad.any(axis=0)
            cands = []
            for k in np.nonzero(ok)[0]:
                if k < len(ev):
                    xi = int(ev[k])
                    if st.ridges_ok(ridge | {xi}, ridge):
                        cands.append((xi, C[k], N[k]))
                else:
                    cands.append((None, C[k], N[k]))
            if not cands:
                return None
            if best is None or len(cands) < len(best[2]):
                best = (ridge, fid, cands)
                if len(cands) == 1:
                    break  # forced move
        return best

    def _close(self, alive: np.ndarray) -> None:
        self._tick()
        st = self.state
        if not st.open:
            self._leaf()
            return
        best = self._best_ridge(alive)
        if best is None:
            return
        ridge, fid, cands = best
        members, _, duals = st.facets[fid]
        (v,) = members - ridge
        for xi, y, new_normal in cands:
            if xi is None:
                level = int(y.sum())
                if st.budget + level < 0:
                    continue
                xnew = st.add_vertex(y)
                st.add_facet(ridge | {xnew}, new_normal, _flip(duals, v, xnew, y))
                st.budget += level
                if self._mass_ok():
                    keep = (self.pool_f[alive] @ new_normal.astype(np.float64) <= 0) & (self.pool_level[alive] >= -st.budget)
                    self._close(alive[keep])
                st.budget -= level
                st.pop_facet()
                st.pop_vertex()
            else:
                st.add_facet(ridge | {xi}, new_normal, _flip(duals, v, xi, y))
                keep = self.pool[alive] @ new_normal <= 0
                self._close(alive[keep])
                st.pop_facet()

    def _leaf(self) -> None:
        st = self.state
        if np.any(st.colsum < -1):
            return  # conv(e_i) is not special for this fan
        verts = [tuple(int(a) for a in row) for row in st.V[:st.m]]
        facets = [Facet(tuple(sorted(members)), tuple(int(a) for a in normal), Fraction(1))
                  for members, normal, _ in st.facets]
        facets.sort(key=lambda f: f.vertex_indices)
        p = LatticePolytope._trusted(verts, facets)
        form = canonical_form(p)
        if form not in self.forms:
            self.forms[form] = None
            if self.on_polytope is not None:
                self.on_polytope(p)


@lru_cache(maxsize=None)
def _future_mass(caps: tuple[int, ...], budget: int) -> int:
    """Largest total positive mass of future vertices whose levels add up
    to at least ``-budget``."""
    best = [0] * (budget + 1)
    for total in range(1, budget + 1):
        val = best[total - 1]
        for part in range(1, total + 1):
            gain = sum(part // (1 - c) for c in caps) - part
            val = max(val, best[total - part] + gain)
        best[total] = val
    return best[budget]


@lru_cache(maxsize=None)
def _block_permutations(levels: tuple[int, ...]) -> np.ndarray | None:
    """Inverses of all permutations preserving the blocks of equal level,
    identity excluded; None when there are none."""
    blocks: dict[int, list[int]] = {}
    for i, lv in enumerate(levels):
        blocks.setdefault(lv, []).append(i)
    block_list = [b for b in blocks.values() if len(b) > 1]
    if not block_list:
        return None
    out = []
    d = len(levels)
    for choice in product(*(permutations(b) for b in block_list)):
        pi = list(range(d))
        for b, img in zip(block_list, choice):
            for a, c in zip(b, img):
                pi[a] = c
        inv = [0] * d
        for a, c in enumerate(pi):
            inv[c] = a
        if inv != list(range(d)):
            out.append(inv)
    return np.array(out, dtype=np.int64)


def _pruned_compositions(total: int, lows: list[int], thr: list[int], limit: int):
    """Vectors ``v >= lows`` summing to ``total`` with
    ``sum max(0, thr[k] - v[k]) <= limit``."""
    n = len(lows)
    slack = total - sum(lows)
    if slack < 0 or limit < 0:
        return
    if n == 0:
        if slack == 0:
            yield ()
        return
    base = [max(0, t - lo) for t, lo in zip(thr, lows)]
    tail = [0] * (n + 1)
    for k in range(n - 1, -1, -1):
        tail[k] = tail[k + 1] + base[k]
    if tail[0] - slack > limit:
        return
    vec = [0] * n

    def rec(k, rem, used):
        if k == n - 1:
            v = lows[k] + rem
            if used + max(0, thr[k] - v) <= limit:
                vec[k] = v
                yield tuple(vec)
            return
        for extra in range(rem + 1):
            v = lows[k] + extra
            u = used + max(0, thr[k] - v)
            left = rem - extra
            # the remaining slack lowers the remaining need by at most itself
            if u + max(0, tail[k + 1] - left) > limit:
                continue
            vec[k] = v
            yield from rec(k + 1, left, u)

    yield from rec(0, slack, 0)


def enumerate_smooth_fano(d: int, bound: int | None = None, node_limit: int | None = None) -> EnumerationResult:
    """All smooth Fano d-polytopes up to lattice equivalence, as canonical
    forms (see the module docstring for the method)."""
    return SmoothFanoSearch(d, bound, node_limit).run()
