"""
Search engines shared by the decision procedures: a budgeted exact cover solver and a
budgeted perfect matching with loops, both split into independent components.
"""
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence

import networkx as nx

from .config import get_settings
from .errors import BudgetExceeded

log = logging.getLogger("perfectcodes.transversals")


class NodeBudget:
    """Counts search nodes and raises BudgetExceeded past the limit."""

    __slots__ = ("limit", "nodes")

    def __init__(self, limit: Optional[int] = None):
        self.limit = get_settings().search_budget if limit is None else limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(self.nodes)


@dataclass
class SearchOutcome:
    """Result of one search: ``solution`` is None when the search space was exhausted."""

    solution: Optional[Dict]
    nodes: int
    exhausted_budget: bool = False
    components: int = 0


def components(items: Iterable[Hashable], links: Dict[Hashable, Iterable[Hashable]]):
    """Connected components of ``items`` where ``links`` lists each item's neighbours."""
    graph = nx.Graph()
    graph.add_nodes_from(items)
    for item, others in links.items():
        graph.add_edges_from((item, other) for other in others if other != item)
    return sorted((sorted(part) for part in nx.connected_components(graph)), key=lambda p: p[0])


class ExactCoverSolver:
    """
    Exact cover of ``items`` by ``options`` (key -> frozenset of items).

    Always branches on the uncovered item with the fewest live options and tries options
    in key order, so the first solution found is reproducible.
    """

    def __init__(self, items: Iterable[Hashable], options: Dict[Hashable, FrozenSet]):
        self.items = frozenset(items)
        self.options = {key: options[key] for key in sorted(options)}
        self.membership = defaultdict(list)
        for key, subset in self.options.items():
            for item in subset:
                self.membership[item].append(key)
        self.failed = not all(self.membership[item] for item in self.items)

    def solve(self, budget: NodeBudget) -> Optional[List[Hashable]]:
        if self.failed:
            return None
        return self._solve(set(), [], budget)

    def _solve(self, covered: set, selected: list, budget: NodeBudget):
        budget.tick()
        if len(covered) == len(self.items):
            return list(selected)
        best, best_live = None, None
        for item in sorted(self.items - covered):
            live = [k for k in self.membership[item] if covered.isdisjoint(self.options[k])]
            if best_live is None or len(live) < len(best_live):
                best, best_live = item, live
                if not live:
                    return None
        for key in best_live:
            selected.append(key)
            found = self._solve(covered | self.options[key], selected, budget)
            if found is not None:
                return found
            selected.pop()
        return None


def _exact_cover_part(args):
    items, options, limit = args
    budget = NodeBudget(limit)
    try:
        return ExactCoverSolver(items, options).solve(budget), budget.nodes, False
    except BudgetExceeded:
        return None, budget.nodes, True


def solve_exact_cover(
    items: Sequence[Hashable],
    options: Dict[Hashable, FrozenSet],
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> SearchOutcome:
    """
    Exact cover split into independent parts (items linked by a shared option). The node
    budget applies to each part, so the outcome does not depend on the worker count.
    """
    limit = get_settings().search_budget if budget is None else budget
    threads = get_settings().threads if threads is None else threads
    links = defaultdict(set)
    for subset in options.values():
        first = min(subset)
        links[first].update(subset)
    parts = components(items, links)
    jobs = []
    for part in parts:
        members = frozenset(part)
        local = {k: s for k, s in options.items() if s <= members}
        jobs.append((part, local, limit))
    results = _run(_exact_cover_part, jobs, threads)
    chosen, nodes, exhausted = [], 0, False
    for solution, used, ran_out in results:
        nodes += used
        if ran_out:
            exhausted = True
            continue
        if solution is None:
            log.debug("Exact cover part without solution after %d nodes", used)
            return SearchOutcome(None, nodes, False, len(parts))
        chosen.extend(solution)
    if exhausted:
        log.warning("Exact cover search ran out of budget (%d nodes per part)", limit)
        return SearchOutcome(None, nodes, True, len(parts))
    return SearchOutcome({key: options[key] for key in sorted(chosen)}, nodes, False, len(parts))


def _match(vertices, loops, neighbours, partner, budget):
    budget.tick()
    free = [v for v in vertices if v not in partner]
    if not free:
        return True
    best, best_moves = None, None
    for v in free:
        moves = ([v] if v in loops else []) + [
            w for w in neighbours.get(v, ()) if w != v and w not in partner
        ]
        if best_moves is None or len(moves) < len(best_moves):
            best, best_moves = v, moves
            if not moves:
                return False
    for w in sorted(best_moves):
        partner[best] = w
        partner[w] = best
        if _match(vertices, loops, neighbours, partner, budget):
            return True
        del partner[best]
        partner.pop(w, None)
    return False


def _matching_part(args):
    vertices, loops, neighbours, limit = args
    budget = NodeBudget(limit)
    partner: Dict = {}
    try:
        found = _match(vertices, loops, neighbours, partner, budget)
    except BudgetExceeded:
        return None, budget.nodes, True
    return (dict(partner) if found else None), budget.nodes, False


def perfect_matching_with_loops(
    vertices: Sequence[Hashable],
    loops: Iterable[Hashable],
    neighbours: Dict[Hashable, Iterable[Hashable]],
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> SearchOutcome:
    """
    Cover every vertex exactly once by a loop (partner = itself) or by an edge.

    The returned solution maps each vertex to its partner.
    """
    limit = get_settings().search_budget if budget is None else budget
    threads = get_settings().threads if threads is None else threads
    loops = frozenset(loops)
    neighbours = {v: tuple(sorted(set(ws))) for v, ws in neighbours.items()}
    parts = components(vertices, neighbours)
    jobs = [
        (
            part,
            frozenset(v for v in part if v in loops),
            {v: neighbours.get(v, ()) for v in part},
            limit,
        )
        for part in parts
    ]
    partner, nodes, exhausted = {}, 0, False
    for solution, used, ran_out in _run(_matching_part, jobs, threads):
        nodes += used
        if ran_out:
            exhausted = True
            continue
        if solution is None:
            return SearchOutcome(None, nodes, False, len(parts))
        partner.update(solution)
    if exhausted:
        log.warning("Matching search ran out of budget (%d nodes per part)", limit)
        return SearchOutcome(None, nodes, True, len(parts))
    return SearchOutcome(partner, nodes, False, len(parts))


def _run(function: Callable, jobs: List, threads: int) -> List:
    """Run independent jobs inline, or on a process pool when more than one worker is allowed."""
    if threads <= 1 or len(jobs) <= 1:
        return [function(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(function, jobs))
