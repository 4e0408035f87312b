"""Breadth-first pathfinding over passable tiles.

Neighbor expansion order is fixed (up, right, down, left) so shortest paths
and tie-breaks are deterministic for identical worlds.
"""

from __future__ import annotations

from collections import deque
from typing import Callable

NEIGHBOR_ORDER = (("up", (0, -1)), ("right", (1, 0)), ("down", (0, 1)), ("left", (-1, 0)))


def bfs_path(
    start: tuple[int, int],
    goal: tuple[int, int],
    passable: Callable[[int, int], bool],
) -> list[tuple[int, int]] | None:
    """Shortest path from start to goal (inclusive of goal, exclusive of
    start), or None when unreachable.  start == goal yields []."""
    if start == goal:
        return []
    seen = {start: None}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for _, (dx, dy) in NEIGHBOR_ORDER:
            nxt = (current[0] + dx, current[1] + dy)
            if nxt in seen or not passable(*nxt):
                continue
            seen[nxt] = current
            if nxt == goal:
                path = [nxt]
                node = current
                while node != start:
                    path.append(node)
                    node = seen[node]
                path.reverse()
                return path
            queue.append(nxt)
    return None


def distances_from(
    start: tuple[int, int],
    passable: Callable[[int, int], bool],
) -> dict[tuple[int, int], int]:
    """BFS distance map over passable tiles reachable from start."""
    dist = {start: 0}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for _, (dx, dy) in NEIGHBOR_ORDER:
            nxt = (current[0] + dx, current[1] + dy)
            if nxt in dist or not passable(*nxt):
                continue
            dist[nxt] = dist[current] + 1
            queue.append(nxt)
    return dist


def step_direction(from_pos: tuple[int, int], to_pos: tuple[int, int]) -> str:
    dx, dy = to_pos[0] - from_pos[0], to_pos[1] - from_pos[1]
    for name, delta in NEIGHBOR_ORDER:
        if (dx, dy) == delta:
            return name
    raise ValueError(f"tiles not adjacent: {from_pos} -> {to_pos}")
