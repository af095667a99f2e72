"""Maximum bipartite matching (Hopcroft-Karp)."""

from __future__ import annotations

from collections import deque

_INF = float("inf")


def maximum_matching(adjacency: dict) -> dict:
    """Maximum matching of a bipartite graph given as left -> iterable of right.

    Returns a dict left -> right covering a maximum set of left vertices.
    Deterministic for a fixed iteration order of the adjacency lists.
    """
    adj = {u: list(vs) for u, vs in adjacency.items()}
    match_left: dict = {}
    match_right: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        queue = deque()
        for u in adj:
            if u not in match_left:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_right.get(v)
                if w is None:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u) -> bool:
        for v in adj[u]:
            w = match_right.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                match_left[u] = v
                match_right[v] = u
                return True
        dist[u] = _INF
        return False

    while bfs():
        for u in adj:
            if u not in match_left:
                dfs(u)
    return match_left
