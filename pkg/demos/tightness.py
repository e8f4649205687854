#!/usr/bin/env python3
"""Why the edge bound is sharp.

Q_n admits a proper edge coloring with only n colors (color every edge by
its coordinate), so no subgraph with more than n edges can be rainbow, and
that coloring has no rainbow cycles at all.  The brute-force oracle
confirms both facts at desk scale; the engine politely refuses the
impossible request rather than searching for it.
"""

from rainbowcube import (
    cayley_coloring,
    embed_rainbow_tree,
    oracle_find,
    oracle_no_rainbow_cycle,
    path_tree,
)
from rainbowcube.errors import DegreeTooSmall

for n in (2, 3):
    host = cayley_coloring(n)
    feasible = path_tree(n)
    blocked = path_tree(n + 1)

    print(f"Q_{n} with the coordinate coloring ({n} colors):")
    print(f"  path with {n} edges: oracle found={oracle_find(host, feasible).found}")
    result = oracle_find(host, blocked)
    print(
        f"  path with {n + 1} edges: oracle found={result.found}"
        f" exhausted={result.exhausted} ({result.nodes_explored} nodes)"
    )
    try:
        embed_rainbow_tree(host, blocked)
    except DegreeTooSmall as exc:
        print(f"  engine: {exc}")

for n in (3, 4):
    clear = oracle_no_rainbow_cycle(cayley_coloring(n), max_len=8)
    print(f"Q_{n}: no rainbow cycle up to length 8: {clear}")
