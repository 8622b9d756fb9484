"""Independent brute-force reference implementations used as test oracles.

Everything here works on raw tables or adjacency lists with plain Python
loops, deliberately sharing no code with the library paths it checks.
"""

from itertools import combinations, permutations, product


def slow_center(table) -> list[int]:
    n = len(table)
    return [
        z for z in range(n) if all(table[z][x] == table[x][z] for x in range(n))
    ]


def slow_centralizer(table, x) -> list[int]:
    n = len(table)
    return [y for y in range(n) if table[x][y] == table[y][x]]


def slow_element_order(table, x) -> int:
    k, cur = 1, x
    while cur != 0:
        cur = table[cur][x]
        k += 1
    return k


def slow_inverse(table, x) -> int:
    return next(y for y in range(len(table)) if table[x][y] == 0)


def slow_commutator_closure(table) -> set[int]:
    """Subgroup generated by all commutators, by plain worklist closure."""
    n = len(table)
    inv = [slow_inverse(table, x) for x in range(n)]
    gens = {
        table[table[inv[x]][inv[y]]][table[x][y]]
        for x in range(n)
        for y in range(n)
    }
    members = {0} | gens
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for y in list(members):
            for z in (table[x][y], table[y][x]):
                if z not in members:
                    members.add(z)
                    frontier.append(z)
    return members


def slow_is_associative(table) -> bool:
    n = len(table)
    return all(
        table[table[x][y]][z] == table[x][table[y][z]]
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )


def sl2_table(q: int):
    """SL(2, q) straight from matrix arithmetic; returns (order, center size)."""
    mats = [
        (a, b, c, d)
        for a, b, c, d in product(range(q), repeat=4)
        if (a * d - b * c) % q == 1
    ]

    def mul(m1, m2):
        a, b, c, d = m1
        e, f, g, h = m2
        return ((a * e + b * g) % q, (a * f + b * h) % q,
                (c * e + d * g) % q, (c * f + d * h) % q)

    center = [m for m in mats if all(mul(m, x) == mul(x, m) for x in mats)]
    return len(mats), len(center)


def gl2_order(q: int) -> int:
    count = 0
    for a, b, c, d in product(range(q), repeat=4):
        if (a * d - b * c) % q != 0:
            count += 1
    return count


def slow_clique_number(adj) -> int:
    """Exact maximum clique by subset growth; fine for tiny graphs."""
    n = len(adj)
    best = 1 if n else 0
    cliques = [frozenset([v]) for v in range(n)]
    while cliques:
        nxt = set()
        for clique in cliques:
            top = max(clique)
            for v in range(top + 1, n):
                if all(adj[v][u] for u in clique):
                    nxt.add(clique | {v})
        if not nxt:
            break
        best += 1
        cliques = nxt
    return best


def slow_graph_isomorphic(adj1, adj2) -> bool:
    """Permutation scan; only for graphs with at most ~8 vertices."""
    n = len(adj1)
    if n != len(adj2):
        return False
    for perm in permutations(range(n)):
        if all(
            adj1[u][v] == adj2[perm[u]][perm[v]]
            for u in range(n)
            for v in range(n)
        ):
            return True
    return False


def slow_multipartite_partition(adj):
    """Partition by repeated non-neighbor grouping, validated directly."""
    n = len(adj)
    if n == 0:
        return None
    unused = set(range(n))
    parts = []
    while unused:
        v = min(unused)
        part = {u for u in unused if u == v or not adj[v][u]}
        parts.append(sorted(part))
        unused -= part
    for part in parts:
        for u in part:
            for w in part:
                if u != w and adj[u][w]:
                    return None
    for p1, p2 in combinations(parts, 2):
        for u in p1:
            for w in p2:
                if not adj[u][w]:
                    return None
    return parts
