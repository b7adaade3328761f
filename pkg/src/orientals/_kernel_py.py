"""Pure-Python backend for the movement search.

Parity sets are plain ``int`` bitmasks over a sorted generator list, so
the set algebra in the movement equations is a handful of bitwise ops.
"""


from orientals.core import BudgetExceeded


class SearchBudgetExceeded(BudgetExceeded):
    pass


def search_moves(mu, odd, even, node_limit=0):
    """All non-empty well-formed ``xi`` that move ``mu`` somewhere.

    ``odd[g]`` / ``even[g]`` are the face masks of generator ``g``.
    Returns ``(results, nodes)`` where ``results`` is a list of
    ``(xi, pi)`` pairs with ``pi = (mu | xi+) & ~xi-`` and the second
    movement equation already verified.
    """
    # a generator with an even face in mu can never occur in xi
    allowed = [g for g in range(len(even)) if not even[g] & mu]
    m = len(allowed)
    a_odd = [odd[g] for g in allowed]
    a_even = [even[g] for g in allowed]
    a_bit = [1 << g for g in allowed]
    suffix = [0] * (m + 1)
    for k in range(m - 1, -1, -1):
        suffix[k] = suffix[k + 1] | a_even[k]

    results = []
    nodes = 0
    stack = [(0, 0, 0, 0)]
    while stack:
        k, xi, xp, xm = stack.pop()
        nodes += 1
        if node_limit and nodes > node_limit:
            raise SearchBudgetExceeded(nodes)
        # odd faces outside mu must be cancelled by some later even face
        if xm & ~xp & ~mu & ~suffix[k]:
            continue
        if k == m:
            if xi:
                pi = (mu | xp) & ~xm
                if mu == (pi | xm) & ~xp:
                    results.append((xi, pi))
            continue
        stack.append((k + 1, xi, xp, xm))
        o = a_odd[k]
        e = a_even[k]
        if not (o & xm or e & xp):
            stack.append((k + 1, xi | a_bit[k], xp | e, xm | o))
    results.sort()
    return results, nodes
