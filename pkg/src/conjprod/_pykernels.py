"""Pure-Python permutation kernels (fallback for the compiled module).

Permutations are tuples of 0-based images.
"""


def compose(p, q):
    """x -> q[p[x]]: the left factor acts first."""
    if len(p) != len(q):
        raise ValueError("degree mismatch")
    return tuple([q[x] for x in p])


def inverse(p):
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def cycles(p):
    """All cycles (fixed points included), each starting at its least point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def cycle_lengths(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            length += 1
            j = p[j]
        out.append(length)
    return out


def parity(p):
    """0 for even permutations, 1 for odd ones."""
    return sum(1 for c in cycle_lengths(p) if c % 2 == 0) & 1


def type_key(p):
    """Cycle lengths sorted in decreasing order."""
    return tuple(sorted(cycle_lengths(p), reverse=True))


def conjugate(p, g):
    """g^-1 p g as image tuple: g[x] -> g[p[x]]."""
    if len(p) != len(g):
        raise ValueError("degree mismatch")
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[g[i]] = g[x]
    return tuple(r)
