"""Cartesian-tree parentheses strings over short arrays.

A node's k-entry extreme array is summarised by the parentheses trace
of its Cartesian tree: entries are inserted left to right with a
monotone stack, writing 1 for every push and 0 for every pop (plus the
final unwinding pops).  Ties keep the earlier entry on top, so the
leftmost extreme is the root and range arg-extreme queries resolve to
tree ancestors.

The string is the stored truth; queries decode it to parent/depth
arrays (cached by the owner) and walk those.
"""

__all__ = [
    "encode_cartesian",
    "decode_cartesian",
    "cart_argext",
    "cart_first_reach",
    "cart_last_reach",
]


def encode_cartesian(values, is_max: bool) -> int:
    """Parentheses trace of the max- or min-Cartesian tree, as an int.

    The trace is read LSB-first; 1 = push, 0 = pop.  A trace over k
    entries has exactly 2k bits.
    """
    word = 0
    pos = 0
    stack = []
    if is_max:
        for v in values:
            while stack and stack[-1] < v:
                stack.pop()
                pos += 1
            word |= 1 << pos
            pos += 1
            stack.append(v)
    else:
        for v in values:
            while stack and stack[-1] > v:
                stack.pop()
                pos += 1
            word |= 1 << pos
            pos += 1
            stack.append(v)
    return word


def decode_cartesian(word: int, k: int):
    """Replay a trace into (parent, depth) arrays (1-based, parent 0 = root).

    The i-th push introduces entry i; the chain popped just before it
    hangs off i as its left child, and i attaches under the surviving
    stack top as a right child.
    """
    parent = [0] * (k + 1)
    depth = [0] * (k + 1)
    stack = []
    nxt = 0
    last_popped = 0
    for pos in range(2 * k):
        if (word >> pos) & 1:
            nxt += 1
            if last_popped:
                parent[last_popped] = nxt
                last_popped = 0
            if stack:
                parent[nxt] = stack[-1]
            stack.append(nxt)
        else:
            last_popped = stack.pop()
    for i in range(1, k + 1):
        d = 0
        j = i
        while parent[j]:
            j = parent[j]
            d += 1
        depth[i] = d
    return parent, depth


def cart_argext(decoded, a: int, b: int) -> int:
    """First position in [a, b] attaining the range extreme (tree LCA)."""
    parent, depth = decoded
    x, y = a, b
    while depth[x] > depth[y]:
        x = parent[x]
    while depth[y] > depth[x]:
        y = parent[y]
    while x != y:
        x = parent[x]
        y = parent[y]
    return x


def cart_first_reach(decoded, a: int, b: int, pred) -> int:
    """Leftmost p in [a, b] with pred(p) true, or 0.

    pred takes a position and must be satisfied by the range
    arg-extreme whenever it is satisfied anywhere (threshold predicates
    in the tree's extreme direction).  Everything left of a
    leftmost-tie arg-extreme is strictly weaker, so the qualifier is
    either found further left or is the arg-extreme itself.
    """
    result = 0
    while a <= b:
        u = cart_argext(decoded, a, b)
        if not pred(u):
            break
        result = u
        b = u - 1
    return result


def cart_last_reach(decoded, a: int, b: int, pred) -> int:
    """Rightmost p in [a, b] with pred(p) true, or 0."""
    result = 0
    while a <= b:
        u = cart_argext(decoded, a, b)
        if not pred(u):
            break
        result = u
        a = u + 1
    return result
