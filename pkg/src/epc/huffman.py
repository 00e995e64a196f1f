"""Bottom-up optimal code construction for finite weight lists.

Three combining rules share one engine:

  exponential   merged weight = base * (w_j + w_k)
  order-d       merged weight = 2**d * (w_j + w_k), run in log space
  minimax       merged weight = 2 * max(w_j, w_k)

Ties are broken deterministically: lower weight first, then already-merged
nodes before original items, then first-created first. The two smallest keys
are merged each round and the earlier pop takes the 0 branch.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .numeric import LN2, logaddexp

__all__ = [
    "CodeTree", "TwoQueueTrace",
    "exp_huffman", "exp_huffman_two_queue", "maxred_huffman", "dth_huffman",
]

# merge-preference order at equal weight: merged nodes win
_COMPOUND, _LEAF = 0, 1


class _Node:
    __slots__ = ("weight", "kind", "seq", "index", "children")

    def __init__(self, weight, kind, seq, index=None, children=()):
        self.weight = weight
        self.kind = kind
        self.seq = seq
        self.index = index
        self.children = children

    def key(self):
        return (self.weight, self.kind, self.seq)

    def __lt__(self, other):
        return self.key() < other.key()


@dataclass(frozen=True)
class CodeTree:
    """Result of one construction run.

    objective is in bits (or expected bits); root_weight is the raw combined
    weight the objective was derived from.
    """

    lengths: tuple[int, ...]
    codewords: tuple[str, ...]
    root_weight: float
    objective: float


def _collect(root: _Node, n: int) -> tuple[tuple[int, ...], tuple[str, ...]]:
    lengths = [0] * n
    codewords = [""] * n
    stack = [(root, "")]
    while stack:
        node, prefix = stack.pop()
        if node.index is not None:
            lengths[node.index] = len(prefix)
            codewords[node.index] = prefix
        for bit, child in enumerate(node.children):
            stack.append((child, prefix + str(bit)))
    return tuple(lengths), tuple(codewords)


def _run(weights, combine: Callable, finish: Callable[[float], float]) -> CodeTree:
    weights = [float(w) for w in weights]
    if not weights:
        raise ValueError("need at least one weight")
    if any(w <= 0.0 for w in weights):
        raise ValueError("weights must be strictly positive")
    heap = [_Node(w, _LEAF, i, index=i) for i, w in enumerate(weights)]
    heapq.heapify(heap)
    seq = 0
    while len(heap) > 1:
        first = heapq.heappop(heap)   # takes the 0 branch
        second = heapq.heappop(heap)
        merged = _Node(combine(first.weight, second.weight),
                       _COMPOUND, seq, children=(first, second))
        seq += 1
        heapq.heappush(heap, merged)
    root = heap[0]
    lengths, codewords = _collect(root, len(weights))
    return CodeTree(lengths, codewords, root.weight, finish(root.weight))


def exp_huffman(weights, base: float) -> CodeTree:
    """Minimize log_base sum w * base**n (expected length when base == 1)."""
    if base <= 0.0:
        raise ValueError("base must be positive")
    if base == 1.0:
        tree = _run(weights, lambda a, b: a + b, lambda r: 0.0)
        cost = math.fsum(float(w) * n for w, n in zip(weights, tree.lengths))
        return CodeTree(tree.lengths, tree.codewords, tree.root_weight, cost)
    return _run(weights, lambda a, b: base * (a + b),
                lambda r: math.log(r) / math.log(base))


@dataclass
class TwoQueueTrace:
    """Observation hooks for the sorted-input construction."""

    order_violations: int = 0
    max_compound_queue: int = 0
    drained: Optional[tuple[int, ...]] = None   # node seqs queued when q1 empties
    depths: dict = field(default_factory=dict)  # node seq -> final depth


def exp_huffman_two_queue(weights, base: float,
                          trace: Optional[TwoQueueTrace] = None) -> CodeTree:
    """Same penalty as exp_huffman, built with two FIFO queues, no heap.

    Requires weights sorted nondecreasing. Queue one holds the original items
    smallest-first; queue two receives merged nodes in creation order and, by
    the combining rule here, never needs reordering. Merged nodes are
    preferred at equal weight, matching the heap tie-break.
    """
    if base <= 0.0:
        raise ValueError("base must be positive")
    weights = [float(w) for w in weights]
    if not weights:
        raise ValueError("need at least one weight")
    if any(w <= 0.0 for w in weights):
        raise ValueError("weights must be strictly positive")
    if any(weights[i] > weights[i + 1] for i in range(len(weights) - 1)):
        raise ValueError("weights must be sorted nondecreasing")
    n = len(weights)
    q1 = [_Node(weights[i], _LEAF, i, index=i) for i in range(n)]
    head1 = 0  # q1 is consumed front to back; q2 grows at the tail
    q2: list[_Node] = []
    head2 = 0
    seq = 0
    drained_at = None

    def pop_min() -> _Node:
        nonlocal head1, head2
        a = q1[head1] if head1 < len(q1) else None
        b = q2[head2] if head2 < len(q2) else None
        if a is None or (b is not None and b.key() <= a.key()):
            head2 += 1
            return b
        head1 += 1
        return a

    while (len(q1) - head1) + (len(q2) - head2) > 1:
        first = pop_min()
        second = pop_min()
        merged = _Node(base * (first.weight + second.weight),
                       _COMPOUND, seq, children=(first, second))
        seq += 1
        if trace is not None:
            # order is a property of the live queue, not of past appends
            if len(q2) > head2 and merged.weight < q2[-1].weight:
                trace.order_violations += 1
        q2.append(merged)
        if trace is not None:
            trace.max_compound_queue = max(trace.max_compound_queue,
                                           len(q2) - head2)
            if head1 >= len(q1) and drained_at is None:
                drained_at = tuple(node.seq for node in q2[head2:])
    root = pop_min()
    lengths, codewords = _collect(root, n)
    if trace is not None:
        trace.drained = drained_at if drained_at is not None else ()
        stack = [(root, 0)]
        while stack:
            node, depth = stack.pop()
            if node.kind == _COMPOUND:
                trace.depths[node.seq] = depth
            for child in node.children:
                stack.append((child, depth + 1))
    if base == 1.0:
        cost = math.fsum(w * l for w, l in zip(weights, lengths))
    else:
        cost = math.log(root.weight) / math.log(base)
    return CodeTree(lengths, codewords, root.weight, cost)


def maxred_huffman(weights) -> CodeTree:
    """Minimize max over i of n(i) + log2 w(i).

    The merge doubles the larger weight; the resulting root weight equals
    max w * 2**n and the objective is its log2. Lengths are invariant under
    scaling all weights by a common factor.
    """
    return _run(weights, lambda a, b: 2.0 * max(a, b), math.log2)


def dth_huffman(probs, order: float) -> CodeTree:
    """Minimize (1/d) log2 sum p**(1+d) 2**(d n): run the exponential engine
    on weights p**(1+d) at base 2**d. Large d is handled in log space."""
    if order <= 0.0:
        raise ValueError("order must be positive")
    probs = [float(p) for p in probs]
    if any(p <= 0.0 for p in probs):
        raise ValueError("probabilities must be strictly positive")
    d = order
    if d < 64.0:
        weights = [p ** (1.0 + d) for p in probs]
        tree = _run(weights, lambda a, b: 2.0 ** d * (a + b),
                    lambda r: math.log2(r) / d)
        return tree
    # log-space twin of the same engine, identical tie-break on ln weights
    ln_ws = [(1.0 + d) * math.log(p) for p in probs]
    heap = [_Node(lw, _LEAF, i, index=i) for i, lw in enumerate(ln_ws)]
    heapq.heapify(heap)
    seq = 0
    while len(heap) > 1:
        first = heapq.heappop(heap)
        second = heapq.heappop(heap)
        merged = _Node(d * LN2 + logaddexp(first.weight, second.weight),
                       _COMPOUND, seq, children=(first, second))
        seq += 1
        heapq.heappush(heap, merged)
    root = heap[0]
    lengths, codewords = _collect(root, len(probs))
    return CodeTree(lengths, codewords, root.weight, root.weight / (d * LN2))
