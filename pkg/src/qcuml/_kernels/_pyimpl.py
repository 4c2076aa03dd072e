"""Pure-Python dependency kernels.

Ops arrive flattened: op ``i`` touches ``qubits[offsets[i]:offsets[i + 1]]``,
qubits being global indices in declaration order. An op's priority in the
canonical order is its first qubit, then its position.
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence


def dag_edges(offsets: Sequence[int], qubits: Sequence[int], n_qubits: int) -> list[tuple[int, int]]:
    n_ops = len(offsets) - 1
    last = [-1] * n_qubits
    mark = [-1] * n_ops
    edges = []
    for i in range(n_ops):
        for k in range(offsets[i], offsets[i + 1]):
            q = qubits[k]
            p = last[q]
            if p >= 0 and mark[p] != i:
                mark[p] = i
                edges.append((p, i))
            last[q] = i
    edges.sort()
    return edges


def canonical_order(offsets: Sequence[int], qubits: Sequence[int], n_qubits: int) -> list[int]:
    n_ops = len(offsets) - 1
    last = [-1] * n_qubits
    mark = [-1] * n_ops
    indegree = [0] * n_ops
    succ: list[list[int]] = [[] for _ in range(n_ops)]
    for i in range(n_ops):
        for k in range(offsets[i], offsets[i + 1]):
            q = qubits[k]
            p = last[q]
            if p >= 0 and mark[p] != i:
                mark[p] = i
                succ[p].append(i)
                indegree[i] += 1
            last[q] = i

    heap = [(qubits[offsets[i]], i) for i in range(n_ops) if indegree[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indegree[j] -= 1
            if indegree[j] == 0:
                heapq.heappush(heap, (qubits[offsets[j]], j))
    return order
