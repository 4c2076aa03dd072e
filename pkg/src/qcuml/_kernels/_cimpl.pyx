# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dependency kernels; same contract as ``_pyimpl``."""

from libc.stdlib cimport malloc, free


cdef inline void _sift_down(long long *heap, Py_ssize_t size, Py_ssize_t pos) noexcept nogil:
    cdef long long item = heap[pos]
    cdef Py_ssize_t child
    while True:
        child = 2 * pos + 1
        if child >= size:
            break
        if child + 1 < size and heap[child + 1] < heap[child]:
            child += 1
        if heap[child] >= item:
            break
        heap[pos] = heap[child]
        pos = child
    heap[pos] = item


cdef inline void _sift_up(long long *heap, Py_ssize_t pos) noexcept nogil:
    cdef long long item = heap[pos]
    cdef Py_ssize_t parent
    while pos > 0:
        parent = (pos - 1) >> 1
        if heap[parent] <= item:
            break
        heap[pos] = heap[parent]
        pos = parent
    heap[pos] = item


def dag_edges(const long long[:] offsets, const long long[:] qubits, Py_ssize_t n_qubits):
    cdef Py_ssize_t n_ops = offsets.shape[0] - 1
    cdef Py_ssize_t i, k, q, p, n_edges = 0
    cdef Py_ssize_t total = qubits.shape[0]
    cdef long long *last = <long long *> malloc(max(n_qubits, 1) * sizeof(long long))
    cdef long long *mark = <long long *> malloc(max(n_ops, 1) * sizeof(long long))
    cdef long long *start = <long long *> malloc((n_ops + 1) * sizeof(long long))
    cdef long long *src = <long long *> malloc(max(total, 1) * sizeof(long long))
    cdef long long *dst = <long long *> malloc(max(total, 1) * sizeof(long long))
    cdef long long *by_src = <long long *> malloc(max(total, 1) * sizeof(long long))
    if not (last and mark and start and src and dst and by_src):
        free(last); free(mark); free(start); free(src); free(dst); free(by_src)
        raise MemoryError()
    try:
        with nogil:
            for q in range(n_qubits):
                last[q] = -1
            for i in range(n_ops + 1):
                start[i] = 0
            for i in range(n_ops):
                mark[i] = -1
            for i in range(n_ops):
                for k in range(offsets[i], offsets[i + 1]):
                    q = qubits[k]
                    p = last[q]
                    if p >= 0 and mark[p] != i:
                        mark[p] = i
                        src[n_edges] = p
                        dst[n_edges] = i
                        n_edges += 1
                        start[p + 1] += 1
                    last[q] = i
            # counting sort by source; targets already ascend within a source
            for i in range(n_ops):
                start[i + 1] += start[i]
            for k in range(n_edges):
                p = src[k]
                by_src[start[p]] = dst[k]
                start[p] += 1
            # start[p] now marks the end of p's run
        edges = []
        k = 0
        for p in range(n_ops):
            while k < start[p]:
                edges.append((p, by_src[k]))
                k += 1
    finally:
        free(last); free(mark); free(start); free(src); free(dst); free(by_src)
    return edges


def canonical_order(const long long[:] offsets, const long long[:] qubits, Py_ssize_t n_qubits):
    cdef Py_ssize_t n_ops = offsets.shape[0] - 1
    cdef Py_ssize_t total = qubits.shape[0]
    cdef Py_ssize_t i, j, k, q, p, n_edges = 0, size = 0, n_out = 0
    cdef long long key
    cdef long long *last = <long long *> malloc(max(n_qubits, 1) * sizeof(long long))
    cdef long long *mark = <long long *> malloc(max(n_ops, 1) * sizeof(long long))
    cdef long long *indeg = <long long *> malloc(max(n_ops, 1) * sizeof(long long))
    cdef long long *start = <long long *> malloc((n_ops + 1) * sizeof(long long))
    cdef long long *src = <long long *> malloc(max(total, 1) * sizeof(long long))
    cdef long long *dst = <long long *> malloc(max(total, 1) * sizeof(long long))
    cdef long long *adj = <long long *> malloc(max(total, 1) * sizeof(long long))
    cdef long long *heap = <long long *> malloc(max(n_ops, 1) * sizeof(long long))
    cdef long long *order = <long long *> malloc(max(n_ops, 1) * sizeof(long long))
    if not (last and mark and indeg and start and src and dst and adj and heap and order):
        free(last); free(mark); free(indeg); free(start); free(src)
        free(dst); free(adj); free(heap); free(order)
        raise MemoryError()
    try:
        with nogil:
            for q in range(n_qubits):
                last[q] = -1
            for i in range(n_ops):
                mark[i] = -1
                indeg[i] = 0
                start[i] = 0
            start[n_ops] = 0
            for i in range(n_ops):
                for k in range(offsets[i], offsets[i + 1]):
                    q = qubits[k]
                    p = last[q]
                    if p >= 0 and mark[p] != i:
                        mark[p] = i
                        src[n_edges] = p
                        dst[n_edges] = i
                        n_edges += 1
                        indeg[i] += 1
                        start[p + 1] += 1
                    last[q] = i
            # CSR adjacency by source
            for i in range(n_ops):
                start[i + 1] += start[i]
            for i in range(n_ops):
                mark[i] = start[i]
            for k in range(n_edges):
                p = src[k]
                adj[mark[p]] = dst[k]
                mark[p] += 1
            # key packs (first qubit, position); position < n_ops keeps it unique
            for i in range(n_ops):
                if indeg[i] == 0:
                    heap[size] = qubits[offsets[i]] * n_ops + i
                    _sift_up(heap, size)
                    size += 1
            while size > 0:
                key = heap[0]
                size -= 1
                if size > 0:
                    heap[0] = heap[size]
                    _sift_down(heap, size, 0)
                i = key % n_ops
                order[n_out] = i
                n_out += 1
                for k in range(start[i], start[i + 1]):
                    j = adj[k]
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        heap[size] = qubits[offsets[j]] * n_ops + j
                        _sift_up(heap, size)
                        size += 1
        result = [order[k] for k in range(n_out)]
    finally:
        free(last); free(mark); free(indeg); free(start); free(src)
        free(dst); free(adj); free(heap); free(order)
    return result
