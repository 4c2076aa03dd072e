"""Compare the compiled and pure-Python dependency kernels.

    python benchmarks/bench_kernels.py [--ops 200000] [--qubits 32] [--repeat 5]

Inputs are random flattened op streams (1-3 distinct qubits per op, the
occasional wide barrier). Both backends must agree before anything is timed.
"""

from __future__ import annotations

import argparse
import random
import timeit
from array import array

from qcuml._kernels import _pyimpl

try:
    from qcuml._kernels import _cimpl
except ImportError:
    _cimpl = None


def random_stream(n_ops: int, n_qubits: int, seed: int) -> tuple[array, array]:
    rng = random.Random(seed)
    offsets, qubits = array("q", [0]), array("q")
    for _ in range(n_ops):
        width = n_qubits if rng.random() < 0.01 else rng.choice((1, 1, 2, 2, 3))
        qubits.extend(rng.sample(range(n_qubits), min(width, n_qubits)))
        offsets.append(len(qubits))
    return offsets, qubits


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--ops", type=int, nargs="+", default=[1_000, 20_000, 200_000])
    ap.add_argument("--qubits", type=int, default=32)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _cimpl is None:
        print("compiled kernels not built; timing the Python backend only")
    backends = {"python": _pyimpl, **({"cython": _cimpl} if _cimpl else {})}

    print(f"{'ops':>9} {'kernel':<16} " + " ".join(f"{name:>12}" for name in backends) + "   speedup")
    for n_ops in args.ops:
        offsets, qubits = random_stream(n_ops, args.qubits, seed=n_ops)
        for kernel in ("dag_edges", "canonical_order"):
            results = {name: getattr(mod, kernel)(offsets, qubits, args.qubits) for name, mod in backends.items()}
            assert all(r == results["python"] for r in results.values()), f"{kernel} backends disagree"
            best = {}
            for name, mod in backends.items():
                fn = getattr(mod, kernel)
                best[name] = min(timeit.repeat(lambda: fn(offsets, qubits, args.qubits), number=1,
                                               repeat=args.repeat))
            speedup = f"{best['python'] / best['cython']:8.1f}x" if "cython" in best else ""
            times = " ".join(f"{best[name] * 1e3:10.2f}ms" for name in backends)
            print(f"{n_ops:>9} {kernel:<16} {times}  {speedup}")


if __name__ == "__main__":
    main()
