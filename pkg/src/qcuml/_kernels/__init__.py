"""Dependency-DAG kernels, compiled when the extension is built.

``BACKEND`` names the implementation picked at import time: ``"cython"`` if
``_cimpl`` is importable, otherwise ``"python"``.
"""

try:
    from ._cimpl import canonical_order, dag_edges

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._pyimpl import canonical_order, dag_edges

    BACKEND = "python"

__all__ = ["BACKEND", "canonical_order", "dag_edges"]
