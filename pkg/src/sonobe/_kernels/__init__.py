"""Kernel backend selection.

The compiled extension (Cython) is preferred; the pure-Python twin is the
fallback.  Set SONOBE_KERNELS=python or SONOBE_KERNELS=cython to force a
backend (the benchmark uses this, and tests parametrize over both).
"""

from __future__ import annotations

import os

import numpy as np

from sonobe._kernels import _pure

_FORCED = os.environ.get("SONOBE_KERNELS", "").strip().lower()


def load_backend(name: str):
    """Return the kernel module for `name` ('python' or 'cython')."""
    if name == "python":
        return _pure
    if name == "cython":
        from sonobe._kernels import _fast

        return _fast
    raise ValueError(f"unknown kernel backend {name!r}")


if _FORCED:
    _impl = load_backend(_FORCED)
else:
    try:
        from sonobe._kernels import _fast as _impl
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND
EPS_GEOM = _pure.EPS_GEOM
EPS_BEYOND = _pure.EPS_BEYOND
EPS_AREA = _pure.EPS_AREA

edge_lengths = _impl.edge_lengths
edge_energy = _impl.edge_energy
energy_gradient = _impl.energy_gradient
residual_jacobian = _impl.residual_jacobian
tri_overlap_area_2d = _impl.tri_overlap_area_2d
tri_pair_collides = _impl.tri_pair_collides
collide_pairs = _impl.collide_pairs


def candidate_pairs(tris: np.ndarray, pad: float = 1e-6) -> np.ndarray:
    """Index pairs of triangles whose padded bounding boxes overlap.

    Backend-independent numpy prefilter applied before the exact tests.
    """
    tris = np.asarray(tris, dtype=float)
    n = tris.shape[0]
    if n < 2:
        return np.zeros((0, 2), dtype=np.int32)
    lo = tris.min(axis=1) - pad
    hi = tris.max(axis=1) + pad
    i, j = np.triu_indices(n, k=1)
    ok = np.all(lo[i] <= hi[j], axis=1) & np.all(lo[j] <= hi[i], axis=1)
    return np.stack([i[ok], j[ok]], axis=1).astype(np.int32)
