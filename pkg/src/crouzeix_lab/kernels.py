"""Backend selection for the hot evaluation kernels.

The compiled extension ``crouzeix_lab._kernels`` is preferred; the
pure-numpy module ``_kernels_py`` is the fallback.  Set ``CRX_KERNEL``
to ``python`` or ``cython`` to force a backend (the benchmark uses this
to time both sides on one install).
"""

import os

_forced = os.environ.get("CRX_KERNEL", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as _impl
elif _forced == "cython":
    from . import _kernels as _impl  # raises ImportError if not built
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

params_to_roots = _impl.params_to_roots
roots_to_params = _impl.roots_to_params
blaschke_matrix = _impl.blaschke_matrix
blaschke_norm = _impl.blaschke_norm
blaschke_radius = _impl.blaschke_radius
spectral_norm = _impl.spectral_norm
herm_lambda_max = _impl.herm_lambda_max
numerical_radius = _impl.numerical_radius
numerical_radius_arg = _impl.numerical_radius_arg
norm_objective = _impl.norm_objective
radius_objective = _impl.radius_objective
