"""Hot numeric kernels with backend selection at import.

The compiled Cython backend is used when its extension module imports;
otherwise the numpy fallback takes over. Set QDEPHASE_KERNELS=py or =c to
force a backend (forcing "c" raises if the extension is missing).
"""

import os

_choice = os.environ.get("QDEPHASE_KERNELS", "auto").lower()

if _choice == "py":
    from . import _pykernels as _impl
elif _choice == "c":
    from . import _ckernels as _impl  # type: ignore[no-redef]
elif _choice == "auto":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]
else:
    raise ValueError(f"QDEPHASE_KERNELS must be auto, py or c, got {_choice!r}")

BACKEND = _impl.BACKEND
NOISE_FLOOR_REL = _impl.NOISE_FLOOR_REL
eigh_herm = _impl.eigh_herm
eigvalsh_herm = _impl.eigvalsh_herm
psd_sqrt_with_min = _impl.psd_sqrt_with_min
sqrt_fidelity = _impl.sqrt_fidelity
pt_min_eig = _impl.pt_min_eig
sigma_from_params = _impl.sigma_from_params
css_objective = _impl.css_objective


def available_backends():
    """Names of the kernel backends importable in this environment."""
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401

        names.append("cython")
    except ImportError:
        pass
    return names


def load_backend(name):
    """Return the backend module by name ("python" or "cython")."""
    if name == "python":
        from . import _pykernels

        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
