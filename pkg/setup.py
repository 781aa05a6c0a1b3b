import os

from setuptools import Extension, setup


def extensions():
    """Build the Cython kernel module when Cython is available.

    The package works without it (fsolink.kernels falls back to the
    numpy implementation), so a missing compiler or FSOLINK_NO_EXT=1
    simply skips the extension.
    """
    if os.environ.get("FSOLINK_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "fsolink.kernels._fast",
        ["src/fsolink/kernels/_fast.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        ext,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions())
