"""Compiled kernels and file i/o for the codec"""

# test the sys.path by attempting to load the jit compiler the kernels depend on
try:
    import numba
except ImportError:
    from pprint import pformat
    notfound = "Couldn't locate the numba jit compiler.\nSearched in:\n%s\nto no avail..."%pformat(__import__('sys').path)
    raise RuntimeError(notfound)
