"""Numerical laboratory for Cauchy integral commutators on Morrey spaces."""

try:  # installed layout: the extension lives inside the package
    from ._czlab import *  # noqa: F401,F403
    from ._czlab import __doc__  # noqa: F401
except ImportError:  # in-tree layout: the extension sits on PYTHONPATH
    from _czlab import *  # noqa: F401,F403
    from _czlab import __doc__  # noqa: F401
