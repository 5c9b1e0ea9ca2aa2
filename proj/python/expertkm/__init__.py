"""Expert-augmented product-limit estimation for right-censored portfolios."""

try:
    from ._expertkm import *  # noqa: F401,F403  installed wheel layout
except ImportError:
    from _expertkm import *  # noqa: F401,F403  build-tree layout
