from . import engine  # noqa
from . import (
    bench,
    dynamic,
    graph,
    kdistance,
    logging,
    oracles,
    setcover,
    utils,
)

__version__ = '0.1.0'
