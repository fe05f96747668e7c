"""

This is `triway`, a toolkit for the capacity analysis of the Gaussian 3-way
channel, where three full-duplex users exchange six messages, and of its
star-shaped counterpart, the Y-channel, where the users talk through a relay.
Package `triway` builds the outer bound and the approximate capacity region
of the 3-way channel, the achievable regions of successive channel
decomposition with and without grouping of sub-channels, the exact
per-dimension gaps between them, and sweeps of those gaps over SNR grids.

The achievable scheme itself is available as well: sub-channel decomposition,
allocation of integer demands to uplink and downlink sub-channels, and a
symbolic simulator of the relaying protocol with interference neutralization.

.. include:: ./documentation.md
"""

import logging
from typing import (  # noqa: F401
    cast, Any, Callable, Dict, Generator, Iterable, List, Mapping, NewType,
    Optional, Set, Tuple, Type, TypeVar, Union,
)

__version__ = "1.0.0"

__pdoc__: Dict[str, Union[bool, str]] = {}
__pdoc__["triway.tests"] = False
__pdoc__["triway.cli.UsageError"] = False

logging.getLogger(__name__).addHandler(logging.NullHandler())
