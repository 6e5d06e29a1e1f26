"""Eddyscan, detecting three-dimensional ocean eddies in gridded model output

Eddyscan is a library and command line utility for finding eddies in gridded
sea surface height and velocity fields. Candidate centers are located from SSH
extrema and nearby net-velocity minima, verified by sampling the velocity on
circular test paths, and grown outwards and downwards into a stack of
per-layer disks. Okubo-Weiss and winding-angle detectors are included for
comparison, together with a synthetic flow generator, parameter sweeps,
benchmarks and tracking of eddies over frames.

See README.md and __main__.py for more information.
"""

# Standard library imports
from datetime import date as _date
from collections import namedtuple as _namedtuple


# Version of Eddyscan
#
# This is automatically set using the bumpversion script
__version__ = "0.1.0"


# Start of development
_birthday = _date(2023, 3, 6)


# Maintainers of Eddyscan
_Author = _namedtuple("_Author", ["name", "email", "start", "end"])
_AUTHORS = [
    _Author("Eddyscan Developers", "eddyscan@users.noreply.github.com", _birthday, _date.max),
]

__author__ = ", ".join(a.name for a in _AUTHORS if a.start < _date.today() < a.end)
__contact__ = ", ".join(a.email for a in _AUTHORS if a.start < _date.today() < a.end)
__url__ = "https://github.com/eddyscan/eddyscan"


# Copyleft of the library
__copyright__ = f"{_birthday.year} - {_date.today().year} Eddyscan Developers"
