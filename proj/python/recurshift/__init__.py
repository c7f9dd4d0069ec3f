"""Python view of the recurshift core.

Large integers come back as Python ints. Reports come back as dicts parsed
from the same JSON the command line prints.
"""

import json

from ._recurshift import (
    CapExceeded,
    Error,
    InvalidArgument,
    distance,
    factor_complexity,
    find_m,
    materialize_cap,
    omega_length,
    omega_word,
    point_at,
    reflect,
    run,
    xi_at,
    xi_segment,
)
from ._recurshift import classify_json as _classify_json
from ._recurshift import factors as _factors
from ._recurshift import occurrences_json as _occurrences_json

__all__ = [
    "CapExceeded",
    "Error",
    "InvalidArgument",
    "classify",
    "command",
    "distance",
    "factor_complexity",
    "factors",
    "find_m",
    "materialize_cap",
    "occurrences",
    "omega_length",
    "omega_word",
    "point_at",
    "probe",
    "reflect",
    "run",
    "verify",
    "xi_at",
    "xi_segment",
]


def factors(length):
    """Sorted factor list of the given length and the horizon where it settled."""
    return _factors(length)


def occurrences(word, first, last):
    return json.loads(_occurrences_json(word, first, last))


def classify(point, window=4, horizon=None):
    if horizon is None:
        horizon = omega_length(20)
    return json.loads(_classify_json(point, window, horizon))


def _flags(options):
    args = []
    for key, value in options.items():
        if value is None:
            continue
        args += ["--" + key.replace("_", "-"), str(value)]
    return args


def command(*args, seed=None):
    """Runs one CLI command with JSON output. Returns (exit code, report)."""
    head = ["--format", "json"]
    if seed is not None:
        head += ["--seed", str(seed)]
    code, out, err = run(head + [str(a) for a in args])
    if code == 3:
        raise InvalidArgument(err.strip())
    return code, json.loads(out)


def verify(claim, **options):
    return command("verify", "--claim", claim, *_flags(options))[1]


def probe(kind, seed=1, **options):
    return command("probe", "--kind", kind, *_flags(options), seed=seed)[1]
