"""Exact symbolic engine for shift algebras over profinite integers."""

import json

from ._bdshift import *  # noqa: F401,F403
from ._bdshift import BdshiftError, run_cli


def cli(*args):
    """Run a bdshift command; returns the parsed JSON report or raises BdshiftError."""
    code, out, err = run_cli([str(a) for a in args])
    if code != 0:
        raise BdshiftError(f"exit {code}: {err.strip()}")
    return json.loads(out)
