"""Python bindings for the Hibi ring diagonal F-regularity certifier."""

import json
import sys

from . import _core
from ._core import HibiError, builtin_names, fold, ideals, solve, validate, z_exponents

__version__ = _core.version


def run(*args):
    """Run a CLI command. Returns (status, report dict or None, stderr)."""
    status, out, err = _core.run_command([str(a) for a in args])
    report = json.loads(out) if status != 2 and out else None
    return status, report, err


def classify(poset):
    return json.loads(_core.classify(poset))


def certify(poset, n, q, jobs=1):
    return json.loads(_core.certify(poset, n, q, jobs))


def reproduce_c(q):
    return json.loads(_core.reproduce_c(q))


def main():
    status, out, err = _core.run_command(sys.argv[1:])
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


__all__ = [
    "HibiError",
    "builtin_names",
    "certify",
    "classify",
    "fold",
    "ideals",
    "reproduce_c",
    "run",
    "solve",
    "validate",
    "z_exponents",
]
