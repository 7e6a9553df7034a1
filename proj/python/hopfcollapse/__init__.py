"""Hopf bundles, the tautological line bundle, Berry holonomy and singlet collapse."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_command as _run_command


def run(command, **params):
    """Run a hopfc subcommand in-process.

    Returns ``(exit_code, payload, manifest)`` with the manifest decoded.
    """
    code, payload, manifest = _run_command(command, _json.dumps(params))
    return code, payload, _json.loads(manifest)
