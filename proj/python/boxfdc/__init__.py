"""Box spaces of residually finite groups, decomposition sequences and the decomposition game."""

import json

from ._core import *  # noqa: F401,F403
from ._core import _run_command


def run_command(name, config_text, **options):
    """Run a CLI command on an INI scenario given as text.

    Returns (exit_code, report, timing) with the JSON documents parsed.
    """
    code, report, timing = _run_command(name, config_text, **options)
    return code, json.loads(report), json.loads(timing)
