"""Python front end to the bnloc localization calculator."""

import json
import os

from ._bnloc import BnlocError, euler, ring_eval, selfcheck, witt
from ._bnloc import localize_text as _localize_text

__all__ = ["BnlocError", "euler", "localize", "ring_eval", "selfcheck", "witt"]


def localize(problem):
    """Assemble a problem given as a path, JSON text or dict.

    Returns ``(report, exit_code)`` with the report decoded into a dict.
    """
    base_dir = "."
    if isinstance(problem, dict):
        text = json.dumps(problem)
    elif isinstance(problem, (str, os.PathLike)) and os.path.exists(problem):
        base_dir = os.path.dirname(os.path.abspath(problem))
        with open(problem, encoding="utf-8") as f:
            text = f.read()
    else:
        text = problem
    report, code = _localize_text(text, base_dir)
    return json.loads(report), code
