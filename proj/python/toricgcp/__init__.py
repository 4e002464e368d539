import json

from ._core import (
    PreconditionError,
    RetryExhausted,
    SchemaError,
    essential_subsets,
    fills,
    irreducible_fill,
    is_compatible,
    mixed_volume,
    mixed_volume_by_volumes,
)
from ._core import run as _run

_ERRORS = {1: SchemaError, 2: PreconditionError, 3: RetryExhausted}


def run(command, problem, **options):
    """Run a subcommand on a problem dict; returns the output dict.

    Options mirror the command line: seed, field, max_retries, cap, emit_H,
    A, fill, candidate.
    """
    text = problem if isinstance(problem, str) else json.dumps(problem)
    code, out, summary = _run(command, text, json.dumps(options))
    result = json.loads(out)
    if code:
        raise _ERRORS.get(code, RuntimeError)(result["message"])
    return result


def solve(problem, **options):
    return run("solve", problem, **options)


def gcp(problem, **options):
    return run("gcp", problem, **options)


def resultant(problem, **options):
    return run("resultant", problem, **options)


def chow(problem, **options):
    return run("chow", problem, **options)


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)
