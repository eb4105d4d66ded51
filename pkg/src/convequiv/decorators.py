# convequiv: state-space analysis and equivalence of convolutional codes
# Copyright (C) 2026 the convequiv developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Logging and timing for the decision procedures.

Both decorators leave the wrapped function untouched and stack:

    @with_logging()
    @with_timing
    def monomial_equivalent_direct(...): ...
"""

import dataclasses
import logging
import time
from functools import wraps
from typing import Callable, TypeVar

from .types import SearchCapExceeded

F = TypeVar("F", bound=Callable)

logger = logging.getLogger(__name__)


def with_logging(logger_name: str | None = None) -> Callable[[F], F]:
    """
    Log entry to and exit from a decision procedure.

    Entry and exit go to DEBUG. Domain refusals (``ValueError`` subclasses)
    go to WARNING, with the size and cap when a search cap was hit; anything
    else goes to ERROR with a traceback. Exceptions are always re-raised.

    Args:
        logger_name: Logger to use (default: the decorated function's module)

    Example:
        >>> @with_logging("convequiv.equivalence")
        ... def decide(G, G2):
        ...     return code_equal(G, G2)
    """

    def decorator(func: F) -> F:
        func_logger = logging.getLogger(logger_name or func.__module__)
        name = func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            fields = {"function": name}
            func_logger.debug(
                f"Calling {name}",
                extra={**fields, "args_count": len(args), "kwargs_keys": sorted(kwargs)},
            )
            try:
                result = func(*args, **kwargs)
            except SearchCapExceeded as e:
                func_logger.warning(
                    f"{name} refused: search of {e.size} candidates exceeds cap {e.cap}",
                    extra={**fields, "error_type": type(e).__name__, "size": e.size, "cap": e.cap},
                )
                raise
            except ValueError as e:
                func_logger.warning(
                    f"{name} refused: {e}",
                    extra={**fields, "error_type": type(e).__name__},
                )
                raise
            except Exception as e:
                func_logger.error(
                    f"{name} failed: {e}",
                    extra={**fields, "error_type": type(e).__name__, "error_message": str(e)},
                    exc_info=True,
                )
                raise
            func_logger.debug(f"Completed {name}", extra=fields)
            return result

        return wrapper

    return decorator


def with_timing(func: F) -> F:
    """
    Decorator that records wall-clock time on a dataclass result.

    If the function returns a dataclass instance with an ``elapsed`` field,
    a copy with ``elapsed`` set to the measured seconds is returned. Other
    results are passed through unchanged; the time is always logged at DEBUG.

    Args:
        func: Function to time

    Returns:
        Callable: Decorated function
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = func(*args, **kwargs)
        elapsed = time.perf_counter() - start

        logger.debug(
            f"{func.__name__} took {elapsed:.4f}s",
            extra={"function": func.__name__, "elapsed": elapsed},
        )

        if dataclasses.is_dataclass(result) and not isinstance(result, type):
            names = {f.name for f in dataclasses.fields(result)}
            if "elapsed" in names:
                return dataclasses.replace(result, elapsed=elapsed)
        return result

    return wrapper
