"""Step annotations for ``--trace``.

Algorithms call :func:`step` with a frozen label such as
``"evenhilbalg.step2"``; labels are only recorded inside :func:`recording`.
"""

from contextlib import contextmanager
from contextvars import ContextVar

_steps: ContextVar[list | None] = ContextVar("quatring_trace", default=None)


def step(label: str) -> None:
    steps = _steps.get()
    if steps is not None:
        steps.append(label)


@contextmanager
def recording():
    steps: list[str] = []
    token = _steps.set(steps)
    try:
        yield steps
    finally:
        _steps.reset(token)
