# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
from typing import Callable, Optional


class Progress:
    """
    Rough progress of a long loop, reported as a percentage.

    The loop reports its own completion in [0, 100]; the value is mapped
    into the [start, stop] window given to `init` so several phases can
    share one progress bar. The callback fires only when the rounded
    percentage grows.
    """

    def __init__(self):
        self._callback: Optional[Callable[[float], None]] = None
        self._start_percent: Optional[float] = None
        self._stop_percent: Optional[float] = None
        self._last_percent: Optional[float] = None

    def init(self, start: float, stop: float,
             callback: Callable[[float], None]) -> "Progress":
        self._callback = callback
        self._start_percent = start
        self._stop_percent = stop
        self._last_percent = start
        return self

    def notify_callback(self, percent: float):
        """
        Report ongoing progress.
        """
        assert self._start_percent is not None  # call init() first!
        _percent = self._start_percent + percent * (
                self._stop_percent - self._start_percent) / 100
        _percent = round(_percent, 2)
        if self._last_percent < _percent:
            self._callback(_percent)
            self._last_percent = _percent

    def notify_steps(self, done: int, total: int):
        if total > 0:
            self.notify_callback(100 * done / total)

