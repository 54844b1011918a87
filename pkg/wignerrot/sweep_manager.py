# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
import logging
import multiprocessing
import signal
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm


class SweepManager:
    """
    Evaluate independent sweep cells, simultaneously if asked to.

    Results are returned in the order of the cells whatever order the
    workers finish in.
    """

    def __init__(self, max_concurrency: int = 1, show_progress: bool = False,
                 log: Optional[logging.Logger] = None):
        self.max_concurrency = max(1, int(max_concurrency or 1))
        self.show_progress = show_progress
        self.log = log or logging.getLogger('wigner-rotation.sweep')
        self.results: Dict[int, Any] = {}
        self.errors: Dict[int, BaseException] = {}
        self._bar = None

    def run(self, function: Callable, cells: Sequence[Tuple]) -> List[Any]:
        """
        Call `function(*cell)` for every cell.

        The first failing cell (by position) has its exception re-raised
        once all cells are done.
        """
        self.results = {}
        self.errors = {}
        if not cells:
            self.log.info("Sweep Manager: nothing to evaluate")
            return []

        self.log.info("Sweep Manager: %d cells, %d processes",
                      len(cells), self.max_concurrency)
        self._bar = tqdm(total=len(cells), desc="sweep", unit="cell",
                         file=sys.stderr, disable=not self.show_progress)
        try:
            if self.max_concurrency == 1 or len(cells) == 1:
                self._run_serial(function, cells)
            else:
                self._run_pool(function, cells)
        finally:
            self._bar.close()

        if self.errors:
            first = min(self.errors)
            self.log.error("Sweep Manager: cell %d failed: %s",
                           first, self.errors[first])
            raise self.errors[first]
        return [self.results[index] for index in range(len(cells))]

    def _run_serial(self, function, cells):
        for index, cell in enumerate(cells):
            self.collect_result(evaluate_cell(index, function, cell, None))

    def _run_pool(self, function, cells):
        manager = multiprocessing.Manager()
        termination = manager.Value('b', False)

        original_sigint_handler = signal.getsignal(signal.SIGINT)
        # ignored while forking, so the workers inherit SIG_IGN
        signal.signal(signal.SIGINT, signal.SIG_IGN)
        pool = multiprocessing.Pool(self.max_concurrency)

        def stop_feeding(_sig, _frame):
            termination.value = True

        signal.signal(signal.SIGINT, stop_feeding)
        try:
            for index, cell in enumerate(cells):
                pool.apply_async(
                    evaluate_cell, (index, function, cell, termination),
                    callback=self.collect_result,
                )
            pool.close()
            pool.join()
            interrupted = termination.value
        finally:
            signal.signal(signal.SIGINT, original_sigint_handler)
            manager.shutdown()

        if interrupted:
            self.log.warning("Sweep Manager: interrupted, %d of %d cells done",
                             len(self.results), len(cells))
            raise KeyboardInterrupt

    def collect_result(self,
                       outcome: Tuple[int, Any, Optional[BaseException]]):
        """
        Callback method to process `evaluate_cell` output.
        """
        index, result, error = outcome
        if error is not None:
            self.errors[index] = error
        else:
            self.results[index] = result
        self._bar.update(1)


def evaluate_cell(index: int, function: Callable, cell: Tuple, termination):
    """
    Run one cell, handing any exception back to the parent process.

    :param index: position of the cell in the sweep
    :param function: picklable callable evaluating the cell
    :param cell: positional arguments for `function`
    :param termination: shared flag telling workers to stop early
    :return: (index, result or None, exception or None)
    """
    if termination is not None and termination.value:
        return index, None, KeyboardInterrupt()
    try:
        return index, function(*cell), None
    except Exception as exc:  # pylint: disable=broad-except
        return index, None, exc
