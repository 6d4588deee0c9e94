# Copyright (C) 2015-2016 Skylable Ltd. <info-copyright@skylable.com>
# License: Apache 2.0, see LICENSE for more details.

import logging
from concurrent.futures import (
    FIRST_COMPLETED, Future, ThreadPoolExecutor, wait,
)
from typing import Any, Callable, Dict, List, Sequence, Set  # noqa


logger = logging.getLogger(__name__)


Job = Callable[[], Any]


def run_jobs(jobs: Sequence[Job], threads: int) -> List[Any]:
    """Run jobs on a thread pool and return results in submission order.

    The earliest failing job (in submission order) re-raises once every
    started job has finished.
    """
    if threads == 1 or len(jobs) <= 1:
        return [job() for job in jobs]

    e = ThreadPoolExecutor(threads)
    index = {}  # type: Dict[Future, int]
    try:
        for i, job in enumerate(jobs):
            index[e.submit(job)] = i
        running = set(index)  # type: Set[Future]
        while running:
            done, running = wait(  # type: ignore
                running, return_when=FIRST_COMPLETED,
            )
            for future in done:
                logger.debug(
                    "Job %s of %s finished", index[future] + 1, len(jobs),
                )
    except KeyboardInterrupt:
        logger.warning("Keyboard interrupt!")
        logger.warning("Waiting for jobs to finish...")
        for future in index:
            future.cancel()
        e.shutdown()
        raise
    e.shutdown()
    ordered = sorted(index, key=index.__getitem__)
    return [future.result() for future in ordered]
