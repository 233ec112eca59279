from concurrent.futures import ProcessPoolExecutor
from functools import reduce

from .exceptions import ValidationException


class BatchManager(object):
    """
    Splits work items into fixed-size batches, runs `worker(context, batch)` on each
    and merges the results with `merge(a, b)`.

    Batches are formed the same way whatever the worker count, and results are merged
    in batch order, so the outcome never depends on how many processes ran them.
    """

    def __init__(self, worker, merge, batch_size=512, workers=1):
        if batch_size < 1:
            raise ValidationException("Batch size must be positive", 201, "batch_size={0}".format(batch_size))
        if workers < 1:
            raise ValidationException("Worker count must be positive", 201, "workers={0}".format(workers))

        self._worker = worker
        self._merge = merge
        self._batch_size = batch_size
        self._workers = workers

    def batches(self, items):
        items = list(items)
        return [items[start:start + self._batch_size] for start in range(0, len(items), self._batch_size)]

    def process_batch(self, context, batch):
        return self._worker(context, batch)

    def run(self, items, context):
        batches = self.batches(items)
        if not batches:
            raise ValidationException("Nothing to process")

        if self._workers == 1 or len(batches) == 1:
            results = [self.process_batch(context, batch) for batch in batches]
        else:
            with ProcessPoolExecutor(max_workers=min(self._workers, len(batches))) as pool:
                results = list(pool.map(self._worker, [context] * len(batches), batches))

        return reduce(self._merge, results)
