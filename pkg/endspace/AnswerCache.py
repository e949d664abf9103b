# -*- coding: utf-8 -*-
from __future__ import print_function
import sys
import logging


class AnswerCache(object):
    """
    Memo of query answers, one dataset per query kind. Rows are dictionaries keyed by the dataset's key fields
    plus the stored 'answer'.
    """

    def __init__(self):
        self.data = {}
        self.keyfields = {}

    def add_dataset(self, dataset_key, keyfields):
        self.data[dataset_key] = {}
        self.keyfields[dataset_key] = list(keyfields)

    def _key(self, dataset_key, row):
        try:
            return tuple(row[field] for field in self.keyfields[dataset_key])
        except KeyError as e:
            raise KeyError('Dataset %s is keyed by %s, missing %s' % (dataset_key, self.keyfields[dataset_key], e))

    def put(self, dataset_key, row):
        if dataset_key not in self.data:
            self.add_dataset(dataset_key, sorted(k for k in row.keys() if k != 'answer'))
        self.data[dataset_key][self._key(dataset_key, row)] = row
        return row

    def get(self, dataset_key, **key):
        if dataset_key not in self.data:
            return None
        return self.data[dataset_key].get(self._key(dataset_key, key))

    def remember(self, dataset_key, compute, **key):
        """Returns the cached answer for key, computing and storing it on a miss."""
        row = self.get(dataset_key, **key)
        if row is None:
            row = dict(key)
            row['answer'] = compute()
            self.put(dataset_key, row)
            logging.debug('Cached %s %s' % (dataset_key, key))
        return row['answer']

    def __len__(self):
        return sum(len(d) for d in self.data.values())


if __name__ == "__main__":
    logging.basicConfig(stream=sys.stdout, level=logging.DEBUG)

    cache = AnswerCache()
    cache.put('edge_cut', {'a': 'c:a', 'b': '~g:B', 'removed': '', 'answer': 1})
    print(cache.get('edge_cut', a='c:a', b='~g:B', removed=''))
    print(cache.remember('edge_cut', lambda: 'Infinite', a='c:a', b='~g:A', removed=''), len(cache))
