from typing import Any


class LatScatObject:
    '''
    Base class for all computed results.

    Results keep a JSON-ready summary in ``_data`` and behave as read-only
    mappings over it, so sweeps and writers can treat them like plain
    records.
    '''

    def __init__(self) -> None:
        self._data = None

    def __str__(self) -> str:
        return self._data.__str__()

    def __repr__(self) -> Any:
        return f'{type(self).__name__}({self._data!r})'

    def __getitem__(self, key) -> Any:
        return self._data.__getitem__(key)

    def __contains__(self, key) -> bool:
        return key in self._data

    def get(self, key, default=None) -> Any:
        return self._data.get(key, default)

    def keys(self):
        return self._data.keys()

    @property
    def raw_data(self) -> dict:
        '''
        JSON-ready summary of the result.

        :type: :class:`dict`
        '''
        return self._data
