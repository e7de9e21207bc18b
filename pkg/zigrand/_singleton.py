#!/usr/bin/python3

from typing import Any, Dict, Tuple


class _Singleton(type):
    """Metaclass caching the first instance created for each class."""

    _instances: Dict = {}

    def __call__(cls, *args: Tuple, **kwargs: Dict) -> Any:
        if cls not in _Singleton._instances:
            _Singleton._instances[cls] = super().__call__(*args, **kwargs)
        return _Singleton._instances[cls]
