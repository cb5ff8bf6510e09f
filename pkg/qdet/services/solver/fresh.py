from collections.abc import Iterable

from qdet.models.schema import Sort, Value


class FreshValues:
    """Hands out canonical values per sort, never repeating a reserved one.

    UNINTERPRETED gives #0, #1, ...; INT gives 0, 1, ...; STRING gives
    "s0", "s1", ...; BOOL has no fresh values beyond false/true.
    """

    def __init__(self, reserved: Iterable[Value] = ()):
        self._used: set[Value] = set(reserved)
        self._counters: dict[Sort, int] = {}

    def next(self, sort: Sort) -> Value:
        if sort == Sort.BOOL:
            return Value(Sort.BOOL, False)
        while True:
            n = self._counters.get(sort, 0)
            self._counters[sort] = n + 1
            if sort == Sort.STRING:
                candidate = Value(sort, f"s{n}")
            else:
                candidate = Value(sort, n)
            if candidate not in self._used:
                self._used.add(candidate)
                return candidate
