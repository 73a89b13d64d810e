"""One place for the default search limits.

Every potentially unbounded routine takes its limits from here so callers
can rescale all of them at once.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class SearchBudget:
    radius: int = 8
    steps: int = 10 ** 6
    cosets: int = 10 ** 4
    class_cap: int = 2048
    enum_cap: int = 4096
    order_cap: int = 128


DEFAULT = SearchBudget()
