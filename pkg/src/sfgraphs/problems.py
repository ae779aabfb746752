from enum import Enum

__all__ = ["Problem"]


class Problem(str, Enum):
    MATCHING = "matching"
    INDEPENDENT_SET = "mis"
    DOMINATING_SET = "mds"

    @property
    def maximize(self) -> bool:
        return self is not Problem.DOMINATING_SET

    def better(self, a: int, b: int) -> bool:
        """True if optimum ``a`` is strictly better than ``b``."""
        return a > b if self.maximize else a < b
