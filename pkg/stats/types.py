from dataclasses import dataclass


@dataclass(frozen=True)
class SampleSummary:
    """Sample size, mean and sample standard deviation (n - 1 denominator)."""
    n: int
    mean: float
    std: float

    @property
    def variance(self) -> float:
        return self.std * self.std


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    degrees_of_freedom: float
    p_value: float
    significant: bool
    confidence: float
    equal_var: bool = False
