import math

from experiments.types import SweepRecord


def record(
    m,
    *,
    mean=1.0,
    std=0.1,
    ratio=10.0,
    n=20,
    val_mean=None,
    val_std=None,
    method="HypT-unreg",
    valid=True,
    rank=math.nan,
):
    return SweepRecord(
        method=method,
        dataset="toy",
        m=m,
        mean_err=mean,
        std_err=std,
        min_ratio=ratio,
        n_trials=n,
        wall_time_s=0.0,
        val_mean_err=mean if val_mean is None else val_mean,
        val_std_err=std if val_std is None else val_std,
        valid=valid,
        rank=rank,
    )


def curve(means, *, std=0.1, n=20, start=1, **kwargs):
    return [record(start + i, mean=mean, std=std, n=n, **kwargs) for i, mean in enumerate(means)]
