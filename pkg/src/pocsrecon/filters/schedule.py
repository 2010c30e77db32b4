from dataclasses import dataclass


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric decay ``max(floor, initial * decay**k)``."""

    initial: float
    decay: float = 1.0
    floor: float = None

    def __post_init__(self):
        if self.floor is None:
            object.__setattr__(self, "floor", self.initial)
        if not self.initial > 0:
            raise ValueError(f"schedule initial value must be positive, got {self.initial}")
        if not 0 < self.decay <= 1:
            raise ValueError(f"schedule decay must lie in (0, 1], got {self.decay}")
        if not 0 < self.floor <= self.initial:
            raise ValueError(f"schedule floor must lie in (0, initial], got {self.floor}")

    def value(self, k):
        return anneal_value(self, k)


def anneal_value(schedule, k):
    if k < 0:
        raise ValueError(f"iteration index must be nonnegative, got {k}")
    return max(schedule.floor, schedule.initial * schedule.decay ** k)
