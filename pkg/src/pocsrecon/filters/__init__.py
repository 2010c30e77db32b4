"""Prior projections: nonlinear filters applied between data projections."""
from dataclasses import dataclass

from .blockdct import BlockDCTParams, block_dct_filter
from .diffusion import (PMParams, RegDiffParams, conductance, gaussian_blur,
                        gaussian_kernel, pm_step, regdiff_step)
from .schedule import AnnealSchedule, anneal_value
from .wavelet import TIHaarParams, soft_threshold, ti_haar_filter

PERONA_MALIK = "perona_malik"
REGULARIZED_DIFFUSION = "regularized_diffusion"
TI_HAAR = "ti_haar"
BLOCK_DCT = "block_dct"

PARAM_TYPES = {
    PERONA_MALIK: PMParams,
    REGULARIZED_DIFFUSION: RegDiffParams,
    TI_HAAR: TIHaarParams,
    BLOCK_DCT: BlockDCTParams,
}
FILTER_KINDS = tuple(PARAM_TYPES)

_APPLY = {
    PERONA_MALIK: pm_step,
    REGULARIZED_DIFFUSION: regdiff_step,
    TI_HAAR: ti_haar_filter,
    BLOCK_DCT: block_dct_filter,
}

# (initial, decay, floor) of the annealed parameter per kind; the first three
# are the best cells of configs/sweep_*.cfg on the 256 / 22-line phantom
DEFAULT_SCHEDULES = {
    PERONA_MALIK: (0.25, 0.998, 1e-3),
    REGULARIZED_DIFFUSION: (0.5, 0.998, 1e-3),
    TI_HAAR: (0.1, 0.999, 1e-5),
    BLOCK_DCT: (0.5, 0.998, 1e-5),
}


@dataclass(frozen=True)
class FilterSpec:
    """Which filter to apply and how its main parameter is annealed.

    The annealed parameter is the edge scale K for the diffusions and the
    threshold for the transform filters. Without a schedule the static value
    stored in ``params`` is used at every iteration.
    """

    kind: str
    params: object = None
    schedule: AnnealSchedule = None

    def __post_init__(self):
        if self.kind not in PARAM_TYPES:
            raise ValueError(f"unknown filter kind {self.kind!r}; expected one of {FILTER_KINDS}")
        if self.params is None:
            object.__setattr__(self, "params", PARAM_TYPES[self.kind]())
        elif not isinstance(self.params, PARAM_TYPES[self.kind]):
            raise TypeError(f"{self.kind} expects {PARAM_TYPES[self.kind].__name__}, "
                            f"got {type(self.params).__name__}")

    @classmethod
    def default(cls, kind):
        return cls(kind, PARAM_TYPES[kind](), AnnealSchedule(*DEFAULT_SCHEDULES[kind]))

    def param_at(self, k):
        if self.schedule is not None:
            return anneal_value(self.schedule, k)
        if self.kind in (PERONA_MALIK, REGULARIZED_DIFFUSION):
            return self.params.edge_scale_k
        return self.params.threshold


def apply_filter(img, spec, k):
    """Apply ``spec``'s filter with its parameter annealed to iteration ``k``."""
    return _APPLY[spec.kind](img, spec.params, spec.param_at(k))


__all__ = [
    "AnnealSchedule", "BlockDCTParams", "FilterSpec", "PMParams", "RegDiffParams",
    "TIHaarParams", "FILTER_KINDS", "PERONA_MALIK", "REGULARIZED_DIFFUSION", "TI_HAAR",
    "BLOCK_DCT", "DEFAULT_SCHEDULES", "anneal_value", "apply_filter", "block_dct_filter",
    "conductance", "gaussian_blur", "gaussian_kernel", "pm_step", "regdiff_step",
    "soft_threshold", "ti_haar_filter",
]
