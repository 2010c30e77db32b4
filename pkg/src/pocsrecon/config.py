"""Flat ``key = value`` run configuration.

Keys are dotted (``filter.kind``, ``filter.pm.time_step``, ``schedule.decay``,
``run.k_max`` ...), ``#`` starts a comment, and unknown keys are errors.
Schedule keys left unset take the filter kind's defaults; the schedule's
initial value defaults to the kind's ``edge_scale_k`` / ``threshold``.
"""
import itertools
import math
from dataclasses import dataclass

from .filters import (BLOCK_DCT, DEFAULT_SCHEDULES, FILTER_KINDS, PERONA_MALIK, REGULARIZED_DIFFUSION,
                      TI_HAAR, AnnealSchedule, BlockDCTParams, FilterSpec, PMParams, RegDiffParams,
                      TIHaarParams)
from .recon import ReconConfig

MAX_SWEEP_CELLS = 1024
PHANTOMS = ("modified_shepp_logan", "shepp_logan", "unit_disk")


class ConfigError(ValueError):
    """Invalid configuration; ``problems`` lists ``(key, message)`` pairs."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(f"{k}: {m}" for k, m in self.problems))


def _bool(text):
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _int(text):
    return int(text.strip())


def _float(text):
    val = float(text)
    if not math.isfinite(val):
        raise ValueError(f"expected a finite number, got {text!r}")
    return val


def _opt_float(text):
    return None if text.strip().lower() in ("", "none") else _float(text)


def _opt_str(text):
    text = text.strip()
    return None if text.lower() in ("", "none") else text


def _str(text):
    return text.strip()


def _fmt(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


# key -> (parser, default); order is the --print-config order
SCHEMA = {
    "sampling.n": (_int, 256),
    "sampling.lines": (_int, 22),
    "phantom.kind": (_str, "modified_shepp_logan"),
    "input.observation": (_opt_str, None),
    "input.reference": (_opt_str, None),
    "run.k_max": (_int, 3000),
    "run.stop_psnr_db": (_opt_float, None),
    "run.log_every": (_int, 0),
    "filter.kind": (_str, PERONA_MALIK),
    "filter.pm.edge_scale_k": (_float, PMParams.edge_scale_k),
    "filter.pm.time_step": (_float, PMParams.time_step),
    "filter.pm.conductance": (_str, PMParams.conductance),
    "filter.pm.steps_per_projection": (_int, PMParams.steps_per_projection),
    "filter.regdiff.edge_scale_k": (_float, RegDiffParams.edge_scale_k),
    "filter.regdiff.time_step": (_float, RegDiffParams.time_step),
    "filter.regdiff.presmooth_sigma": (_float, RegDiffParams.presmooth_sigma),
    "filter.regdiff.conductance": (_str, RegDiffParams.conductance),
    "filter.regdiff.steps_per_projection": (_int, RegDiffParams.steps_per_projection),
    "filter.ti_haar.threshold": (_float, TIHaarParams.threshold),
    "filter.ti_haar.levels": (_int, TIHaarParams.levels),
    "filter.block_dct.threshold": (_float, BlockDCTParams.threshold),
    "filter.block_dct.block": (_int, BlockDCTParams.block),
    "filter.block_dct.step": (_int, BlockDCTParams.step),
    "schedule.initial": (_opt_float, None),
    "schedule.decay": (_opt_float, None),
    "schedule.floor": (_opt_float, None),
    "output.dir": (_str, "out"),
    "output.image": (_bool, True),
    "output.trace": (_bool, True),
    "output.plot": (_bool, True),
    "output.mask": (_bool, False),
    "output.observation": (_bool, False),
}

_KIND_ALIASES = {
    "pm": PERONA_MALIK, "perona_malik": PERONA_MALIK,
    "regdiff": REGULARIZED_DIFFUSION, "regularized_diffusion": REGULARIZED_DIFFUSION,
    "ti_haar": TI_HAAR, "tihaar": TI_HAAR,
    "block_dct": BLOCK_DCT, "blockdct": BLOCK_DCT,
}


def parse_lines(text, source="<config>"):
    """Split config text into an ordered ``{key: raw value}`` dict."""
    entries = {}
    problems = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append((f"{source}:{lineno}", f"expected 'key = value', got {line!r}"))
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            problems.append((key, f"duplicate key ({source}:{lineno})"))
        entries[key] = value
    if problems:
        raise ConfigError(problems)
    return entries


@dataclass(frozen=True)
class RunConfig:
    values: dict

    @classmethod
    def from_mapping(cls, raw):
        problems = []
        values = {key: default for key, (_, default) in SCHEMA.items()}
        for key, text in raw.items():
            if key not in SCHEMA:
                problems.append((key, "unknown key"))
                continue
            try:
                values[key] = SCHEMA[key][0](text)
            except ValueError as exc:
                problems.append((key, str(exc)))
        if problems:
            raise ConfigError(problems)
        cfg = cls(values)
        cfg._resolve()
        return cfg

    @classmethod
    def from_text(cls, text, source="<config>"):
        return cls.from_mapping(parse_lines(text, source))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read(), source=str(path))

    @classmethod
    def default(cls):
        return cls.from_mapping({})

    def __getitem__(self, key):
        return self.values[key]

    def replace(self, **updates):
        raw = {k: _fmt(v) for k, v in self.values.items()}
        raw.update({k.replace("__", "."): _fmt(v) for k, v in updates.items()})
        return RunConfig.from_mapping(raw)

    def _resolve(self):
        problems = []
        v = self.values
        kind = _KIND_ALIASES.get(v["filter.kind"].lower())
        if kind is None:
            problems.append(("filter.kind", f"unknown filter {v['filter.kind']!r}; expected one of {FILTER_KINDS}"))
            raise ConfigError(problems)
        v["filter.kind"] = kind
        if v["sampling.n"] < 2 or v["sampling.n"] % 2:
            problems.append(("sampling.n", "must be an even integer >= 2"))
        if v["sampling.lines"] < 1:
            problems.append(("sampling.lines", "must be >= 1"))
        if v["phantom.kind"] not in PHANTOMS:
            problems.append(("phantom.kind", f"expected one of {PHANTOMS}"))
        if v["run.k_max"] < 1:
            problems.append(("run.k_max", "must be >= 1"))
        if v["run.log_every"] < 0:
            problems.append(("run.log_every", "must be >= 0"))

        try:
            params = self._params(kind)
        except ValueError as exc:
            problems.append((self._prefix(kind) + ".*", str(exc)))
            params = None
        d_init, d_decay, d_floor = DEFAULT_SCHEDULES[kind]
        if params is not None and v["schedule.initial"] is None:
            v["schedule.initial"] = params.edge_scale_k if kind in (PERONA_MALIK, REGULARIZED_DIFFUSION) \
                else params.threshold
        if v["schedule.decay"] is None:
            v["schedule.decay"] = d_decay
        if v["schedule.floor"] is None:
            v["schedule.floor"] = d_floor
            if v["schedule.initial"] is not None:
                v["schedule.floor"] = min(d_floor, v["schedule.initial"])
        if params is not None:
            try:
                AnnealSchedule(v["schedule.initial"], v["schedule.decay"], v["schedule.floor"])
            except ValueError as exc:
                problems.append(("schedule.*", str(exc)))
        if problems:
            raise ConfigError(problems)

    @staticmethod
    def _prefix(kind):
        return {PERONA_MALIK: "filter.pm", REGULARIZED_DIFFUSION: "filter.regdiff",
                TI_HAAR: "filter.ti_haar", BLOCK_DCT: "filter.block_dct"}[kind]

    def _params(self, kind):
        prefix = self._prefix(kind) + "."
        kw = {k[len(prefix):]: val for k, val in self.values.items() if k.startswith(prefix)}
        cls = {PERONA_MALIK: PMParams, REGULARIZED_DIFFUSION: RegDiffParams,
               TI_HAAR: TIHaarParams, BLOCK_DCT: BlockDCTParams}[kind]
        return cls(**kw)

    def filter_spec(self):
        kind = self.values["filter.kind"]
        sched = AnnealSchedule(self.values["schedule.initial"], self.values["schedule.decay"],
                               self.values["schedule.floor"])
        return FilterSpec(kind, self._params(kind), sched)

    def recon_config(self, reference=None):
        return ReconConfig(k_max=self.values["run.k_max"], filter=self.filter_spec(),
                           trace_reference=reference, stop_psnr_db=self.values["run.stop_psnr_db"],
                           log_every=self.values["run.log_every"])

    def to_text(self):
        lines = ["# pocsrecon run configuration"]
        section = None
        for key in SCHEMA:
            head = key.split(".")[0]
            if head != section:
                lines.append("")
                section = head
            lines.append(f"{key} = {_fmt(self.values[key])}")
        return "\n".join(lines) + "\n"


# --- parameter sweeps ---------------------------------------------------

SWEEP_PREFIX = "sweep."


@dataclass(frozen=True)
class SweepConfig:
    base: dict
    axes: tuple  # ((key, (raw values...)), ...)

    @classmethod
    def from_text(cls, text, source="<config>"):
        raw = parse_lines(text, source)
        base = {k: v for k, v in raw.items() if not k.startswith(SWEEP_PREFIX)}
        axes = []
        problems = []
        for key, value in raw.items():
            if not key.startswith(SWEEP_PREFIX):
                continue
            target = key[len(SWEEP_PREFIX):]
            if target not in SCHEMA:
                problems.append((key, "sweeps an unknown key"))
                continue
            choices = tuple(v.strip() for v in value.split(",") if v.strip())
            if not choices:
                problems.append((key, "no values given"))
                continue
            axes.append((target, choices))
        if problems:
            raise ConfigError(problems)
        RunConfig.from_mapping(base)
        cells = math.prod(len(c) for _, c in axes)
        if cells > MAX_SWEEP_CELLS:
            raise ConfigError([("sweep.*", f"grid has {cells} cells, the limit is {MAX_SWEEP_CELLS}")])
        return cls(base, tuple(axes))

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read(), source=str(path))

    def cells(self):
        """Yield ``(assignment, raw mapping)`` for every grid cell, row-major."""
        keys = [k for k, _ in self.axes]
        for combo in itertools.product(*(c for _, c in self.axes)):
            assignment = dict(zip(keys, combo))
            raw = dict(self.base)
            raw.update(assignment)
            yield assignment, raw
