"""Poisson intensity of the limiting length spectrum on an interval."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .exactalg import format_word
from .stats import fmt
from .words import (DEFAULT_CEILING, SpectralLine, WordClass, class_intensity_from_size,
                    class_of, enumerate_classes, max_word_length)


def class_intensity(wc) -> float:
    """``|[w]| / (2 |w| 3^|w|)``; accepts a WordClass or any word of the class."""
    if not isinstance(wc, WordClass):
        wc = class_of(wc)
    return class_intensity_from_size(wc.orbit_size, wc.length)


@dataclass
class IntensityReport:
    a: float
    b: float
    lines: list = field(default_factory=list)
    total_intensity: float = 0.0
    word_length_cap: int = 0

    @property
    def interval(self) -> tuple:
        return (self.a, self.b)

    def to_dict(self) -> dict:
        return {
            "interval": [fmt(self.a), fmt(self.b)],
            "r_max": self.word_length_cap,
            "lines": [line_record(ln) for ln in self.lines],
            "total": fmt(self.total_intensity),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def line_record(ln: SpectralLine) -> dict:
    wc = ln.word_class
    return {
        "canonical": format_word(wc.canonical),
        "orbit_size": wc.orbit_size,
        "trace_re": wc.trace.re,
        "trace_im": wc.trace.im,
        "length": fmt(wc.translation_length),
        "lambda": fmt(ln.intensity),
    }


def interval_intensity(a: float, b: float, *, max_word_len=None, strict_trace: bool = False,
                       ceiling: float = DEFAULT_CEILING) -> IntensityReport:
    lines = enumerate_classes(a, b, max_word_len=max_word_len, strict_trace=strict_trace,
                              ceiling=ceiling)
    cap = max_word_length(b) if max_word_len is None else int(max_word_len)
    total = math.fsum(ln.intensity for ln in lines)
    return IntensityReport(a=a, b=b, lines=lines, total_intensity=total, word_length_cap=cap)
