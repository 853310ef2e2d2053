"""Export job configuration and the common result record."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError

DIRECTIONS = ("src_to_sys", "ref_to_sys", "sys_to_ref")


@dataclass(frozen=True)
class ExportJob:
    """One export run: a model, a dataset, an output directory.

    ``max_len``/``overlap`` window subword sequences for the embedding
    export; ``window=False`` disables windowing, in which case documents
    beyond the model limit raise SequenceTooLong.  ``layer`` selects the
    hidden layer (negative indices count from the end, -1 is the final
    layer).  ``directions`` applies to the log-probability export.
    """

    model: str
    dataset: str
    out_dir: str
    max_len: int = 512
    overlap: int = 100
    window: bool = True
    layer: int = -1
    directions: tuple[str, ...] = ("ref_to_sys",)

    def __post_init__(self) -> None:
        if self.max_len < 1:
            raise ConfigError(f"max_len must be >= 1, got {self.max_len}")
        if self.overlap < 0 or self.overlap >= self.max_len:
            raise ConfigError(f"overlap must satisfy 0 <= overlap < max_len, "
                              f"got overlap={self.overlap} max_len={self.max_len}")
        if not self.directions:
            raise ConfigError("directions must not be empty")
        for direction in self.directions:
            if direction not in DIRECTIONS:
                raise ConfigError(f"unknown direction {direction!r}; "
                                  f"expected one of {', '.join(DIRECTIONS)}")


@dataclass(frozen=True)
class ExportResult:
    """Where an export landed and how much of the dataset it covered."""

    path: str
    n_records: int
    skipped: tuple[str, ...] = field(default_factory=tuple)
