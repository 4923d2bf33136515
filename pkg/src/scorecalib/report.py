"""Before/after bias report structure and serialization."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bias import BiasMetricKind
from .empirical import StepCurve


@dataclass
class BiasReport:
    """Bias values (and context) for one metric kind.

    ``components`` carries the EO and FPR-gap parts of an EOD value;
    ``curves`` maps names like ``"dp_minority_before"`` to the step
    curves behind the numbers (dumped as CSV, not into the JSON).
    """

    metric: BiasMetricKind
    before: float
    after: float | None = None
    auc_before: float | None = None
    auc_after: float | None = None
    risk: float | None = None
    components: dict | None = None
    curves: dict[str, StepCurve] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "before": self.before,
            "after": self.after,
            "auc_before": self.auc_before,
            "auc_after": self.auc_after,
            "risk": self.risk,
            "components": self.components,
        }
