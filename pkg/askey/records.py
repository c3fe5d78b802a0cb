import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Union


class RecordKind(Enum):
    IDENTITY = "identity"
    COROLLARY = "corollary"
    PROPERTY = "property"


class Outcome(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


# JSON has no inf or nan; these spellings stand in for them
NON_FINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def encode_float(value: Optional[float]) -> Union[float, str, None]:
    if value is None or math.isfinite(value):
        return value
    if math.isnan(value):
        return "nan"
    return "inf" if value > 0 else "-inf"


def decode_float(value: Union[float, str, None]) -> Optional[float]:
    if isinstance(value, str):
        return NON_FINITE[value]
    return value


def _finite(value: complex) -> bool:
    return math.isfinite(value.real) and math.isfinite(value.imag)


def encode_complex(value: Optional[complex]):
    """[re, im], non-finite parts spelled as strings"""
    if value is None:
        return None
    value = complex(value)
    return [encode_float(value.real), encode_float(value.imag)]


def decode_complex(pair) -> Optional[complex]:
    if pair is None:
        return None
    return complex(decode_float(pair[0]), decode_float(pair[1]))


def encode_value(value: Any) -> Any:
    """JSON-ready echo of an input value"""
    if isinstance(value, complex):
        return encode_complex(value)
    if isinstance(value, float):
        return encode_float(value)
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return value


def relative_error(lhs: Optional[complex], rhs: Optional[complex]) -> Optional[float]:
    """|lhs - rhs| / max(1, |lhs|) when both sides are finite"""
    if lhs is None or rhs is None:
        return None
    lhs, rhs = complex(lhs), complex(rhs)
    if not (_finite(lhs) and _finite(rhs)):
        return None
    return abs(lhs - rhs) / max(1.0, abs(lhs))


@dataclass
class VerificationRecord:
    kind: RecordKind
    tag: str
    trial: int
    inputs: Dict[str, Any] = field(default_factory=dict)
    lhs: Optional[complex] = None
    rhs: Optional[complex] = None
    rel_err: Optional[float] = None
    outcome: Outcome = Outcome.SKIP
    reason: Optional[str] = None
    suspected_typo: bool = False
    wall_time_ms: float = 0.0

    @property
    def sort_key(self):
        return self.kind.value, self.tag, self.trial

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "tag": self.tag,
            "trial": self.trial,
            "inputs": encode_value(self.inputs),
            "lhs": encode_complex(self.lhs),
            "rhs": encode_complex(self.rhs),
            "rel_err": encode_float(self.rel_err),
            "outcome": self.outcome.value,
            "reason": self.reason,
            "suspected_typo": self.suspected_typo,
            "wall_time_ms": self.wall_time_ms,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationRecord":
        return cls(
            kind=RecordKind(data["kind"]),
            tag=data["tag"],
            trial=data["trial"],
            inputs=data["inputs"],
            lhs=decode_complex(data["lhs"]),
            rhs=decode_complex(data["rhs"]),
            rel_err=decode_float(data["rel_err"]),
            outcome=Outcome(data["outcome"]),
            reason=data["reason"],
            suspected_typo=data["suspected_typo"],
            wall_time_ms=data["wall_time_ms"],
        )
