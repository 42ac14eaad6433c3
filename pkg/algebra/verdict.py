from dataclasses import dataclass, field

@dataclass
class Verdict:
    """
    Outcome of a law or theorem check.

    A failed check is a verdict, not an exception: `clause` names the part
    that failed and `witness` holds the offending elements.
    """
    name: str
    passed: bool
    clause: str | None = None
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        out = {"check": self.name, "passed": self.passed}
        if self.clause is not None:
            out["clause"] = self.clause
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

def passed(name: str, **details) -> Verdict:
    return Verdict(name, True, details=details)

def failed(name: str, clause: str, witness: dict | None = None, **details) -> Verdict:
    return Verdict(name, False, clause=clause, witness=witness, details=details)
