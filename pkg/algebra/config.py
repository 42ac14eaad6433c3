from dataclasses import dataclass, replace

@dataclass(frozen=True)
class Limits:
    """
    Size caps for the brute-force oracles and searches.

    The caps keep every oracle desk-scale; they never change a result, only
    whether a computation is attempted.
    """
    max_abs: int = 10**6            # integer divisor oracle: |a|
    max_deg: int = 8                # polynomial divisor oracle: deg a
    max_norm: int = 10**4           # quadratic divisor oracle: N(a)
    max_residues: int = 4096        # order of a residue semigroup D/(m)
    max_transversal: int = 10**5    # residue lists without a Cayley table
    iso_max_order: int = 12
    exhaustive_max_order: int = 4
    random_node_limit: int = 20000  # search nodes per random table attempt

DEFAULT_LIMITS = Limits()

def with_overrides(limits: Limits = DEFAULT_LIMITS, **overrides) -> Limits:
    """Copy of `limits` with the non-None entries of `overrides` applied."""
    return replace(limits, **{k: v for k, v in overrides.items() if v is not None})
