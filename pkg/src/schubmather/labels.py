"""Short aliases (alpha_i, beta_i, gamma_i) for the sequences of small reference tables."""

from __future__ import annotations

_D5 = {
    (3, 5): "alpha_0", (2, 5): "alpha_1", (1, 5): "alpha_2",
    (3, 4): "beta_0", (2, 4): "beta_1", (2, 3): "beta_2",
    (1, 4): "beta_3", (1, 3): "beta_4", (1, 2): "beta_5",
    (2, 3, 4, 5): "gamma_0", (1, 3, 4, 5): "gamma_1", (1, 2, 4, 5): "gamma_2",
    (1, 2, 3, 5): "gamma_3", (1, 2, 3, 4): "gamma_4",
}

_C3 = {
    (2,): "alpha_0", (1,): "alpha_1",
    (2, 3): "beta_0", (1, 3): "beta_1", (1, 2): "beta_2",
    (1, 2, 3): "gamma_0",
}

_C4 = {
    (3,): "alpha_0", (2,): "alpha_1", (1,): "alpha_2",
    (3, 4): "beta_0", (2, 4): "beta_1", (2, 3): "beta_2",
    (1, 4): "beta_3", (1, 3): "beta_4", (1, 2): "beta_5",
    (2, 3, 4): "gamma_0", (1, 3, 4): "gamma_1", (1, 2, 4): "gamma_2",
    (1, 2, 3): "gamma_3", (1, 2, 3, 4): "gamma_4",
}

REFERENCE_LABELS = {
    ("D", 5, "OG''"): _D5,
    ("C", 3, None): _C3,
    ("C", 4, None): _C4,
}


def label_for(lie_type: str, n: int, family, parts) -> str:
    """Alias of the sequence if a reference table names it, else the comma-joined parts."""
    table = REFERENCE_LABELS.get((lie_type, n, family), {})
    return table.get(tuple(parts), ",".join(map(str, parts)) or "()")
