"""Map a spine to its canonical class through fixed-set invariants."""
from __future__ import annotations

from .canonical import CanonicalForm
from .invariants import fixed_set, genus, is_free
from .model import Model, SpineError
from .textfmt import serialize_model


class TheoremViolation(SpineError):
    """A validated model whose invariants fall outside the classification."""


def classify(m: Model) -> CanonicalForm:
    g = genus(m)
    if is_free(m):
        if g % 2 != 1:
            raise TheoremViolation(f"free involution on even genus {g}\n{serialize_model(m)}")
        return CanonicalForm.free((g - 1) // 2)
    fs = fixed_set(m)
    n, k = fs.n_arcs, fs.m_circles
    if (n - g - 1) % 2 or not 1 <= n + 2 * k <= g + 1:
        raise TheoremViolation(
            f"fixed set n={n} m={k} impossible in genus {g}\n{serialize_model(m)}"
        )
    return CanonicalForm.nonfree(n, k, (g + 1 - n - 2 * k) // 2)


def same_class(m1: Model, m2: Model) -> bool:
    return classify(m1) == classify(m2)
