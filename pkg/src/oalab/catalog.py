"""Ready-made structures used throughout the tests and demos."""

from __future__ import annotations

from itertools import combinations

from .core import FiniteOrthoalgebra, build_oa, horizontal_sum_gen, interval, product
from .testspace import TestSpace, logic, make_testspace


def _subset_label(s: tuple[int, ...]) -> str:
    return "{" + ",".join(str(i) for i in s) + "}"


def boolean_algebra(n: int) -> FiniteOrthoalgebra:
    """Power set of {1..n} with disjoint union as the sum."""
    if n < 1:
        raise ValueError("need n >= 1")
    subsets = []
    for k in range(n + 1):
        subsets.extend(combinations(range(1, n + 1), k))
    subsets.sort(key=lambda s: (len(s), s))
    labels = [_subset_label(s) for s in subsets]
    sums = []
    for i, s in enumerate(subsets):
        for t in subsets[i:]:
            if not set(s) & set(t):
                u = tuple(sorted(set(s) | set(t)))
                sums.append((labels[i], _subset_label(t), _subset_label(u)))
    return build_oa(labels, "{}", _subset_label(tuple(range(1, n + 1))), sums)


def mo(k: int) -> FiniteOrthoalgebra:
    """The modular ortholattice MO_k: k orthogonal pairs glued at 0 and 1."""
    return horizontal_sum_gen(k)


def wright_triangle() -> TestSpace:
    """Three three-outcome tests pasted in a loop; algebraic but not orthocoherent."""
    return make_testspace(
        ["a", "x", "b", "y", "c", "z"],
        [["a", "x", "b"], ["b", "y", "c"], ["c", "z", "a"]],
    )


def wright_triangle_logic() -> FiniteOrthoalgebra:
    """The 14-element logic of the triangle test space."""
    return logic(wright_triangle()).oa


def corpus() -> dict[str, FiniteOrthoalgebra]:
    """The standard verification corpus: Boolean algebras, MO_k, the triangle
    logic, and a spread of products and intervals of those."""
    out: dict[str, FiniteOrthoalgebra] = {}
    for n in range(1, 5):
        out[f"bool{n}"] = boolean_algebra(n)
    for k in range(1, 6):
        out[f"mo{k}"] = mo(k)
    out["wtriangle"] = wright_triangle_logic()

    out["prod_bool1_bool1"] = product(out["bool1"], out["bool1"])
    out["prod_mo2_bool1"] = product(out["mo2"], out["bool1"])
    out["prod_bool2_bool2"] = product(out["bool2"], out["bool2"])
    out["prod_mo2_mo2"] = product(out["mo2"], out["mo2"])

    b3 = out["bool3"]
    out["int_bool3_coatom"] = interval(b3, b3.index("{1,2}"))
    b4 = out["bool4"]
    out["int_bool4_coatom"] = interval(b4, b4.index("{1,2,3}"))
    m2 = out["mo2"]
    out["int_mo2_one"] = interval(m2, m2.one)
    p = out["prod_mo2_mo2"]
    out["int_prod_left"] = interval(p, p.index("(1,0)"))
    return out


def small_corpus(max_size: int = 16) -> dict[str, FiniteOrthoalgebra]:
    """Corpus members small enough for explicit open-set-family topology work."""
    return {name: L for name, L in corpus().items() if L.n <= max_size}
