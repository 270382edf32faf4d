"""DOT exports: Hasse diagrams of the derived order and Greechie-style
diagrams of atoms joined by the tests of the canonical test space."""

from __future__ import annotations

from .core import FiniteOrthoalgebra, bits
from .testspace import canonical_testspace

_COLORS = (
    "black", "red3", "blue3", "green4", "orange3",
    "purple3", "turquoise4", "gray40",
)


def _quote(label: str) -> str:
    return '"' + label.replace('"', '\\"') + '"'


def covers(L: FiniteOrthoalgebra) -> list[tuple[int, int]]:
    """Covering pairs (a, b): a < b with nothing strictly between."""
    out = []
    for a in range(L.n):
        for b in bits(L.up[a]):
            if b == a:
                continue
            between = L.up[a] & L.down[b] & ~(1 << a) & ~(1 << b)
            if between == 0:
                out.append((a, b))
    return out


def hasse_dot(L: FiniteOrthoalgebra, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for lab in L.labels:
        lines.append(f"  {_quote(lab)};")
    for a, b in covers(L):
        lines.append(f"  {_quote(L.labels[a])} -> {_quote(L.labels[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def greechie_dot(L: FiniteOrthoalgebra, name: str = "greechie") -> str:
    """Atoms as nodes; each all-atom test of the canonical test space drawn
    as a smooth colored line through its members.  Tests containing
    non-atoms are omitted from the drawing."""
    atoms = set(L.atoms())
    atom_labels = {L.labels[a] for a in atoms}
    T = canonical_testspace(L)
    lines = [
        f"graph {name} {{",
        "  layout=neato; splines=true;",
        "  node [shape=circle, width=0.25, fixedsize=true];",
    ]
    for a in sorted(atoms):
        lines.append(f"  {_quote(L.labels[a])};")
    color_i = 0
    for t in T.tests:
        labs = sorted(T.outcomes[i] for i in t)
        if not set(labs) <= atom_labels or len(labs) < 2:
            continue
        color = _COLORS[color_i % len(_COLORS)]
        color_i += 1
        for x, y in zip(labs, labs[1:]):
            lines.append(f"  {_quote(x)} -- {_quote(y)} [color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
