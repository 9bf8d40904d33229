"""Text generators for the parametrised quiver families, and access to the
bundled corpus files."""

from __future__ import annotations

from importlib import resources


def _name(prefix: str, i: int) -> str:
    return f"{prefix}{i}" if i >= 0 else f"{prefix}m{-i}"


def truncated_cycle(n: int, p: int) -> str:
    """A tail n -> n-1 -> ... -> 1 feeding an oriented p-cycle on the
    vertices 0, -1, ..., -p+1, with every path of length 2 set to zero."""
    if n < 0 or p < 1:
        raise ValueError("need n >= 0 and p >= 1")
    verts = list(range(n, -p, -1))
    lines = [f"# tail of length {n} into a {p}-cycle, radical square zero",
             "vertices: " + " ".join(str(v) for v in verts)]
    for i in verts[:-1]:
        lines.append(f"arrow {_name('x', i)}: {i} -> {i - 1}")
    lines.append(f"arrow {_name('c', -p + 1)}: {-p + 1} -> 0")
    lines.append("truncate: 2")
    return "\n".join(lines) + "\n"


def loop_tail(d: int) -> str:
    """A loop b at vertex d with b^2 = 0 and a linear tail d -> ... -> 0 in
    which consecutive arrows compose to zero."""
    if d < 1:
        raise ValueError("need d >= 1")
    lines = [f"# loop at {d} followed by a tail with zero relations",
             "vertices: " + " ".join(str(v) for v in range(d, -1, -1)),
             f"arrow b: {d} -> {d}"]
    for i in range(d, 0, -1):
        lines.append(f"arrow a{i}: {i} -> {i - 1}")
    lines.append("relation b*b")
    for i in range(2, d + 1):
        lines.append(f"relation a{i - 1}*a{i}")
    return "\n".join(lines) + "\n"


def corpus_names() -> list[str]:
    """Stems of the bundled .quiver files, sorted."""
    base = resources.files("perdim") / "corpus"
    return sorted(f.name[:-len(".quiver")] for f in base.iterdir() if f.name.endswith(".quiver"))


def corpus_text(name: str) -> str:
    return (resources.files("perdim") / "corpus" / f"{name}.quiver").read_text(encoding="utf-8")
