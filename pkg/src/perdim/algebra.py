"""Finite dimensional algebras with a complete set of primitive idempotents.

``build_algebra`` turns an :class:`~perdim.dsl.AlgebraSpec` into a basis of
normal words for kQ/I by a truncated noncommutative Buchberger completion.
Words are stored internally in functional order: ``(a, b)`` means a after
b.  The monomial order prefers *shorter* words (ties broken
lexicographically by arrow declaration index), so each relation is oriented
from its shortest term towards the longer ones; with every path of length
``bound`` set to zero the rewriting terminates.

Every algebra here, including opposite and enveloping algebras, exposes the
same surface: vertices, a basis whose elements are typed ``e_t b e_s``,
radical generators with their types, a factorisation of each basis element
into generators, and a dense table of structure constants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from . import dsl
from .linalg import Field, canon, rank_rows


class InfiniteDimensionalError(ValueError):
    pass


class EnvelopingTooLarge(ValueError):
    pass


class Algebra:
    """Immutable after construction; all caches are memoisation only."""

    def __init__(self, field: Field, vertex_labels, labels, source, target, idempotents,
                 generators, factors, table, provenance, monomial: Optional[bool] = None):
        self.field = field
        self.vertex_labels = tuple(vertex_labels)
        self.labels = tuple(labels)
        self.source = tuple(source)
        self.target = tuple(target)
        self.idempotents = tuple(idempotents)
        self.generators = tuple(generators)
        self.factors = tuple(tuple(f) for f in factors)
        self.table = table
        self.provenance = provenance
        self.monomial = monomial
        self.gen_source = tuple(self.source[g] for g in self.generators)
        self.gen_target = tuple(self.target[g] for g in self.generators)
        idem = set(self.idempotents)
        self.radical_basis = tuple(b for b in range(len(self.labels)) if b not in idem)
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def kind(self) -> str:
        return self.provenance[0]

    def vertex_index(self, label) -> int:
        label = str(label)
        if label not in self.vertex_labels:
            raise KeyError(f"unknown vertex {label!r}")
        return self.vertex_labels.index(label)

    def mul(self, x: dict, y: dict) -> dict:
        """Product of two elements given as {basis index: coefficient}."""
        p = self.field.p
        out: dict = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                for k, c in row[j].items():
                    out[k] = out.get(k, 0) + a * b * c
        if p:
            return {k: v % p for k, v in out.items() if v % p}
        return {k: canon(v) for k, v in out.items() if v}

    def basis_from(self, v: int) -> list[int]:
        """Basis elements b with b e_v = b, i.e. the basis of Lambda e_v."""
        return [b for b in range(self.dim) if self.source[b] == v]

    def __repr__(self):
        return f"<Algebra {self.kind} dim={self.dim} vertices={self.n_vertices} over {self.field}>"


# --------------------------------------------------------------------------
# rewriting


def _key(w):
    return (len(w), w)


class _Rewriter:
    def __init__(self, field: Field, arrow_src, arrow_tgt, bound: int):
        self.field = field
        self.src = arrow_src
        self.tgt = arrow_tgt
        self.bound = bound
        self.rules: dict[tuple, dict] = {}
        self.lead_lengths: set[int] = set()

    def _clean(self, poly):
        p = self.field.p
        if p:
            return {w: c % p for w, c in poly.items() if c % p}
        return {w: canon(c) for w, c in poly.items() if c}

    def find(self, w):
        rules = self.rules
        for i in range(len(w)):
            for L in self.lead_lengths:
                if i + L <= len(w):
                    sub = w[i:i + L]
                    if sub in rules:
                        return i, L, rules[sub]
        return None

    def reduce(self, poly: dict) -> dict:
        p = self.field.p
        work = self._clean(poly)
        result = {}
        while work:
            w = min(work, key=_key)
            c = work.pop(w)
            hit = self.find(w)
            if hit is None:
                result[w] = c
                continue
            i, L, tail = hit
            x, y = w[:i], w[i + L:]
            for t, tc in tail.items():
                nw = x + t + y
                if len(nw) >= self.bound:
                    continue
                v = work.get(nw, 0) + c * tc
                if p:
                    v %= p
                if v:
                    work[nw] = v if p else canon(v)
                else:
                    work.pop(nw, None)
        return result

    def _add_rule(self, poly: dict, pending: list):
        lead = min(poly, key=_key)
        inv = self.field.inv(poly[lead])
        p = self.field.p
        tail = {}
        for w, c in poly.items():
            if w != lead:
                v = -c * inv
                tail[w] = v % p if p else canon(v)
        for old in [l for l in self.rules if _contains(l, lead)]:
            old_tail = self.rules.pop(old)
            back = {old: 1}
            for w, c in old_tail.items():
                back[w] = -c
            pending.append(back)
        self.rules[lead] = tail
        self.lead_lengths = {len(l) for l in self.rules}
        for other in list(self.rules):
            pending.extend(self._overlaps(lead, other))
            if other != lead:
                pending.extend(self._overlaps(other, lead))

    def _overlaps(self, l1, l2):
        out = []
        t1, t2 = self.rules[l1], self.rules[l2]
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] != l2[:k]:
                continue
            x, y = l1[:-k], l2[k:]
            if len(x) + len(l2) >= self.bound:
                continue
            s: dict = {}
            for t, c in t1.items():
                w = t + y
                s[w] = s.get(w, 0) + c
            for t, c in t2.items():
                w = x + t
                s[w] = s.get(w, 0) - c
            out.append(s)
        return out

    def complete(self, relations: Iterable[dict]):
        pending = list(relations)
        while pending:
            f = self.reduce(pending.pop(0))
            if f:
                self._add_rule(f, pending)

    def normal_words(self, n_arrows: int) -> list[tuple]:
        words = []
        frontier = []
        for a in range(n_arrows):
            w = (a,)
            if self.find(w) is None:
                frontier.append(w)
        while frontier:
            words.extend(frontier)
            nxt = []
            for w in frontier:
                t = self.tgt[w[0]]
                for a in range(n_arrows):
                    if self.src[a] != t:
                        continue
                    nw = (a,) + w
                    if any(nw[:L] in self.rules for L in self.lead_lengths if L <= len(nw)):
                        continue
                    if len(nw) >= self.bound - 1:
                        raise InfiniteDimensionalError(
                            f"normal word of length {len(nw)} reaches the length bound {self.bound}: "
                            "algebra may be infinite dimensional; raise bound or fix relations")
                    nxt.append(nw)
            frontier = nxt
        return sorted(words, key=_key)


def _contains(word, sub) -> bool:
    L = len(sub)
    return any(word[i:i + L] == sub for i in range(len(word) - L + 1))


def default_bound(spec: dsl.AlgebraSpec) -> int:
    longest = max((len(p) for r in spec.relations for _, p in r.terms), default=2)
    return 2 * len(spec.vertices) + longest


def build_algebra(spec: dsl.AlgebraSpec, field: Optional[Field] = None) -> Algebra:
    """Normal-word basis and structure constants of kQ/I."""
    fld = field or spec.field
    vlabels = list(spec.vertices)
    vidx = {v: i for i, v in enumerate(vlabels)}
    arrow_labels = [a.label for a in spec.arrows]
    aidx = {a: i for i, a in enumerate(arrow_labels)}
    src = [vidx[a.source] for a in spec.arrows]
    tgt = [vidx[a.target] for a in spec.arrows]
    bound = spec.length_bound or default_bound(spec)
    diag = spec.convention == dsl.DIAGRAMMATIC

    def internal(path):
        w = tuple(aidx[x] for x in path)
        return w[::-1] if diag else w

    rels = []
    for r in spec.relations:
        poly = {}
        for c, path in r.terms:
            poly[internal(path)] = fld(Fraction(c))
        rels.append(poly)

    rw = _Rewriter(fld, src, tgt, bound)
    rw.complete(rels)
    words = rw.normal_words(len(arrow_labels))

    nv = len(vlabels)
    labels = [f"e_{v}" for v in vlabels]
    source = list(range(nv))
    target = list(range(nv))
    for w in words:
        shown = w[::-1] if diag else w
        labels.append("*".join(arrow_labels[a] for a in shown))
        source.append(src[w[-1]])
        target.append(tgt[w[0]])
    index = {w: nv + k for k, w in enumerate(words)}
    if any((a,) not in index for a in range(len(arrow_labels))):
        raise InfiniteDimensionalError("an arrow was rewritten away; relations are not admissible")
    generators = [index[(a,)] for a in range(len(arrow_labels))]
    factors = [()] * nv + [tuple(w) for w in words]

    n = len(labels)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < nv and j < nv:
                table[i][j] = {i: 1} if i == j else {}
            elif i < nv:
                table[i][j] = {j: 1} if target[j] == i else {}
            elif j < nv:
                table[i][j] = {i: 1} if source[i] == j else {}
            elif source[i] != target[j]:
                table[i][j] = {}
            else:
                red = rw.reduce({words[i - nv] + words[j - nv]: 1})
                table[i][j] = {index[w]: c for w, c in red.items()}
    alg = Algebra(fld, vlabels, labels, source, target, range(nv), generators, factors, table,
                  ("bound_quiver", spec), monomial=spec.is_monomial)
    alg._cache["rewriter"] = rw
    alg._cache["word_index"] = index
    alg._cache["arrow_index"] = aidx
    return alg


def normal_form(alg: Algebra, expr) -> dict:
    """Reduce a linear combination of paths to {basis index: coefficient}.

    ``expr`` is relation-style text (``"d*d"``, ``"a*b*c - 2*d^2"``) or a list
    of ``(coefficient, path)`` pairs with paths as tuples of arrow labels.
    Raises ValueError on a path that does not compose.
    """
    if alg.kind != "bound_quiver":
        raise ValueError("normal_form needs a bound-quiver algebra")
    spec = alg.provenance[1]
    if isinstance(expr, str):
        arrows = {a.label: a for a in spec.arrows}
        terms = [(c, p) for c, p, _ in dsl._parse_relation(expr, arrows, 0, 0)]
    else:
        terms = list(expr)
    aidx = alg._cache["arrow_index"]
    diag = spec.convention == dsl.DIAGRAMMATIC
    poly: dict = {}
    for c, path in terms:
        spec.path_ends(path)
        w = tuple(aidx[x] for x in path)
        if diag:
            w = w[::-1]
        poly[w] = poly.get(w, 0) + alg.field(Fraction(c))
    red = alg._cache["rewriter"].reduce(poly)
    index = alg._cache["word_index"]
    return {index[w]: c for w, c in red.items()}


# --------------------------------------------------------------------------
# derived algebras


def opposite(a: Algebra) -> Algebra:
    if "opposite" in a._cache:
        return a._cache["opposite"]
    n = a.dim
    table = [[a.table[j][i] for j in range(n)] for i in range(n)]
    op = Algebra(a.field, a.vertex_labels, a.labels, a.target, a.source, a.idempotents,
                 a.generators, [f[::-1] for f in a.factors], table, ("opposite", a), monomial=a.monomial)
    a._cache["opposite"] = op
    op._cache["opposite"] = a
    return op


def enveloping(a: Algebra, max_dim: int = 4096) -> Algebra:
    """Lambda (x) Lambda^op with basis pairs (x, y) in lexicographic order.

    (x, y)(x', y') = (x x', y' y); the pair (x, y) acts on a bimodule by
    m -> x m y.
    """
    if "enveloping" in a._cache:
        return a._cache["enveloping"]
    n = a.dim
    if n * n > max_dim:
        raise EnvelopingTooLarge(f"enveloping algebra would have dimension {n * n} > {max_dim}")
    nv = a.n_vertices
    p = a.field.p
    vlabels = [f"({a.vertex_labels[i]},{a.vertex_labels[j]})" for i in range(nv) for j in range(nv)]
    labels, source, target = [], [], []
    for x in range(n):
        for y in range(n):
            labels.append(f"{a.labels[x]}|{a.labels[y]}")
            source.append(a.source[x] * nv + a.target[y])
            target.append(a.target[x] * nv + a.source[y])
    idempotents = [a.idempotents[i] * n + a.idempotents[j] for i in range(nv) for j in range(nv)]

    gens = []
    left_pos = {}
    for k, g in enumerate(a.generators):
        for j in range(nv):
            left_pos[(k, j)] = len(gens)
            gens.append(g * n + a.idempotents[j])
    right_pos = {}
    for k, g in enumerate(a.generators):
        for i in range(nv):
            right_pos[(k, i)] = len(gens)
            gens.append(a.idempotents[i] * n + g)

    factors = []
    for x in range(n):
        for y in range(n):
            sy, sx = a.source[y], a.source[x]
            f = [left_pos[(k, sy)] for k in a.factors[x]]
            f += [right_pos[(k, sx)] for k in reversed(a.factors[y])]
            factors.append(f)

    table = [[None] * (n * n) for _ in range(n * n)]
    for x in range(n):
        for y in range(n):
            for x2 in range(n):
                left = a.table[x][x2]
                for y2 in range(n):
                    out = {}
                    if left:
                        right = a.table[y2][y]
                        for k1, c1 in left.items():
                            for k2, c2 in right.items():
                                v = c1 * c2
                                out[k1 * n + k2] = v % p if p else v
                    table[x * n + y][x2 * n + y2] = out
    env = Algebra(a.field, vlabels, labels, source, target, idempotents, gens, factors, table,
                  ("enveloping", a))
    a._cache["enveloping"] = env
    return env


# --------------------------------------------------------------------------
# verification


def check_associativity(a: Algebra) -> bool:
    n = a.dim
    for x in range(n):
        for y in range(n):
            xy = a.table[x][y]
            for z in range(n):
                if a.mul(xy, {z: 1}) != a.mul({x: 1}, a.table[y][z]):
                    return False
    return True


def check_unit(a: Algebra) -> bool:
    one = {e: 1 for e in a.idempotents}
    for b in range(a.dim):
        if a.mul(one, {b: 1}) != {b: 1} or a.mul({b: 1}, one) != {b: 1}:
            return False
    return True


def radical_nilpotency(a: Algebra) -> Optional[int]:
    """Least m with J^m = 0 (checked up to dim + 1), or None."""
    rad = [{b: 1} for b in a.radical_basis]
    power = rad
    for m in range(1, a.dim + 2):
        vecs = []
        for el in power:
            v = [0] * a.dim
            for k, c in el.items():
                v[k] = c
            vecs.append(v)
        if rank_rows(vecs, a.dim, a.field) == 0:
            return m
        nxt = []
        for el in power:
            for r in rad:
                prod = a.mul(el, r)
                if prod:
                    nxt.append(prod)
        # keep a spanning set only
        power = _independent(nxt, a)
    return None


def _independent(elems, a: Algebra):
    from .linalg import Subspace
    vecs = []
    for el in elems:
        v = [0] * a.dim
        for k, c in el.items():
            v[k] = c
        vecs.append(v)
    sub = Subspace(vecs, a.dim, a.field)
    return [{k: c for k, c in enumerate(r) if c} for r in sub.rows]


def is_connected(a: Algebra) -> bool:
    """Connectivity of the underlying graph of the quiver (vertices joined
    by generators)."""
    nv = a.n_vertices
    if nv == 0:
        return True
    adj = {v: set() for v in range(nv)}
    for s, t in zip(a.gen_source, a.gen_target):
        adj[s].add(t)
        adj[t].add(s)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == nv
