"""Finite categories, tabulated set-valued functors and coends.

Everything here is finite and explicit: a category is a composition
table over named arrows, a functor is a table of finite sets and
element maps, and a coend is the quotient of the diagonal by the
two-sided arrow action.  Structure is validated exhaustively; nothing
is represented up to equivalence.

Conventions.  Composition is diagrammatic: comp(f, g) is "f then g"
and needs dst(f) == src(g).  A functor slot is covariant ("+") or
contravariant ("-"); the action of f: a -> b on a contravariant slot
carries elements at b back to elements at a.  Objects and arrow names
are strings, or tuples of strings in product categories.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass


class FinCatError(Exception):
    pass


def elem_key(e):
    """Total order on elements (strings and nested tuples), for canonical picks."""
    if isinstance(e, str):
        return (0, e)
    if isinstance(e, tuple):
        return (1, tuple(elem_key(x) for x in e))
    raise TypeError(f"unorderable element: {e!r}")


# ---------------------------------------------------------------------------
# categories


@dataclass(frozen=True)
class FinCat:
    """A finite category as an explicit composition table.

    arrows maps each arrow name to its (source, target) pair; compose
    maps each composable (f, g) to "f then g".  Identities are listed
    in both arrows and identity.
    """

    name: str
    objects: tuple
    arrows: dict
    identity: dict
    compose: dict

    def src(self, f):
        return self.arrows[f][0]

    def dst(self, f):
        return self.arrows[f][1]

    def comp(self, f, g):
        return self.compose[(f, g)]

    def id_of(self, obj):
        return self.identity[obj]

    def hom(self, a, b) -> tuple:
        return tuple(
            sorted((f for f, (s, t) in self.arrows.items() if s == a and t == b),
                   key=elem_key)
        )

    def is_identity(self, f) -> bool:
        return f in self._id_set

    @property
    def _id_set(self):
        return frozenset(self.identity.values())

    @property
    def is_discrete(self) -> bool:
        return len(self.arrows) == len(self.objects)


def make_category(name, objects, arrows=None, compose=None) -> FinCat:
    """Build a FinCat from the non-identity data.

    Adds one identity per object (named "id_<obj>" for string objects)
    and fills in all compositions with an identity; the caller supplies
    only the composites of non-identity pairs.
    """
    objects = tuple(objects)
    arrows = dict(arrows or {})
    compose = dict(compose or {})
    identity = {}
    for obj in objects:
        ident = ("id", obj) if isinstance(obj, tuple) else f"id_{obj}"
        if ident in arrows:
            raise FinCatError(f"arrow name {ident!r} is reserved for the identity")
        identity[obj] = ident
        arrows[ident] = (obj, obj)
    for f, (s, t) in arrows.items():
        compose.setdefault((identity[s], f), f)
        compose.setdefault((f, identity[t]), f)
    return FinCat(name, objects, arrows, identity, compose)


def validate_category(c: FinCat) -> None:
    """Exhaustively check the category laws on the composition table."""
    for f, (s, t) in c.arrows.items():
        if s not in c.objects or t not in c.objects:
            raise FinCatError(f"{c.name}: arrow {f!r} has endpoints outside the category")
    for obj in c.objects:
        i = c.identity.get(obj)
        if i is None or c.arrows.get(i) != (obj, obj):
            raise FinCatError(f"{c.name}: bad identity on {obj!r}")
    for (f, g), h in c.compose.items():
        if c.dst(f) != c.src(g):
            raise FinCatError(f"{c.name}: compose defined on non-composable ({f!r}, {g!r})")
        if (c.src(h), c.dst(h)) != (c.src(f), c.dst(g)):
            raise FinCatError(f"{c.name}: composite {h!r} has wrong endpoints")
    for f in c.arrows:
        for g in c.arrows:
            if c.dst(f) == c.src(g) and (f, g) not in c.compose:
                raise FinCatError(f"{c.name}: missing composite of ({f!r}, {g!r})")
    for f, (s, t) in c.arrows.items():
        if c.comp(c.identity[s], f) != f or c.comp(f, c.identity[t]) != f:
            raise FinCatError(f"{c.name}: identity law fails at {f!r}")
    for f in c.arrows:
        for g in c.arrows:
            if c.dst(f) != c.src(g):
                continue
            for h in c.arrows:
                if c.dst(g) != c.src(h):
                    continue
                if c.comp(c.comp(f, g), h) != c.comp(f, c.comp(g, h)):
                    raise FinCatError(
                        f"{c.name}: associativity fails on ({f!r}, {g!r}, {h!r})"
                    )


def terminal_cat() -> FinCat:
    return make_category("terminal", ("*",))


def discrete_cat(labels, name=None) -> FinCat:
    labels = tuple(labels)
    return make_category(name or f"discrete{len(labels)}", labels)


def opposite(c: FinCat) -> FinCat:
    """Same arrows, reversed endpoints, compose table transposed."""
    arrows = {f: (t, s) for f, (s, t) in c.arrows.items()}
    compose = {(g, f): h for (f, g), h in c.compose.items()}
    return FinCat(f"{c.name}^op", c.objects, arrows, dict(c.identity), compose)


def product(c: FinCat, d: FinCat) -> FinCat:
    """Product category: componentwise pairs of objects and arrows."""
    objects = tuple((x, y) for x in c.objects for y in d.objects)
    arrows = {
        (f, g): ((c.src(f), d.src(g)), (c.dst(f), d.dst(g)))
        for f in c.arrows
        for g in d.arrows
    }
    identity = {(x, y): (c.id_of(x), d.id_of(y)) for x, y in objects}
    compose = {}
    for (f1, g1) in arrows:
        for (f2, g2) in arrows:
            if c.dst(f1) == c.src(f2) and d.dst(g1) == d.src(g2):
                compose[((f1, g1), (f2, g2))] = (c.comp(f1, f2), d.comp(g1, g2))
    return FinCat(f"{c.name} x {d.name}", objects, arrows, identity, compose)


# ---------------------------------------------------------------------------
# .fincat files

_FINCAT_ARROW = re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_FINCAT_COMP = re.compile(r"^compose\s+(\S+)\s+(\S+)\s*=\s*(\S+)$")


def load_fincat(text: str, default_name: str = "cat") -> FinCat:
    """Parse the .fincat format.

    Lines: `category NAME`, `objects a b c`, `arrow f : a -> b`,
    `compose f g = h` (meaning f then g is h); identities are implicit
    and named id_<obj>; `--` starts a comment.  The result is validated.
    """
    name = default_name
    objects: list = []
    arrows: dict = {}
    compose: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("--", 1)[0].strip()
        if not line:
            continue
        if line.startswith("category "):
            name = line.split(None, 1)[1].strip()
        elif line.startswith("objects"):
            objects.extend(line.split()[1:])
        elif m := _FINCAT_ARROW.match(line):
            f, s, t = m.groups()
            if f in arrows:
                raise FinCatError(f"line {lineno}: arrow {f!r} declared twice")
            arrows[f] = (s, t)
        elif m := _FINCAT_COMP.match(line):
            f, g, h = m.groups()
            compose[(f, g)] = h
        else:
            raise FinCatError(f"line {lineno}: cannot read {raw.strip()!r}")
    for f, (s, t) in arrows.items():
        if s not in objects or t not in objects:
            raise FinCatError(f"arrow {f!r} uses an undeclared object")
    for (f, g), h in compose.items():
        for a in (f, g, h):
            if a not in arrows and not a.startswith("id_"):
                raise FinCatError(f"compose line uses undeclared arrow {a!r}")
    cat = make_category(name, objects, arrows, compose)
    validate_category(cat)
    return cat


def read_fincat(path) -> FinCat:
    with open(path, encoding="utf-8") as fh:
        return load_fincat(fh.read(), default_name=str(path))


_BUILTIN_SOURCES = {
    "terminal": "objects *\n",
    "discrete2": "objects p q\n",
    "discrete3": "objects p q r\n",
    "arrow": "objects p q\narrow f : p -> q\n",
    "parallel": "objects p q\narrow f : p -> q\narrow g : p -> q\n",
}


def builtin_category(name: str) -> FinCat:
    if name not in _BUILTIN_SOURCES:
        raise FinCatError(
            f"unknown builtin category {name!r}; have {', '.join(sorted(_BUILTIN_SOURCES))}"
        )
    return load_fincat(_BUILTIN_SOURCES[name], default_name=name)


# ---------------------------------------------------------------------------
# set-valued functors

Point = tuple


@dataclass
class SetFunctor:
    """A tabulated functor on a list of slots, each a category with a variance.

    values maps each point (one object per slot) to a finite set of
    elements.  action holds the unary arrow actions: (slot, point, f)
    maps the elements at point to elements at the point where slot has
    moved along f (forward for "+", backward for "-").  Multi-slot
    moves compose unary ones; validate_functor checks that order does
    not matter.
    """

    cats: tuple
    variance: tuple
    values: dict
    action: dict

    def points(self):
        return [tuple(p) for p in itertools.product(*(c.objects for c in self.cats))]

    def at(self, point) -> frozenset:
        return self.values[point]

    def moved(self, point, slot, f):
        """The point reached by acting with f in the given slot."""
        cat = self.cats[slot]
        here = point[slot]
        if self.variance[slot] == "+":
            if cat.src(f) != here:
                raise FinCatError(f"arrow {f!r} does not start at {here!r}")
            there = cat.dst(f)
        else:
            if cat.dst(f) != here:
                raise FinCatError(f"arrow {f!r} does not end at {here!r}")
            there = cat.src(f)
        return point[:slot] + (there,) + point[slot + 1 :]

    def map1(self, point, slot, f) -> dict:
        return self.action[(slot, point, f)]

    def apply1(self, point, slot, f, elem):
        return self.action[(slot, point, f)][elem]


def validate_functor(fun: SetFunctor) -> None:
    """Totality, identity and composition laws, and cross-slot commutation."""
    pts = fun.points()
    if set(fun.values) != set(pts):
        raise FinCatError("functor values are not indexed by exactly the points")
    expected_keys = set()
    for p in pts:
        for i, cat in enumerate(fun.cats):
            for f in cat.arrows:
                anchored = cat.src(f) if fun.variance[i] == "+" else cat.dst(f)
                if anchored == p[i]:
                    expected_keys.add((i, p, f))
    if set(fun.action) != expected_keys:
        missing = expected_keys - set(fun.action)
        extra = set(fun.action) - expected_keys
        raise FinCatError(f"functor action keys wrong (missing {missing!r}, extra {extra!r})")
    for (i, p, f), m in fun.action.items():
        q = fun.moved(p, i, f)
        if set(m) != set(fun.at(p)):
            raise FinCatError(f"action at {(i, p, f)!r} is not total on the fibre")
        if not set(m.values()) <= set(fun.at(q)):
            raise FinCatError(f"action at {(i, p, f)!r} leaves the target fibre")
    for p in pts:
        for i, cat in enumerate(fun.cats):
            ident = cat.id_of(p[i])
            m = fun.map1(p, i, ident)
            if any(m[e] != e for e in fun.at(p)):
                raise FinCatError(f"identity action is not the identity at slot {i}, {p!r}")
    for p in pts:
        for i, cat in enumerate(fun.cats):
            for f in cat.arrows:
                for g in cat.arrows:
                    if cat.dst(f) != cat.src(g):
                        continue
                    fg = cat.comp(f, g)
                    if fun.variance[i] == "+":
                        first, second = f, g
                        if cat.src(f) != p[i]:
                            continue
                    else:
                        first, second = g, f
                        if cat.dst(g) != p[i]:
                            continue
                    q = fun.moved(p, i, first)
                    one = fun.map1(p, i, first)
                    two = fun.map1(q, i, second)
                    both = fun.map1(p, i, fg)
                    if any(two[one[e]] != both[e] for e in fun.at(p)):
                        raise FinCatError(
                            f"composition law fails at slot {i}, {p!r}, ({f!r}, {g!r})"
                        )
    # actions in distinct slots must commute
    for p in pts:
        for i in range(len(fun.cats)):
            for j in range(i + 1, len(fun.cats)):
                for f in _anchored_arrows(fun, p, i):
                    for g in _anchored_arrows(fun, p, j):
                        pi = fun.moved(p, i, f)
                        pj = fun.moved(p, j, g)
                        via_i = {
                            e: fun.apply1(pi, j, g, fun.apply1(p, i, f, e))
                            for e in fun.at(p)
                        }
                        via_j = {
                            e: fun.apply1(pj, i, f, fun.apply1(p, j, g, e))
                            for e in fun.at(p)
                        }
                        if via_i != via_j:
                            raise FinCatError(
                                f"slot actions do not commute at {p!r} ({i}:{f!r}, {j}:{g!r})"
                            )


def _anchored_arrows(fun, point, slot):
    cat = fun.cats[slot]
    for f in cat.arrows:
        anchored = cat.src(f) if fun.variance[slot] == "+" else cat.dst(f)
        if anchored == point[slot]:
            yield f


def constant_functor(cats, variance, fibre) -> SetFunctor:
    cats = tuple(cats)
    variance = tuple(variance)
    fibre = frozenset(fibre)
    fun = SetFunctor(cats, variance, {}, {})
    for p in fun.points():
        fun.values[p] = fibre
    for p in fun.points():
        for i in range(len(cats)):
            for f in _anchored_arrows(fun, p, i):
                fun.action[(i, p, f)] = {e: e for e in fibre}
    return fun


def hom_functor(c: FinCat) -> SetFunctor:
    """The hom bifunctor with a covariant and a contravariant slot.

    At (y, z) the fibre is hom(z, y): covariant post-composition in the
    first slot, contravariant pre-composition in the second.
    """
    fun = SetFunctor((c, c), ("+", "-"), {}, {})
    for y in c.objects:
        for z in c.objects:
            fun.values[(y, z)] = frozenset(c.hom(z, y))
    for (y, z), fibre in fun.values.items():
        for f in c.arrows:
            if c.src(f) == y:
                fun.action[(0, (y, z), f)] = {e: c.comp(e, f) for e in fibre}
            if c.dst(f) == z:
                fun.action[(1, (y, z), f)] = {e: c.comp(f, e) for e in fibre}
    return fun


# ---------------------------------------------------------------------------
# coends


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def induced_map(members_by_class: dict, fn) -> dict:
    """Extend an element-level map to coend classes.

    fn is evaluated on every member of every class and must be constant
    on each; a disagreement means the map does not descend to the
    quotient and is an invariant violation, not a recoverable state.
    """
    out = {}
    for cls, members in members_by_class.items():
        images = {fn(m) for m in members}
        if len(images) != 1:
            raise FinCatError(
                f"map is not constant on coend class {cls!r}: {sorted(images, key=elem_key)!r}"
            )
        out[cls] = next(iter(images))
    return out


@dataclass
class CoendResult:
    """A coend over one covariant/contravariant slot pair.

    functor is the induced functor on the remaining slots; its fibres
    are class names ("cls", obj, elem) built from the least member of
    each class.  classes/members record the quotient per remaining
    point; inject sends a diagonal element to its class.
    """

    base: FinCat
    cov_slot: int
    contra_slot: int
    rem_slots: tuple
    functor: SetFunctor
    classes: dict
    members: dict

    def inject(self, rem_point, obj, elem):
        return self.classes[rem_point][(obj, elem)]

    def full_point(self, rem_point, a_cov, a_contra):
        pt = []
        it = iter(rem_point)
        for i in range(len(self.rem_slots) + 2):
            if i == self.cov_slot:
                pt.append(a_cov)
            elif i == self.contra_slot:
                pt.append(a_contra)
            else:
                pt.append(next(it))
        return tuple(pt)


def coend(fun: SetFunctor, cov_slot: int, contra_slot: int) -> CoendResult:
    """Quotient the diagonal of a paired slot by the generator relation.

    For each arrow f: a -> a2 of the base and element e at
    (cov=a, contra=a2), the forward push at the covariant slot and the
    backward push at the contravariant slot are identified.  Identity
    arrows only produce trivial generators and are skipped.
    """
    if fun.variance[cov_slot] != "+" or fun.variance[contra_slot] != "-":
        raise FinCatError("coend needs a covariant and a contravariant slot, in that order")
    base = fun.cats[cov_slot]
    if fun.cats[contra_slot] != base:
        raise FinCatError("coend slots must range over one category")
    n = len(fun.cats)
    rem_slots = tuple(i for i in range(n) if i not in (cov_slot, contra_slot))

    def full(rem_point, a_cov, a_contra):
        pt = []
        it = iter(rem_point)
        for i in range(n):
            if i == cov_slot:
                pt.append(a_cov)
            elif i == contra_slot:
                pt.append(a_contra)
            else:
                pt.append(next(it))
        return tuple(pt)

    rem_cats = tuple(fun.cats[i] for i in rem_slots)
    rem_var = tuple(fun.variance[i] for i in rem_slots)
    skeleton = SetFunctor(rem_cats, rem_var, {}, {})
    rem_points = skeleton.points()

    classes: dict = {}
    members: dict = {}
    for rp in rem_points:
        uf = _UnionFind()
        for a in base.objects:
            for e in fun.at(full(rp, a, a)):
                uf.add((a, e))
        for f, (a, a2) in base.arrows.items():
            if base.is_identity(f):
                continue
            p0 = full(rp, a, a2)
            for e0 in fun.at(p0):
                uf.add((a2, fun.apply1(p0, cov_slot, f, e0)))
                uf.add((a, fun.apply1(p0, contra_slot, f, e0)))
                uf.union(
                    (a2, fun.apply1(p0, cov_slot, f, e0)),
                    (a, fun.apply1(p0, contra_slot, f, e0)),
                )
        cls_of: dict = {}
        mem: dict = {}
        for group in uf.groups():
            rep = min(group, key=elem_key)
            cls = ("cls", rep[0], rep[1])
            mem[cls] = tuple(sorted(group, key=elem_key))
            for node in group:
                cls_of[node] = cls
        classes[rp] = cls_of
        members[rp] = mem

    skeleton.values = {rp: frozenset(members[rp]) for rp in rem_points}
    result = CoendResult(base, cov_slot, contra_slot, rem_slots, skeleton, classes, members)
    for rp in rem_points:
        for j, oj in enumerate(rem_slots):
            for g in _anchored_arrows(skeleton, rp, j):
                rp2 = skeleton.moved(rp, j, g)
                skeleton.action[(j, rp, g)] = induced_map(
                    members[rp],
                    lambda node, _rp2=rp2, _oj=oj, _g=g: result.inject(
                        _rp2, node[0], fun.apply1(full(rp, node[0], node[0]), _oj, _g, node[1])
                    ),
                )
    return result

