"""Multivariable profunctors over finite categories, and their 2-cells.

A profunctor here is a tabulated set-valued functor together with a
split of its slots into named input (covariant) and output
(contravariant) coordinates.  Composition pairs one output of the left
factor with one input of the right factor over the same category and
quotients by the coend relation; all other coordinates are shared
ambient context and must agree by name.

Natural transformations are stored componentwise and validated by
checking every naturality square; nothing is trusted by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    CoendResult,
    FinCat,
    FinCatError,
    SetFunctor,
    _anchored_arrows,
    coend,
    elem_key,
    induced_map,
    hom_functor,
    opposite,
    validate_functor,
)


class InterfaceError(Exception):
    """Coordinate names, categories or endpoints fail to line up."""


@dataclass
class Profunctor:
    inputs: tuple
    outputs: tuple
    body: SetFunctor

    @property
    def input_names(self):
        return tuple(n for n, _ in self.inputs)

    @property
    def output_names(self):
        return tuple(n for n, _ in self.outputs)

    @property
    def coords(self):
        return self.inputs + self.outputs

    def slot(self, name) -> int:
        for i, (n, _) in enumerate(self.coords):
            if n == name:
                return i
        raise InterfaceError(f"no coordinate {name!r}")

    def cat_of(self, name) -> FinCat:
        return self.coords[self.slot(name)][1]

    def point(self, assignment: dict) -> tuple:
        return tuple(assignment[n] for n, _ in self.coords)


def validate_profunctor(p: Profunctor) -> None:
    names = [n for n, _ in p.coords]
    if len(set(names)) != len(names):
        raise InterfaceError(f"coordinate names repeat: {names!r}")
    want_cats = tuple(c for _, c in p.coords)
    want_var = ("+",) * len(p.inputs) + ("-",) * len(p.outputs)
    if p.body.cats != want_cats or p.body.variance != want_var:
        raise InterfaceError("body slots do not match the declared interface")
    validate_functor(p.body)


def identity_prof(c: FinCat, in_name: str = "in", out_name: str = "out") -> Profunctor:
    """The hom profunctor: at (y; z) the arrows z -> y."""
    return Profunctor(((in_name, c),), ((out_name, c),), hom_functor(c))


def rename_coords(p: Profunctor, mapping: dict) -> Profunctor:
    ren = lambda n: mapping.get(n, n)
    inputs = tuple((ren(n), c) for n, c in p.inputs)
    outputs = tuple((ren(n), c) for n, c in p.outputs)
    out = Profunctor(inputs, outputs, p.body)
    names = [n for n, _ in out.coords]
    if len(set(names)) != len(names):
        raise InterfaceError(f"rename collides: {names!r}")
    return out


def _permute_slots(fun: SetFunctor, perm) -> SetFunctor:
    """Reorder slots; perm[new_index] = old_index."""
    inv = {oi: ni for ni, oi in enumerate(perm)}
    cats = tuple(fun.cats[oi] for oi in perm)
    variance = tuple(fun.variance[oi] for oi in perm)
    values = {}
    action = {}
    for op, fibre in fun.values.items():
        np = tuple(op[oi] for oi in perm)
        values[np] = fibre
    for (oi, op, f), m in fun.action.items():
        np = tuple(op[oj] for oj in perm)
        action[(inv[oi], np, f)] = m
    return SetFunctor(cats, variance, values, action)


def _with_slot_cat(fun: SetFunctor, slot: int, cat: FinCat, var: str) -> SetFunctor:
    cats = fun.cats[:slot] + (cat,) + fun.cats[slot + 1 :]
    variance = fun.variance[:slot] + (var,) + fun.variance[slot + 1 :]
    return SetFunctor(cats, variance, fun.values, fun.action)


def flip_to_output(p: Profunctor, name: str) -> Profunctor:
    """Move an input coordinate to the last output position.

    The coordinate's category is replaced by its opposite; the stored
    action tables are unchanged because a covariant slot over C and a
    contravariant slot over C^op have identical anchoring and moves.
    """
    i = p.slot(name)
    if i >= len(p.inputs):
        raise InterfaceError(f"{name!r} is not an input")
    cat = p.inputs[i][1]
    perm = [j for j in range(len(p.coords)) if j != i] + [i]
    body = _permute_slots(p.body, perm)
    body = _with_slot_cat(body, len(p.coords) - 1, opposite(cat), "-")
    inputs = p.inputs[:i] + p.inputs[i + 1 :]
    outputs = p.outputs + ((name, opposite(cat)),)
    return Profunctor(inputs, outputs, body)


def flip_to_input(p: Profunctor, name: str) -> Profunctor:
    """Move an output coordinate to the last input position (dual flip)."""
    i = p.slot(name)
    if i < len(p.inputs):
        raise InterfaceError(f"{name!r} is not an output")
    cat = p.outputs[i - len(p.inputs)][1]
    perm = [j for j in range(len(p.inputs))] + [i] + [
        j for j in range(len(p.inputs), len(p.coords)) if j != i
    ]
    body = _permute_slots(p.body, perm)
    body = _with_slot_cat(body, len(p.inputs), opposite(cat), "+")
    oi = i - len(p.inputs)
    inputs = p.inputs + ((name, opposite(cat)),)
    outputs = p.outputs[:oi] + p.outputs[oi + 1 :]
    return Profunctor(inputs, outputs, body)


def move_output_to_end(p: Profunctor, name: str) -> Profunctor:
    i = p.slot(name)
    if i < len(p.inputs):
        raise InterfaceError(f"{name!r} is not an output")
    perm = [j for j in range(len(p.coords)) if j != i] + [i]
    oi = i - len(p.inputs)
    outputs = p.outputs[:oi] + p.outputs[oi + 1 :] + (p.outputs[oi],)
    return Profunctor(p.inputs, outputs, _permute_slots(p.body, perm))


def move_input_to_end(p: Profunctor, name: str) -> Profunctor:
    i = p.slot(name)
    if i >= len(p.inputs):
        raise InterfaceError(f"{name!r} is not an input")
    perm = [j for j in range(len(p.inputs)) if j != i] + [i] + list(
        range(len(p.inputs), len(p.coords))
    )
    inputs = p.inputs[:i] + p.inputs[i + 1 :] + (p.inputs[i],)
    return Profunctor(inputs, p.outputs, _permute_slots(p.body, perm))


def pointwise_pair(p: Profunctor, q: Profunctor) -> Profunctor:
    """Same interface on both sides; fibres become pairs (pe, qe)."""
    if p.inputs != q.inputs or p.outputs != q.outputs:
        raise InterfaceError("pointwise pairing needs identical interfaces")
    body = SetFunctor(p.body.cats, p.body.variance, {}, {})
    for pt in body.points():
        body.values[pt] = frozenset(
            (pe, qe) for pe in p.body.at(pt) for qe in q.body.at(pt)
        )
    for pt in body.points():
        for i in range(len(body.cats)):
            for f in _anchored_arrows(body, pt, i):
                pm = p.body.map1(pt, i, f)
                qm = q.body.map1(pt, i, f)
                body.action[(i, pt, f)] = {
                    (pe, qe): (pm[pe], qm[qe]) for (pe, qe) in body.values[pt]
                }
    return Profunctor(p.inputs, p.outputs, body)


def reindex(p: Profunctor, name: str, new_cat: FinCat, on_obj: dict, on_arr: dict) -> Profunctor:
    """Precompose one coordinate with a functor new_cat -> old category.

    on_obj/on_arr give the functor's tables; they are checked for
    functoriality.  The fibre at an object c of new_cat is the old
    fibre at on_obj[c].
    """
    slot = p.slot(name)
    old_cat = p.coords[slot][1]
    for f, (s, t) in new_cat.arrows.items():
        g = on_arr[f]
        if (old_cat.src(g), old_cat.dst(g)) != (on_obj[s], on_obj[t]):
            raise InterfaceError(f"reindexing table is not a functor at {f!r}")
    for obj in new_cat.objects:
        if on_arr[new_cat.id_of(obj)] != old_cat.id_of(on_obj[obj]):
            raise InterfaceError(f"reindexing table drops the identity at {obj!r}")
    for (f, g), h in new_cat.compose.items():
        if old_cat.comp(on_arr[f], on_arr[g]) != on_arr[h]:
            raise InterfaceError(f"reindexing table breaks composition at ({f!r}, {g!r})")

    def back(pt):
        return pt[:slot] + (on_obj[pt[slot]],) + pt[slot + 1 :]

    cats = p.body.cats[:slot] + (new_cat,) + p.body.cats[slot + 1 :]
    body = SetFunctor(cats, p.body.variance, {}, {})
    for pt in body.points():
        body.values[pt] = p.body.at(back(pt))
    for pt in body.points():
        for i in range(len(cats)):
            for f in _anchored_arrows(body, pt, i):
                g = on_arr[f] if i == slot else f
                body.action[(i, pt, f)] = dict(p.body.map1(back(pt), i, g))
    coords = list(p.coords)
    coords[slot] = (name, new_cat)
    return Profunctor(tuple(coords[: len(p.inputs)]), tuple(coords[len(p.inputs) :]), body)


# ---------------------------------------------------------------------------
# composition


@dataclass
class Composite:
    """A composed profunctor along with its coend bookkeeping.

    left_point/right_point rebuild the factor points for a residual
    point and a choice of diagonal object; inject names the class of a
    pair of factor elements.
    """

    prof: Profunctor
    coend_data: CoendResult
    left: Profunctor
    right: Profunctor
    coord: str

    def _assignment(self, rem_point, a):
        names = [n for n, _ in self.prof.coords]
        asg = dict(zip(names, rem_point))
        asg[self.coord] = a
        return asg

    def left_point(self, rem_point, a):
        return self.left.point(self._assignment(rem_point, a))

    def right_point(self, rem_point, a):
        return self.right.point(self._assignment(rem_point, a))

    def inject(self, rem_point, a, pe, qe):
        return self.coend_data.inject(rem_point, a, (pe, qe))


def compose_over_full(p: Profunctor, q: Profunctor, coord: str) -> Composite:
    """Compose p and q by pairing p's output `coord` with q's input `coord`.

    Every other coordinate is ambient: a name carried by both factors
    is shared (same side, same category) and appears once in the
    result, a name carried by one factor passes through untouched.
    The result fibre is the coend of the pairwise products over the
    two coord slots.
    """
    if coord not in p.output_names:
        raise InterfaceError(f"{coord!r} is not an output of the left factor")
    if coord not in q.input_names:
        raise InterfaceError(f"{coord!r} is not an input of the right factor")
    base = p.cat_of(coord)
    if q.cat_of(coord) != base:
        raise InterfaceError(f"{coord!r} ranges over different categories")
    for n in set(p.input_names) & set(q.input_names):
        if p.cat_of(n) != q.cat_of(n):
            raise InterfaceError(f"shared input {n!r} ranges over different categories")
    for n in set(p.output_names) & set(q.output_names):
        if p.cat_of(n) != q.cat_of(n):
            raise InterfaceError(f"shared output {n!r} ranges over different categories")
    if (set(p.input_names) & set(q.output_names)) or (
        (set(p.output_names) - {coord}) & (set(q.input_names) - {coord})
    ):
        raise InterfaceError("a coordinate name switches sides between the factors")

    r_inputs = p.inputs + tuple(
        (n, c) for n, c in q.inputs if n != coord and n not in p.input_names
    )
    r_outputs = tuple((n, c) for n, c in p.outputs if n != coord) + tuple(
        (n, c) for n, c in q.outputs if n not in p.output_names
    )
    n_in, n_out = len(r_inputs), len(r_outputs)
    cats = tuple(c for _, c in r_inputs) + tuple(c for _, c in r_outputs) + (base, base)
    variance = ("+",) * n_in + ("-",) * n_out + ("+", "-")
    names = [n for n, _ in r_inputs] + [n for n, _ in r_outputs]
    p_names = set(p.input_names) | set(p.output_names)
    q_names = set(q.input_names) | set(q.output_names)

    def p_point(hp):
        asg = dict(zip(names, hp))
        asg[coord] = hp[-1]  # p reads the contravariant copy
        return p.point(asg)

    def q_point(hp):
        asg = dict(zip(names, hp))
        asg[coord] = hp[-2]  # q reads the covariant copy
        return q.point(asg)

    paired = SetFunctor(cats, variance, {}, {})
    for hp in paired.points():
        paired.values[hp] = frozenset(
            (pe, qe)
            for pe in p.body.at(p_point(hp))
            for qe in q.body.at(q_point(hp))
        )
    for hp in paired.points():
        fibre = paired.values[hp]
        for i in range(len(cats)):
            for f in _anchored_arrows(paired, hp, i):
                if i < n_in + n_out:
                    n = names[i]
                    pm = p.body.map1(p_point(hp), p.slot(n), f) if n in p_names else None
                    qm = q.body.map1(q_point(hp), q.slot(n), f) if n in q_names else None
                elif i == n_in + n_out:  # q's covariant coord copy
                    pm, qm = None, q.body.map1(q_point(hp), q.slot(coord), f)
                else:  # p's contravariant coord copy
                    pm, qm = p.body.map1(p_point(hp), p.slot(coord), f), None
                paired.action[(i, hp, f)] = {
                    (pe, qe): (
                        pm[pe] if pm is not None else pe,
                        qm[qe] if qm is not None else qe,
                    )
                    for (pe, qe) in fibre
                }
    data = coend(paired, n_in + n_out, n_in + n_out + 1)
    prof = Profunctor(r_inputs, r_outputs, data.functor)
    return Composite(prof, data, p, q, coord)


def compose_over(p: Profunctor, q: Profunctor, coord: str) -> Profunctor:
    return compose_over_full(p, q, coord).prof


# ---------------------------------------------------------------------------
# 2-cells


@dataclass
class NatTrans:
    source: Profunctor
    target: Profunctor
    components: dict  # point -> {elem: elem}

    def at(self, point) -> dict:
        return self.components[point]


def identity_nat(p: Profunctor) -> NatTrans:
    return NatTrans(p, p, {pt: {e: e for e in p.body.at(pt)} for pt in p.body.points()})


def _same_interface(p: Profunctor, q: Profunctor) -> bool:
    return p.inputs == q.inputs and p.outputs == q.outputs


def validate_nat(t: NatTrans) -> None:
    """Totality on every fibre plus every naturality square, exhaustively."""
    if not _same_interface(t.source, t.target):
        raise InterfaceError("2-cell endpoints have different interfaces")
    pts = t.source.body.points()
    if set(t.components) != set(pts):
        raise InterfaceError("2-cell components are not indexed by the points")
    for pt in pts:
        comp = t.components[pt]
        if set(comp) != set(t.source.body.at(pt)):
            raise InterfaceError(f"component at {pt!r} is not total on the source fibre")
        if not set(comp.values()) <= set(t.target.body.at(pt)):
            raise InterfaceError(f"component at {pt!r} leaves the target fibre")
    for (i, pt, f), sm in t.source.body.action.items():
        pt2 = t.source.body.moved(pt, i, f)
        tm = t.target.body.map1(pt, i, f)
        here, there = t.components[pt], t.components[pt2]
        for e in t.source.body.at(pt):
            if there[sm[e]] != tm[here[e]]:
                name = ([n for n, _ in t.source.coords])[i]
                raise InterfaceError(
                    f"naturality fails at coordinate {name!r}, point {pt!r}, "
                    f"arrow {f!r}, element {e!r}: "
                    f"{there[sm[e]]!r} != {tm[here[e]]!r}"
                )


def vcomp(s: NatTrans, t: NatTrans) -> NatTrans:
    if s.target != t.source:
        raise InterfaceError("2-cells do not share the middle profunctor")
    comps = {
        pt: {e: t.components[pt][s.components[pt][e]] for e in s.components[pt]}
        for pt in s.components
    }
    return NatTrans(s.source, t.target, comps)


def nat_eq(s: NatTrans, t: NatTrans) -> bool:
    if s.source != t.source or s.target != t.target:
        raise InterfaceError("2-cells compared across different endpoints")
    return s.components == t.components


def whisker(t: NatTrans, p: Profunctor, coord: str) -> NatTrans:
    """Compose a 2-cell with an unchanging profunctor along coord.

    The side is read off the interface: if coord is an output of t's
    endpoints, t is the left factor; if an input, the right.  The
    component maps descend to coend classes via induced_map.
    """
    if coord in t.source.output_names:
        src = compose_over_full(t.source, p, coord)
        dst = compose_over_full(t.target, p, coord)

        def push(rp, node):
            a, (pe, qe) = node
            moved = t.components[src.left_point(rp, a)][pe]
            return dst.inject(rp, a, moved, qe)

    elif coord in t.source.input_names:
        src = compose_over_full(p, t.source, coord)
        dst = compose_over_full(p, t.target, coord)

        def push(rp, node):
            a, (pe, qe) = node
            moved = t.components[src.right_point(rp, a)][qe]
            return dst.inject(rp, a, pe, moved)

    else:
        raise InterfaceError(f"{coord!r} is not a coordinate of the 2-cell")
    comps = {}
    for rp in src.prof.body.points():
        comps[rp] = induced_map(
            src.coend_data.members[rp], lambda node, _rp=rp: push(_rp, node)
        )
    return NatTrans(src.prof, dst.prof, comps)
