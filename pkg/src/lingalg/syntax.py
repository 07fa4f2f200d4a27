"""Narrow-syntax derivation engine.

Syntactic objects are immutable unordered binary sets over lexical
tokens.  Merge never mutates its inputs: external merge combines two
workspace roots into a fresh set, internal merge re-merges a term of a
root with that root, which leaves the original term in place and so
yields two structurally identical occurrences (copies) of it.  Because
every lexicon selection mints a fresh token, two subtrees are equal iff
they are copies, and occurrence classes are simply values occurring at
more than one path.

Phases: a root whose head is a phase head can be closed; afterwards only
the closed object as a whole and its edge (the member that linearizes
first) remain accessible, the edge only until the next closure.  Any
operation that reaches deeper raises :class:`PhaseError`.

Labeling runs at transfer by minimal search: breadth-first through the
set, skipping non-highest copies, for the shallowest head-marked ("+H")
lexical item.  A unique find labels the set with the head's category; a
tie or an exhausted search falls back to the intersection of the two
members' prominent features (an interpretive stand-in for the open
{XP, YP} case), and an empty intersection crashes the derivation with
:class:`UnlabelableError`.

Transfer hands the same labeled structure to both interfaces: the
logical form keeps every occurrence, the phonological form linearizes
(specifier before head before complement, a pluggable convention) and
pronounces one occurrence per class, by default the highest.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Any, Iterator, Optional, Sequence

DEFAULT_PHASE_HEAD_CATS = frozenset({"C", "v"})
DEFAULT_SPECIFIER_CATS = frozenset({"D", "Q", "A", "Wh"})

PRONOUNCE_POLICIES = ("highest", "lowest", "all")


class DerivationError(Exception):
    """Base class; ``reason`` is the machine-readable code."""

    reason = "derivation-error"


class MergeError(DerivationError):
    reason = "merge-error"


class PhaseError(DerivationError):
    reason = "phase-error"


class UnlabelableError(DerivationError):
    reason = "unlabelable"


# ---------------------------------------------------------------------------
# lexicon
# ---------------------------------------------------------------------------


def _normalize_feature(feat: str) -> str:
    return feat.replace("−", "-").strip()


def _split_signed(features) -> dict[str, str]:
    """Map signed feature name -> sign, rejecting contradictory signs."""
    signs: dict[str, str] = {}
    for f in features:
        if f.startswith(("+", "-")):
            sign, name = f[0], f[1:]
            if signs.get(name, sign) != sign:
                raise ValueError(f"contradictory signs for feature {name!r}")
            signs[name] = sign
    return signs


@dataclass(frozen=True)
class LexItem:
    """A lexical token: unique id, externalized form, signed features.

    ``annotations`` carries unknown lexicon keys (agree/pair-merge
    markings and the like) inertly; it takes no part in equality.
    """

    id: str
    phon: str
    features: frozenset[str]
    phase_head: bool = False
    annotations: Any = field(default=None, compare=False)

    def __post_init__(self):
        feats = frozenset(_normalize_feature(f) for f in self.features)
        object.__setattr__(self, "features", feats)
        _split_signed(feats)
        if len([f for f in feats if f.startswith("cat:")]) > 1:
            raise ValueError(f"{self.id}: more than one category tag")

    @property
    def entry_id(self) -> str:
        return self.id.split("#", 1)[0]

    @property
    def category(self) -> Optional[str]:
        for f in self.features:
            if f.startswith("cat:"):
                return f[4:]
        return None

    @property
    def is_head_marked(self) -> bool:
        return "+H" in self.features

    def plus_features(self) -> frozenset[str]:
        return frozenset(f[1:] for f in self.features if f.startswith("+"))


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, LexItem]
    phase_head_cats: frozenset[str] = DEFAULT_PHASE_HEAD_CATS
    specifier_cats: frozenset[str] = DEFAULT_SPECIFIER_CATS

    def __getitem__(self, entry_id: str) -> LexItem:
        return self.entries[entry_id]


def load_lexicon(data) -> Lexicon:
    """Build a lexicon from the JSON shape: a list of item objects, or a
    dict {items: [...], phase_head_categories: [...], specifier_categories: [...]}.

    Unknown per-item keys are kept as inert annotations.
    """
    phase_cats = DEFAULT_PHASE_HEAD_CATS
    spec_cats = DEFAULT_SPECIFIER_CATS
    if isinstance(data, dict):
        if "phase_head_categories" in data:
            phase_cats = frozenset(data["phase_head_categories"])
        if "specifier_categories" in data:
            spec_cats = frozenset(data["specifier_categories"])
        items = data["items"]
    else:
        items = data
    entries = {}
    for raw in items:
        known = {"id", "phon", "features", "phase_head"}
        extras = {k: v for k, v in raw.items() if k not in known}
        item = LexItem(
            id=raw["id"],
            phon=raw.get("phon", raw["id"]),
            features=frozenset(raw.get("features", ())),
            phase_head=bool(raw.get("phase_head", False)),
            annotations=tuple(sorted(extras.items())) or None,
        )
        if item.id in entries:
            raise ValueError(f"duplicate lexicon id {item.id!r}")
        entries[item.id] = item
    return Lexicon(entries, phase_cats, spec_cats)


def load_lexicon_file(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return load_lexicon(json.load(fh))


# ---------------------------------------------------------------------------
# syntactic objects
# ---------------------------------------------------------------------------


class SynObj:
    """Immutable leaf (lexical token) or unordered pair of SynObj.

    Members are stored sorted by their canonical form, so {a, b} and
    {b, a} construct identical objects; the canonical string doubles as
    the structural identity used for equality, hashing and copy
    detection.
    """

    __slots__ = ("item", "members", "canon", "_hash")

    def __init__(self, item=None, members=None, _canon=None):
        if (item is None) == (members is None):
            raise ValueError("a SynObj is a leaf or a pair, never both")
        object.__setattr__(self, "item", item)
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "canon", _canon)
        object.__setattr__(self, "_hash", hash(_canon))

    def __setattr__(self, name, value):
        raise AttributeError("SynObj is immutable")

    @staticmethod
    def lexical(item: LexItem) -> "SynObj":
        return SynObj(item=item, _canon=item.id)

    @property
    def is_leaf(self) -> bool:
        return self.item is not None

    def __eq__(self, other):
        if not isinstance(other, SynObj):
            return NotImplemented
        return self.canon == other.canon

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SynObj({self.canon})"

    def subtree_at(self, path: Sequence[int]) -> "SynObj":
        node = self
        for idx in path:
            if node.is_leaf:
                raise MergeError(f"path {tuple(path)} runs past a leaf")
            if idx not in (0, 1):
                raise MergeError(f"path {tuple(path)} uses a non-binary index")
            node = node.members[idx]
        return node

    def walk(self, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], "SynObj"]]:
        """Yield (path, node) pairs, parent first, canonical member order."""
        yield path, self
        if not self.is_leaf:
            for i, m in enumerate(self.members):
                yield from m.walk(path + (i,))

    def leaves(self) -> Iterator[LexItem]:
        for _, node in self.walk():
            if node.is_leaf:
                yield node.item


def merge_sets(a: SynObj, b: SynObj) -> SynObj:
    """The bare set former {a, b}; rejects a == b (sets have no {a, a})."""
    if a.canon == b.canon:
        raise MergeError("cannot merge an object with itself")
    m0, m1 = sorted((a, b), key=lambda s: s.canon)
    return SynObj(members=(m0, m1), _canon="{" + m0.canon + " " + m1.canon + "}")


def occurrences(root: SynObj) -> dict[str, list[tuple[int, ...]]]:
    """Every subtree value's paths, shallowest first.

    Distinct paths for one value are copies of each other.  Depths within
    a class are always distinct (internal merge puts the new occurrence
    strictly above the old ones), so depth plus canonical path order
    fixes "highest" deterministically.
    """
    occ: dict[str, list[tuple[int, ...]]] = defaultdict(list)
    for path, node in root.walk():
        occ[node.canon].append(path)
    for paths in occ.values():
        paths.sort(key=lambda p: (len(p), p))
    return dict(occ)


# ---------------------------------------------------------------------------
# labeling by minimal search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _HeadSearch:
    kind: str  # "head" | "tie" | "none"
    item: Optional[LexItem] = None
    member_index: Optional[int] = None  # immediate member holding the head


def _visible(node: SynObj, path: tuple[int, ...], occ) -> bool:
    """A non-highest occurrence (a lower copy) is invisible to search."""
    return occ[node.canon][0] == path


def _minimal_head(node: SynObj, anchor: tuple[int, ...], occ) -> _HeadSearch:
    """Breadth-first minimal search for the shallowest visible "+H" leaf."""
    level = [(node, anchor, None)]
    while level:
        found = []
        nxt = []
        for nd, path, top in level:
            if nd.is_leaf:
                if nd.item.is_head_marked:
                    found.append((nd.item, top))
                continue
            for i, m in enumerate(nd.members):
                mp = path + (i,)
                if not _visible(m, mp, occ):
                    continue
                nxt.append((m, mp, i if top is None else top))
        if len(found) == 1:
            return _HeadSearch("head", found[0][0], found[0][1])
        if len(found) > 1:
            return _HeadSearch("tie")
        level = nxt
    return _HeadSearch("none")


def _item_label(item: LexItem) -> str:
    cat = item.category
    if cat is not None:
        return cat
    names = sorted(item.plus_features() - {"H"})
    if names:
        return "&".join(names)
    raise UnlabelableError(f"head {item.id} carries no category or content feature")


def _prominent(node: SynObj, anchor: tuple[int, ...], occ) -> frozenset[str]:
    """Feature basis a member offers for sharing: its head's plus-signed
    names (headness mark excluded) together with its category tag."""
    if node.is_leaf:
        return (node.item.plus_features() - {"H"}) | (
            {node.item.category} if node.item.category else frozenset()
        )
    res = _minimal_head(node, anchor, occ)
    if res.kind == "head":
        return (res.item.plus_features() - {"H"}) | (
            {res.item.category} if res.item.category else frozenset()
        )
    return _shared_basis(node, anchor, occ)


def _shared_basis(node: SynObj, anchor: tuple[int, ...], occ) -> frozenset[str]:
    bases = []
    for i, m in enumerate(node.members):
        mp = anchor + (i,)
        if _visible(m, mp, occ):
            bases.append(_prominent(m, mp, occ))
    if not bases:
        # total remnant: everything in the set has moved out.  Copies are
        # structurally identical, so prominence is a property of the
        # class; evaluate each member at its own highest occurrence.
        bases = [_prominent(m, occ[m.canon][0], occ) for m in node.members]
    shared = bases[0]
    for b in bases[1:]:
        shared = shared & b
    if not shared:
        raise UnlabelableError(f"members of {node.canon} share no prominent feature")
    return shared


def _label_search(node: SynObj, occ) -> tuple[str, _HeadSearch]:
    anchor = occ[node.canon][0]
    if node.is_leaf:
        return _item_label(node.item), _HeadSearch("head", node.item, None)
    res = _minimal_head(node, anchor, occ)
    if res.kind == "head":
        return _item_label(res.item), res
    return "&".join(sorted(_shared_basis(node, anchor, occ))), res


def label(so: SynObj) -> str:
    """Category assigned by the minimal-search labeling of ``so``.

    Treats ``so`` as its own transfer root; raises UnlabelableError when
    neither a unique head nor a shared prominent feature exists.
    """
    return _label_search(so, occurrences(so))[0]


# ---------------------------------------------------------------------------
# linearization (externalization convention, pluggable by lexicon config)
# ---------------------------------------------------------------------------


def _contains(container: SynObj, value: SynObj) -> bool:
    return any(node.canon == value.canon for _, node in container.walk())


def _member_order(node: SynObj, search: _HeadSearch, specifier_cats) -> tuple[int, int]:
    """Order of the two members at externalization.

    Convention: specifier before head before complement.  A member that
    re-occurs inside its sister is a moved copy landing on top and
    precedes, whatever its headedness.  Otherwise a non-head leaf tagged
    with a specifier category (or "lin:pre") precedes; a lexical head
    precedes its phrasal complement; a phrasal non-head sister of a
    phrasal head projection precedes as its specifier; a genuinely
    symmetric set keeps canonical order.
    """
    if _contains(node.members[1], node.members[0]):
        return (0, 1)
    if _contains(node.members[0], node.members[1]):
        return (1, 0)
    if search.kind == "head" and search.member_index is not None:
        h = search.member_index
        o = 1 - h
        other = node.members[o]
        if other.is_leaf:
            feats = other.item.features
            cat = other.item.category
            if "lin:post" in feats:
                return (h, o)
            if "lin:pre" in feats or (cat in specifier_cats):
                return (o, h)
            return (h, o) if node.members[h].is_leaf else (o, h)
        return (h, o) if node.members[h].is_leaf else (o, h)
    return (0, 1)


# ---------------------------------------------------------------------------
# transfer output
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CopyClass:
    """One occurrence class with more than one occurrence."""

    class_id: int
    term: str  # canonical form of the copied term
    occurrences: int
    pronounced: int


@dataclass(frozen=True)
class TransferOutput:
    lf: dict
    pf: tuple[str, ...]
    copy_classes: tuple[CopyClass, ...]


# ---------------------------------------------------------------------------
# the derivation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhaseRecord:
    root: SynObj
    edge_index: int
    fresh: bool


@dataclass(frozen=True)
class Derivation:
    """Immutable derivation state: operations return a new Derivation.

    The workspace is the ordered set of current roots; the log replays to
    an identical workspace via :func:`replay`.
    """

    lexicon: Lexicon
    workspace: tuple[SynObj, ...] = ()
    log: tuple[dict, ...] = ()
    phases: tuple[PhaseRecord, ...] = ()
    counter: int = 0

    # -- helpers ----------------------------------------------------------

    @property
    def last(self) -> SynObj:
        if not self.workspace:
            raise MergeError("empty workspace")
        return self.workspace[-1]

    def _root_index(self, so: SynObj) -> int:
        for i, r in enumerate(self.workspace):
            if r.canon == so.canon:
                return i
        raise MergeError(
            f"{so.canon} is not a workspace root"
            + (
                "; it is a term of an existing root (internal merge applies there)"
                if any(_contains(r, so) for r in self.workspace)
                else ""
            )
        )

    def _logged(self, entry: dict, **changes) -> "Derivation":
        changes["log"] = self.log + (entry,)
        return replace(self, **changes)

    def _phase_record_for(self, canon: str) -> Optional[PhaseRecord]:
        for rec in self.phases:
            if rec.root.canon == canon:
                return rec
        return None

    # -- operations --------------------------------------------------------

    def select(self, entry_id: str) -> tuple["Derivation", SynObj]:
        """Draw a fresh token of a lexicon entry into the workspace."""
        try:
            entry = self.lexicon[entry_id]
        except KeyError:
            raise MergeError(f"unknown lexicon entry {entry_id!r}") from None
        token = LexItem(
            id=f"{entry.id}#{self.counter}",
            phon=entry.phon,
            features=entry.features,
            phase_head=entry.phase_head,
            annotations=entry.annotations,
        )
        leaf = SynObj.lexical(token)
        d = self._logged(
            {"op": "select", "item": entry_id},
            workspace=self.workspace + (leaf,),
            counter=self.counter + 1,
        )
        return d, leaf

    def external_merge(self, a: SynObj, b: SynObj) -> "Derivation":
        """{a, b} from two distinct workspace roots; a and b are untouched."""
        ia = self._root_index(a)
        ib = self._root_index(b)
        if ia == ib:
            raise MergeError("external merge needs two distinct roots")
        merged = merge_sets(self.workspace[ia], self.workspace[ib])
        ws = tuple(r for i, r in enumerate(self.workspace) if i not in (ia, ib))
        return self._logged(
            {"op": "em", "left": a.canon, "right": b.canon},
            workspace=ws + (merged,),
        )

    def internal_merge(self, root: SynObj, path: Sequence[int]) -> "Derivation":
        """Re-merge the term of ``root`` at ``path`` with ``root`` itself.

        The result {term, root} holds a new occurrence of the term while
        the original stays in place inside the unchanged root.
        """
        idx = self._root_index(root)
        root = self.workspace[idx]
        path = tuple(path)
        if not path:
            raise MergeError("internal merge needs a proper term, not the root")
        term = root.subtree_at(path)
        self._check_accessible(root, path)
        merged = merge_sets(term, root)
        ws = tuple(r for i, r in enumerate(self.workspace) if i != idx)
        return self._logged(
            {"op": "im", "root": root.canon, "path": list(path)},
            workspace=ws + (merged,),
        )

    def _check_accessible(self, root: SynObj, path: tuple[int, ...]) -> None:
        """Enforce impenetrability along the walk from root to the target."""
        node = root
        for i, idx in enumerate(path):
            rec = self._phase_record_for(node.canon)
            if rec is not None:
                remainder = path[i:]
                at_edge = remainder == (rec.edge_index,)
                if not (at_edge and rec.fresh):
                    raise PhaseError(
                        f"target is inside the closed phase {node.canon}"
                        + ("" if at_edge else " (off the edge)")
                    )
            node = node.members[idx]

    def close_phase(self, root: SynObj) -> "Derivation":
        """Mark a phase-headed root as computed; its interior goes off limits.

        The edge (the member externalized first) stays accessible until
        the next closure.  Closing an already-closed root is a no-op.
        """
        idx = self._root_index(root)
        root = self.workspace[idx]
        if self._phase_record_for(root.canon) is not None:
            return self
        if root.is_leaf:
            raise PhaseError("a bare lexical item is not a phase")
        occ = occurrences(root)
        res = _minimal_head(root, (), occ)
        if res.kind != "head":
            raise PhaseError(f"no unique head found for {root.canon}")
        head = res.item
        if not (head.phase_head or head.category in self.lexicon.phase_head_cats):
            raise PhaseError(
                f"head {head.id} ({head.category}) is not a phase head"
            )
        order = _member_order(root, res, self.lexicon.specifier_cats)
        records = tuple(
            PhaseRecord(r.root, r.edge_index, fresh=False) for r in self.phases
        ) + (PhaseRecord(root, order[0], fresh=True),)
        return self._logged({"op": "close", "root": root.canon}, phases=records)

    def transfer(self, root: SynObj, pronounce: str = "highest") -> tuple["Derivation", TransferOutput]:
        """Label everything and hand the structure to both interfaces.

        The logical form keeps all occurrences with their labels; the
        phonological form is linearized and pronounces one occurrence per
        copy class (``pronounce``: highest, lowest or all).  Labeling
        failure propagates as UnlabelableError: the derivation crashes.
        """
        if pronounce not in PRONOUNCE_POLICIES:
            raise ValueError(f"pronounce must be one of {PRONOUNCE_POLICIES}")
        idx = self._root_index(root)
        root = self.workspace[idx]
        occ = occurrences(root)

        searches: dict[str, _HeadSearch] = {}
        labels: dict[str, str] = {}
        for canon, paths in occ.items():
            node = root.subtree_at(paths[0])
            if node.is_leaf:
                continue
            labels[canon], searches[canon] = _label_search(node, occ)

        copy_canons = sorted(
            (c for c, paths in occ.items() if len(paths) > 1),
            key=lambda c: occ[c][0],
        )
        class_ids = {c: k for k, c in enumerate(copy_canons)}

        def chosen(paths):
            if pronounce == "highest":
                return {paths[0]}
            if pronounce == "lowest":
                return {paths[-1]}
            return set(paths)

        pronounced_paths = {
            canon: chosen(paths) for canon, paths in occ.items()
        }

        pf: list[str] = []
        pronounced_count: Counter = Counter()

        def emit(node: SynObj, path: tuple[int, ...]) -> None:
            if path not in pronounced_paths[node.canon]:
                return
            if node.is_leaf:
                if node.canon in class_ids:
                    pronounced_count[node.canon] += 1
                if node.item.phon:
                    pf.append(node.item.phon)
                return
            if node.canon in class_ids:
                pronounced_count[node.canon] += 1
            order = _member_order(node, searches[node.canon], self.lexicon.specifier_cats)
            for i in order:
                emit(node.members[i], path + (i,))

        emit(root, ())

        def lf_node(node: SynObj, path: tuple[int, ...]) -> dict:
            out: dict = {}
            if node.is_leaf:
                out["item"] = node.item.id
                out["phon"] = node.item.phon
                out["features"] = sorted(node.item.features)
            else:
                out["label"] = labels[node.canon]
                out["members"] = [
                    lf_node(m, path + (i,)) for i, m in enumerate(node.members)
                ]
            if node.canon in class_ids:
                paths = occ[node.canon]
                out["copy_class"] = class_ids[node.canon]
                out["occurrence"] = paths.index(path)
                out["pronounced"] = path in pronounced_paths[node.canon]
            return out

        lf = lf_node(root, ())
        classes = tuple(
            CopyClass(
                class_id=class_ids[c],
                term=c,
                occurrences=len(occ[c]),
                pronounced=pronounced_count[c],
            )
            for c in copy_canons
        )
        d = self._logged({"op": "transfer", "root": root.canon, "pronounce": pronounce})
        return d, TransferOutput(lf=lf, pf=tuple(pf), copy_classes=classes)


def start(lexicon: Lexicon) -> Derivation:
    return Derivation(lexicon=lexicon)


# ---------------------------------------------------------------------------
# term addressing, replay, scripts
# ---------------------------------------------------------------------------


def find_terms_by_leaves(root: SynObj, entry_ids: Sequence[str]) -> list[tuple[int, ...]]:
    """Paths of the proper terms whose leaf entry multiset matches."""
    want = Counter(entry_ids)
    return [
        path
        for path, node in root.walk()
        if path and Counter(i.entry_id for i in node.leaves()) == want
    ]


def replay(lexicon: Lexicon, log: Sequence[dict]) -> Derivation:
    """Re-execute a derivation log against a lexicon.

    Roots are identified by their canonical form, which the log stores;
    replaying a log yields a workspace identical to the original.
    """
    d = Derivation(lexicon=lexicon)

    def lookup(canon: str) -> SynObj:
        for r in d.workspace:
            if r.canon == canon:
                return r
        raise MergeError(f"log references unknown root {canon}")

    for entry in log:
        op = entry["op"]
        if op == "select":
            d, _ = d.select(entry["item"])
        elif op == "em":
            d = d.external_merge(lookup(entry["left"]), lookup(entry["right"]))
        elif op == "im":
            d = d.internal_merge(lookup(entry["root"]), tuple(entry["path"]))
        elif op == "close":
            d = d.close_phase(lookup(entry["root"]))
        elif op == "transfer":
            d, _ = d.transfer(lookup(entry["root"]), entry.get("pronounce", "highest"))
        else:
            raise MergeError(f"unknown log op {op!r}")
    return d


def run_script(lexicon: Lexicon, script: Sequence[dict]) -> dict:
    """Drive a derivation from the JSON op list; returns {lf, pf, log, errors}.

    Op arguments name roots with {"ref": name} (bound by a previous op's
    "as"), {"root": index} or, for em, {"select": entry} for a fresh
    token.  Internal-merge targets are {"path": [...]} or
    {"leaves": [entries...]} with an optional "occurrence" selector when
    several terms match.
    """
    d = Derivation(lexicon=lexicon)
    names: dict[str, SynObj] = {}
    outputs: list[TransferOutput] = []

    def resolve(ref, allow_select=False):
        nonlocal d
        if isinstance(ref, dict) and "select" in ref:
            if not allow_select:
                raise MergeError("fresh selection only allowed in external merge")
            d, leaf = d.select(ref["select"])
            return leaf
        if isinstance(ref, dict) and "ref" in ref:
            try:
                return names[ref["ref"]]
            except KeyError:
                raise MergeError(f"unknown name {ref['ref']!r}") from None
        if isinstance(ref, dict) and "root" in ref:
            try:
                return d.workspace[ref["root"]]
            except IndexError:
                raise MergeError(f"no workspace root {ref['root']}") from None
        raise MergeError(f"cannot resolve object reference {ref!r}")

    def target_path(root: SynObj, spec) -> tuple[int, ...]:
        if "path" in spec:
            return tuple(spec["path"])
        if "leaves" in spec:
            paths = find_terms_by_leaves(root, spec["leaves"])
            if not paths:
                raise MergeError(f"no term with leaves {spec['leaves']}")
            if len(paths) == 1:
                return paths[0]
            which = spec.get("occurrence")
            paths.sort(key=lambda p: (len(p), p))
            if which == "highest":
                return paths[0]
            if which == "lowest":
                return paths[-1]
            if isinstance(which, int):
                return paths[which]
            raise MergeError(
                f"{len(paths)} terms match {spec['leaves']}; add an 'occurrence' selector"
            )
        raise MergeError(f"cannot resolve target {spec!r}")

    errors: list[dict] = []
    try:
        for op in script:
            kind = op["op"]
            if kind == "em":
                a = resolve(op["left"], allow_select=True)
                b = resolve(op["right"], allow_select=True)
                d = d.external_merge(a, b)
                result = d.last
            elif kind == "im":
                root = resolve(op["root"])
                d = d.internal_merge(root, target_path(root, op["target"]))
                result = d.last
            elif kind == "close":
                root = resolve(op["root"])
                d = d.close_phase(root)
                result = root
            elif kind == "transfer":
                root = resolve(op["root"])
                d, out = d.transfer(root, op.get("pronounce", "highest"))
                outputs.append(out)
                result = root
            else:
                raise MergeError(f"unknown op {kind!r}")
            if "as" in op:
                names[op["as"]] = result
    except DerivationError as exc:
        errors.append({"reason": exc.reason, "message": str(exc)})

    result: dict = {"log": list(d.log), "errors": errors}
    if outputs:
        result["lf"] = outputs[-1].lf
        result["pf"] = list(outputs[-1].pf)
        result["copy_classes"] = [
            {
                "class_id": c.class_id,
                "term": c.term,
                "occurrences": c.occurrences,
                "pronounced": c.pronounced,
            }
            for c in outputs[-1].copy_classes
        ]
    else:
        result["lf"] = None
        result["pf"] = None
        result["copy_classes"] = []
    return result
