"""Derive "which books did you read" with copies, labels, and silence.

Internal merge moves the object phrase to the front without touching the
clause it came from, so the structure ends up holding two occurrences of
it.  The meaning-side output keeps both; the pronunciation-side output
linearizes and speaks only the highest one.
"""

import json

from lingalg.syntax import find_terms_by_leaves, load_lexicon, start

lexicon = load_lexicon(
    [
        {"id": "which", "phon": "which", "features": ["+H", "+Q", "cat:D"]},
        {"id": "books", "phon": "books", "features": ["+N", "-V", "cat:N"]},
        {"id": "read", "phon": "read", "features": ["+H", "+V", "-N", "cat:V"]},
        {"id": "you", "phon": "you", "features": ["+N", "cat:D"]},
        {"id": "did", "phon": "did", "features": ["+H", "+Q", "cat:C"], "phase_head": True},
    ]
)

# build {did {you {read {which books}}}} bottom-up
d = start(lexicon)
d, which = d.select("which")
d, books = d.select("books")
d = d.external_merge(which, books)
wh = d.last
d, read = d.select("read")
d = d.external_merge(read, wh)
vp = d.last
d, you = d.select("you")
d = d.external_merge(you, vp)
pred = d.last
d, did = d.select("did")
d = d.external_merge(did, pred)
clause = d.last

# move the object phrase to the front: one internal merge
[wh_path] = find_terms_by_leaves(clause, ["which", "books"])
d = d.internal_merge(clause, wh_path)

d, out = d.transfer(d.last)
print("pronounced:", " ".join(out.pf))
for c in out.copy_classes:
    print(f"  copy class {c.class_id}: {c.term}  x{c.occurrences}, {c.pronounced} pronounced")

print("\nlogical form (all copies, labels, no order):")
print(json.dumps(out.lf, indent=2)[:600], "...")

# other externalization conventions exist; the structure does not change
_, low = d.transfer(d.last, pronounce="lowest")
_, all_ = d.transfer(d.last, pronounce="all")
print("\npronounce-lowest:", " ".join(low.pf))
print("pronounce-all:   ", " ".join(all_.pf))
