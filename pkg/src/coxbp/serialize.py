"""JSON and DOT exports, and element notation parsing.

Elements serialize as arrays of 1-based generator indices (the canonical
reduced word); systems as {type, rank, coxeter_matrix} with 0 standing for
an infinite bond.  One-line notation is supported for input and display in
types A (plain permutations) and B/C/D (signed permutations, where the
special generator acts on the last coordinate(s)); an explicit format tag
resolves ambiguous inputs.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .bp import BPPoset
from .bruhat import BruhatInterval
from .coxeter import CoxeterSystem, GroupElement, UsageError

__all__ = [
    "element_to_json",
    "system_to_json",
    "interval_to_json",
    "interval_to_dot",
    "poset_to_json",
    "poset_to_dot",
    "code_to_json",
    "matrix_to_json",
    "parse_element",
    "element_to_oneline",
    "search_result_to_json",
]


def element_to_json(w: GroupElement) -> list:
    return list(w.word)


def system_to_json(system: CoxeterSystem) -> dict:
    return system.to_json()


def interval_to_json(iv: BruhatInterval) -> dict:
    return {
        "top": list(iv.top.word),
        "J": sorted(iv.J),
        "ranks": [[list(w.word) for w in rank] for rank in iv.ranks],
        "covers": [list(c) for c in iv.covers],
    }


def interval_to_dot(iv: BruhatInterval) -> str:
    lines = ["digraph bruhat_interval {", "  rankdir=BT;"]
    for i, w in enumerate(iv.elements):
        lines.append(f'  n{i} [label="{w}"];')
    for lo, hi in iv.covers:
        lines.append(f"  n{lo} -> n{hi};")
    for rank in iv.ranks:
        ids = " ".join(f"n{iv.index[w]};" for w in rank)
        lines.append("  { rank=same; " + ids + " }")
    lines.append("}")
    return "\n".join(lines)


def poset_to_json(poset: BPPoset) -> dict:
    return {
        "blocks": [sorted(b) for b in poset.blocks],
        "relations": [list(c) for c in poset.covers()],
    }


def poset_to_dot(poset: BPPoset) -> str:
    lines = ["digraph bp_poset {", "  rankdir=BT;"]
    for i, b in enumerate(poset.blocks):
        label = "{" + ",".join(map(str, sorted(b))) + "}"
        lines.append(f'  b{i} [label="{label}"];')
    for lo, hi in poset.covers():
        lines.append(f"  b{lo} -> b{hi};")
    lines.append("}")
    return "\n".join(lines)


def code_to_json(code) -> dict:
    entries = sorted(code.entries.items())
    return {
        "chains": list(code.chains.sizes),
        "entries": [{"tuple": list(t), "word": list(w.word)} for t, w in entries],
    }


def search_result_to_json(result) -> dict:
    out = {
        "status": result.status,
        "candidates": [list(c) for c in result.candidates],
        "exhausted": list(result.exhausted),
        "elapsed": round(result.elapsed, 3),
    }
    if result.code is not None:
        out["code"] = code_to_json(result.code)
    return out


def matrix_to_json(mat) -> dict:
    from .typea import word_from_perm
    return {
        "w": list(mat.w),
        "k": mat.k,
        "rows": [list(u) for u in mat.rows],
        "cols": [list(v) for v in mat.cols],
        "row_words": [list(word_from_perm(u)) for u in mat.rows],
        "col_words": [list(word_from_perm(v)) for v in mat.cols],
        "entries": [list(row) for row in mat.entries],
        "order_provenance": mat.provenance,
    }


# ---------------------------------------------------------------------------
# one-line notation for the classical families


def element_to_oneline(w: GroupElement) -> tuple:
    """One-line (signed for B/C/D) notation of a classical-type element."""
    sys = w.system
    fam = sys.family
    if fam == "A":
        return w._key
    if fam not in ("B", "C", "D"):
        raise UsageError(f"no one-line notation for family {fam}")
    n = sys.rank
    p = list(range(1, n + 1))
    for i in w.word:
        if i < n:
            p[i - 1], p[i] = p[i], p[i - 1]
        elif fam in ("B", "C"):
            p[n - 1] = -p[n - 1]
        else:
            p[n - 2], p[n - 1] = -p[n - 1], -p[n - 2]
    return tuple(p)


def _signed_right_descent(p: list, i: int, fam: str) -> bool:
    # Descent iff w(alpha_i) is a negative root.  For i < n the image is
    # sgn(a) e_|a| - sgn(b) e_|b| with a = w(i), b = w(i+1); it is positive
    # iff the coefficient of the smaller-index coordinate is +1.  The same
    # reading handles the special generator of D (root e_(n-1) + e_n).
    n = len(p)
    if i < n:
        a, b = p[i - 1], p[i]
        if abs(a) < abs(b):
            return a < 0
        return b > 0
    if fam in ("B", "C"):
        return p[n - 1] < 0
    a, b = p[n - 2], p[n - 1]
    small = a if abs(a) < abs(b) else b
    return small < 0


def element_from_oneline(system: CoxeterSystem, p: Iterable[int]) -> GroupElement:
    """Parse (signed) one-line notation for a type A/B/C/D system."""
    fam = system.family
    p = list(p)
    n = system.rank
    if fam == "A":
        if sorted(p) != list(range(1, n + 2)):
            raise UsageError(f"{p} is not a permutation of 1..{n + 1}")
        return system._element_from_key(tuple(p))
    if fam not in ("B", "C", "D"):
        raise UsageError(f"no one-line notation for family {fam}")
    if sorted(abs(v) for v in p) != list(range(1, n + 1)):
        raise UsageError(f"{p} is not a signed permutation of 1..{n}")
    if fam == "D" and sum(1 for v in p if v < 0) % 2 != 0:
        raise UsageError("type D needs an even number of sign changes")
    word = []
    while True:
        for i in range(1, n + 1):
            if _signed_right_descent(p, i, fam):
                if i < n:
                    p[i - 1], p[i] = p[i], p[i - 1]
                elif fam in ("B", "C"):
                    p[n - 1] = -p[n - 1]
                else:
                    p[n - 2], p[n - 1] = -p[n - 1], -p[n - 2]
                word.append(i)
                break
        else:
            break
    if p != list(range(1, n + 1)):
        raise UsageError("signed one-line input did not reduce to the identity")
    return system.from_word(reversed(word))


def parse_element(system: CoxeterSystem, text: str,
                  fmt: Optional[str] = None) -> GroupElement:
    """Parse an element from one-line notation, a reduced word, or letters.

    Without an explicit format the input is accepted only when exactly one
    interpretation is valid; ambiguity raises with a hint to pass one of
    'oneline', 'word' or 'letters'.
    """
    text = text.strip()
    if fmt is not None:
        if fmt == "letters":
            return system.from_letters(text)
        if fmt == "word":
            return system.from_word(_int_tokens(text))
        if fmt == "oneline":
            return element_from_oneline(system, _int_tokens(text))
        raise UsageError(f"unknown element format {fmt!r}")
    attempts = []
    if all(len(lab) == 1 for lab in system.labels) and all(
            c in "".join(system.labels) for c in text):
        attempts.append(("letters", lambda: system.from_letters(text)))
    try:
        tokens = _int_tokens(text)
    except UsageError:
        tokens = None
    if tokens is not None:
        if all(1 <= t <= system.rank for t in tokens):
            attempts.append(("word", lambda: system.from_word(tokens)))
        try_oneline = True
        try:
            probe = element_from_oneline(system, tokens)
        except UsageError:
            try_oneline = False
        if try_oneline:
            attempts.append(("oneline", lambda: probe))
    if not attempts:
        raise UsageError(f"cannot parse element {text!r} for {system.short_name}")
    if len(attempts) > 1:
        names = ", ".join(name for name, _ in attempts)
        raise UsageError(
            f"{text!r} is ambiguous ({names}); pass --format explicitly")
    return attempts[0][1]()


def _int_tokens(text: str) -> list:
    if "," in text or "-" in text:
        parts = [p for p in text.replace(" ", "").split(",") if p]
    else:
        parts = list(text)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UsageError(f"cannot read integers from {text!r}") from None
