"""Bounded satisfiability: search all Kripke models up to a few worlds."""

from __future__ import annotations

import numpy as np

from ..logic.syntax import (
    And,
    Bottom,
    Box,
    Diamond,
    Formula,
    Implies,
    Letter,
    LogicError,
    Not,
    Or,
    Top,
    check_language,
    letters,
)
from .evaluate import eval_basic
from .models import KripkeModel, ModelError

MAX_STATES = 4
MAX_LETTERS = 3
# (relation, valuation) pairs per evaluated batch
_CELLS = 1 << 22


def _world_names(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def _eval_batch(phi, succ, V, full, cache):
    """Truth table of ``phi`` as world bitmasks, shape broadcastable to
    (relations, valuations).

    ``succ[k]`` is the (r, 1) successor bitmask of world k; ``V`` maps a
    letter to a (1, v) bitmask array; ``full`` has every world bit set.
    """
    if phi in cache:
        return cache[phi]
    t = type(phi)
    rec = lambda x: _eval_batch(x, succ, V, full, cache)  # noqa: E731
    if t is Bottom:
        out = np.zeros((1, 1), dtype=np.uint8)
    elif t is Top:
        out = np.full((1, 1), full, dtype=np.uint8)
    elif t is Letter:
        out = V[phi.name]
    elif t is Not:
        out = rec(phi.arg) ^ np.uint8(full)
    elif t is And:
        out = rec(phi.left) & rec(phi.right)
    elif t is Or:
        out = rec(phi.left) | rec(phi.right)
    elif t is Implies:
        out = (rec(phi.left) ^ np.uint8(full)) | rec(phi.right)
    elif t in (Diamond, Box):
        S = rec(phi.arg)
        if t is Box:
            S = S ^ np.uint8(full)
        out = np.zeros(np.broadcast_shapes(S.shape, succ[0].shape), dtype=np.uint8)
        for k, sk in enumerate(succ):
            out |= ((sk & S) != 0).astype(np.uint8) << np.uint8(k)
        if t is Box:
            out = out ^ np.uint8(full)
    else:
        raise LogicError(f"{t.__name__} is not a basic modal connective")
    cache[phi] = out
    return out


def find_model_bounded(phi: Formula, max_states: int = MAX_STATES):
    """First (model, world) with M, w ⊨ φ, or None.

    Models are tried by size, then relation bitmask, then valuation index,
    then world, all in increasing order; the witness is re-checked with
    :func:`eval_basic`.
    """
    check_language(phi, "basic")
    props = sorted(letters(phi))
    if max_states > MAX_STATES:
        raise ModelError(f"max_states is capped at {MAX_STATES}, got {max_states}")
    if len(props) > MAX_LETTERS:
        raise ModelError(f"at most {MAX_LETTERS} letters, got {len(props)}")
    for n in range(1, max_states + 1):
        hit = _search_size(phi, props, n)
        if hit is not None:
            model, w = hit
            if w not in eval_basic(model, phi):
                raise AssertionError("witness failed re-verification")
            return model, w
    return None


def _search_size(phi, props, n):
    k = len(props)
    nv = (2**n) ** k
    vidx = np.arange(nv)
    V = {p: ((vidx // (2**n) ** i) % 2**n).astype(np.uint8)[None, :] for i, p in enumerate(props)}
    full = 2**n - 1
    n_rel = 2 ** (n * n)
    chunk = max(1, _CELLS // nv)
    for start in range(0, n_rel, chunk):
        codes = np.arange(start, min(n_rel, start + chunk), dtype=np.int64)
        # bit (i*n + j) of a code is the edge i -> j
        succ = [((codes >> (i * n)) & full).astype(np.uint8)[:, None] for i in range(n)]
        table = np.broadcast_to(_eval_batch(phi, succ, V, full, {}), (len(codes), nv))
        hits = np.flatnonzero(table)
        if hits.size:
            ri, vi = divmod(int(hits[0]), nv)
            mask = int(table[ri, vi])
            wi = (mask & -mask).bit_length() - 1
            return _build(n, int(codes[ri]), vi, wi, props)
    return None


def _build(n, code, vi, wi, props):
    names = _world_names(n)
    edges = [
        (names[i], names[j]) for i in range(n) for j in range(n) if (code >> (i * n + j)) & 1
    ]
    val = {}
    for i, p in enumerate(props):
        mask = (vi // (2**n) ** i) % 2**n
        val[p] = [names[j] for j in range(n) if (mask >> j) & 1]
    return KripkeModel(names, edges, val), names[wi]
