"""Executable machines attached to a finite-axis group code.

Three sliding-window devices, generic over any code on a finite axis:

* ``StateObserver`` maps the last L output symbols of a codeword to the
  canonical label of its minimal state at the current cut;
* ``ObserverEncoder`` turns one free input per time, drawn from the
  first-output group F_k, into a codeword, keeping only an L-symbol window;
* ``SyndromeFormer`` pairs an arbitrary word against a span-reduced basis of
  the dual code, emitting each check at the last time its support touches;
  the kernel of the map is exactly the code, and distinct cosets give
  distinct syndrome sequences.

The window length L is the observer memory measured with no interior margin,
so windowed operation agrees with full-prefix operation on every axis; codes
that are not strongly observable simply get L close to the axis length.

State labels are canonical coset representatives (Howell reduction), so they
compare bit-exactly; isomorphism-level reporting stays in ``dynamics``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from random import Random
from typing import Sequence

import numpy as np

from . import dynamics, residues
from .codes import GroupCode, dual, restriction, shorten
from .residues import Subgroup, howell_form
from .spaces import SymbolLayout


class WindowNotInRestriction(Exception):
    """The supplied window is not a restriction of any codeword."""


class InputNotInInputGroup(Exception):
    """An encoder input fell outside the first-output group of its time."""


Vec = tuple[int, ...]


@dataclass
class TraceStep:
    time: int
    state: Vec                  # canonical state label at the cut before `time`
    symbol: Vec                 # symbol consumed or emitted at `time`
    inp: Vec | None = None      # encoder input, when applicable
    syndrome: Vec | None = None  # syndrome component, when applicable


@dataclass
class MachineTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def states(self) -> list[Vec]:
        return [s.state for s in self.steps]

    def symbols(self) -> list[Vec]:
        return [s.symbol for s in self.steps]

    def syndromes(self) -> list[Vec]:
        return [s.syndrome for s in self.steps if s.syndrome is not None]

    def to_dict(self) -> dict:
        return {"steps": [{"time": s.time, "state": list(s.state),
                           "symbol": list(s.symbol),
                           **({"input": list(s.inp)} if s.inp is not None else {}),
                           **({"syndrome": list(s.syndrome)} if s.syndrome is not None else {})}
                          for s in self.steps]}


class _Section:
    """Lifts restricted words back through a subgroup.

    Howell-reduces the carrier with the selected coordinates permuted to the
    front; rows whose pivot lands inside the selection restrict to a Howell
    basis of the restriction, and each carries its full-length preimage.
    """

    def __init__(self, carrier: Subgroup, idx: list[int]):
        self.modulus = carrier.modulus
        self.ambient = carrier.ambient
        self.dtype = residues.entry_dtype(carrier.modulus)
        self.idx = idx
        rest = [j for j in range(carrier.ambient) if j not in set(idx)]
        perm = idx + rest
        self.perm = perm
        h = howell_form(carrier.modulus, carrier.basis[:, perm])
        k = len(idx)
        self.front_rows = []
        self.front_pivots = []
        self.lifts = []
        for row in h:
            p = int(np.argmax(row != 0))
            if p < k:
                self.front_rows.append(row[:k])
                self.front_pivots.append((p, int(row[p])))
                full = np.zeros(carrier.ambient, dtype=self.dtype)
                full[perm] = row
                self.lifts.append(full)

    def lift(self, target: Sequence[int]) -> np.ndarray | None:
        """A full-length element of the subgroup restricting to ``target``."""
        M = self.modulus
        r = np.asarray(target, dtype=self.dtype) % M
        if r.shape != (len(self.idx),):
            raise ValueError("target length does not match the selection")
        out = np.zeros(self.ambient, dtype=self.dtype)
        if not self.lifts:
            return None if r.any() else out
        for row, (col, d), full in zip(self.front_rows, self.front_pivots, self.lifts):
            q = int(r[col]) // d
            if q:
                r = (r - q * row) % M
                out = (out + q * full) % M
        return None if r.any() else out


def machine_memory(code: GroupCode) -> int:
    """Observer memory with no interior margin; always defined on a finite axis."""
    L = dynamics.observability_index(code, 0)
    if L is None:  # unreachable: the axis-filling window always passes
        raise dynamics.InternalInconsistency("no window length observes the code")
    return L


class StateObserver:
    """Sliding-window map from recent output symbols to minimal-state labels."""

    def __init__(self, code: GroupCode, memory: int | None = None):
        self.code = code
        self.memory = machine_memory(code) if memory is None else memory
        layout = code.layout
        n = layout.axis_len
        # label reducers: the two-sided shortened subgroup at each cut
        self._denoms = [
            residues.add(shorten(code, layout.subset(range(0, k))).carrier,
                         shorten(code, layout.subset(range(k, n))).carrier)
            for k in range(n + 1)]
        self._sections: dict[int, _Section] = {}

    def window_times(self, k: int) -> list[int]:
        return list(range(max(0, k - self.memory), k))

    def state_count(self, k: int) -> int:
        return self.code.order() // self._denoms[k].order()

    def observe_codeword(self, word: Sequence[int], k: int) -> Vec:
        """Label of the state of a full codeword at cut k."""
        if not self.code.contains(word):
            raise WindowNotInRestriction("word is not a codeword")
        return tuple(int(x) for x in self._denoms[k].reduce(word))

    def observe(self, window: Sequence[int], k: int) -> Vec:
        """Label computed from the last ``memory`` symbols before cut k."""
        times = self.window_times(k)
        if k not in self._sections:
            self._sections[k] = _Section(self.code.carrier,
                                         self.code.layout.coords(times))
        lifted = self._sections[k].lift(window)
        if lifted is None:
            raise WindowNotInRestriction(
                f"window is not in the code's restriction to times {times}")
        return tuple(int(x) for x in self._denoms[k].reduce(lifted))


class ObserverEncoder:
    """Minimal observer-form encoder: free inputs from F_k, window memory L."""

    def __init__(self, code: GroupCode, memory: int | None = None):
        self.code = code
        self.memory = machine_memory(code) if memory is None else memory
        self.observer = StateObserver(code, self.memory)
        layout = code.layout
        n = layout.axis_len
        self.input_groups = [dynamics.first_output_group(code, k) for k in range(n)]
        self._window_codes: list[GroupCode] = []
        self._zero_extension: list[Subgroup] = []
        self._prefix_sections: list[_Section | None] = []
        for k in range(n):
            times = list(range(max(0, k - self.memory), k + 1))
            wcode = restriction(code, layout.subset(times))
            self._window_codes.append(wcode)
            wl = wcode.layout
            last = wl.axis_len - 1
            self._zero_extension.append(
                restriction(shorten(wcode, frozenset({last})),
                            frozenset({last})).carrier)
            if last:
                self._prefix_sections.append(
                    _Section(wcode.carrier, wl.coords(range(0, last))))
            else:
                self._prefix_sections.append(None)

    def random_inputs(self, rng: Random) -> list[Vec]:
        out = []
        for g in self.input_groups:
            coeffs = [rng.randrange(g.modulus) for _ in range(g.num_generators)]
            v = np.zeros(g.ambient, dtype=np.int64)
            for c, row in zip(coeffs, g.basis):
                v = (v + c * row) % g.modulus
            out.append(tuple(int(x) for x in v))
        return out

    def encode(self, inputs: Sequence[Sequence[int]]) -> tuple[np.ndarray, MachineTrace]:
        layout = self.code.layout
        n = layout.axis_len
        if len(inputs) != n:
            raise ValueError(f"need one input per time ({n})")
        M = layout.modulus
        emitted: list[np.ndarray] = []
        trace = MachineTrace()
        for k in range(n):
            inp = np.asarray(inputs[k], dtype=np.int64) % M
            if inp.shape != (layout.widths[k],):
                raise InputNotInInputGroup(
                    f"input at time {k} must have width {layout.widths[k]}")
            if not self.input_groups[k].contains(inp):
                raise InputNotInInputGroup(
                    f"input {tuple(inp)} at time {k} is outside F_{k}")
            window = self._current_window(emitted, k)
            state = self.observer.observe(window, k)
            base = self._base_symbol(window, k)
            symbol = (base + inp) % M
            emitted.append(symbol)
            trace.steps.append(TraceStep(time=k, state=state,
                                         symbol=tuple(int(x) for x in symbol),
                                         inp=tuple(int(x) for x in inp)))
        word = np.concatenate(emitted)
        if not self.code.contains(word):
            raise dynamics.InternalInconsistency(
                "encoder produced a word outside the code")
        return word, trace

    def _current_window(self, emitted: list[np.ndarray], k: int) -> np.ndarray:
        lo = max(0, k - self.memory)
        if lo >= k:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(emitted[lo:k])

    def _base_symbol(self, window: np.ndarray, k: int) -> np.ndarray:
        """Canonical representative of {g : (window, g) in C_{|window+k}}."""
        layout = self.code.layout
        section = self._prefix_sections[k]
        if section is None:
            return np.zeros(layout.widths[k], dtype=np.int64)
        lifted = section.lift(window)
        if lifted is None:
            raise dynamics.InternalInconsistency(
                "encoder window left the code's restriction")
        g0 = lifted[-layout.widths[k]:]
        return self._zero_extension[k].reduce(g0)


def _block_span(layout: SymbolLayout, row: np.ndarray) -> tuple[int, int] | None:
    touched = [k for k in layout.times() if row[list(layout.block(k))].any()]
    return (touched[0], touched[-1]) if touched else None


def _span_reduce(layout: SymbolLayout, basis: np.ndarray) -> list[np.ndarray]:
    """Shorten basis rows by elementary row operations.

    The Howell form is canonical but not span-minimal: reducing above pivots
    can stretch rows across many time blocks.  Greedily subtracting multiples
    of other rows whenever that strictly shrinks a row's block span preserves
    the row span while driving each check toward a local window.
    """
    M = layout.modulus
    rows = [r.copy() for r in basis]
    if M > 256:  # scalar sweep is O(M); beyond small moduli keep raw rows
        rows.sort(key=lambda r: (_block_span(layout, r), tuple(int(x) for x in r)))
        return rows
    changed = True
    while changed:
        changed = False
        for i in range(len(rows)):
            si = _block_span(layout, rows[i])
            if si is None:
                continue
            for j in range(len(rows)):
                if i == j:
                    continue
                for t in range(1, M):
                    cand = (rows[i] - t * rows[j]) % M
                    sc = _block_span(layout, cand)
                    if sc is not None and sc[1] - sc[0] < si[1] - si[0]:
                        rows[i], si = cand, sc
                        changed = True
    rows.sort(key=lambda r: (_block_span(layout, r), tuple(int(x) for x in r)))
    return rows


class SyndromeFormer:
    """Homomorphic sliding-window map whose kernel is exactly the code."""

    def __init__(self, code: GroupCode):
        self.code = code
        layout = code.layout
        self.dual_code = dual(code)
        rows = _span_reduce(layout, self.dual_code.carrier.basis)
        self._rows_by_end: dict[int, list[np.ndarray]] = {k: [] for k in layout.times()}
        self._spans: list[tuple[int, int, np.ndarray]] = []
        for row in rows:
            first, last_t = _block_span(layout, row)
            self._rows_by_end[last_t].append(row)
            self._spans.append((first, last_t, row))
        self.memory = max((b - a for a, b, _ in self._spans), default=0)

    def syndrome_width(self, k: int) -> int:
        return len(self._rows_by_end[k])

    def form(self, word: Sequence[int]) -> tuple[list[Vec], MachineTrace]:
        layout = self.code.layout
        M = layout.modulus
        w = np.asarray(word, dtype=residues.entry_dtype(M)) % M
        if w.shape != (layout.total_dim,):
            raise ValueError(f"expected a word of length {layout.total_dim}")
        trace = MachineTrace()
        syndromes: list[Vec] = []
        for k in layout.times():
            upto = layout.block_start(k) + layout.widths[k]
            comp = tuple(int(np.dot(row, w) % M) for row in self._rows_by_end[k])
            partials = tuple(int(np.dot(row[:upto], w[:upto]) % M)
                             for a, b, row in self._spans if a <= k < b)
            block = layout.block(k)
            trace.steps.append(TraceStep(
                time=k, state=partials,
                symbol=tuple(int(x) for x in w[list(block)]),
                syndrome=comp))
            syndromes.append(comp)
        return syndromes, trace

    def is_member(self, word: Sequence[int]) -> bool:
        syndromes, _ = self.form(word)
        return all(not any(c) for c in syndromes)


def input_group_orders(code: GroupCode) -> list[int]:
    return [dynamics.first_output_group(code, k).order()
            for k in code.layout.times()]


def roundtrip_check(code: GroupCode, trials: int = 25,
                    rng: Random | None = None) -> bool:
    """Encoder, observer, and syndrome-former agree on random traffic.

    Encoded words have all-zero syndromes and per-time states matching the
    full-word observer; perturbations by non-codewords are flagged; and the
    input groups account for the code exactly.
    """
    rng = rng or Random(0)
    enc = ObserverEncoder(code)
    sf = SyndromeFormer(code)
    layout = code.layout
    M = layout.modulus
    if prod(input_group_orders(code)) != code.order():
        return False
    for _ in range(trials):
        word, trace = enc.encode(enc.random_inputs(rng))
        if not sf.is_member(word):
            return False
        for k, step in enumerate(trace.steps):
            if enc.observer.observe_codeword(word, k) != step.state:
                return False
    if code.order() == M ** layout.total_dim:
        return True  # full space: no perturbation outside the code exists
    for _ in range(trials):
        coeffs = [rng.randrange(M) for _ in range(code.carrier.num_generators)]
        c = np.zeros(layout.total_dim, dtype=np.int64)
        for q, row in zip(coeffs, code.carrier.basis):
            c = (c + q * row) % M
        while True:
            e = np.array([rng.randrange(M) for _ in range(layout.total_dim)],
                         dtype=np.int64)
            if not code.contains(e):
                break
        if sf.is_member((c + e) % M):
            return False
    return True
