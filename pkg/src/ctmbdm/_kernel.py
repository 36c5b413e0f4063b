"""Compiled inner loops for bulk machine execution.

Machines are addressed by their mixed-radix index (see
:mod:`ctmbdm.enumeration`). Inside the kernel states are ``0..n-1`` and the
halt target is ``n``; moves are ``0`` (left) and ``1`` (right).

Halting outputs are packed into one int64 key: the output read as a base-m
number, shifted left by 6, ORed with the output length. Outputs too long to
pack are reported as ``LONG_OUTPUT`` and re-run in Python by the caller.
"""

import math

import numpy as np
from numba import njit

NO_HALT = -1
LONG_OUTPUT = -2

_MASK64 = (1 << 64) - 1


def max_packed_length(symbols: int) -> int:
    return min(63, int(56 // math.log2(symbols)))


def pack_key(output: str, symbols: int) -> int:
    value = 0
    for ch in output:
        value = value * symbols + int(ch, 36)
    return (value << 6) | len(output)


def unpack_key(key: int, symbols: int) -> str:
    length = key & 63
    value = key >> 6
    digits = []
    for _ in range(length):
        value, r = divmod(value, symbols)
        digits.append(np.base_repr(r, 36).lower())
    return "".join(reversed(digits))


@njit(cache=True)
def _decode(index, n, m, W, D, Q):
    alt_q = n + 1
    alt_dq = 2 * alt_q
    base = m * alt_dq
    e = n * m - 1
    while e >= 0:
        digit = index % base
        index //= base
        W[e] = digit // alt_dq
        rem = digit % alt_dq
        D[e] = rem // alt_q
        Q[e] = rem % alt_q
        e -= 1


@njit(cache=True)
def _can_halt(n, m, Q, seen, stack):
    # Exact pruning: halting needs a halt entry in a state reachable from state 0.
    for q in range(n):
        seen[q] = False
    seen[0] = True
    stack[0] = 0
    top = 1
    while top > 0:
        top -= 1
        q = stack[top]
        for a in range(m):
            nxt = Q[q * m + a]
            if nxt == n:
                return True
            if not seen[nxt]:
                seen[nxt] = True
                stack[top] = nxt
                top += 1
    return False


@njit(cache=True)
def run_indices(indices, n, m, cutoff, max_len, keys, steps):
    """Run every machine in ``indices`` from the all-zero tape."""
    E = n * m
    W = np.empty(E, np.int64)
    D = np.empty(E, np.int64)
    Q = np.empty(E, np.int64)
    seen = np.empty(n, np.bool_)
    stack = np.empty(n + 1, np.int64)
    tape = np.zeros(2 * cutoff + 3, np.int8)
    center = cutoff + 1
    for i in range(indices.shape[0]):
        _decode(indices[i], n, m, W, D, Q)
        if not _can_halt(n, m, Q, seen, stack):
            keys[i] = NO_HALT
            steps[i] = cutoff
            continue
        pos = center
        lo = center
        hi = center
        st = 0
        halted_at = 0
        for t in range(1, cutoff + 1):
            if pos < lo:
                lo = pos
            elif pos > hi:
                hi = pos
            e = st * m + tape[pos]
            tape[pos] = W[e]
            pos += 2 * D[e] - 1
            st = Q[e]
            if st == n:
                halted_at = t
                break
        if halted_at == 0:
            keys[i] = NO_HALT
            steps[i] = cutoff
        else:
            length = hi - lo + 1
            if length > max_len:
                keys[i] = LONG_OUTPUT
            else:
                value = 0
                for c in range(lo, hi + 1):
                    value = value * m + tape[c]
                keys[i] = (value << 6) | length
            steps[i] = halted_at
        for c in range(lo, hi + 1):
            tape[c] = 0
    return keys, steps


@njit(cache=True)
def mirror_representatives(start, count, lo_radix, n, out):
    """Indices of machines whose first entry (state 1, read 0) moves right.

    Representative ``r`` maps to ``digit * lo_radix + r % lo_radix`` where the
    first digit enumerates (write, next-state) with the move fixed to right.
    """
    alt_q = n + 1
    for i in range(count):
        r = start + i
        hi = r // lo_radix
        lo = r % lo_radix
        w = hi // alt_q
        q = hi % alt_q
        digit = w * 2 * alt_q + alt_q + q
        out[i] = digit * lo_radix + lo
    return out


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def _feistel(x, half_bits, round_keys):
    mask = (np.uint64(1) << np.uint64(half_bits)) - np.uint64(1)
    left = x >> np.uint64(half_bits)
    right = x & mask
    for k in round_keys:
        left, right = right, left ^ (_mix64(right ^ k) & mask)
    return (left << np.uint64(half_bits)) | right


@njit(cache=True)
def permuted_indices(start, count, total, half_bits, round_keys, out):
    """Positions ``start..start+count-1`` of a keyed permutation of ``range(total)``."""
    n = np.uint64(total)
    for i in range(count):
        y = _feistel(np.uint64(start + i), half_bits, round_keys)
        while y >= n:
            y = _feistel(y, half_bits, round_keys)
        out[i] = np.int64(y)
    return out


def py_mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def round_keys_for(seed: int, rounds: int = 4) -> np.ndarray:
    keys = []
    state = seed & _MASK64
    for _ in range(rounds):
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        keys.append(py_mix64(state))
    return np.array(keys, dtype=np.uint64)


def half_bits_for(total: int) -> int:
    bits = max(2, (total - 1).bit_length())
    return (bits + 1) // 2


def py_permuted_index(position: int, total: int, seed: int) -> int:
    """Pure-Python twin of :func:`permuted_indices` for a single position."""
    h = half_bits_for(total)
    mask = (1 << h) - 1
    keys = [int(k) for k in round_keys_for(seed)]

    def feistel(x: int) -> int:
        left, right = x >> h, x & mask
        for k in keys:
            left, right = right, left ^ (py_mix64(right ^ k) & mask)
        return (left << h) | right

    y = feistel(position)
    while y >= total:
        y = feistel(y)
    return y
