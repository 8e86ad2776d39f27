"""Flat-buffer nopython implementation of the Metropolis walk loop.

The word lives in the middle of a preallocated int16 buffer so both moves
edit it in place: conjugation touches only the two ends (O(1)), insertion
shifts whichever side of the split is shorter.  Random numbers come from a
hand-rolled xoshiro256++ so that the stream is reproducible and identical
to :class:`cogrowth.rng.Xoshiro256PP`; the pure-Python walker in
:mod:`cogrowth.walker` mirrors every draw and branch of this loop and the
test suite asserts bit-identical results.

stats layout: [proposed_conj, accepted_conj, proposed_ins, accepted_ins,
rejected_unreduced, steps_done, aborted, samples_taken]
"""

from __future__ import annotations

import numpy as np
from numba import njit

_C11 = np.uint64(11)
_C17 = np.uint64(17)
_C19 = np.uint64(19)
_C23 = np.uint64(23)
_C41 = np.uint64(41)
_C45 = np.uint64(45)
_INV53 = 1.0 / 9007199254740992.0  # 2^-53


@njit(inline="always")
def _unit(state):
    s0 = state[0]
    s1 = state[1]
    s2 = state[2]
    s3 = state[3]
    tmp = s0 + s3
    result = ((tmp << _C23) | (tmp >> _C41)) + s0
    t = s1 << _C17
    s2 = s2 ^ s0
    s3 = s3 ^ s1
    s1 = s1 ^ s2
    s0 = s0 ^ s3
    s2 = s2 ^ t
    s3 = (s3 << _C45) | (s3 >> _C19)
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3
    return (result >> _C11) * _INV53


@njit(cache=True, nogil=True)
def run_kernel(
    state,          # uint64[4], mutated in place
    n_letters,      # 2p
    rel_flat,       # int16[:] closed relators, concatenated
    rel_off,        # int64[n_rel + 1]
    rel_user,       # int64[n_rel] -> user relator index
    alpha,
    log_beta,
    steps,
    stride,
    n_segments,
    max_len,
    target_insertions,  # stop early once this many insertions accepted (0 = off)
    trace_every,        # record current length every this many steps (0 = off)
    buf,            # int16[:] word buffer, len >= 2*max_len + 4
    seg_hist,       # int64[n_segments, max_len + 1]
    user_acc,       # int64[n_user]
    stats,          # int64[8]
    trace,          # int32[:]
    log_len,        # float64[:], log_len[L] = log(L + 1), covers max_len + max relator len
):
    size = buf.shape[0]
    n_rel = rel_off.shape[0] - 1
    margin = 3
    for i in range(n_rel):
        if rel_off[i + 1] - rel_off[i] + 2 > margin:
            margin = rel_off[i + 1] - rel_off[i] + 2

    lo = size // 2
    hi = lo
    length = 0
    total_samples = steps // stride
    sample_idx = 0
    trace_idx = 0
    steps_done = steps
    aborted = 0

    for step in range(steps):
        if lo < margin or hi > size - margin:
            new_lo = (size - length) // 2
            if new_lo < lo:
                for j in range(length):
                    buf[new_lo + j] = buf[lo + j]
            else:
                for j in range(length - 1, -1, -1):
                    buf[new_lo + j] = buf[lo + j]
            lo = new_lo
            hi = new_lo + length

        if _unit(state) < 0.5:
            # conjugation move
            stats[0] += 1
            idx = np.int64(_unit(state) * n_letters)
            g = (idx >> 1) + 1
            x = g if (idx & 1) == 0 else -g
            if length == 0:
                stats[1] += 1  # x x^-1 reduces away; candidate == state, ratio 1
            elif length == 1 and buf[lo] == -x:
                stats[1] += 1  # x . x^-1 . x^-1 reduces to the same single letter
            else:
                front = buf[lo] == -x
                back = buf[hi - 1] == x
                if front and back:
                    new_len = length - 2
                elif front or back:
                    new_len = length
                else:
                    new_len = length + 2
                dl = new_len - length
                la = (1.0 + alpha) * (log_len[new_len] - log_len[length]) + dl * log_beta
                ok = True
                if la < 0.0:
                    ok = np.log(_unit(state)) < la
                if ok:
                    if new_len > max_len:
                        aborted = 1
                        steps_done = step + 1
                        break
                    if front and back:
                        lo += 1
                        hi -= 1
                    elif front:
                        lo += 1
                        buf[hi] = -x
                        hi += 1
                    elif back:
                        lo -= 1
                        buf[lo] = x
                        hi -= 1
                    else:
                        lo -= 1
                        buf[lo] = x
                        buf[hi] = -x
                        hi += 1
                    length = new_len
                    stats[1] += 1
        else:
            # relator insertion move
            stats[2] += 1
            ridx = np.int64(_unit(state) * n_rel)
            rs = rel_off[ridx]
            re = rel_off[ridx + 1]
            rlen = re - rs
            pos = np.int64(_unit(state) * (length + 1))
            s = lo + pos
            k = 0
            while k < rlen and s - 1 - k >= lo and buf[s - 1 - k] == -rel_flat[rs + k]:
                k += 1
            rejected = False
            if k == rlen:
                new_len = length - rlen
                if s - 1 - rlen >= lo and s < hi and buf[s - 1 - rlen] == -buf[s]:
                    rejected = True
            else:
                new_len = length + rlen - 2 * k
                if s < hi and buf[s] == -rel_flat[re - 1]:
                    rejected = True
            if rejected:
                stats[4] += 1
            else:
                dl = new_len - length
                la = alpha * (log_len[new_len] - log_len[length]) + dl * log_beta
                ok = True
                if la < 0.0:
                    ok = np.log(_unit(state)) < la
                if ok:
                    if new_len > max_len:
                        aborted = 1
                        steps_done = step + 1
                        break
                    if k == rlen:
                        # relator fully consumed: delete the block [s - rlen, s)
                        left_size = s - rlen - lo
                        right_size = hi - s
                        if left_size <= right_size:
                            for j in range(left_size - 1, -1, -1):
                                buf[lo + rlen + j] = buf[lo + j]
                            lo += rlen
                        else:
                            for j in range(right_size):
                                buf[s - rlen + j] = buf[s + j]
                            hi -= rlen
                    else:
                        shift = rlen - 2 * k
                        left_size = s - k - lo
                        right_size = hi - s
                        if left_size <= right_size:
                            new_lo = lo - shift
                            if shift > 0:
                                for j in range(left_size):
                                    buf[new_lo + j] = buf[lo + j]
                            elif shift < 0:
                                for j in range(left_size - 1, -1, -1):
                                    buf[new_lo + j] = buf[lo + j]
                            base = s - (rlen - k)
                            for j in range(rlen - k):
                                buf[base + j] = rel_flat[rs + k + j]
                            lo = new_lo
                        else:
                            if shift > 0:
                                for j in range(right_size - 1, -1, -1):
                                    buf[s + shift + j] = buf[s + j]
                            elif shift < 0:
                                for j in range(right_size):
                                    buf[s + shift + j] = buf[s + j]
                            base = s - k
                            for j in range(rlen - k):
                                buf[base + j] = rel_flat[rs + k + j]
                            hi += shift
                    length = new_len
                    stats[3] += 1
                    user_acc[rel_user[ridx]] += 1

        if (step + 1) % stride == 0:
            seg = sample_idx * n_segments // total_samples
            seg_hist[seg, length] += 1
            sample_idx += 1
        if trace_every > 0 and (step + 1) % trace_every == 0 and trace_idx < trace.shape[0]:
            trace[trace_idx] = length
            trace_idx += 1
        if target_insertions > 0 and stats[3] >= target_insertions:
            steps_done = step + 1
            break

    stats[5] = steps_done
    stats[6] = aborted
    stats[7] = sample_idx
    return lo, hi
