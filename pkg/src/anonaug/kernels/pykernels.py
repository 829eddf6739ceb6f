"""Numpy implementation of the partitioning kernels.

This is the reference semantics; the compiled module in ckernels.pyx
must produce identical output for identical input. Tie rules shared by
both backends:

  * every argmin/argmax keeps the FIRST extremum in scan order,
  * per-record scores accumulate attribute contributions in attribute
    order with plain double adds, so scores compare bit-identically.

"Score" of a record against a group state is the sum over QI attributes
of the widened span ratio (numeric) or covering-subtree leaf ratio
(categorical, 0 when the subtree is a single leaf) -- group NCP times
the attribute count.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


class _State:
    """Per-attribute generalization state of one group."""

    __slots__ = ("lo", "hi", "node")

    def __init__(self, z: int):
        self.lo = np.zeros(z, dtype=np.float64)
        self.hi = np.zeros(z, dtype=np.float64)
        self.node = np.zeros(z, dtype=np.int64)


def _init_state(ctx, record: int) -> _State:
    values, is_cat, _, n_leaves, _, _, _, _, leaf_node, leaf_off = ctx
    z = values.shape[1]
    state = _State(z)
    for a in range(z):
        x = values[record, a]
        if is_cat[a]:
            state.node[a] = leaf_node[leaf_off[a] + int(x)]
        else:
            state.lo[a] = x
            state.hi[a] = x
    return state


def _add_to_state(ctx, state: _State, record: int) -> None:
    values, is_cat, _, n_leaves, lca_flat, lca_off, _, _, _, _ = ctx
    for a in range(values.shape[1]):
        x = values[record, a]
        if is_cat[a]:
            state.node[a] = lca_flat[lca_off[a] + state.node[a] * n_leaves[a] + int(x)]
        else:
            if x < state.lo[a]:
                state.lo[a] = x
            if x > state.hi[a]:
                state.hi[a] = x


def _state_score(ctx, state: _State) -> float:
    _, is_cat, denom, _, _, _, leafcnt_flat, cnt_off, _, _ = ctx
    score = 0.0
    for a in range(len(is_cat)):
        if is_cat[a]:
            cnt = leafcnt_flat[cnt_off[a] + state.node[a]]
            if cnt != 1:
                score += cnt / denom[a]
        elif denom[a] > 0.0:
            score += (state.hi[a] - state.lo[a]) / denom[a]
    return score


def _merged_score_scalar(ctx, state: _State, record: int) -> float:
    """Score of the state widened by one record, state unchanged."""
    values, is_cat, denom, n_leaves, lca_flat, lca_off, leafcnt_flat, cnt_off, _, _ = ctx
    score = 0.0
    for a in range(values.shape[1]):
        x = values[record, a]
        if is_cat[a]:
            node = lca_flat[lca_off[a] + state.node[a] * n_leaves[a] + int(x)]
            cnt = leafcnt_flat[cnt_off[a] + node]
            if cnt != 1:
                score += cnt / denom[a]
        elif denom[a] > 0.0:
            lo = x if x < state.lo[a] else state.lo[a]
            hi = x if x > state.hi[a] else state.hi[a]
            score += (hi - lo) / denom[a]
    return score


def _merged_scores_vector(ctx, state: _State, rows: np.ndarray) -> np.ndarray:
    """Vector of widened-state scores for the given record rows."""
    values, is_cat, denom, n_leaves, lca_flat, lca_off, leafcnt_flat, cnt_off, _, _ = ctx
    total = np.zeros(len(rows), dtype=np.float64)
    for a in range(values.shape[1]):
        col = values[rows, a]
        if is_cat[a]:
            leaves = col.astype(np.int64)
            nodes = lca_flat[lca_off[a] + state.node[a] * n_leaves[a] + leaves]
            cnt = leafcnt_flat[cnt_off[a] + nodes]
            total += np.where(cnt == 1, 0.0, cnt / denom[a])
        elif denom[a] > 0.0:
            lo = np.minimum(col, state.lo[a])
            hi = np.maximum(col, state.hi[a])
            total += (hi - lo) / denom[a]
    return total


def kmember_assign(values, is_cat, denom, n_leaves, lca_flat, lca_off,
                   leafcnt_flat, cnt_off, leaf_node, leaf_off,
                   k: int, start: int) -> np.ndarray:
    """Greedy k-member clustering assignment.

    Builds clusters of exactly k records while at least k remain: the
    first seed is `start`, each later seed is the unassigned record
    farthest from the previous cluster; members join by smallest score
    increase. Leftovers (ascending index) each join the cluster whose
    score grows least. Returns the cluster label of every record.
    """
    ctx = (values, is_cat, denom, n_leaves, lca_flat, lca_off,
           leafcnt_flat, cnt_off, leaf_node, leaf_off)
    n = values.shape[0]
    labels = np.full(n, -1, dtype=np.int32)
    all_rows = np.arange(n)

    states: list[_State] = []
    scores: list[float] = []
    remaining = n
    cluster = 0
    while remaining >= k:
        if cluster == 0:
            seed = int(start)
        else:
            merged = _merged_scores_vector(ctx, states[-1], all_rows)
            merged[labels != -1] = -np.inf
            seed = int(np.argmax(merged))
        state = _init_state(ctx, seed)
        labels[seed] = cluster
        remaining -= 1
        size = 1
        while size < k:
            merged = _merged_scores_vector(ctx, state, all_rows)
            merged[labels != -1] = np.inf
            chosen = int(np.argmin(merged))
            _add_to_state(ctx, state, chosen)
            labels[chosen] = cluster
            remaining -= 1
            size += 1
        states.append(state)
        scores.append(_state_score(ctx, state))
        cluster += 1

    for record in range(n):
        if labels[record] != -1:
            continue
        best_cluster = -1
        best_increase = 0.0
        for j in range(cluster):
            increase = _merged_score_scalar(ctx, states[j], record) - scores[j]
            if best_cluster < 0 or increase < best_increase:
                best_cluster = j
                best_increase = increase
        _add_to_state(ctx, states[best_cluster], record)
        scores[best_cluster] = _state_score(ctx, states[best_cluster])
        labels[record] = best_cluster

    return labels


def tdga_split(values, is_cat, denom, n_leaves, lca_flat, lca_off,
               leafcnt_flat, cnt_off, leaf_node, leaf_off,
               members: np.ndarray, k: int, start_pos: int):
    """One binary split of a group of >= 2k records.

    Seed pair comes from three farthest-point refinement rounds starting
    at position `start_pos`; the remaining members are assigned in order
    to the side whose score grows less (ties: the smaller side, then the
    left). If one side ends below k, records minimizing the receiver's
    score increase move over from the larger side. Returns ascending
    index arrays (left, right), or None if the split cannot reach k on
    both sides.
    """
    ctx = (values, is_cat, denom, n_leaves, lca_flat, lca_off,
           leafcnt_flat, cnt_off, leaf_node, leaf_off)
    members = np.asarray(members, dtype=np.int64)
    size = len(members)

    u_pos = int(start_pos)
    v_pos = -1
    for _ in range(3):
        pair_scores = _merged_scores_vector(ctx, _init_state(ctx, int(members[u_pos])), members)
        pair_scores[u_pos] = -np.inf
        v_pos = u_pos
        u_pos = int(np.argmax(pair_scores))

    left_state = _init_state(ctx, int(members[u_pos]))
    right_state = _init_state(ctx, int(members[v_pos]))
    left_score = right_score = 0.0
    left: list[int] = [int(members[u_pos])]
    right: list[int] = [int(members[v_pos])]

    for pos in range(size):
        if pos == u_pos or pos == v_pos:
            continue
        record = int(members[pos])
        merged_left = _merged_score_scalar(ctx, left_state, record)
        merged_right = _merged_score_scalar(ctx, right_state, record)
        inc_left = merged_left - left_score
        inc_right = merged_right - right_score
        if inc_left < inc_right:
            to_left = True
        elif inc_right < inc_left:
            to_left = False
        else:
            to_left = len(left) <= len(right)
        if to_left:
            _add_to_state(ctx, left_state, record)
            left_score = merged_left
            left.append(record)
        else:
            _add_to_state(ctx, right_state, record)
            right_score = merged_right
            right.append(record)

    # rebalance: top up the short side with its cheapest additions
    if len(left) < k or len(right) < k:
        if len(left) < k:
            receiver, receiver_state, receiver_score = left, left_state, left_score
            donor = right
        else:
            receiver, receiver_state, receiver_score = right, right_state, right_score
            donor = left
        while len(receiver) < k:
            if len(donor) <= k:
                return None
            best_pos = -1
            best_merged = 0.0
            for pos, record in enumerate(donor):
                merged = _merged_score_scalar(ctx, receiver_state, record)
                if best_pos < 0 or merged < best_merged:
                    best_pos = pos
                    best_merged = merged
            record = donor.pop(best_pos)
            _add_to_state(ctx, receiver_state, record)
            receiver_score = best_merged
            receiver.append(record)

    return np.sort(np.array(left, dtype=np.int64)), np.sort(np.array(right, dtype=np.int64))
