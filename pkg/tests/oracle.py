"""Exact one-step transition probabilities by enumeration, written from the
model definition without touching the simulator's vectorised kernel."""

import itertools
from fractions import Fraction

S, B, F = 0, 1, 2
BOT_B, BOT_F = 3, 4


def node_distribution(state, cls, n_b, n_f, alpha, beta, probs):
    """Exact next-state distribution of one node as Fractions."""
    if cls == BOT_B:
        return {B: Fraction(1)}
    if cls == BOT_F:
        return {F: Fraction(1)}
    alpha, beta = Fraction(str(alpha)), Fraction(str(beta))
    pv, pf = (Fraction(str(p)) for p in probs[cls])
    if state == S:
        wb = n_b * (1 + alpha)
        wf = n_f * (1 - alpha)
        if wb + wf == 0:
            return {S: Fraction(1)}
        fb = beta * wb / (wb + wf)
        ff = beta * wf / (wb + wf)
        return {B: fb, F: ff, S: 1 - fb - ff}
    if state == B:
        return {S: pf, F: pv * (1 - pf), B: (1 - pf) * (1 - pv)}
    return {S: pf, F: 1 - pf}


def joint_distribution(adjacency, states, classes, alpha, beta, probs):
    """Map every joint next-state tuple to its exact probability."""
    per_node = []
    for i, nbrs in enumerate(adjacency):
        n_b = sum(1 for j in nbrs if states[j] == B)
        n_f = sum(1 for j in nbrs if states[j] == F)
        per_node.append(node_distribution(states[i], classes[i], n_b, n_f, alpha, beta, probs))
    out = {}
    for outcome in itertools.product((S, B, F), repeat=len(states)):
        p = Fraction(1)
        for i, s in enumerate(outcome):
            p *= per_node[i].get(s, Fraction(0))
            if p == 0:
                break
        if p:
            out[outcome] = p
    return out
