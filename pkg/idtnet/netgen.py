"""
Configuration-model graphs with prescribed degree distributions.
"""
import logging
from collections import Counter

import networkx as nx
import numpy as np

from .exceptions import NumericException, ValidationException
from .objects.distribution import DegreeDistribution
from .objects.graph import Graph

logger = logging.getLogger(__name__)

MAX_PARITY_ATTEMPTS = 1000
SWAP_ATTEMPTS_PER_EDGE = 100
MAX_MATCHING_ROUNDS = 10


def sample_degree_sequence(dist, n, rng):
    """
    n i.i.d. degrees from dist. An odd total is fixed by redrawing one uniformly
    chosen entry until the total is even.
    """
    dist.validate()
    if n < 2:
        raise ValidationException("Degree sequence needs at least two nodes", 201, "n={0}".format(n))

    degrees = rng.choice(dist.degrees, size=n, p=dist.probs).astype(np.int64)

    attempts = 0
    while degrees.sum() % 2:
        if attempts >= MAX_PARITY_ATTEMPTS:
            raise ValidationException("Degree sequence is parity-locked", 203,
                                      "odd total after {0} redraws".format(attempts))
        attempts += 1
        degrees[int(rng.integers(n))] = rng.choice(dist.degrees, p=dist.probs)

    return degrees.tolist()


def _edge_key(u, v):
    return (u, v) if u < v else (v, u)


def _match_stubs(degrees, rng):
    stubs = rng.permutation(np.repeat(np.arange(len(degrees)), degrees))
    return [[int(u), int(v)] for u, v in stubs.reshape(-1, 2)]


def _repair(edges, rng, max_attempts):
    """
    Removes self-loops and multi-edges by double-edge swaps against uniformly chosen
    partner edges. Returns the attempts used, or None when the budget ran out.
    """
    counts = Counter(_edge_key(u, v) for u, v in edges)

    def is_bad(i):
        u, v = edges[i]
        return u == v or counts[_edge_key(u, v)] > 1

    bad = [i for i in range(len(edges)) if is_bad(i)]
    attempts = 0

    while bad:
        i = bad.pop()
        if not is_bad(i):
            continue

        while True:
            if attempts >= max_attempts:
                return None
            attempts += 1

            j = int(rng.integers(len(edges)))
            if j == i:
                continue

            a, b = edges[i]
            c, d = edges[j]
            if rng.random() < 0.5:
                c, d = d, c
            if a == d or c == b:
                continue

            first, second = _edge_key(a, d), _edge_key(c, b)
            if first == second or counts[first] or counts[second]:
                continue

            for old in (edges[i], edges[j]):
                key = _edge_key(*old)
                counts[key] -= 1
                if not counts[key]:
                    del counts[key]

            edges[i] = [a, d]
            edges[j] = [c, b]
            counts[first] += 1
            counts[second] += 1
            break

    return attempts


def build_configuration_graph(degrees, rng, max_rounds=MAX_MATCHING_ROUNDS):
    """
    Simple graph realizing the degree sequence exactly: random stub matching followed
    by double-edge swap repair, at most 100 |E| attempts per matching round.
    """
    degrees = [int(k) for k in degrees]
    total = sum(degrees)

    if total % 2:
        raise ValidationException("Degree sum must be even", 201, "sum={0}".format(total))
    if min(degrees, default=0) < 0:
        raise ValidationException("Degrees must be non-negative")
    if degrees and max(degrees) > total - max(degrees):
        raise ValidationException("Degree sequence fails the graphicality check", 201,
                                  "max={0} sum={1}".format(max(degrees), total))

    edge_count = total // 2
    for round_number in range(1, max_rounds + 1):
        edges = _match_stubs(degrees, rng)
        attempts = _repair(edges, rng, SWAP_ATTEMPTS_PER_EDGE * max(edge_count, 1))

        if attempts is not None:
            logger.info("Configuration graph: %d nodes, %d edges, %d swap attempts in round %d",
                        len(degrees), edge_count, attempts, round_number)
            graph = Graph.from_edges(len(degrees), edges)

            if graph.degrees != degrees:
                raise ValidationException("Built graph does not match the degree sequence", 204)
            return graph

        logger.debug("Swap repair ran out of attempts in round %d", round_number)

    raise NumericException("Degree sequence not realizable", 402,
                           "no simple graph after {0} matching rounds".format(max_rounds))


def excess_degree_distribution(dist):
    """
    q(m) = (m + 1) p(m + 1) / <k>
    """
    dist.validate()
    mean = dist.mean
    if mean <= 0:
        raise ValidationException("Excess degree distribution needs a positive mean degree")

    weights = dist.degrees * dist.probs / mean
    keep = weights > 0
    excess = DegreeDistribution(dist.degrees[keep] - 1, weights[keep] / weights[keep].sum(), allow_zero=True)
    excess.validate()
    return excess


def generate_graph(dist, n, rng):
    return build_configuration_graph(sample_degree_sequence(dist, n, rng), rng)


def global_clustering(graph):
    """Transitivity: 3 x triangles / connected triples"""
    return float(nx.transitivity(graph.to_networkx()))
