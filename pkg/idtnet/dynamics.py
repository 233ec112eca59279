import logging

import numpy as np
from scipy.special import expit

from .exceptions import ValidationException
from .objects.dynamics import SpinConfig, StepUnit, UpdateRule

logger = logging.getLogger(__name__)


def glauber_up_probability(neighbor_sum, params):
    """
    Heat-bath probability that a unit takes state +1 given the sum of its neighbour states.
    """
    return float(expit(2.0 * params.coupling * neighbor_sum / params.temperature))


def metropolis_flip_probability(delta_e, params):
    if delta_e <= 0:
        return 1.0
    return float(np.exp(-delta_e / params.temperature))


def local_energy_change(states, graph, unit, coupling):
    """
    E(flipped) - E(current) for the edges incident to unit.
    """
    field = sum(int(states[j]) for j in graph.adjacency[unit])
    return 2.0 * coupling * int(states[unit]) * field


def energy(config, graph, coupling):
    states = np.asarray(config.states, dtype=np.int64)
    return -coupling * float(sum(states[u] * states[v] for u, v in graph.edges()))


def random_config(n, rng):
    return SpinConfig(rng.integers(0, 2, size=n) * 2 - 1)


class SpinKernel(object):
    """
    Random-scan single-site update kernel of one graph.

    Holds the probability table shared by the pure-Python single-chain path and the
    numpy path that advances many chains at once. Both consume a chain's stream the
    same way per sweep (n site indices, then n uniforms), so a chain advanced alone
    or inside a batch goes through identical states.
    """

    def __init__(self, graph, params):
        params.validate()

        self.graph = graph
        self.params = params
        self.n = graph.n
        self.offset = graph.max_degree
        self.glauber = params.rule == UpdateRule.GLAUBER

        fields = np.arange(-self.offset, self.offset + 1, dtype=float)
        scaled = 2.0 * params.coupling * fields / params.temperature
        if self.glauber:
            # p(+1 | neighbour sum)
            self.table = expit(scaled)
        else:
            # acceptance of a flip, indexed by s_i * neighbour sum
            self.table = np.exp(np.minimum(0.0, -scaled))

        self._table_list = self.table.tolist()
        self._adjacency = [list(neighbours) for neighbours in graph.adjacency]
        self._neighbours = graph.neighbour_table()

    def draw(self, rng):
        return rng.integers(0, self.n, size=self.n), rng.random(self.n)

    def sweep_states(self, states, sites, uniforms, observer=None):
        """
        Applies one sweep to a list of states in place.
        """
        table = self._table_list
        offset = self.offset
        adjacency = self._adjacency

        for i, u in zip(sites, uniforms):
            field = 0
            for j in adjacency[i]:
                field += states[j]

            if self.glauber:
                states[i] = 1 if u < table[field + offset] else -1
            elif u < table[states[i] * field + offset]:
                states[i] = -states[i]

            if observer is not None:
                observer(states)

        return states

    def sweep_batch(self, states, sites, uniforms, observer=None):
        """
        Applies one sweep to every row of states, shape (B, n + 1); the last column stays 0.
        """
        rows = np.arange(states.shape[0])
        table = self.table

        for s in range(self.n):
            idx = sites[:, s]
            field = states[rows[:, None], self._neighbours[idx]].sum(axis=1, dtype=np.int64)

            if self.glauber:
                new = np.where(uniforms[:, s] < table[field + self.offset], 1, -1)
            else:
                current = states[rows, idx].astype(np.int64)
                flip = uniforms[:, s] < table[current * field + self.offset]
                new = np.where(flip, -current, current)

            states[rows, idx] = new

            if observer is not None:
                observer(states)

        return states

    def run(self, states, rng, sweeps, step=StepUnit.SWEEP, recorder=None):
        """
        Advances one chain given as a list of states. recorder(states) is called after
        every sweep, or after every site update when step is "site".
        """
        observer = recorder if step == StepUnit.SITE else None

        for _ in range(sweeps):
            sites, uniforms = self.draw(rng)
            self.sweep_states(states, sites.tolist(), uniforms.tolist(), observer)
            if recorder is not None and step == StepUnit.SWEEP:
                recorder(states)

        return states

    def run_batch(self, states, generators, sweeps, step=StepUnit.SWEEP, recorder=None):
        """
        Advances one chain per row of states, chain b drawing only from generators[b].
        """
        observer = recorder if step == StepUnit.SITE else None

        for _ in range(sweeps):
            draws = [self.draw(rng) for rng in generators]
            sites = np.stack([d[0] for d in draws])
            uniforms = np.stack([d[1] for d in draws])
            self.sweep_batch(states, sites, uniforms, observer)
            if recorder is not None and step == StepUnit.SWEEP:
                recorder(states)

        return states


def sweep(config, graph, params, rng):
    """
    n single-site updates at uniformly random sites under the selected rule.
    """
    config.validate(graph.n)
    kernel = SpinKernel(graph, params)

    states = [int(s) for s in config.states]
    sites, uniforms = kernel.draw(rng)
    kernel.sweep_states(states, sites.tolist(), uniforms.tolist())

    return SpinConfig(states)


def equilibrate(graph, params, sweeps, rng):
    """
    Runs `sweeps` sweeps from a uniformly random configuration.
    The returned configuration carries the per-sweep magnetization trace.
    """
    if sweeps < 1:
        raise ValidationException("Equilibration needs at least one sweep", 201, "sweeps={0}".format(sweeps))

    kernel = SpinKernel(graph, params)
    states = [int(s) for s in random_config(graph.n, rng).states]
    trace = []

    kernel.run(states, rng, sweeps, recorder=lambda current: trace.append(sum(current) / float(graph.n)))

    config = SpinConfig(states)
    config.magnetization_trace = np.array(trace)

    tail = config.magnetization_trace[-max(1, sweeps // 10):]
    logger.info("Equilibrated %d units for %d sweeps (%s): mean |m| over last 10%% = %.4f",
                graph.n, sweeps, params, abs(tail.mean()))

    return config
