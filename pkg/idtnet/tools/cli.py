import argparse
import logging
import os
import sys

from .. import __version__
from ..analytic import analytic_curve
from ..empirical import measure_idt, pool_results, trajectory_trace
from ..exceptions import IdtnetException, InputException, ValidationException
from ..netgen import generate_graph
from ..objects.config import RunConfig
from ..objects.curves import CavityBranch, LaggedInformationTable
from ..objects.distribution import DegreeDistribution
from ..objects.dynamics import DynamicsParams, StepUnit, UpdateRule
from ..objects.ensemble import EnsembleConfig, TrajectoryDump, UnitFitTable
from ..objects.graph import Graph
from ..oracle import build_kernel, lagged_unit_mi_series, stationary_distribution
from ..objects.series import XYSeries
from ..plot import curve_figure, load_curves, render_svg
from ..trend import trend_report
from ..utils import atomic_write, derive_stream, read_config_file, read_echoed_config, read_text

logger = logging.getLogger(__name__)

SEED_ENVIRONMENT = "IDTNET_SEED"
TRUE_VALUES = ("1", "true", "yes", "on")


class LagUnit(object):
    STEP = "step"
    SWEEP = "sweep"

    ALL = (STEP, SWEEP)


class IdtnetArgumentParser(argparse.ArgumentParser):
    """
    Reports bad command lines as a ValidationException instead of exiting.
    """
    def error(self, message):
        raise ValidationException("Invalid arguments", 205, message)


def _common(parser):
    parser.add_argument("--config", help="key = value file, or a CSV artifact whose echoed config is reused")
    parser.add_argument("--seed", type=int, help="master seed (default: $IDTNET_SEED, else 0)")
    parser.add_argument("--out", help="output path")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")


def _degrees(parser):
    parser.add_argument("--n", type=int, default=1000, help="node count")
    parser.add_argument("--gamma", type=float, default=1.6, help="power-law exponent of p(k)")
    parser.add_argument("--kmin", dest="k_min", type=int, default=1)
    parser.add_argument("--kmax", dest="k_max", type=int, help="largest degree (default: ceil(sqrt(n)))")


def _dynamics(parser, rule=True):
    parser.add_argument("--coupling", type=float, default=1.0, help="coupling energy J")
    parser.add_argument("--temp", dest="temperature", type=float, default=2.0, help="heat-bath temperature T")
    if rule:
        parser.add_argument("--rule", choices=UpdateRule.ALL, default=UpdateRule.GLAUBER)


def build_parser():
    parser = IdtnetArgumentParser(prog="idtnet", description="Information dissipation time in Ising networks")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command")

    gen = subparsers.add_parser("gen", help="generate a configuration-model graph")
    _common(gen)
    _degrees(gen)
    gen.add_argument("--realization", type=int, default=0, help="graph stream index")

    analytic = subparsers.add_parser("analytic", help="analytic IDT per degree")
    _common(analytic)
    _degrees(analytic)
    _dynamics(analytic, rule=False)
    analytic.add_argument("--eps", type=float, default=1e-3)
    analytic.add_argument("--c-eff", dest="c_eff", type=float, default=1.0)
    analytic.add_argument("--branch", choices=CavityBranch.ALL, default=CavityBranch.AUTO)

    idt = subparsers.add_parser("idt", help="empirical IDT from a trajectory ensemble")
    _common(idt)
    _degrees(idt)
    _dynamics(idt)
    idt.add_argument("--graph", help="edge list CSV; generated per realization when omitted")
    idt.add_argument("--traj", dest="trajectories", type=int, default=5000, help="trajectories M")
    idt.add_argument("--lag", dest="max_lag", type=int, default=100, help="maximum lag L")
    idt.add_argument("--eps", type=float, default=1e-3)
    idt.add_argument("--step", choices=StepUnit.ALL, default=StepUnit.SWEEP)
    idt.add_argument("--realizations", type=int, default=1)
    idt.add_argument("--equilibration-sweeps", dest="equilibration_sweeps", type=int, default=1000)
    idt.add_argument("--marginal-sweeps", dest="marginal_sweeps", type=int, default=10000)
    idt.add_argument("--batch-size", dest="batch_size", type=int, default=512)
    idt.add_argument("--workers", type=int, default=1, help="processes; never changes results")
    idt.add_argument("--per-unit", dest="per_unit", help="per-unit fit CSV")
    idt.add_argument("--dump", help="state dump CSV of trajectory 0")

    oracle = subparsers.add_parser("oracle", help="exact lagged information on a small graph")
    _common(oracle)
    _dynamics(oracle)
    oracle.add_argument("--graph", help="edge list CSV")
    oracle.add_argument("--star", type=int, help="star with this center degree")
    oracle.add_argument("--path", type=int, help="path with this many nodes")
    oracle.add_argument("--lags", dest="max_lag", type=int, default=50)
    oracle.add_argument("--lag-unit", dest="lag_unit", choices=LagUnit.ALL, default=LagUnit.STEP)
    oracle.add_argument("--units", type=int, nargs="*", help="units to report (default: all)")

    trend = subparsers.add_parser("trend", help="smoothing and regression of an x,y table")
    _common(trend)
    trend.add_argument("--input", help="CSV with x and y columns")
    trend.add_argument("--x-column", dest="x_column", default="x")
    trend.add_argument("--y-column", dest="y_column", default="y")
    trend.add_argument("--sigma", dest="sigma_points", type=float, default=10.0, help="kernel width in points")
    trend.add_argument("--fit-from", dest="fit_from", type=float, help="first x of the regression (trend peak)")
    trend.add_argument("--fit-to", dest="fit_to", type=float)

    plot = subparsers.add_parser("plot", help="SVG chart of curve CSVs")
    _common(plot)
    plot.add_argument("inputs", nargs="*", help="analytic or empirical curve CSVs")
    plot.add_argument("--title")

    parser.subcommands = subparsers.choices
    return parser


def _actions_by_name(subparser):
    actions = {}
    for action in subparser._actions:
        actions[action.dest] = action
        for option in action.option_strings:
            actions[option.lstrip("-").replace("-", "_")] = action
    return actions


def _convert(action, key, value):
    try:
        if isinstance(action, argparse._StoreTrueAction):
            return value.lower() in TRUE_VALUES
        convert = action.type or str
        if action.nargs in ("*", "+"):
            return [convert(item) for item in value.split()]
        value = convert(value)
    except (TypeError, ValueError):
        raise InputException("Malformed config value", 302, "{0}={1}".format(key, value))

    if action.choices is not None and value not in action.choices:
        raise ValidationException("Config value not allowed", 201, "{0}={1}".format(key, value))
    return value


def config_defaults(subparser, values, command):
    """
    Turns config file entries into typed defaults of the subcommand's parser.
    """
    actions = _actions_by_name(subparser)
    defaults = {}

    for key, value in values.items():
        if key == "command":
            if value != command:
                raise ValidationException("Config file is for another subcommand", 205, value)
            continue
        if key == "config" or key not in actions or actions[key].dest == "help":
            raise ValidationException("Unknown config key", 205, key)

        action = actions[key]
        defaults[action.dest] = _convert(action, key, value)

    return defaults


def resolve_seed(seed, environ=None):
    if seed is not None:
        return seed

    environ = os.environ if environ is None else environ
    if environ.get(SEED_ENVIRONMENT):
        try:
            return int(environ[SEED_ENVIRONMENT])
        except ValueError:
            raise ValidationException("IDTNET_SEED must be an integer", 201, environ[SEED_ENVIRONMENT])
    return 0


def parse_config(argv, parser=None):
    """
    argv -> validated RunConfig. Values come from the config file, overridden by flags.
    """
    parser = parser or build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        raise ValidationException("A subcommand is required", 205, "one of gen, analytic, idt, oracle, trend, plot")

    if args.config:
        values = read_echoed_config(args.config) if args.config.endswith(".csv") else read_config_file(args.config)
        subparser = parser.subcommands[args.command]
        subparser.set_defaults(**config_defaults(subparser, values, args.command))
        args = parser.parse_args(argv)

    args.seed = resolve_seed(args.seed)

    cfg = RunConfig.from_json(vars(args))
    cfg.validate()
    return cfg


def _write(path, table, cfg):
    atomic_write(path, table.to_csv(cfg.echo_pairs()))
    logger.info("Wrote %s", path)


def _suffixed(path, suffix):
    stem, extension = os.path.splitext(path)
    return "{0}.{1}{2}".format(stem, suffix, extension or ".csv")


def _distribution(cfg):
    return DegreeDistribution.power_law(cfg.gamma, cfg.k_min, cfg.k_max, cfg.n)


def _params(cfg):
    params = DynamicsParams(cfg.coupling, cfg.temperature, getattr(cfg, "rule", UpdateRule.GLAUBER))
    params.validate()
    return params


def _generated_graph(cfg, realization):
    return generate_graph(_distribution(cfg), cfg.n, derive_stream(cfg.seed, "graph", realization))


def run_gen(cfg):
    graph = _generated_graph(cfg, cfg.realization)
    _write(cfg.out, graph, cfg)


def run_analytic(cfg):
    curve = analytic_curve(_distribution(cfg), _params(cfg), cfg.eps, c_eff=cfg.c_eff, branch=cfg.branch)
    _write(cfg.out, curve, cfg)


def run_idt(cfg):
    params = _params(cfg)
    loaded = Graph.from_csv(read_text(cfg.graph)) if cfg.graph else None

    runs = []
    for realization in range(cfg.realizations):
        graph = loaded if loaded is not None else _generated_graph(cfg, realization)
        ensemble = EnsembleConfig(cfg.trajectories, cfg.max_lag, cfg.eps, cfg.seed, cfg.marginal_sweeps,
                                  cfg.equilibration_sweeps, cfg.step, cfg.batch_size, cfg.workers, realization)
        runs.append(measure_idt(graph, params, ensemble))

    curve = pool_results(runs)
    _write(cfg.out, curve, cfg)

    if cfg.realizations > 1:
        for run in runs:
            _write(_suffixed(cfg.out, run.curve.label), run.curve, cfg)

    if cfg.per_unit:
        for run in runs:
            path = cfg.per_unit if cfg.realizations == 1 else _suffixed(cfg.per_unit, run.curve.label)
            _write(path, UnitFitTable(run.fits), cfg)

    if cfg.dump:
        first = runs[0]
        ensemble = EnsembleConfig(cfg.trajectories, cfg.max_lag, cfg.eps, cfg.seed, step=cfg.step, realization=0)
        states = trajectory_trace(first.graph, params, first.histograms.reference, ensemble)
        _write(cfg.dump, TrajectoryDump(states), cfg)


def _oracle_graph(cfg):
    if cfg.graph:
        return Graph.from_csv(read_text(cfg.graph))
    if cfg.star is not None:
        return Graph.star(cfg.star)
    return Graph.path(cfg.path)


def run_oracle(cfg):
    graph = _oracle_graph(cfg)
    kernel = build_kernel(graph, _params(cfg))
    pi = stationary_distribution(kernel)

    lags = list(range(cfg.max_lag + 1))
    scale = graph.n if cfg.lag_unit == LagUnit.SWEEP else 1
    units = cfg.units if cfg.units else range(graph.n)

    rows = []
    for unit in units:
        if not 0 <= unit < graph.n:
            raise ValidationException("Unit outside the graph", 201, "unit={0}".format(unit))
        values = lagged_unit_mi_series(kernel, pi, unit, [lag * scale for lag in lags])
        rows.extend((lag, unit, float(value)) for lag, value in zip(lags, values))

    rows.sort()
    _write(cfg.out, LaggedInformationTable(rows, cfg.lag_unit), cfg)


def run_trend(cfg):
    series = XYSeries.from_csv(read_text(cfg.input), cfg.y_column, cfg.x_column)
    report = trend_report(series, cfg.sigma_points, cfg.fit_from, cfg.fit_to)
    _write(cfg.out, report, cfg)
    sys.stdout.write("{0}\n".format(report.fit))


def run_plot(cfg):
    figure = curve_figure(load_curves(cfg.inputs), cfg.title)
    atomic_write(cfg.out, render_svg(figure))
    logger.info("Wrote %s", cfg.out)


COMMANDS = {
    "gen": run_gen,
    "analytic": run_analytic,
    "idt": run_idt,
    "oracle": run_oracle,
    "trend": run_trend,
    "plot": run_plot,
}


def _diagnostic(error):
    text = "idtnet: error {0}: {1}".format(error.error_code, error.message)
    if error.detail:
        text += " ({0})".format(error.detail)
    return " ".join(text.split())


def main(argv=None):
    """
    Runs one subcommand and returns the process exit status.
    """
    parser = build_parser()

    try:
        cfg = parse_config(argv, parser)
        logging.basicConfig(level=logging.DEBUG if cfg.verbose else logging.WARNING, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        logger.debug("Resolved config: %s", cfg)
        COMMANDS[cfg.command](cfg)
    except IdtnetException as error:
        sys.stderr.write(_diagnostic(error) + "\n")
        return error.exit_status

    return 0


def cli_execute():
    sys.exit(main())
