"""
    sft_lift.limiter
    ~~~~~~~~~~~~~~~~

    This module contains the Limiter class, which holds the search budget
    configuration shared by every probe.

    :license: MIT, see LICENSE for more details.
"""
import logging
import os
import time
from typing import Any, Dict, Optional

from sft_lift.exceptions import ResourceLimit

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 2_000_000
DEFAULT_PROOF_LIMIT = 200_000
DEFAULT_EXPORT_LIMIT = 1_000_000


def _env_number(name: str, cast, default):
    raw = os.environ.get(name)
    if raw is None or raw == '':
        return default
    try:
        return cast(raw)
    except ValueError:
        logger.warning(f"Ignoring the malformed environment value {name}={raw!r}")
        return default


class Limiter:
    """ This is the central class for search budgets

    You need to initialize this object to setup the budget of the searches and then
    hand it to the probes of :mod:`sft_lift.solver`. Each search asks the limiter
    for a fresh :class:`Budget`, so a limiter can be shared by many searches.

    Args:
        node_budget (int): Optional maximal number of search nodes per search,
                           overrides ``SFTLIFT_NODE_BUDGET``.
        time_limit (float): Optional wall-clock seconds per search, overrides ``SFTLIFT_TIME_LIMIT``.
        threads (int): Optional number of worker threads, overrides ``SFTLIFT_THREADS``.
        config (dict of str): Optional config settings provided as a dictionary

    Attributes:
        config (dict of str): Config settings stored as a dictionary
        node_budget (int): Maximal number of search nodes per search
        time_limit (float): Wall-clock seconds per search, or None for no limit
        threads (int): Number of worker threads used for root-level subtree parallelism
        proof_limit (int): Maximal number of refutation-proof nodes kept in a certificate
        export_limit (int): Maximal number of patterns produced by an extensional export
    """

    def __init__(self,
                 node_budget: Optional[int] = None,
                 time_limit: Optional[float] = None,
                 threads: Optional[int] = None,
                 config: Optional[Dict[str, Any]] = None) -> None:

        if not config:
            config = {}

        # set the defaults for the config
        config.setdefault('SFTLIFT_NODE_BUDGET', _env_number('SFTLIFT_NODE_BUDGET', int, DEFAULT_NODE_BUDGET))
        config.setdefault('SFTLIFT_TIME_LIMIT', _env_number('SFTLIFT_TIME_LIMIT', float, None))
        config.setdefault('SFTLIFT_THREADS', _env_number('SFTLIFT_THREADS', int, 1))
        config.setdefault('SFTLIFT_PROOF_LIMIT', DEFAULT_PROOF_LIMIT)
        config.setdefault('SFTLIFT_EXPORT_LIMIT', DEFAULT_EXPORT_LIMIT)

        if node_budget is not None:
            config['SFTLIFT_NODE_BUDGET'] = node_budget
        if time_limit is not None:
            config['SFTLIFT_TIME_LIMIT'] = time_limit
        if threads is not None:
            config['SFTLIFT_THREADS'] = threads

        self.config = config
        self.node_budget = int(config['SFTLIFT_NODE_BUDGET'])
        self.time_limit = config['SFTLIFT_TIME_LIMIT']
        self.threads = max(1, int(config['SFTLIFT_THREADS']))
        self.proof_limit = int(config['SFTLIFT_PROOF_LIMIT'])
        self.export_limit = int(config['SFTLIFT_EXPORT_LIMIT'])

        if self.node_budget <= 0:
            logger.error("The node budget must be positive, every search will stop immediately!")

    def budget(self) -> 'Budget':
        """ A fresh budget for one search """
        return Budget(self.node_budget, self.time_limit)

    def describe(self) -> Dict[str, Any]:
        """ The limits as they are surfaced in certificates """
        return {'node_budget': self.node_budget, 'time_limit': self.time_limit}


class Budget:
    """ Counts the nodes of one search and enforces the limits

    Args:
        node_budget (int): Maximal number of nodes
        time_limit (float): Wall-clock seconds, or None
    """

    # checking the clock on every node is needlessly slow
    _CLOCK_EVERY = 256

    def __init__(self, node_budget: int, time_limit: Optional[float]) -> None:
        self.node_budget = node_budget
        self.time_limit = time_limit
        self.nodes = 0
        self.started = time.monotonic()

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def hit(self, count: int = 1) -> None:
        """ Consumes nodes and raises :class:`ResourceLimit` once a limit is passed """
        self.nodes += count
        if self.nodes > self.node_budget:
            raise ResourceLimit('node budget', nodes=self.nodes, elapsed=self.elapsed)
        if self.time_limit is not None and self.nodes % self._CLOCK_EVERY == 0 \
                and self.elapsed > self.time_limit:
            raise ResourceLimit('time limit', nodes=self.nodes, elapsed=self.elapsed)
