# -*- coding: utf-8 -*-
"""
Symbolic simulator of the extended Y-channel protocol.

Codewords are replaced by symbols in Z_q and the relay's lattice decoding by
modulo-q sums, so that the simulator checks the protocol algebra: relay
forwarding, backward decoding and pre-transmitted interference neutralization.
Every transmitted quantity is a linear combination of message units,
stored as a dictionary

    {(direction, unit, block): coefficient mod q}

next to its numeric value.

The protocol as a sequence
--------------------------

A run is a program executed by `ProtocolSequencer` on a state dictionary,
one instruction per protocol step:

    [["INIT"],
     ["TRANSMIT", 1], ..., ["TRANSMIT", B],
     ["PRETRANSMIT", B], ..., ["PRETRANSMIT", 2],
     ["RELAY", 1], ..., ["RELAY", B+1],
     ["RECEIVE", 1], ..., ["RECEIVE", B+1],
     ["DECODE", B+1], ..., ["DECODE", 2],
     ["FINISH"]]

The users are silent in block B+1; the relay forwards in block b what it
received in block b-1, so block 1 carries nothing.

PRETRANSMIT b handles the levels where user 2 (3) hears user 3 (2) directly.
The part of the aggressor's block-b symbol that the victim does not want is
subtracted one block earlier on the uplink index of the signal forwarded on
that level, so the relay output cancels it at the victim. If that index is
outside the aggressor's reach a failure is recorded.

DECODE b adds block-b observations to each user's pool and solves every
observation with a single unknown, repeating until nothing new is learned.
A user knows its own messages from the start.

Commands can be replaced via the dictionary returned by `default_command_list`.

"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from triway.alloc import AGGRESSOR, Allocation, DemandTuple, allocate
from triway.core import DIRECTIONS, ConfigError, Direction, DomainError

logger = logging.getLogger(__name__)

DEFAULT_Q = 16


def neutralization_identity_check(a: int, b: int, q: int = DEFAULT_Q) -> bool:
    """((a - b) mod q + b) mod q == a mod q"""
    if q < 2:
        raise DomainError("q must be at least 2, got %r" % (q,))
    return (((a - b) % q) + b) % q == a % q


def local_to_global(user: int, m: int, n_tilde) -> int:
    """Global downlink index of the m-th (1-based) level decoded by `user`."""
    reach = {1: n_tilde[0], 2: n_tilde[1], 3: n_tilde[2]}
    return n_tilde[0] - reach[user] + m


def cross_map(N1: int, n_tilde) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """
    Direct interference between users 2 and 3.

    Parameters
    ----------
    N1 : int
        Number of interfered levels.
    n_tilde : (int, int, int)
        (Ñ1, Ñ2, Ñ3).

    Returns
    -------
    dict
        (user, uplink index) -> (peer, local downlink level of the peer).
        User 3's top N1 uplink indices hit user 2's lowest N1 levels in order,
        and user 2's top N1 uplink indices hit user 3's lowest N1 levels.

    """
    n1t, n2t, n3t = (int(x) for x in n_tilde)
    if not n1t >= n2t >= n3t >= 1:
        raise DomainError("expected Ñ1 >= Ñ2 >= Ñ3 >= 1, got %r" % (tuple(n_tilde),))
    if not 0 <= N1 <= n3t:
        raise DomainError("N1=%r must lie in [0, Ñ3=%d]" % (N1, n3t))
    out = dict()
    for m in range(1, N1 + 1):
        out[(3, n3t - N1 + m)] = (2, m)
        out[(2, n2t - N1 + m)] = (3, m)
    return out


def random_messages(allocation: Allocation, B: int, q: int = DEFAULT_Q, seed: int = 0) -> Dict[Direction, Tuple[int, ...]]:
    """
    Uniform symbols for every allocated unit and block, in canonical direction order.
    """
    rng = np.random.default_rng(seed)
    counts = allocation.demand()
    return {d: tuple(int(v) for v in rng.integers(0, q, size=counts[d] * B)) for d in DIRECTIONS}


@dataclass(frozen=True)
class SimConfig:
    q: int
    B: int
    allocation: Allocation
    messages: Mapping[Direction, Tuple[int, ...]]
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.q, bool) or int(self.q) != self.q or self.q < 2:
            raise DomainError("q must be an integer >= 2, got %r" % (self.q,))
        if isinstance(self.B, bool) or int(self.B) != self.B or self.B < 1:
            raise DomainError("B must be a positive integer, got %r" % (self.B,))
        counts = self.allocation.demand()
        msgs = dict()
        for d in DIRECTIONS:
            seq = tuple(int(v) for v in self.messages.get(d, ()))
            if len(seq) != counts[d] * self.B:
                raise DomainError("%s needs %d symbols, got %d" % (d.name, counts[d] * self.B, len(seq)))
            if any(not 0 <= v < self.q for v in seq):
                raise DomainError("%s symbols must lie in [0, %d)" % (d.name, self.q))
            msgs[d] = seq
        object.__setattr__(self, "messages", msgs)

    @property
    def n1(self) -> int:
        return self.allocation.n1

    @classmethod
    def build(cls, demand: DemandTuple, n_tilde, q: int = DEFAULT_Q, B: int = 1, seed: int = 0) -> "SimConfig":
        alloc = allocate(demand, n_tilde)
        return cls(q, B, alloc, random_messages(alloc, B, q, seed), seed)

    @classmethod
    def from_dict(cls, d: Mapping) -> "SimConfig":
        """
        Keys: q, blocks, seed, and either 'allocation' (as written by
        `Allocation.to_dict`) or 'N_tilde' with 'demand'. Missing messages
        are drawn with `random_messages`.
        """
        try:
            q = int(d.get("q", DEFAULT_Q))
            B = int(d.get("blocks", 1))
            seed = int(d.get("seed", 0))
            if "allocation" in d:
                alloc = Allocation.from_dict(d["allocation"])
            else:
                demand = d["demand"]
                if isinstance(demand, str):
                    demand = DemandTuple.parse(demand)
                elif isinstance(demand, Mapping):
                    demand = DemandTuple.from_mapping(demand)
                else:
                    demand = DemandTuple(demand)
                alloc = allocate(demand, d["N_tilde"])
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError("malformed simulator config: %s" % err) from None
        if "messages" in d:
            msgs = {Direction.parse(k): tuple(v) for k, v in d["messages"].items()}
        else:
            msgs = random_messages(alloc, B, q, seed)
        return cls(q, B, alloc, msgs, seed)

    def to_dict(self) -> dict:
        return {"q": self.q, "blocks": self.B, "seed": self.seed,
                "allocation": self.allocation.to_dict(),
                "messages": {d.name: list(v) for d, v in self.messages.items()}}


@dataclass(frozen=True)
class FailureReport:
    block: int
    index: int
    user: int
    reason: str

    def to_dict(self) -> dict:
        return {"block": self.block, "index": self.index, "user": self.user, "reason": self.reason}


@dataclass(frozen=True)
class Neutralization:
    block: int
    index: int
    victim: int
    ok: bool


@dataclass
class SimTrace:
    config: SimConfig
    transmitted: Dict
    relay: Dict
    received: Dict
    decoded: Dict[Direction, Tuple[Optional[int], ...]]
    log: List[str] = field(default_factory=list)
    failures: List[FailureReport] = field(default_factory=list)
    neutralizations: List[Neutralization] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return not self.failures and self.decoded == dict(self.config.messages)

    def records(self) -> List[dict]:
        """One record per (block, sub-channel, node) in a fixed order."""
        q = self.config.q
        values = _value_table(self.config)
        out = []
        for b in range(1, self.config.B + 2):
            for user in (1, 2, 3):
                for idx, expr in sorted(self.transmitted.get(user, {}).get(b, {}).items()):
                    out.append({"block": b, "index": idx, "node": "user%d" % user, "dir": "up",
                                "symbol": format_expr(expr), "value": _evaluate(expr, values, q)})
            for idx, expr in sorted(self.relay.get(b, {}).items()):
                out.append({"block": b, "index": idx, "node": "relay", "dir": "down",
                            "symbol": format_expr(expr), "value": _evaluate(expr, values, q)})
            for user in (1, 2, 3):
                for idx, expr in sorted(self.received.get(user, {}).get(b, {}).items()):
                    out.append({"block": b, "index": idx, "node": "user%d" % user, "dir": "rx",
                                "symbol": format_expr(expr), "value": _evaluate(expr, values, q)})
        return out

    def to_dict(self) -> dict:
        return {"success": self.success,
                "decoded": {d.name: list(v) for d, v in self.decoded.items()},
                "failures": [f.to_dict() for f in self.failures],
                "neutralizations": [{"block": n.block, "index": n.index, "victim": n.victim, "ok": n.ok}
                                    for n in self.neutralizations],
                "log": list(self.log)}


def _term_key(t):
    return (t[0].index, t[1], t[2])


def format_expr(expr: Dict) -> str:
    if not expr:
        return "0"
    return " + ".join("%d*%s[%d]@%d" % (c, t[0].name, t[1], t[2])
                      for t, c in sorted(expr.items(), key=lambda kv: _term_key(kv[0])))


def _add(target: Dict, expr: Dict, q: int, sign: int = 1):
    for t, c in expr.items():
        v = (target.get(t, 0) + sign * c) % q
        if v:
            target[t] = v
        else:
            target.pop(t, None)


def _value_table(cfg: SimConfig) -> Dict:
    counts = cfg.allocation.demand()
    table = dict()
    for d in DIRECTIONS:
        n = counts[d]
        for b in range(1, cfg.B + 1):
            for k in range(n):
                table[(d, k, b)] = cfg.messages[d][(b - 1) * n + k]
    return table


def _evaluate(expr: Dict, values: Dict, q: int) -> int:
    return sum(c * values[t] for t, c in expr.items()) % q


def _interfered(options, user: int):
    """victim downlink index -> aggressor uplink index"""
    nt = options["n_tilde"]
    out = dict()
    for (aggr, up), (peer, m) in options["cross"].items():
        if peer == user:
            out[local_to_global(peer, m, nt)] = up
    return out


def __initState(state, options):
    state["X"] = {u: {} for u in (1, 2, 3)}
    state["R"] = {}
    state["Y"] = {u: {} for u in (1, 2, 3)}
    state["pool"] = {u: [] for u in (1, 2, 3)}
    state["learned"] = {u: {} for u in (1, 2, 3)}
    state["failures"] = []
    state["neutralizations"] = []
    state["log"] = []
    return None


def __transmit(args, state, options):
    b = args[0]
    alloc = options["allocation"]
    for s in alloc.signals:
        for d, k in s.components:
            slot = state["X"][d.src].setdefault(b, {}).setdefault(s.uplink, {})
            _add(slot, {(d, k, b): 1}, options["q"])


def __pretransmit(args, state, options):
    b = args[0]
    q = options["q"]
    alloc = options["allocation"]
    reach = options["reach"]
    for victim in (2, 3):
        aggr = AGGRESSOR[victim]
        for level, up_aggr in sorted(_interfered(options, victim).items()):
            s = alloc.signal_at_downlink(level)
            if s is None or victim not in s.case.receivers:
                continue
            source = state["X"][aggr].get(b, {}).get(up_aggr, {})
            unwanted = {t: c for t, c in source.items() if t[0].dst != victim}
            if not unwanted:
                continue
            if s.uplink > reach[aggr]:
                state["failures"].append(FailureReport(b, level, victim, "residual interference from user %d" % aggr))
                logger.warning("residual interference at user %d, block %d, sub-channel %d", victim, b, level)
                continue
            slot = state["X"][aggr].setdefault(b - 1, {}).setdefault(s.uplink, {})
            _add(slot, unwanted, q, -1)
            state["log"].append("block %d: user %d pre-transmits on uplink %d for level %d of user %d"
                                % (b - 1, aggr, s.uplink, level, victim))
            state["neutralizations"].append((b, level, victim))


def __relay(args, state, options):
    b = args[0]
    q = options["q"]
    out = dict()
    for s in options["allocation"].signals:
        expr = dict()
        for u in (1, 2, 3):
            _add(expr, state["X"][u].get(b - 1, {}).get(s.uplink, {}), q)
        out[s.downlink] = expr
    state["R"][b] = out


def __receive(args, state, options):
    b = args[0]
    q = options["q"]
    nt = options["n_tilde"]
    reach = options["reach"]
    for user in (1, 2, 3):
        hits = _interfered(options, user)
        rx = dict()
        for level in range(nt[0] - reach[user] + 1, nt[0] + 1):
            expr = dict(state["R"].get(b, {}).get(level, {}))
            if level in hits:
                _add(expr, state["X"][AGGRESSOR[user]].get(b, {}).get(hits[level], {}), q)
            rx[level] = expr
        state["Y"][user][b] = rx


def __decode(args, state, options):
    b = args[0]
    q = options["q"]
    values = options["values"]
    alloc = options["allocation"]
    for user in (1, 2, 3):
        for level, expr in sorted(state["Y"][user].get(b, {}).items()):
            s = alloc.signal_at_downlink(level)
            if s is not None and user in s.case.receivers:
                state["pool"][user].append((b, level, expr, _evaluate(expr, values, q)))
        learned = state["learned"][user]
        progress = True
        while progress:
            progress = False
            for blk, level, expr, value in state["pool"][user]:
                unknown = [t for t in expr if t[0].src != user and t not in learned]
                if len(unknown) != 1:
                    continue
                t = unknown[0]
                coef = expr[t]
                if math.gcd(coef, q) != 1:
                    continue
                rest = sum(c * (values[x] if x[0].src == user else learned[x])
                           for x, c in expr.items() if x != t)
                learned[t] = ((value - rest) * pow(coef, -1, q)) % q
                state["log"].append("block %d: user %d solves %s[%d]@%d on level %d"
                                    % (blk, user, t[0].name, t[1], t[2], level))
                progress = True


def __finish(state, options):
    cfg = options["config"]
    counts = cfg.allocation.demand()
    decoded = dict()
    for d in DIRECTIONS:
        learned = state["learned"][d.dst]
        seq = []
        for b in range(1, cfg.B + 1):
            for k in range(counts[d]):
                seq.append(learned.get((d, k, b)))
        decoded[d] = tuple(seq)
        if any(v is None for v in seq):
            state["failures"].append(FailureReport(0, 0, d.dst, "%s not fully decoded" % d.name))
    state["decoded"] = decoded
    checks = []
    for b, level, victim in state["neutralizations"]:
        s = cfg.allocation.signal_at_downlink(level)
        intended = {(d, k, b - 1): 1 for d, k in s.components}
        rx = state["Y"][victim].get(b, {}).get(level, {})

        def foreign(expr):
            return {t: c for t, c in expr.items() if t[0].dst != victim and t[0].src != victim}
        checks.append(Neutralization(b, level, victim, foreign(rx) == foreign(intended)))
    state["neutralizations"] = checks


def default_command_list() -> dict:
    """
    The protocol commands as name -> (number of arguments, function).

    * INIT: reset the state (no arguments, called before the program runs)
    * TRANSMIT b: users send their block-b units on the allocated uplink indices
    * PRETRANSMIT b: neutralize the block-b cross interference one block ahead
    * RELAY b: forward the block-(b-1) modulo sums
    * RECEIVE b: relay output plus cross interference at every user
    * DECODE b: backward decoding step
    * FINISH: collect decoded messages and neutralization checks

    Returns
    -------
    dict

    """
    cmds = dict()
    cmds["INIT"] = (0, __initState)
    cmds["TRANSMIT"] = (1, __transmit)
    cmds["PRETRANSMIT"] = (1, __pretransmit)
    cmds["RELAY"] = (1, __relay)
    cmds["RECEIVE"] = (1, __receive)
    cmds["DECODE"] = (1, __decode)
    cmds["FINISH"] = (0, __finish)
    return cmds


def default_options(cfg: SimConfig) -> dict:
    nt = cfg.allocation.n_tilde
    return {"config": cfg,
            "q": cfg.q,
            "allocation": cfg.allocation,
            "n_tilde": nt,
            "reach": {1: nt[0], 2: nt[1], 3: nt[2]},
            "cross": cross_map(cfg.n1, nt),
            "values": _value_table(cfg)}


def protocol_program(B: int) -> List[list]:
    prog = [["INIT"]]
    prog += [["TRANSMIT", b] for b in range(1, B + 1)]
    prog += [["PRETRANSMIT", b] for b in range(B, 1, -1)]
    prog += [["RELAY", b] for b in range(1, B + 2)]
    prog += [["RECEIVE", b] for b in range(1, B + 2)]
    prog += [["DECODE", b] for b in range(B + 1, 1, -1)]
    prog += [["FINISH"]]
    return prog


class ProtocolSequencer:
    def __init__(self, program: List[list], options: dict, commands: dict):
        """
        Initializes a sequencer running `program` with the given options and
        command dictionary.

        Parameters
        ----------
        program : list
            Instructions, each a list [name, *args].
        options : dict
            Read-only data passed to every command.
        commands : dict
            name -> (number of arguments, function).

        Returns
        -------
        None.

        """
        self.program = program
        self.options = options
        self.dic = commands
        self.state = dict()

    def run(self) -> dict:
        """
        Executes the program and returns the final state.
        """
        for instr in self.program:
            if len(instr) == 0:
                continue
            cmd, args = instr[0], instr[1:]
            if cmd not in self.dic:
                raise ConfigError("command %s does not exist" % cmd)
            nargs, fn = self.dic[cmd]
            if nargs != len(args):
                raise ConfigError("wrong number of arguments for command %s" % cmd)
            if nargs == 0:
                fn(self.state, self.options)
            else:
                fn(args, self.state, self.options)
        return self.state


def run(cfg: SimConfig) -> SimTrace:
    """
    Simulate B+1 blocks of the protocol.

    Parameters
    ----------
    cfg : SimConfig

    Returns
    -------
    SimTrace
        `decoded` holds the symbols recovered by each destination (None where
        decoding failed); `success` is True when every message is recovered
        and no neutralization failed.

    """
    seq = ProtocolSequencer(protocol_program(cfg.B), default_options(cfg), default_command_list())
    state = seq.run()
    trace = SimTrace(config=cfg, transmitted=state["X"], relay=state["R"], received=state["Y"],
                     decoded=state["decoded"], log=state["log"], failures=state["failures"],
                     neutralizations=state["neutralizations"])
    logger.info("simulated %d blocks, q=%d: %s", cfg.B, cfg.q, "ok" if trace.success else "failed")
    return trace


def negative_run(cfg: SimConfig) -> Optional[FailureReport]:
    """First failure of a run, or None for a clean run."""
    trace = run(cfg)
    return trace.failures[0] if trace.failures else None
