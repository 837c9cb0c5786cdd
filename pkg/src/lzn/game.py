"""Round semantics of the localization game."""

from __future__ import annotations

import copy
import random
from collections.abc import Callable
from dataclasses import dataclass

from .graph import bfs_order, sphere

Probe = tuple
DistVec = tuple[int, ...]


class _AllVertices:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL"

    def __reduce__(self):
        return (_AllVertices, ())


ALL = _AllVertices()


class GameError(RuntimeError):
    pass


class ContractViolation(GameError):
    def __init__(self, who: str, message: str):
        super().__init__(f"{who}: {message}")
        self.who = who


class NondeterministicStrategy(GameError):
    pass


class CandidateOverflow(GameError):
    pass


class UnsupportedPartition(GameError):
    def __init__(self):
        super().__init__("unsupported symbolic partition")


def all_vertices(g) -> list:
    if not g.is_finite:
        raise UnsupportedPartition()
    if hasattr(g, "n"):
        return list(range(g.n))
    return bfs_order(g, g.root)


def probe_response(g, robber_pos, probe: Probe) -> DistVec:
    return tuple(g.distance(u, robber_pos) for u in probe)


def class_of(g, C, probe: Probe, dist: DistVec) -> set:
    """Members of C whose distance vector to probe equals dist."""
    if C is ALL:
        if g.is_finite:
            C = all_vertices(g)
        else:
            C = sphere(g, probe[0], dist[0])
    return {x for x in C if probe_response(g, x, probe) == tuple(dist)}


class SphericalPartition:
    """Classes of AllVertices under a single probe on an infinite graph: spheres."""

    def __init__(self, g, center):
        self.g = g
        self.center = center

    def __getitem__(self, dist: DistVec) -> set:
        return sphere(self.g, self.center, dist[0])

    def __iter__(self):
        raise UnsupportedPartition()


def partition_candidates(g, C, probe: Probe):
    if C is ALL:
        if not g.is_finite:
            if len(probe) == 1:
                return SphericalPartition(g, probe[0])
            raise UnsupportedPartition()
        C = all_vertices(g)
    classes: dict[DistVec, set] = {}
    for x in C:
        classes.setdefault(probe_response(g, x, probe), set()).add(x)
    return classes


def expand_candidates(g, C) -> set:
    out = set(C)
    for x in C:
        out.update(g.neighbors(x))
    return out


# --- transcripts -----------------------------------------------------------

@dataclass(frozen=True)
class RoundRecord:
    index: int
    probe: Probe
    dist: DistVec
    candidates: int | None  # None: at least two, certified by a twin trajectory
    robber: object = None


class Transcript:
    def __init__(self, seed: int = 0, header: str = ""):
        self.seed = seed
        self.header = header
        self.rounds: list[RoundRecord] = []

    def append(self, rec: RoundRecord) -> None:
        self.rounds.append(rec)

    def __len__(self):
        return len(self.rounds)

    def visible(self) -> list[tuple[Probe, DistVec]]:
        return [(r.probe, r.dist) for r in self.rounds]

    def to_text(self, fmt: Callable = str, robber: bool = True) -> str:
        lines = [f"# seed {self.seed}"]
        if self.header:
            lines.append(f"# {self.header}")
        for r in self.rounds:
            cand = str(r.candidates) if r.candidates is not None else ">=2"
            lines.append(
                f"round {r.index} probe {' '.join(fmt(v) for v in r.probe)} "
                f"dist {' '.join(map(str, r.dist))} candidates {cand}"
            )
            if robber and r.robber is not None:
                lines.append(f"robber {fmt(r.robber)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Outcome:
    captured: bool
    round: int
    vertex: object = None

    def __str__(self):
        return f"captured round {self.round}" if self.captured else "evaded"


# --- agents ----------------------------------------------------------------

class CopStrategy:
    """Deterministic cop: probes are a function of the visible transcript.

    Subclasses implement reset/next_probe/observe. Attributes named in
    `_shared` are immutable and shared with replicas instead of copied.
    """

    cops = 1
    name = "cop"
    _shared: tuple[str, ...] = ("graph",)

    def start(self, g) -> None:
        self.graph = g
        self.reset()
        self._pristine = None
        self._pristine = copy.deepcopy(self)

    def reset(self) -> None:
        pass

    def next_probe(self) -> Probe:
        raise NotImplementedError

    def observe(self, probe: Probe, dist: DistVec) -> None:
        pass

    def state_key(self):
        """Hashable snapshot of the internal state, or None if not provided."""
        return None

    def __deepcopy__(self, memo):
        cls = self.__class__
        new = cls.__new__(cls)
        memo[id(self)] = new
        for k in self._shared:
            if k in self.__dict__:
                memo[id(self.__dict__[k])] = self.__dict__[k]
        for k, v in self.__dict__.items():
            setattr(new, k, v if k in self._shared else copy.deepcopy(v, memo))
        return new


def fork_for_lookahead(cop: CopStrategy, transcript: Transcript | None = None,
                       verify: bool = False) -> CopStrategy:
    """Replica of a live strategy; with verify, rebuilt by replaying the transcript."""
    if not verify:
        return copy.deepcopy(cop)
    if transcript is None:
        raise GameError("verification needs the transcript")
    return replay(cop, transcript)


def replay(cop: CopStrategy, transcript: Transcript) -> CopStrategy:
    fresh = copy.deepcopy(cop._pristine)
    fresh._pristine = cop._pristine
    for rec in transcript.rounds:
        p = tuple(fresh.next_probe())
        if p != rec.probe:
            raise NondeterministicStrategy(
                f"{cop.name}: replay of round {rec.index} probed {p}, transcript has {rec.probe}")
        fresh.observe(rec.probe, rec.dist)
    return fresh


@dataclass
class TwinCertificate:
    """Alternative robber trajectory with identical observations.

    path[j] is the twin's position at the probe of round start_round + j; before
    start_round the twin coincides with the robber.
    """

    start_round: int
    path: list


class GameView:
    def __init__(self, g, cop: CopStrategy, transcript: Transcript, rng: random.Random):
        self.graph = g
        self._cop = cop
        self.cops = cop.cops
        self.transcript = transcript
        self.rng = rng
        self.round = 0
        self.candidates = ALL
        self.position = None
        self.probe: Probe | None = None
        self.dist: DistVec | None = None

    def fork(self, verify: bool = False) -> CopStrategy:
        return fork_for_lookahead(self._cop, self.transcript, verify=verify)


class RobberAgent:
    kind = "concrete"
    name = "robber"

    def start(self, view: GameView) -> None:
        pass


class ConcreteRobber(RobberAgent):
    kind = "concrete"

    def place(self, view: GameView):
        raise NotImplementedError

    def move(self, view: GameView):
        return view.position

    def twin(self, view: GameView) -> TwinCertificate | None:
        return None


class PhantomRobber(RobberAgent):
    kind = "phantom"

    def choose(self, view: GameView, classes: dict) -> DistVec:
        raise NotImplementedError

    def choose_symbolic(self, view: GameView, probe: Probe) -> DistVec:
        raise ContractViolation(self.name, "cannot name a class of an infinite partition (declare a horizon)")


def _check_twin(g, transcript: Transcript, pos, cert: TwinCertificate | None) -> bool:
    if cert is None:
        return False
    r = len(transcript.rounds)
    path = cert.path
    if not 1 <= cert.start_round <= r or len(path) != r - cert.start_round + 1:
        return False
    if path[-1] == pos:
        return False
    if cert.start_round > 1:
        prev = transcript.rounds[cert.start_round - 2].robber
        if path[0] != prev and path[0] not in g.neighbors(prev):
            return False
    for a, b in zip(path, path[1:]):
        if a != b and b not in g.neighbors(a):
            return False
    for j, x in enumerate(path):
        rec = transcript.rounds[cert.start_round - 1 + j]
        if probe_response(g, x, rec.probe) != rec.dist:
            return False
    return True


def play(g, cop: CopStrategy, robber: RobberAgent, max_rounds: int, seed: int = 0, *,
         track: str = "exact", candidate_limit: int = 200_000,
         on_round: Callable[[GameView], None] | None = None) -> tuple[Outcome, Transcript]:
    """Run one game. track: "exact" candidate sets, "witness" twin certificates
    from the robber, or "auto" (exact until the limit, then witness)."""
    if max_rounds < 1:
        raise GameError("max_rounds must be >= 1")
    if track not in ("exact", "witness", "auto"):
        raise GameError(f"unknown tracking mode {track!r}")
    if robber.kind == "phantom" and track != "exact":
        raise GameError("phantom robbers need exact tracking")
    transcript = Transcript(seed, header=f"cops {cop.name} robber {robber.name}")
    rng = random.Random(seed)
    cop.start(g)
    view = GameView(g, cop, transcript, rng)
    robber.start(view)
    concrete = robber.kind == "concrete"
    exact = track != "witness"
    C = ALL
    if concrete:
        pos = robber.place(view)
        if hasattr(g, "is_vertex") and not g.is_vertex(pos):
            raise ContractViolation(robber.name, f"initial position {pos!r} is not a vertex")
        view.position = pos

    for r in range(1, max_rounds + 1):
        view.round = r
        probe = tuple(cop.next_probe())
        if len(probe) != cop.cops:
            raise ContractViolation(cop.name, f"probed {len(probe)} vertices with {cop.cops} cops")
        view.probe, view.dist = probe, None
        if concrete:
            dist = probe_response(g, pos, probe)
            cls = class_of(g, C, probe, dist) if exact else None
            if cls is not None and pos not in cls:
                raise GameError("candidate tracking lost the robber")
        else:
            if C is ALL and not g.is_finite:
                dist = tuple(robber.choose_symbolic(view, probe))
                cls = class_of(g, ALL, probe, dist)
            else:
                classes = partition_candidates(g, C, probe)
                dist = tuple(robber.choose(view, classes))
                cls = classes.get(dist, set())
            if not cls:
                raise ContractViolation(robber.name, f"chose empty class {dist}")
            pos = None
        cop.observe(probe, dist)
        view.dist = dist
        view.candidates = cls if cls is not None else None

        if cls is not None:
            transcript.append(RoundRecord(r, probe, dist, len(cls), pos))
            if on_round:
                on_round(view)
            if len(cls) == 1:
                return Outcome(True, r, next(iter(cls))), transcript
            if track == "auto" and len(cls) > candidate_limit:
                exact = False
        else:
            transcript.append(RoundRecord(r, probe, dist, None, pos))
            if not _check_twin(g, transcript, pos, robber.twin(view)):
                raise ContractViolation(robber.name, f"round {r}: no valid twin certificate")
            if on_round:
                on_round(view)

        if concrete:
            new = robber.move(view)
            if new != pos and new not in g.neighbors(pos):
                raise ContractViolation(robber.name, f"illegal move {pos!r} -> {new!r}")
            pos = new
            view.position = pos
        if exact:
            C = expand_candidates(g, cls)
            if track == "exact" and len(C) > candidate_limit:
                raise CandidateOverflow(f"candidate set of {len(C)} exceeds limit {candidate_limit}")
        else:
            C = None
    return Outcome(False, max_rounds), transcript

