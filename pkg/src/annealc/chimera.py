"""Chimera hardware topology, minor embedding, and chain plumbing.

A Chimera graph is an M x N lattice of cells, each cell a complete bipartite
block K_{L,L} between a "left" and a "right" shore of L qubits.  Left-shore
qubits connect vertically to the same shore position in the cell below;
right-shore qubits connect horizontally to the next cell in the row.  Qubit
ids are 1-based linear indices: cell (r, c) occupies ids
(r*N + c)*2L + 1 .. (r*N + c)*2L + 2L, the left shore first.

A minor embedding maps every logical variable to a chain -- a connected,
pairwise-disjoint set of operable qubits -- such that every logical coupling
has at least one physical coupler between its two chains.  Chain weights:
intra-chain couplers get -M (the chain strength), a logical field is split
uniformly over its chain, and each logical coupling is placed on exactly one
physical coupler (the lowest id pair).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .errors import ContractViolation, DomainError, EmbeddingNotFound, ParseError
from .quadratic import IsingModel


class ChimeraGraph:
    """Chimera topology with optional inoperable qubits removed ("working graph")."""

    def __init__(self, M, N, L, inoperable=()):
        if min(M, N, L) < 1:
            raise DomainError("Chimera dimensions must be positive, got (%r, %r, %r)" % (M, N, L))
        self.M = int(M)
        self.N = int(N)
        self.L = int(L)
        self.num_qubits = 2 * self.M * self.N * self.L
        self.inoperable = frozenset(int(q) for q in inoperable)
        for q in self.inoperable:
            if not 1 <= q <= self.num_qubits:
                raise DomainError("inoperable qubit %d outside 1..%d" % (q, self.num_qubits))
        self._adj = self._build_adjacency()

    def _build_adjacency(self):
        adj = {}
        M, N, L = self.M, self.N, self.L
        operable = lambda q: q not in self.inoperable

        def link(a, b):
            if operable(a) and operable(b):
                adj.setdefault(a, set()).add(b)
                adj.setdefault(b, set()).add(a)

        for r in range(M):
            for c in range(N):
                base = (r * N + c) * 2 * L
                for k in range(1, L + 1):
                    left = base + k
                    if operable(left):
                        adj.setdefault(left, set())
                    right = base + L + k
                    if operable(right):
                        adj.setdefault(right, set())
                    for k2 in range(1, L + 1):
                        link(base + k, base + L + k2)
                    if r + 1 < M:  # left shore couples vertically
                        link(left, ((r + 1) * N + c) * 2 * L + k)
                    if c + 1 < N:  # right shore couples horizontally
                        link(right, (r * N + c + 1) * 2 * L + L + k)
        return adj

    def qubit_id(self, row, col, side, k):
        """(row, col, side in {0 left, 1 right}, k in 0..L-1) -> 1-based id."""
        if not (0 <= row < self.M and 0 <= col < self.N and side in (0, 1) and 0 <= k < self.L):
            raise DomainError("cell coordinates out of range")
        return (row * self.N + col) * 2 * self.L + side * self.L + k + 1

    def coordinates(self, q):
        if not 1 <= q <= self.num_qubits:
            raise DomainError("qubit %d outside 1..%d" % (q, self.num_qubits))
        idx = q - 1
        k = idx % self.L
        side = (idx // self.L) % 2
        cell = idx // (2 * self.L)
        return cell // self.N, cell % self.N, side, k

    def qubits(self):
        """Operable qubit ids in increasing order."""
        return sorted(self._adj)

    def neighbors(self, q):
        return self._adj.get(q, set())

    def has_coupler(self, a, b):
        return b in self._adj.get(a, ())

    def couplers(self):
        """Operable couplers as sorted (a, b) pairs with a < b."""
        out = []
        for a, nbrs in self._adj.items():
            for b in nbrs:
                if a < b:
                    out.append((a, b))
        return sorted(out)

    def adjacency(self):
        return self._adj


def build_chimera(M, N, L, inoperable=()) -> ChimeraGraph:
    return ChimeraGraph(M, N, L, inoperable)


@dataclass(frozen=True)
class LogicalGraph:
    """The coupling graph of an Ising model: vertices 1..n, one edge per coupler."""

    num_vertices: int
    edges: tuple


def logical_graph(m: IsingModel) -> LogicalGraph:
    return LogicalGraph(m.num_vars, tuple(sorted(m.couplers)))


@dataclass
class Embedding:
    """chains: logical vertex -> frozenset of qubits; edge_assignment: logical edge -> coupler."""

    chains: dict
    edge_assignment: dict = field(default_factory=dict)


def _target_adjacency(target):
    if isinstance(target, ChimeraGraph):
        return target.adjacency()
    if isinstance(target, dict):
        return target
    raise DomainError("embedding target must be a ChimeraGraph or an adjacency dict")


def _as_logical(g) -> LogicalGraph:
    if isinstance(g, IsingModel):
        return logical_graph(g)
    if isinstance(g, LogicalGraph):
        return g
    raise DomainError("expected an IsingModel or LogicalGraph, got %r" % type(g).__name__)


def find_embedding(g, target, seed=1, max_tries=256) -> Embedding:
    """Search for a minor embedding; deterministic for a given seed.

    Randomized tree growth: vertices are placed in descending-degree order
    (ties shuffled per attempt); each vertex seeds its chain on a free qubit
    touching as many already-placed neighbor chains as possible, then grows
    along breadth-first paths through free qubits to reach the rest.  A
    dead-end restarts the attempt with fresh random choices.
    """
    lg = _as_logical(g)
    if lg.num_vertices < 1:
        raise ContractViolation("cannot embed an empty logical graph")
    adj = _target_adjacency(target)
    nbrs_of = {v: set() for v in range(1, lg.num_vertices + 1)}
    for i, j in lg.edges:
        nbrs_of[i].add(j)
        nbrs_of[j].add(i)

    for attempt in range(max_tries):
        rng = random.Random(seed * 1_000_003 + attempt)
        emb = _grow_once(lg, adj, nbrs_of, rng)
        if emb is None:
            continue
        emb.edge_assignment = _assign_couplers(lg, adj, emb.chains)
        if emb.edge_assignment is None:
            continue
        if not validate_embedding(lg, target, emb):
            return emb
    emb = _template_embedding(lg, target, adj)
    if emb is not None:
        return emb
    raise EmbeddingNotFound(
        "no embedding found after %d attempts (seed %d)" % (max_tries, seed)
    )


def _template_embedding(lg, target, adj):
    """Deterministic fallback for dense graphs: nested L-shaped chains.

    Vertex v = block*L + shore + 1 occupies the left-shore qubit `shore` down
    column `block` (rows 0..block) plus the right-shore qubit `shore` across
    row `block` (columns block..D-1), D = min(M, N).  Any two such chains
    cross in some cell, so every subgraph of a complete graph on L*D vertices
    fits -- unless an inoperable qubit breaks the pattern.
    """
    if not isinstance(target, ChimeraGraph):
        return None
    depth = min(target.M, target.N)
    if lg.num_vertices > target.L * depth:
        return None
    chains = {}
    for v in range(1, lg.num_vertices + 1):
        block, shore = divmod(v - 1, target.L)
        down = [target.qubit_id(r, block, 0, shore) for r in range(block + 1)]
        across = [target.qubit_id(block, c, 1, shore) for c in range(block, depth)]
        chains[v] = frozenset(down + across)
    emb = Embedding(chains=chains)
    emb.edge_assignment = _assign_couplers(lg, adj, chains)
    if emb.edge_assignment is None or validate_embedding(lg, target, emb):
        return None
    return emb


def _grow_once(lg, adj, nbrs_of, rng):
    order = sorted(range(1, lg.num_vertices + 1), key=lambda v: (-len(nbrs_of[v]), v))
    # shuffle inside equal-degree groups so restarts explore different orders
    grouped = []
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and len(nbrs_of[order[j]]) == len(nbrs_of[order[i]]):
            j += 1
        group = order[i:j]
        rng.shuffle(group)
        grouped.extend(group)
        i = j
    chains = {}
    owner = {}
    for v in grouped:
        placed = [u for u in sorted(nbrs_of[v]) if u in chains]
        free = [q for q in sorted(adj) if q not in owner]
        if not free:
            return None
        if not placed:
            start = rng.choice(free)
        else:
            # greedy seed: touch as many placed neighbor chains as possible
            def touched(q):
                return sum(1 for u in placed if chains[u] & adj[q])

            best = max(touched(q) for q in free)
            start = rng.choice([q for q in free if touched(q) == best])
        chain = {start}
        owner[start] = v
        for u in placed:
            if chains[u] & set().union(*(adj[q] for q in chain)):
                continue  # already adjacent to u's chain
            path = _bfs_to_chain(adj, owner, chain, chains[u])
            if path is None:
                return None
            for q in path:
                chain.add(q)
                owner[q] = v
        chains[v] = frozenset(chain)
    return Embedding(chains=chains)


def _bfs_to_chain(adj, owner, source_chain, goal_chain):
    """Shortest path through free qubits from source_chain to any qubit adjacent
    to goal_chain; returns the new qubits to add, or None."""
    goal_fringe = set()
    for q in goal_chain:
        goal_fringe.update(adj[q])
    parent = {}
    queue = deque()
    for q in sorted(source_chain):
        parent[q] = None
        queue.append(q)
    while queue:
        q = queue.popleft()
        if q not in source_chain and q in goal_fringe:
            path = []
            while q is not None and q not in source_chain:
                path.append(q)
                q = parent[q]
            return path
        for nxt in sorted(adj[q]):
            if nxt in parent or nxt in owner:
                continue
            parent[nxt] = q
            queue.append(nxt)
    return None


def _assign_couplers(lg, adj, chains):
    assignment = {}
    for i, j in lg.edges:
        pairs = []
        for qa in chains[i]:
            for qb in chains[j]:
                if qb in adj[qa]:
                    pairs.append((qa, qb) if qa < qb else (qb, qa))
        if not pairs:
            return None
        assignment[(i, j)] = min(pairs)
    return assignment


def validate_embedding(g, target, e: Embedding):
    """Check every embedding invariant; returns a list of violations (empty = ok)."""
    lg = _as_logical(g)
    adj = _target_adjacency(target)
    violations = []
    seen = {}
    for v in range(1, lg.num_vertices + 1):
        chain = e.chains.get(v)
        if not chain:
            violations.append("vertex %d has no chain" % v)
            continue
        for q in chain:
            if q not in adj:
                violations.append("vertex %d uses missing or inoperable qubit %d" % (v, q))
            if q in seen:
                violations.append("qubit %d appears in chains of %d and %d" % (q, seen[q], v))
            seen[q] = v
        usable = [q for q in chain if q in adj]
        if usable and not _connected(adj, set(usable)):
            violations.append("chain of vertex %d is not connected" % v)
    for i, j in lg.edges:
        ci, cj = e.chains.get(i, frozenset()), e.chains.get(j, frozenset())
        coupled = any(qb in adj.get(qa, ()) for qa in ci for qb in cj)
        if not coupled:
            violations.append("edge (%d, %d) has no coupler between its chains" % (i, j))
        assigned = e.edge_assignment.get((i, j))
        if assigned is not None:
            qa, qb = assigned
            ok = (
                (qa in ci and qb in cj or qa in cj and qb in ci)
                and qb in adj.get(qa, ())
            )
            if not ok:
                violations.append(
                    "edge (%d, %d) assignment (%d, %d) is not a coupler between its chains"
                    % (i, j, qa, qb)
                )
    return violations


def _connected(adj, qubits):
    start = next(iter(qubits))
    seen = {start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for nxt in adj[q]:
            if nxt in qubits and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen == qubits


@dataclass
class EmbeddedIsing:
    """A physical Ising model realizing a logical one through an embedding.

    The physical model is indexed compactly (1..m); ``qubits[p-1]`` is the
    hardware qubit behind physical variable p.
    """

    physical: IsingModel
    logical: IsingModel
    chain_strength: float
    embedding: Embedding
    qubits: tuple


def default_chain_strength(m: IsingModel) -> float:
    """max(1, max_i(|h_i| + sum_j |J_ij|)) + 1.

    Strong enough that flipping the minority side of any broken chain always
    lowers the energy: the repaired intra-chain coupler gains 2M while fields
    and logical couplers can lose at most 2(|h_i| + sum|J_ij|) < 2M.
    """
    worst = 0.0
    for i in range(1, m.num_vars + 1):
        local = abs(m.fields.get(i, 0.0))
        for (a, b), J in m.couplers.items():
            if i in (a, b):
                local += abs(J)
        worst = max(worst, local)
    return max(1.0, worst) + 1.0


def embed_weights(m: IsingModel, e: Embedding, target, chain_strength=None) -> EmbeddedIsing:
    """Compile a logical model onto hardware qubits through an embedding."""
    if chain_strength is None:
        chain_strength = default_chain_strength(m)
    if chain_strength <= 0:
        raise DomainError("chain strength must be positive, got %r" % chain_strength)
    adj = _target_adjacency(target)
    all_qubits = sorted(q for chain in e.chains.values() for q in chain)
    index = {q: p for p, q in enumerate(all_qubits, start=1)}
    h = {}
    J = {}
    for v in sorted(e.chains):
        chain = sorted(e.chains[v])
        hv = m.fields.get(v, 0.0)
        if hv != 0.0:
            for q in chain:  # uniform split keeps the per-chain sum equal to h_v
                h[index[q]] = hv / len(chain)
        for a_pos in range(len(chain)):
            for b_pos in range(a_pos + 1, len(chain)):
                qa, qb = chain[a_pos], chain[b_pos]
                if qb in adj[qa]:
                    J[(index[qa], index[qb])] = -chain_strength
    for (i, j), coupler in e.edge_assignment.items():
        value = m.couplers.get((i, j) if i < j else (j, i), 0.0)
        if value != 0.0:
            qa, qb = coupler
            pa, pb = index[qa], index[qb]
            key = (pa, pb) if pa < pb else (pb, pa)
            J[key] = J.get(key, 0.0) + value
    physical = IsingModel(h, J, m.offset, num_vars=len(all_qubits))
    return EmbeddedIsing(physical, m, float(chain_strength), e, tuple(all_qubits))


def unembed(sample, e: Embedding):
    """Collapse a physical sample (mapping qubit -> spin) to logical spins.

    Disagreeing chains are flagged broken and resolved by majority vote, ties
    toward +1.
    """
    vertices = sorted(e.chains)
    spins = []
    broken = []
    for v in vertices:
        votes = [sample[q] for q in sorted(e.chains[v])]
        total = sum(votes)
        spins.append(1 if total >= 0 else -1)
        broken.append(any(s != votes[0] for s in votes))
    return tuple(spins), tuple(broken)


def format_embedding(e: Embedding) -> str:
    lines = []
    for v in sorted(e.chains):
        lines.append("chain %d %s" % (v, " ".join(str(q) for q in sorted(e.chains[v]))))
    for (i, j) in sorted(e.edge_assignment):
        qa, qb = e.edge_assignment[(i, j)]
        lines.append("edge %d %d %d %d" % (i, j, qa, qb))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_embedding(text: str) -> Embedding:
    chains = {}
    assignment = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "chain" and len(tokens) >= 3:
                v = int(tokens[1])
                chains[v] = frozenset(int(t) for t in tokens[2:])
            elif tokens[0] == "edge" and len(tokens) == 5:
                i, j, qa, qb = (int(t) for t in tokens[1:])
                assignment[(i, j) if i < j else (j, i)] = (qa, qb)
            else:
                raise ParseError("expected 'chain <v> <qubits...>' or 'edge <i> <j> <qa> <qb>'",
                                 line=lineno)
        except ValueError:
            raise ParseError("indices must be integers", line=lineno)
    return Embedding(chains=chains, edge_assignment=assignment)


def chain_statistics(e: Embedding) -> dict:
    sizes = sorted(len(c) for c in e.chains.values())
    return {
        "qubits": sum(sizes),
        "chains": len(sizes),
        "max_chain": sizes[-1] if sizes else 0,
        "mean_chain": sum(sizes) / len(sizes) if sizes else 0.0,
    }
