"""Evidential networks over {T}, {F}, {T,F}-valued nodes and exact marginal inference.

Each node is a three-state discrete variable. Root nodes carry a prior mass
function; every other node carries a conditional mass table that plays the role
of a CPT, so marginals follow from ordinary sum-product variable elimination.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .belief import MassFunction, belief_report, validate
from .gates import ConditionalMassTable, LogicOp, build_table, logic_table
from .models import BeliefReport, EvidentialNetworkFile, GateSpec
from .validation import (
    ArityMismatchError,
    CycleDetectedError,
    DanglingParentError,
    ValidationError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Node:
    """Root (``prior``), gate (``gate`` + ``parents``) or deterministic ``logic`` node."""

    id: str
    prior: Optional[MassFunction] = None
    gate: Optional[GateSpec] = None
    parents: Tuple[str, ...] = ()
    logic: Optional[LogicOp] = None

    @property
    def is_root(self) -> bool:
        return self.prior is not None


@dataclass(frozen=True)
class Factor:
    variables: Tuple[str, ...]
    values: np.ndarray

    def _aligned(self, variables: Sequence[str]) -> np.ndarray:
        perm = [self.variables.index(v) for v in variables if v in self.variables]
        shape = [3 if v in self.variables else 1 for v in variables]
        return np.transpose(self.values, perm).reshape(shape)

    def __mul__(self, other: "Factor") -> "Factor":
        variables = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return Factor(variables, self._aligned(variables) * other._aligned(variables))

    def sum_out(self, variable: str) -> "Factor":
        axis = self.variables.index(variable)
        remaining = self.variables[:axis] + self.variables[axis + 1 :]
        return Factor(remaining, self.values.sum(axis=axis))


@dataclass(frozen=True)
class EvidentialNetwork:
    nodes: Dict[str, Node]
    graph: nx.DiGraph
    order: Tuple[str, ...]
    tables: Dict[str, ConditionalMassTable] = field(default_factory=dict)
    marginals: Dict[str, MassFunction] = field(default_factory=dict)

    def parents(self, node_id: str) -> Tuple[str, ...]:
        return self.nodes[node_id].parents

    def factor(self, node_id: str) -> Factor:
        node = self.nodes[node_id]
        if node.is_root:
            return Factor((node_id,), np.array(node.prior.as_tuple()))
        return Factor(node.parents + (node_id,), self.tables[node_id].as_array())


def _resolve_parents(node: Node, edges: Sequence[Tuple[str, str]]) -> Node:
    if node.is_root or node.parents:
        return node
    parents = tuple(parent for parent, child in edges if child == node.id)
    return Node(id=node.id, gate=node.gate, parents=parents, logic=node.logic)


def build(nodes: Iterable[Node], edges: Sequence[Tuple[str, str]] = ()) -> EvidentialNetwork:
    """Validate a network, derive each gate's eta and cache every marginal.

    Parents come from ``Node.parents`` or, when a non-root node lists none, from
    the ``edges`` (parent, child) pairs in the order given.
    """
    by_id: Dict[str, Node] = {}
    for node in nodes:
        if node.id in by_id:
            raise ValidationError(f"duplicate node id {node.id}")
        kinds = sum(x is not None for x in (node.prior, node.gate, node.logic))
        if kinds != 1:
            raise ValidationError(f"node {node.id} needs exactly one of prior, gate or logic")
        by_id[node.id] = _resolve_parents(node, edges)

    graph = nx.DiGraph()
    graph.add_nodes_from(by_id)
    for node in by_id.values():
        if len(set(node.parents)) != len(node.parents):
            raise ValidationError(f"node {node.id} lists a parent twice")
        for parent in node.parents:
            if parent not in by_id:
                raise DanglingParentError(f"node {node.id} references unknown parent {parent}")
            graph.add_edge(parent, node.id)
        if node.gate is not None and node.gate.arity != len(node.parents):
            raise ArityMismatchError(
                f"node {node.id} has {len(node.parents)} parents but its gate has {node.gate.arity} links"
            )
        if node.logic is not None and not node.parents:
            raise ArityMismatchError(f"logic node {node.id} needs at least one parent")
        if node.prior is not None:
            validate(node.prior)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = [u for u, _ in nx.find_cycle(graph)]
        raise CycleDetectedError(f"network contains a cycle through {' -> '.join(cycle)}")

    order = tuple(nx.lexicographical_topological_sort(graph))
    net = EvidentialNetwork(nodes=by_id, graph=graph, order=order)
    for node_id in order:
        node = by_id[node_id]
        if node.is_root:
            net.marginals[node_id] = node.prior
            continue
        if node.gate is not None:
            etas = [min(max(net.marginals[parent].m_TF, 0.0), 1.0) for parent in node.parents]
            logger.debug("Node %s: parent ignorance %s", node_id, etas)
            table = build_table(node.gate.with_ignorance(etas))
        else:
            table = logic_table(node.logic, len(node.parents))
        table.check()
        net.tables[node_id] = table
        net.marginals[node_id] = _eliminate(net, node_id, None)
    return net


def elimination_order(net: EvidentialNetwork, target: str) -> List[str]:
    """Greedy order: always eliminate the variable whose product factor is smallest."""
    relevant = nx.ancestors(net.graph, target)
    scopes = [set(net.factor(v).variables) for v in relevant | {target}]
    order: List[str] = []
    pending = set(relevant)
    while pending:
        costs = {v: len(set().union(*(s for s in scopes if v in s))) for v in pending}
        var = min(pending, key=lambda v: (costs[v], v))
        touching = [s for s in scopes if var in s]
        merged = set().union(*touching) - {var}
        scopes = [s for s in scopes if var not in s] + [merged]
        pending.remove(var)
        order.append(var)
    return order


def _eliminate(net: EvidentialNetwork, target: str, order: Optional[Sequence[str]]) -> MassFunction:
    relevant = nx.ancestors(net.graph, target)
    if order is None:
        order = elimination_order(net, target)
    else:
        order = [v for v in order if v in relevant] + sorted(relevant.difference(order))
    factors = [net.factor(v) for v in sorted(relevant | {target})]
    for var in order:
        touching = [f for f in factors if var in f.variables]
        factors = [f for f in factors if var not in f.variables]
        product = touching[0]
        for other in touching[1:]:
            product = product * other
        factors.append(product.sum_out(var))
    result = factors[0]
    for other in factors[1:]:
        result = result * other
    values = result.values.reshape(3)
    return MassFunction(float(values[0]), float(values[1]), float(values[2]))


def marginal(net: EvidentialNetwork, target: str, order: Optional[Sequence[str]] = None) -> MassFunction:
    """Exact marginal mass of ``target``; ``order`` overrides the elimination order."""
    if target not in net.nodes:
        raise ValidationError(f"unknown node {target}")
    if order is None:
        return net.marginals[target]
    node = net.nodes[target]
    if node.is_root:
        return node.prior
    return _eliminate(net, target, order)


def marginals(net: EvidentialNetwork) -> Dict[str, MassFunction]:
    """Marginal of every node, in topological order."""
    return {node_id: net.marginals[node_id] for node_id in net.order}


def report(net: EvidentialNetwork, target: str) -> BeliefReport:
    return belief_report(marginal(net, target))


def from_file(document: EvidentialNetworkFile) -> EvidentialNetwork:
    """Build a network from a parsed evidential network file."""
    nodes = [
        Node(
            id=spec.id,
            prior=MassFunction.from_tuple(spec.prior) if spec.prior is not None else None,
            gate=spec.gate,
            parents=tuple(spec.parents),
        )
        for spec in document.nodes
    ]
    return build(nodes)
