from typing import Dict, List, Sequence, Set, Tuple

from src.syntax.schemas import DependencyEdge, DependencyReport, ProgramClass, Rule


def dependency_edges(view: Sequence[Rule]) -> List[DependencyEdge]:
    """Body-to-head edges of the predicate dependency graph, negative when through `not`"""
    edges: Dict[Tuple[str, str, bool], None] = {}
    for rule in view:
        for atom in rule.body_pos:
            edges.setdefault((atom.pred, rule.head.pred, False), None)
        for atom in rule.body_neg:
            edges.setdefault((atom.pred, rule.head.pred, True), None)
    return [DependencyEdge(source=s, target=t, negative=n) for s, t, n in sorted(edges)]


def strongly_connected_components(nodes: Sequence[str], adjacency: Dict[str, Set[str]]) -> List[List[str]]:
    """Tarjan's algorithm with an explicit call stack; components sorted"""
    index = 0
    stack: List[str] = []
    indices: Dict[str, int] = {}
    lowlink: Dict[str, int] = {}
    on_stack: Set[str] = set()
    components: List[List[str]] = []

    for root in nodes:
        if root in indices:
            continue
        work = [(root, iter(sorted(adjacency.get(root, ()))))]
        indices[root] = lowlink[root] = index
        index += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, successors = work[-1]
            advanced = False
            for w in successors:
                if w not in indices:
                    indices[w] = lowlink[w] = index
                    index += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(adjacency.get(w, ())))))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], indices[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == indices[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.remove(w)
                    component.append(w)
                    if w == v:
                        break
                components.append(sorted(component))
    return sorted(components)


def check_acyclic(view: Sequence[Rule]) -> Tuple[bool, DependencyReport]:
    """Whether the predicate dependency graph of view has no cycle, with the full report"""
    edges = dependency_edges(view)
    nodes = sorted({e.source for e in edges} | {e.target for e in edges} | {r.head.pred for r in view})
    adjacency: Dict[str, Set[str]] = {}
    for e in edges:
        adjacency.setdefault(e.source, set()).add(e.target)
    components = strongly_connected_components(nodes, adjacency)
    member = {p: i for i, comp in enumerate(components) for p in comp}
    self_loops = {e.source for e in edges if e.source == e.target}
    cyclic = [comp for comp in components if len(comp) > 1 or comp[0] in self_loops]
    acyclic = not cyclic

    if not view:
        program_class = ProgramClass.EMPTY
    elif acyclic:
        has_negation = any(r.body_neg for r in view)
        program_class = ProgramClass.ACYCLIC if has_negation else ProgramClass.ACYCLIC_HORN
    elif any(e.negative and member[e.source] == member[e.target] for e in edges):
        program_class = ProgramClass.GENERAL
    else:
        program_class = ProgramClass.STRATIFIED

    report = DependencyReport(
        acyclic=acyclic,
        program_class=program_class,
        edges=edges,
        components=components,
        cyclic_components=cyclic,
    )
    return acyclic, report


def classify_program(view: Sequence[Rule]) -> ProgramClass:
    return check_acyclic(view)[1].program_class


def topological_components(nodes: Sequence[str], adjacency: Dict[str, Set[str]]) -> List[List[str]]:
    """Strongly connected components ordered so that every edge goes forward"""
    components = strongly_connected_components(nodes, adjacency)
    member = {k: i for i, comp in enumerate(components) for k in comp}
    indegree = [0] * len(components)
    successors: Dict[int, Set[int]] = {}
    for s, targets in adjacency.items():
        for t in targets:
            a, b = member[s], member[t]
            if a != b and b not in successors.setdefault(a, set()):
                successors[a].add(b)
                indegree[b] += 1
    ready = sorted(i for i, d in enumerate(indegree) if d == 0)
    ordered = []
    while ready:
        i = ready.pop(0)
        ordered.append(components[i])
        for j in sorted(successors.get(i, ())):
            indegree[j] -= 1
            if indegree[j] == 0:
                ready.append(j)
        ready.sort()
    return ordered


def predicate_strata(view: Sequence[Rule]) -> List[List[str]]:
    """Head predicates grouped by dependency component, lower components first"""
    edges = dependency_edges(view)
    heads = {r.head.pred for r in view}
    nodes = sorted({e.source for e in edges} | {e.target for e in edges} | heads)
    adjacency: Dict[str, Set[str]] = {}
    for e in edges:
        adjacency.setdefault(e.source, set()).add(e.target)
    ordered = topological_components(nodes, adjacency)
    return [[p for p in comp if p in heads] for comp in ordered if any(p in heads for p in comp)]
