"""Exact evaluation of contraction plans against bound structures.

Free variables range over the basis of their sort; both sides of an
equation are evaluated for every assignment and compared coefficientwise.
Execution sweeps the plan's nodes in order, maintaining a sparse state
mapping live-wire index tuples to scalars.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

from ..errors import ShapeError
from ..qha import QuasiHopfAlgebra, delta_tree_matrix
from ..repcat import Module
from .ast_nodes import Context, ExprSum
from .compiler import ContractionPlan, compile_expression

__all__ = ["Bindings", "Counterexample", "eval_expression", "eval_equation"]


@dataclass
class Bindings:
    """Bound algebra, named modules, and coaction maps (kind -> (module name, matrix))."""

    algebra: QuasiHopfAlgebra
    modules: dict = dc_field(default_factory=dict)
    coactions: dict = dc_field(default_factory=dict)

    def module(self, name: str) -> Module:
        if name not in self.modules:
            raise ShapeError(f"no module named {name!r} bound")
        return self.modules[name]

    def coaction(self, kind: str):
        if kind not in self.coactions:
            raise ShapeError(f"no coaction {kind!r} bound")
        return self.coactions[kind]


@dataclass(frozen=True)
class Counterexample:
    assignment: dict
    coordinate: tuple
    lhs: object
    rhs: object


class _NodeTensors:
    """Sparse node tensors for one bound structure, built lazily and cached."""

    def __init__(self, b: Bindings):
        self.b = b
        self.cache = {}

    def get(self, node, context: Context):
        key = (node.kind, node.meta)
        if key in self.cache:
            return self.cache[key]
        sp = self._build(node, context)
        self.cache[key] = sp
        return sp

    def _build(self, node, context: Context):
        h = self.b.algebra
        n = h.dim
        f = h.field
        kind = node.kind
        if kind == "delta":
            mat = delta_tree_matrix(h.qb, node.meta[0])
            k = len(node.out_wires)
            sp = {}
            for j in range(n):
                col = mat.col(j)
                for flat, c in enumerate(col):
                    if c:
                        idx = []
                        rem = flat
                        for _ in range(k):
                            idx.append(0)
                        for s in range(k - 1, -1, -1):
                            idx[s] = rem % n
                            rem //= n
                        sp[(j, *idx)] = c
            return sp
        if kind == "mu":
            sp = {}
            for i in range(n):
                for j in range(n):
                    for l, c in h.algebra._mult_nz[i][j]:
                        sp[(i, j, l)] = c
            return sp
        if kind in ("S", "S2", "Sinv"):
            mat = {"S": h.s, "S2": h.s_squared(), "Sinv": h.s_inv}[kind]
            return {(j, i): mat.at(i, j) for i in range(n) for j in range(n) if mat.at(i, j)}
        if kind == "eps":
            return {(j,): h.qb.counit_of_basis(j) for j in range(n) if h.qb.counit_of_basis(j)}
        if kind == "phi":
            return {idx: c for idx, c in h.phi.nonzeros()}
        if kind == "phi_inv":
            return {idx: c for idx, c in h.phi_inv.nonzeros()}
        if kind == "alpha":
            return {(i,): c for i, c in enumerate(h.alpha) if c}
        if kind == "beta":
            return {(i,): c for i, c in enumerate(h.beta) if c}
        if kind == "one":
            return {(i,): c for i, c in enumerate(h.unit) if c}
        if kind == "coaction":
            cokind = node.meta[0]
            mod_name, mat = self.b.coaction(cokind)
            m = self.b.module(mod_name)
            d = m.dim
            sp = {}
            for mu in range(d):
                col = mat.col(mu)
                for flat, c in enumerate(col):
                    if c:
                        sp[(mu, flat // n, flat % n)] = c
            return sp
        if kind == "action":
            # resolved per module at evaluation time via wire sorts; built separately
            raise AssertionError("action tensors are built by the executor")
        raise ShapeError(f"unknown node kind {kind!r}")


def _action_tensor(m: Module):
    sp = {}
    for a in range(m.h.dim):
        mat = m.action[a]
        for i in range(m.dim):
            for j in range(m.dim):
                c = mat.at(i, j)
                if c:
                    sp[(a, j, i)] = c  # legs: (h_in, m_in, m_out)
    return sp


def _wire_sorts(term_plan, plan: ContractionPlan, context: Context):
    """Sort ('algebra' or ('module', name)) of every wire in a term."""
    sorts = {}
    for node in term_plan.nodes:
        if node.kind == "var":
            decl = context.var(node.meta[0])
            sorts[node.out_wires[0]] = (
                ("module", decl.module) if decl.sort == "module" else "algebra"
            )
        elif node.kind in ("delta", "S", "S2", "Sinv", "mu", "phi", "phi_inv",
                           "alpha", "beta", "one"):
            for w in node.out_wires:
                sorts[w] = "algebra"
        elif node.kind == "coaction":
            decl = context.coaction(node.meta[0])
            sorts[node.out_wires[0]] = ("module", decl.module)
            sorts[node.out_wires[1]] = "algebra"
        elif node.kind == "action":
            sorts[node.out_wires[0]] = sorts[node.in_wires[1]]
    return sorts


def _scalar_coeff(field, num: int, den: int):
    c = field.from_int(num)
    if den != 1:
        c = c / field.from_int(den)
    return c


def _exec_term(term_plan, tensors: _NodeTensors, b: Bindings, context: Context,
               assignment: dict, wire_sorts) -> dict:
    live = []          # wire ids in state-key order
    state = {(): _scalar_coeff(b.algebra.field, *term_plan.scalar)}
    for node in term_plan.nodes:
        if node.kind == "var":
            sp = {(assignment[node.meta[0]],): b.algebra.field.one()}
        elif node.kind == "action":
            sort = wire_sorts[node.in_wires[1]]
            sp = tensors.cache.get(("action", sort))
            if sp is None:
                sp = _action_tensor(b.module(sort[1]))
                tensors.cache[("action", sort)] = sp
        else:
            sp = tensors.get(node, context)
        in_pos = [live.index(w) for w in node.in_wires]
        n_in = len(node.in_wires)
        new_live = [w for w in live if w not in node.in_wires] + list(node.out_wires)
        keep_pos = [i for i, w in enumerate(live) if w not in node.in_wires]
        new_state = {}
        for key, val in state.items():
            in_vals = tuple(key[p] for p in in_pos)
            kept = tuple(key[p] for p in keep_pos)
            for nkey, nval in sp.items():
                if nkey[:n_in] != in_vals:
                    continue
                out_key = kept + nkey[n_in:]
                acc = val * nval
                if out_key in new_state:
                    new_state[out_key] = new_state[out_key] + acc
                else:
                    new_state[out_key] = acc
        state = {k: v for k, v in new_state.items() if v}
        live = new_live
    # reorder to the declared output wire order
    perm = [live.index(w) for w in term_plan.output_wires]
    return {tuple(k[p] for p in perm): v for k, v in state.items()}


def eval_expression(plan: ContractionPlan, context: Context, b: Bindings,
                    assignment: dict) -> dict:
    """Sparse output tensor of the expression for one basis assignment."""
    tensors = _NodeTensors(b)
    total = {}
    for tp in plan.terms:
        sorts = _wire_sorts(tp, plan, context)
        out = _exec_term(tp, tensors, b, context, assignment, sorts)
        for k, v in out.items():
            if k in total:
                total[k] = total[k] + v
            else:
                total[k] = v
    return {k: v for k, v in total.items() if v}


def _assignment_ranges(context: Context, b: Bindings):
    names, ranges = [], []
    for v in context.variables:
        names.append(v.name)
        if v.sort == "algebra":
            ranges.append(range(b.algebra.dim))
        else:
            ranges.append(range(b.module(v.module).dim))
    return names, ranges


def eval_equation(lhs: ExprSum, rhs: ExprSum, context: Context, b: Bindings):
    """Exact equality of both sides over all basis assignments.

    Returns (True, None) or (False, Counterexample).
    """
    lp = compile_expression(lhs, context)
    rp = compile_expression(rhs, context)
    names, ranges = _assignment_ranges(context, b)
    tensors = _NodeTensors(b)
    for combo in product(*ranges):
        assignment = dict(zip(names, combo))
        lout = {}
        for tp in lp.terms:
            sorts = _wire_sorts(tp, lp, context)
            for k, v in _exec_term(tp, tensors, b, context, assignment, sorts).items():
                lout[k] = lout.get(k, b.algebra.field.zero()) + v
        rout = {}
        for tp in rp.terms:
            sorts = _wire_sorts(tp, rp, context)
            for k, v in _exec_term(tp, tensors, b, context, assignment, sorts).items():
                rout[k] = rout.get(k, b.algebra.field.zero()) + v
        lout = {k: v for k, v in lout.items() if v}
        rout = {k: v for k, v in rout.items() if v}
        if lout != rout:
            coord = sorted(set(lout) | set(rout))[0]
            z = b.algebra.field.zero()
            return False, Counterexample(
                assignment, coord, lout.get(coord, z), rout.get(coord, z)
            )
    return True, None
