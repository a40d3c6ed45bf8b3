"""Compilation of Sweedler expressions into tensor-contraction plans.

A plan is a list of sparse-tensor nodes connected by wires (summation
indices); every wire has exactly two endpoints, counting the final output
ports.  Sweedler splits become coproduct-tree nodes, each associator
instance becomes one Phi (or Phi^-1) node, coaction pairs become one
coaction node, and in-factor juxtaposition becomes a chain of binary
multiplication nodes followed by at most one module-action node.
Compilation is deterministic: nodes are emitted in first-use order while
walking the term left to right.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DslParseError
from .ast_nodes import (
    PHI,
    PHI_INV,
    PHI_INV_SLOTS,
    PHI_SLOTS,
    VAR,
    CoactionAtom,
    Context,
    EpsAtom,
    ExprSum,
    ScalarAtom,
    SymbolAtom,
    WrapperAtom,
)
from .parser import tree_from_paths

__all__ = ["PlanNode", "TermPlan", "ContractionPlan", "compile_expression"]


@dataclass(frozen=True)
class PlanNode:
    uid: int
    kind: str          # var|delta|mu|action|S|S2|Sinv|eps|phi|phi_inv|alpha|beta|one|coaction
    in_wires: tuple
    out_wires: tuple
    meta: tuple = ()   # var: (name,); delta: (tree,); coaction: (rho|lam,); action/mu: ()


@dataclass(frozen=True)
class TermPlan:
    sign: int
    scalar: tuple      # (num, den) accumulated from literal atoms
    nodes: tuple
    output_wires: tuple


@dataclass(frozen=True)
class ContractionPlan:
    terms: tuple
    output_sorts: tuple
    free_vars: tuple   # declared context variables, in declaration order

    def count_nodes(self, kind: str) -> int:
        return sum(1 for t in self.terms for n in t.nodes if n.kind == kind)

    def validate_wires(self):
        """Every wire must have exactly two endpoints (output ports count)."""
        for t in self.terms:
            seen = {}
            for n in t.nodes:
                for w in n.in_wires + n.out_wires:
                    seen[w] = seen.get(w, 0) + 1
            for w in t.output_wires:
                seen[w] = seen.get(w, 0) + 1
            bad = [w for w, c in seen.items() if c != 2]
            if bad:
                raise DslParseError(f"malformed plan: wires {bad} lack two endpoints")


def _tree_leaf_paths(tree, prefix=""):
    if tree is None:
        return [prefix]
    return _tree_leaf_paths(tree[0], prefix + "1") + _tree_leaf_paths(tree[1], prefix + "2")


class _TermCompiler:
    def __init__(self, term, context: Context):
        self.term = term
        self.context = context
        self.nodes = []
        self.next_wire = 0
        self.next_uid = 0
        self.scalar = (term.sign, 1)
        # group path collections
        self.var_paths = {}
        self.assoc_paths = {}
        self.const_paths = {}
        self.coaction_info = {}
        self._collect(term)
        # emitted wiring maps
        self.var_wires = {}
        self.assoc_wires = {}
        self.const_wires = {}
        self.coaction_wires = {}

    # -- first pass: collect group path sets -------------------------------

    def _collect(self, term):
        walked = set()

        def walk_atoms(atoms):
            for a in atoms:
                walk(a)

        def walk(atom):
            if isinstance(atom, ScalarAtom):
                return
            if isinstance(atom, SymbolAtom):
                if atom.kind == VAR:
                    self.var_paths.setdefault((atom.name, atom.label), []).append(atom.path)
                elif atom.kind in (PHI, PHI_INV):
                    slot = (
                        PHI_SLOTS[atom.name] if atom.kind == PHI else PHI_INV_SLOTS[atom.name]
                    )
                    slots = self.assoc_paths.setdefault(
                        (atom.kind, atom.label), {0: [], 1: [], 2: []}
                    )
                    slots[slot].append(atom.path)
                elif atom.label:
                    self.const_paths.setdefault((atom.kind, atom.label), []).append(atom.path)
                return
            if isinstance(atom, (WrapperAtom, EpsAtom)):
                walk_atoms(atom.arg)
                return
            if isinstance(atom, CoactionAtom):
                key = (atom.kind, atom.label)
                info = self.coaction_info.setdefault(key, {"arg": atom.arg, 1: []})
                if atom.leg == 1:
                    info[1].append(atom.path)
                if key not in walked:
                    walked.add(key)
                    walk_atoms(atom.arg)
                return

        for factor in term.factors:
            walk_atoms(factor)

    # -- emission helpers ---------------------------------------------------

    def wire(self) -> int:
        w = self.next_wire
        self.next_wire += 1
        return w

    def emit(self, kind, in_wires, out_wires, meta=()):
        self.nodes.append(PlanNode(self.next_uid, kind, tuple(in_wires), tuple(out_wires), meta))
        self.next_uid += 1

    def _split(self, src_wire, paths, where) -> dict:
        """Attach a coproduct-tree node when needed; map path -> wire."""
        tree = tree_from_paths(paths, where)
        if tree is None:
            return {"": src_wire}
        leaf_paths = _tree_leaf_paths(tree)
        outs = [self.wire() for _ in leaf_paths]
        self.emit("delta", (src_wire,), outs, (tree,))
        return dict(zip(leaf_paths, outs))

    def _ensure_var(self, name, label):
        key = (name, label)
        if key in self.var_wires:
            return
        w = self.wire()
        self.emit("var", (), (w,), (name,))
        self.var_wires[key] = self._split(w, self.var_paths[key], f"variable {name!r}")

    def _ensure_assoc(self, kind, label):
        key = (kind, label)
        if key in self.assoc_wires:
            return
        outs = [self.wire() for _ in range(3)]
        self.emit("phi" if kind == PHI else "phi_inv", (), outs)
        slot_maps = []
        for s in range(3):
            slot_maps.append(self._split(outs[s], self.assoc_paths[key][s], "associator component"))
        self.assoc_wires[key] = slot_maps

    def _ensure_const(self, kind, label):
        key = (kind, label)
        if key in self.const_wires:
            return
        w = self.wire()
        self.emit(kind, (), (w,))
        if label:
            self.const_wires[key] = self._split(w, self.const_paths[key], kind)
        else:
            self.const_wires[key] = {"": w}

    def _ensure_coaction(self, kind, label):
        key = (kind, label)
        if key in self.coaction_wires:
            return
        info = self.coaction_info[key]
        m_in, _ = self.compile_product(info["arg"])
        m_out, h_out = self.wire(), self.wire()
        self.emit("coaction", (m_in,), (m_out, h_out), (kind,))
        self.coaction_wires[key] = {
            0: {"": m_out},
            1: self._split(h_out, info[1], f"coaction {label!r}"),
        }

    # -- product compilation -------------------------------------------------

    def atom_wire(self, atom):
        """Wire and sort of one value atom ('algebra' or ('module', name))."""
        if isinstance(atom, SymbolAtom):
            if atom.kind == VAR:
                decl = self.context.var(atom.name)
                self._ensure_var(atom.name, atom.label)
                w = self.var_wires[(atom.name, atom.label)][atom.path]
                if decl.sort == "module":
                    return w, ("module", decl.module)
                return w, "algebra"
            if atom.kind in (PHI, PHI_INV):
                self._ensure_assoc(atom.kind, atom.label)
                slot = PHI_SLOTS[atom.name] if atom.kind == PHI else PHI_INV_SLOTS[atom.name]
                return self.assoc_wires[(atom.kind, atom.label)][slot][atom.path], "algebra"
            if atom.label:
                self._ensure_const(atom.kind, atom.label)
                return self.const_wires[(atom.kind, atom.label)][atom.path], "algebra"
            # unlabeled constants: each occurrence is an independent node
            w = self.wire()
            self.emit(atom.kind, (), (w,))
            return w, "algebra"
        if isinstance(atom, WrapperAtom):
            w, _ = self.compile_product(atom.arg)
            out = self.wire()
            self.emit(atom.op, (w,), (out,))
            return out, "algebra"
        if isinstance(atom, CoactionAtom):
            self._ensure_coaction(atom.kind, atom.label)
            key = (atom.kind, atom.label)
            decl = self.context.coaction(atom.kind)
            if atom.leg == 0:
                return self.coaction_wires[key][0][""], ("module", decl.module)
            return self.coaction_wires[key][1][atom.path], "algebra"
        raise DslParseError(f"cannot take the value of {atom!r}")

    def compile_product(self, atoms):
        """Compile a juxtaposition product to a single wire plus its sort."""
        alg_wires = []
        module = None
        for atom in atoms:
            if isinstance(atom, ScalarAtom):
                num, den = self.scalar
                self.scalar = (num * atom.num, den * atom.den)
                continue
            if isinstance(atom, EpsAtom):
                w, _ = self.compile_product(atom.arg)
                self.emit("eps", (w,), ())
                continue
            w, sort = self.atom_wire(atom)
            if sort == "algebra":
                alg_wires.append(w)
            else:
                module = (w, sort)
        if module is None:
            w = alg_wires[0]
            for other in alg_wires[1:]:
                out = self.wire()
                self.emit("mu", (w, other), (out,))
                w = out
            return w, "algebra"
        m_wire, m_sort = module
        if alg_wires:
            w = alg_wires[0]
            for other in alg_wires[1:]:
                out = self.wire()
                self.emit("mu", (w, other), (out,))
                w = out
            out = self.wire()
            self.emit("action", (w, m_wire), (out,))
            return out, m_sort
        return m_wire, m_sort

    def run(self) -> tuple:
        outputs = []
        sorts = []
        for factor in self.term.factors:
            w, sort = self.compile_product(factor)
            outputs.append(w)
            sorts.append(sort)
        return (
            TermPlan(self.term.sign, self.scalar, tuple(self.nodes), tuple(outputs)),
            tuple(sorts),
        )


def compile_expression(expr: ExprSum, context: Context) -> ContractionPlan:
    terms = []
    sorts = None
    for term in expr.terms:
        # the term sign is folded into the scalar coefficient at init time
        tp, s = _TermCompiler(term, context).run()
        terms.append(tp)
        if sorts is None:
            sorts = s
        elif sorts != s:
            raise DslParseError("terms have different output shapes")
    plan = ContractionPlan(tuple(terms), sorts, context.variables)
    plan.validate_wires()
    return plan
