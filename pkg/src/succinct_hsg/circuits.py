"""Algebraic circuits as topologically ordered gate lists."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import Fp, parse_rational, rational_to_str, to_fp
from .exceptions import ParameterError
from .polynomials import DEFAULT_TERM_CAP, SparsePoly, poly_add, poly_mul

__all__ = [
    "Circuit",
    "Gate",
    "circuit_compose",
    "circuit_eval",
    "circuit_from_json",
    "circuit_size",
    "circuit_to_json",
    "circuit_to_polys",
    "is_nonzero_probabilistic",
    "random_circuit",
    "syntactic_degree",
]

GATE_OPS = ("input", "const", "add", "mul")


@dataclass(frozen=True)
class Gate:
    op: str
    label: str | None = None
    value: Fraction | None = None
    args: tuple[int, ...] = ()

    @classmethod
    def input(cls, label: str) -> Gate:
        return cls("input", label=label)

    @classmethod
    def const(cls, value) -> Gate:
        return cls("const", value=Fraction(value))

    @classmethod
    def add(cls, *args: int) -> Gate:
        return cls("add", args=tuple(args))

    @classmethod
    def mul(cls, *args: int) -> Gate:
        return cls("mul", args=tuple(args))


@dataclass(frozen=True)
class Circuit:
    """A DAG of gates; every argument index points strictly earlier.

    Add and mul gates take any positive number of arguments.
    """

    gates: tuple[Gate, ...]
    outputs: tuple[int, ...]
    input_labels: tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self):
        gates = tuple(self.gates)
        outputs = tuple(self.outputs)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "outputs", outputs)
        if not outputs:
            raise ParameterError("a circuit needs at least one output")
        labels = []
        for k, g in enumerate(gates):
            if g.op not in GATE_OPS:
                raise ParameterError(f"gate {k}: unknown op {g.op!r}")
            if g.op == "input":
                if not g.label:
                    raise ParameterError(f"gate {k}: input without a label")
                if g.label not in labels:
                    labels.append(g.label)
            elif g.op == "const":
                if g.value is None:
                    raise ParameterError(f"gate {k}: constant without a value")
            else:
                if not g.args:
                    raise ParameterError(f"gate {k}: {g.op} gate without arguments")
                if any(not 0 <= a < k for a in g.args):
                    raise ParameterError(f"gate {k}: argument out of topological order")
        if any(not 0 <= o < len(gates) for o in outputs):
            raise ParameterError("output refers to a missing gate")
        object.__setattr__(self, "input_labels", tuple(labels))


def circuit_size(c: Circuit) -> int:
    """Number of nodes, inputs and constants included."""
    return len(c.gates)


def circuit_eval(c: Circuit, assignment: Mapping[str, object], p: int | None = None) -> list:
    """Evaluate bottom-up; with ``p`` given, inputs and constants are mapped into F_p."""
    missing = [lab for lab in c.input_labels if lab not in assignment]
    if missing:
        raise ParameterError(f"no value assigned to {missing}")
    vals: list = []
    for g in c.gates:
        if g.op == "input":
            x = assignment[g.label]
            vals.append(to_fp(x, p) if p is not None else x)
        elif g.op == "const":
            vals.append(to_fp(g.value, p) if p is not None else g.value)
        elif g.op == "add":
            acc = vals[g.args[0]]
            for a in g.args[1:]:
                acc = acc + vals[a]
            vals.append(acc)
        else:
            acc = vals[g.args[0]]
            for a in g.args[1:]:
                acc = acc * vals[a]
            vals.append(acc)
    return [vals[o] for o in c.outputs]


def circuit_to_polys(
    c: Circuit, vars: Sequence[str] | None = None, term_cap: int = DEFAULT_TERM_CAP
) -> list[SparsePoly]:
    """Expand every output into a SparsePoly by gate-wise add/mul."""
    vars = tuple(vars) if vars is not None else c.input_labels
    images = {lab: SparsePoly.variable(vars, lab) for lab in c.input_labels}
    return circuit_compose(c, images, vars, term_cap)


def circuit_compose(
    c: Circuit,
    images: Mapping[str, SparsePoly],
    vars: Sequence[str],
    term_cap: int = DEFAULT_TERM_CAP,
) -> list[SparsePoly]:
    """Substitute a polynomial for every input and expand, all in context ``vars``."""
    vars = tuple(vars)
    missing = [lab for lab in c.input_labels if lab not in images]
    if missing:
        raise ParameterError(f"no image given for {missing}")
    vals: list[SparsePoly] = []
    for g in c.gates:
        if g.op == "input":
            vals.append(images[g.label])
        elif g.op == "const":
            vals.append(SparsePoly.constant(vars, g.value))
        elif g.op == "add":
            acc = vals[g.args[0]]
            for a in g.args[1:]:
                acc = poly_add(acc, vals[a])
            vals.append(acc)
        else:
            acc = vals[g.args[0]]
            for a in g.args[1:]:
                acc = poly_mul(acc, vals[a], term_cap)
            vals.append(acc)
    return [vals[o] for o in c.outputs]


def syntactic_degree(c: Circuit) -> int:
    """Formal degree bound: max over add children, sum over mul children.

    Can overestimate the true degree badly; callers choose their own bound.
    """
    deg: list[int] = []
    for g in c.gates:
        if g.op == "input":
            deg.append(1)
        elif g.op == "const":
            deg.append(0)
        elif g.op == "add":
            deg.append(max(deg[a] for a in g.args))
        else:
            deg.append(sum(deg[a] for a in g.args))
    return max(deg[o] for o in c.outputs)


def random_circuit(
    seed: int, nvars: int, size: int, const_prob: float = 0.2, labels: Sequence[str] | None = None
) -> Circuit:
    """Seeded random fan-in-2 circuit with exactly ``size`` gates.

    The first ``nvars`` gates are the inputs; later gates are constants
    (drawn from {-1, 1, 2}) or add/mul gates over two earlier gates. The last
    gate is the single output.
    """
    if nvars < 1:
        raise ParameterError("nvars must be >= 1")
    if size < nvars:
        raise ParameterError(f"size {size} is smaller than nvars {nvars}")
    labels = list(labels) if labels is not None else [f"x{i + 1}" for i in range(nvars)]
    if len(labels) != nvars:
        raise ParameterError("need one label per input")
    rng = random.Random(seed)
    gates = [Gate.input(lab) for lab in labels]
    while len(gates) < size:
        k = len(gates)
        # a constant as the very last gate would make the output trivially constant
        if k < size - 1 and rng.random() < const_prob:
            gates.append(Gate.const(rng.choice((-1, 1, 2))))
            continue
        a, b = rng.randrange(k), rng.randrange(k)
        gates.append(Gate.add(a, b) if rng.random() < 0.5 else Gate.mul(a, b))
    return Circuit(tuple(gates), (len(gates) - 1,))


def is_nonzero_probabilistic(c: Circuit, p: int, trials: int, seed: int) -> bool:
    """One-sided random-evaluation test over F_p.

    True certifies that some output is a nonzero polynomial. False means
    every trial vanished; the caller must pick ``p`` above the degree bound for
    that to be meaningful.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    rng = random.Random(seed)
    for _ in range(trials):
        point = {lab: Fp(rng.randrange(p), p) for lab in c.input_labels}
        if any(v != 0 for v in circuit_eval(c, point, p=p)):
            return True
    return False


def circuit_to_json(c: Circuit) -> dict:
    gates = []
    for g in c.gates:
        if g.op == "input":
            gates.append({"op": "input", "label": g.label})
        elif g.op == "const":
            gates.append({"op": "const", "value": rational_to_str(g.value)})
        else:
            gates.append({"op": g.op, "args": list(g.args)})
    return {"gates": gates, "outputs": list(c.outputs)}


def circuit_from_json(obj: Mapping) -> Circuit:
    gates = []
    for g in obj["gates"]:
        op = g["op"]
        if op == "input":
            gates.append(Gate.input(g["label"]))
        elif op == "const":
            gates.append(Gate("const", value=parse_rational(g["value"])))
        elif op in ("add", "mul"):
            gates.append(Gate(op, args=tuple(g["args"])))
        else:
            raise ParameterError(f"unknown op {op!r}")
    return Circuit(tuple(gates), tuple(obj["outputs"]))
