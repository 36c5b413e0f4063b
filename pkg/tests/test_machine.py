import itertools

import pytest

from ctmbdm.machine import (HALT, Machine, MachineSpec, Move, Status, Transition, blank_configuration,
                            complement_machine, mirror_machine, run_from_blank, step)


def all_machines(n, m=2):
    alts = [Transition(w, d, q) for w in range(m) for d in (Move.LEFT, Move.RIGHT) for q in range(n + 1)]
    spec = MachineSpec(n, m)
    for table in itertools.product(alts, repeat=n * m):
        yield Machine(spec, table)


ALL_22 = list(all_machines(2))


def flip(s):
    return s.translate(str.maketrans("01", "10"))


def test_spec_validation():
    with pytest.raises(ValueError):
        MachineSpec(0, 2)
    with pytest.raises(ValueError):
        MachineSpec(2, 1)


def test_machine_table_must_be_total_and_in_range():
    spec = MachineSpec(1, 2)
    with pytest.raises(ValueError):
        Machine(spec, (Transition(0, Move.LEFT, 1),))
    with pytest.raises(ValueError):
        Machine(spec, (Transition(2, Move.LEFT, 1), Transition(0, Move.LEFT, 1)))
    with pytest.raises(ValueError):
        Machine(spec, (Transition(0, Move.LEFT, 2), Transition(0, Move.LEFT, 1)))


def test_step_halting_transition_still_writes_and_moves():
    m = Machine.from_rules(MachineSpec(1), {(1, 0): (1, Move.RIGHT, HALT)})
    c = step(m, blank_configuration())
    assert c.halted
    assert c.head == 1
    assert c.tape[0] == 1


def test_step_self_loop():
    m = Machine.from_rules(MachineSpec(1), {(1, 0): (0, Move.LEFT, 1)})
    c = step(m, blank_configuration())
    assert (c.head, c.state, c.halted) == (-1, 1, False)


def test_step_is_deterministic():
    m = ALL_22[12345]
    c0 = blank_configuration()
    assert step(m, c0) == step(m, c0)
    with pytest.raises(ValueError):
        step(m, step(Machine.from_rules(MachineSpec(1), {}), c0))


def test_one_step_halter():
    m = Machine.from_rules(MachineSpec(1), {(1, 0): (1, Move.RIGHT, HALT)})
    assert run_from_blank(m, 10) == run_from_blank(m, 10)
    out = run_from_blank(m, 10)
    assert (out.status, out.output, out.steps) == (Status.HALTED, "1", 1)


def test_never_halts():
    m = Machine.from_rules(MachineSpec(1), {(1, 0): (0, Move.RIGHT, 1)})
    out = run_from_blank(m, 10)
    assert (out.status, out.output, out.steps) == (Status.CUTOFF_EXCEEDED, None, 10)


def test_cutoff_must_be_positive():
    with pytest.raises(ValueError):
        run_from_blank(ALL_22[0], 0)


def test_run_matches_iterated_step_on_all_22():
    for m in ALL_22[::7]:
        c = blank_configuration()
        visited = []
        for t in range(1, 8):
            visited.append(c.head)
            c = step(m, c)
            if c.halted:
                break
        out = run_from_blank(m, 7)
        if c.halted:
            lo, hi = min(visited), max(visited)
            assert out.output == "".join(str(c.read(i)) for i in range(lo, hi + 1))
            assert out.steps == t
        else:
            assert not out.halted


def test_22_max_halting_time_is_6_and_cutoff_monotone():
    max_steps = 0
    for m in ALL_22:
        short = run_from_blank(m, 6)
        if short.halted:
            max_steps = max(max_steps, short.steps)
            assert run_from_blank(m, 1000) == short
            assert run_from_blank(m, short.steps) == short
            assert len(short.output) >= 1
        else:
            assert not run_from_blank(m, 1000).halted
    assert max_steps == 6


def test_output_locality_bounded_by_steps():
    for m in ALL_22[::3]:
        out = run_from_blank(m, 50)
        if out.halted:
            assert 1 <= len(out.output) <= out.steps


def test_complement_symmetry_on_22():
    # Relabeling 0<->1 complements the output when the blank is relabeled too.
    for m in ALL_22:
        a = run_from_blank(m, 20)
        b = run_from_blank(complement_machine(m), 20, blank=1)
        assert a.status == b.status and a.steps == b.steps
        if a.halted:
            assert b.output == flip(a.output)


def test_mirror_symmetry_on_22():
    for m in ALL_22:
        a = run_from_blank(m, 20)
        b = run_from_blank(mirror_machine(m), 20)
        assert a.status == b.status and a.steps == b.steps
        if a.halted:
            assert b.output == a.output[::-1]


def test_zero_blank_complement_is_not_a_symmetry():
    # Why the enumeration completes blanks: with a zero blank only, the
    # complement-relabeled machine reads different fresh cells.
    differs = sum(run_from_blank(complement_machine(m), 20).output != flip(run_from_blank(m, 20).output)
                  for m in ALL_22 if run_from_blank(m, 20).halted)
    assert differs > 0
