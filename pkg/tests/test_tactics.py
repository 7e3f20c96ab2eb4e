import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import propositional_strategy
from orthoproof.kernel import check_derivation, hyp, weaken
from orthoproof.lattice import by_name
from orthoproof.semantics import Interpretation, sequent_letters, sequent_true
from orthoproof.syntax import (
    Atom, Compat, Const, Exists, Forall, Letter, Sequent, Var, parse_sequent,
)
from orthoproof.tactics import (
    TacticError, catalog, derive, lookup, match_and_build,
)

S = parse_sequent

ALL_IDS = [e.id for e in catalog()]
BASE_IDS = [e.id for e in catalog() if e.matcher is None]
QUANT_IDS = [e.id for e in catalog() if e.matcher is not None]


def fresh_inst(entry, glen, dlen=0):
    inst = {v: Letter(f"m{i}") for i, v in enumerate(entry.variables)}
    inst["gamma"] = tuple(Letter(f"g{i}") for i in range(glen))
    inst["delta"] = tuple(Letter(f"d{i}") for i in range(dlen))
    return inst


def build_and_check(entry, glen, dlen=0):
    inst = fresh_inst(entry, glen, dlen)
    prem_seqs, concl = entry.instantiate(inst)
    d = derive(entry.id, inst, prem_seqs)
    assert d.conclusion == concl
    failure = check_derivation(d, entry.modes[0], hypotheses=prem_seqs)
    assert failure is None, (entry.id, failure)
    return d, prem_seqs, concl


def distinct_nodes(d):
    seen, stack = set(), [d]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        stack.extend(n.premises)
    return len(seen)


class TestCatalogShape:
    def test_enough_entries(self):
        assert len(ALL_IDS) >= 45

    def test_ids_unique(self):
        assert len(set(ALL_IDS)) == len(ALL_IDS)

    def test_every_entry_documented(self):
        for e in catalog():
            assert e.locus.strip()
            assert e.modes and e.modes[0] in ("NOM", "NOM_E", "NOM_Q")

    def test_quantifier_entries_gated_to_predicate_modes(self):
        for eid in QUANT_IDS:
            assert lookup(eid).modes == ("NOM_Q", "NOM_q")

    def test_classical_entries_gated_to_nom_e(self):
        for eid in ("T3.2.AX1", "T3.2.AX2", "T3.2.AX3", "T3.2.AX6"):
            assert lookup(eid).modes == ("NOM_E",)


class TestEveryEntryBuilds:
    @pytest.mark.parametrize("eid", BASE_IDS)
    @pytest.mark.parametrize("glen", [0, 1, 2])
    def test_builds_and_checks(self, eid, glen):
        build_and_check(lookup(eid), glen)

    @pytest.mark.parametrize("eid", BASE_IDS)
    def test_round_trip_through_matcher(self, eid):
        # the matcher must rediscover the instantiation from sequents alone
        entry = lookup(eid)
        inst = fresh_inst(entry, 2)
        prem_seqs, concl = entry.instantiate(inst)
        d = match_and_build(eid, tuple(hyp(s) for s in prem_seqs), concl,
                            entry.modes[0])
        assert d.conclusion == concl
        assert check_derivation(d, entry.modes[0], hypotheses=prem_seqs) is None


class TestTrailingContextRecursion:
    @pytest.mark.parametrize("eid", ["T2.6.cut", "T2.6.paste", "T2.6.lem",
                                     "T2.6.explode_l", "T2.6.contract"])
    def test_delta_grows_the_tree(self, eid):
        entry = lookup(eid)
        sizes = []
        for dlen in (0, 1, 2, 3):
            d, _, _ = build_and_check(entry, 1, dlen)
            sizes.append(distinct_nodes(d))
        assert sizes == sorted(sizes) and sizes[0] < sizes[-1]

    def test_delta_lands_after_the_active_formulas(self):
        entry = lookup("T2.6.cut")
        inst = fresh_inst(entry, 1, 2)
        prem_seqs, concl = entry.instantiate(inst)
        assert concl.antecedent[-2:] == inst["delta"]


class TestSharedSubtrees:
    def test_heavy_entries_stay_small(self):
        # equivalence chains reuse whole subderivations; the object graph
        # must stay far below the path count
        d, _, _ = build_and_check(lookup("P4.14"), 1)
        assert distinct_nodes(d) < 50_000

    def test_weaken_preserves_sharing_and_checks(self):
        entry = lookup("P4.14")
        inst = fresh_inst(entry, 1)
        prem_seqs, concl = entry.instantiate(inst)
        d = derive(entry.id, inst, prem_seqs)
        w = weaken(d, (Letter("z"),))
        assert distinct_nodes(w) == distinct_nodes(d)
        assert w.conclusion.antecedent[0] == Letter("z")
        assert check_derivation(w, "NOM", hypotheses=prem_seqs) is None


class TestSpotShapes:
    def test_explode_left_concrete(self):
        d = match_and_build("L2.3.1", (), S("r, ~p, p |- q"), "NOM")
        assert check_derivation(d, "NOM") is None

    def test_deduction_forward_is_open(self):
        prem = S("p |- q -> r")
        d = match_and_build("T2.10.fwd", (hyp(prem),), S("p |- ~(q /\\ ~(q /\\ r))"),
                            "NOM")
        assert check_derivation(d, "NOM", hypotheses=(prem,)) is None
        assert check_derivation(d, "NOM") is not None  # leaf left undischarged

    def test_contract_then_expand_is_identity_on_sequents(self):
        prem = S("g, p, p |- q")
        d = match_and_build("L2.5.contract", (hyp(prem),), S("g, p |- q"), "NOM")
        e = match_and_build("L2.5.expand", (d,), prem, "NOM")
        assert e.conclusion == prem
        assert check_derivation(e, "NOM", hypotheses=(prem,)) is None

    def test_axioms_close_in_nom_e(self):
        d = match_and_build("T3.2.AX1", (), S("|- p -> (q -> p)"), "NOM_E")
        assert check_derivation(d, "NOM_E") is None

    def test_weakened_premise_leaves_still_match(self):
        # these constructions push declared hypotheses under extra context
        prems = (S("p |- q"), S("q |- r"))
        d = match_and_build("L3.6.1", tuple(hyp(s) for s in prems),
                            S("p |- r"), "NOM")
        assert check_derivation(d, "NOM", hypotheses=prems) is None


class TestQuantifierEntries:
    P = staticmethod(lambda t: Atom("R", (t,)))

    def cases(self, g):
        P, x, c = self.P, Var("x"), Const("c")
        return [
            ("L5.6", [], Sequent(g, Compat(Forall(x, P(x)), P(c))),
             {"t": c}),
            ("P5.7.EI", [Sequent(g, P(c))],
             Sequent(g, Exists(x, P(x))), {"t": c}),
            ("P5.7.EE",
             [Sequent(g, Exists(x, P(x))),
              Sequent(g + (P(x),), Letter("q")),
              Sequent(g + (Letter("q"), P(x)), Letter("q"))],
             Sequent(g, Letter("q")), {}),
        ]

    @pytest.mark.parametrize("mode", ["NOM_Q", "NOM_q"])
    @pytest.mark.parametrize("glen", [0, 2])
    def test_build_and_check(self, mode, glen):
        g = tuple(Letter(f"g{i}") for i in range(glen))
        for eid, prem_seqs, concl, args in self.cases(g):
            d = match_and_build(eid, tuple(hyp(s) for s in prem_seqs),
                                concl, mode, args=args)
            assert d.conclusion == concl
            assert check_derivation(d, mode, hypotheses=prem_seqs) is None, eid

    def test_instance_argument_is_required(self):
        concl = Sequent((), Compat(Forall(Var("x"), self.P(Var("x"))),
                                   self.P(Const("c"))))
        with pytest.raises(TacticError, match="t="):
            match_and_build("L5.6", (), concl, "NOM_Q")

    def test_wrong_instance_rejected(self):
        concl = Sequent((), Compat(Forall(Var("x"), self.P(Var("x"))),
                                   self.P(Const("c"))))
        with pytest.raises(TacticError):
            match_and_build("L5.6", (), concl, "NOM_Q", args={"t": Const("d")})


class TestRejections:
    def test_unknown_id(self):
        with pytest.raises(TacticError):
            lookup("nope")

    def test_mode_gate(self):
        with pytest.raises(TacticError, match="mode"):
            match_and_build("T3.2.AX1", (), S("|- p -> (q -> p)"), "NOM")
        with pytest.raises(TacticError, match="mode"):
            match_and_build("L5.6", (), S("|- p"), "NOM")

    def test_wrong_premise_shape(self):
        with pytest.raises(TacticError):
            match_and_build("P2.1", (hyp(S("p |- q")),), S("|- q -> p"), "NOM")

    def test_wrong_premise_count(self):
        entry = lookup("P2.1")
        inst = fresh_inst(entry, 0)
        with pytest.raises(TacticError):
            derive("P2.1", inst, ())

    def test_missing_metavariable(self):
        with pytest.raises(TacticError, match="psi"):
            derive("P2.1", {"phi": Letter("p"), "gamma": ()}, (S("p |- q"),))

    def test_conclusion_mismatch(self):
        entry = lookup("P2.1")
        inst = fresh_inst(entry, 0)
        prem_seqs, _ = entry.instantiate(inst)
        with pytest.raises(TacticError):
            match_and_build("P2.1", tuple(hyp(s) for s in prem_seqs),
                            S("|- p -> q"), "NOM")


class TestSoundness:
    """Premise-preserving valuations must satisfy built conclusions."""

    NOM_SAMPLE = ["P2.2", "L2.3.3", "T2.6.cut", "L2.7.4a", "P2.9.4",
                  "T2.10.fwd", "T3.8.OM1", "P4.2", "T4.4", "C4.6.elim",
                  "L4.12.and", "P4.14"]

    @pytest.mark.parametrize("eid", NOM_SAMPLE)
    def test_valid_in_mo2(self, eid):
        entry = lookup(eid)
        inst = {v: Letter("pqr"[i]) for i, v in enumerate(entry.variables)}
        inst["gamma"], inst["delta"] = (Letter("s"),), ()
        prem_seqs, concl = entry.instantiate(inst)
        L = by_name("MO2")
        letters = sorted(set().union(*(sequent_letters(s)
                                       for s in (*prem_seqs, concl))))
        for values in itertools.product(range(L.n), repeat=len(letters)):
            I = Interpretation(L, dict(zip(letters, values)))
            if all(sequent_true(s, I) for s in prem_seqs):
                assert sequent_true(concl, I), (eid, values)

    @pytest.mark.parametrize("eid", ["T3.2.AX1", "T3.2.AX2", "T3.2.AX3",
                                     "T3.2.AX6"])
    def test_classical_axioms_valid_in_boolean(self, eid):
        entry = lookup(eid)
        inst = {v: Letter("pqr"[i]) for i, v in enumerate(entry.variables)}
        inst["gamma"], inst["delta"] = (), ()
        _, concl = entry.instantiate(inst)
        L = by_name("2^2")
        letters = ["p", "q", "r"]
        for values in itertools.product(range(L.n), repeat=len(letters)):
            I = Interpretation(L, dict(zip(letters, values)))
            assert sequent_true(concl, I), (eid, values)


class TestRandomInstantiation:
    @given(st.sampled_from(BASE_IDS), propositional_strategy,
           propositional_strategy, propositional_strategy)
    @settings(max_examples=120, deadline=None)
    def test_arbitrary_formulas(self, eid, f1, f2, f3):
        entry = lookup(eid)
        inst = dict(zip(entry.variables, (f1, f2, f3)))
        inst["gamma"], inst["delta"] = (Letter("g"),), ()
        prem_seqs, concl = entry.instantiate(inst)
        d = derive(eid, inst, prem_seqs)
        assert d.conclusion == concl
        assert check_derivation(d, entry.modes[0], hypotheses=prem_seqs) is None
