#include <doctest.h>

#include <random>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "wregret/axioms.hpp"
#include "wregret/error.hpp"
#include "wregret/likelihood.hpp"

using namespace wregret;

namespace {

SpacePtr abc() { return StateSpace::make({"a", "b", "c"}); }

WeightedCredalSet three_measures() {
    const auto sp = abc();
    return WeightedCredalSet({{ProbMeasure(sp, {Rat(2, 3), Rat(0), Rat(1, 3)}), Rat(2, 3)},
                              {ProbMeasure(sp, {Rat(1, 3), Rat(0), Rat(2, 3)}), Rat(2, 3)},
                              {ProbMeasure(sp, {Rat(1, 3), Rat(1, 3), Rat(1, 3)}), Rat(1)}});
}

void check_violation_is_genuine(const SetFunction& f, const CoverViolation& v) {
    const auto comps = v.complement_multiset();
    Rat sum;
    for (const auto& e : v.events) {
        sum += f(e);
    }
    CHECK(sum == v.sum_side);
    CHECK(v.slack < Rat(0));
    switch (v.axiom) {
    case CoverAxiom::reg3:
        CHECK(is_n_cover(comps, v.target.complement(), v.n));
        CHECK(v.bound_side == Rat(static_cast<long>(v.n)) * f(v.target));
        CHECK(v.bound_side > v.sum_side);
        break;
    case CoverAxiom::reg3prime:
        CHECK(is_nk_cover(comps, v.target.complement(), v.n, v.k));
        CHECK(v.bound_side == Rat(static_cast<long>(v.k)) + Rat(static_cast<long>(v.n)) * f(v.target));
        CHECK(v.bound_side > v.sum_side);
        break;
    case CoverAxiom::lp3:
        CHECK(is_nk_cover(v.multiset(), v.target, v.n, v.k));
        CHECK(v.bound_side < v.sum_side);
        break;
    }
}

} // namespace

TEST_CASE("induced values of the three-measure weighted set") {
    const auto set = three_measures();
    const auto f = SetFunction::induced(set);
    const auto expected = oracle::induced(gen::to_oracle(set), 3);
    for (std::uint64_t m = 0; m < 8; ++m) {
        CHECK(f.at(m).raw() == expected[m]);
    }
    const auto sp = f.space();
    CHECK(f(Event::parse(sp, "ab")) == Rat(4, 9));
    CHECK(f(Event::parse(sp, "bc")) == Rat(4, 9));
    CHECK(f(Event::parse(sp, "b")) == Rat(2, 3));
    CHECK(check_REG12(f));
}

TEST_CASE("the weighted set satisfies REG3 within bounds but not REG3'") {
    const auto f = SetFunction::induced(three_measures());
    CHECK(!check_REG3_bounded(f, 2, 3));
    CHECK(!check_REG3_bounded(f, 3, 4));
    const auto v = check_REG3prime(f, 3, 3, 4);
    REQUIRE(v);
    CHECK(v->n == 1);
    CHECK(v->k == 1);
    check_violation_is_genuine(f, *v);
    const auto sp = f.space();
    CHECK(v->target == Event::parse(sp, "ab"));
    CHECK(v->events == std::vector<Event>{Event::parse(sp, "a"), Event::parse(sp, "b")});
    CHECK(v->slack == Rat(-1, 9));
}

TEST_CASE("complements {a,b} and {b,c} covering ({b}, S) give a tight inequality") {
    const auto f = SetFunction::induced(three_measures());
    const auto sp = f.space();
    MultisetOfEvents comps(sp);
    comps.add(Event::parse(sp, "ab"));
    comps.add(Event::parse(sp, "bc"));
    CHECK(is_nk_cover(comps, Event::parse(sp, "b"), 1, 1));
    // the events are {c} and {a}, the target is {a,c}
    CHECK(Rat(1) + f(Event::parse(sp, "ac")) == f(Event::parse(sp, "c")) + f(Event::parse(sp, "a")));
}

TEST_CASE("unweighted sets satisfy REG3'") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 60; ++i) {
        const auto sp = gen::space(gen::uniform_int(rng, 2, 3));
        const auto f = SetFunction::induced(gen::credal_set(rng, sp, 3, false));
        CHECK(!check_REG3prime(f, 2, 2, 3));
    }
}

TEST_CASE("REG1 and REG2") {
    const auto sp = gen::space(2);
    const SetFunction ok(sp, {Rat(1), Rat(1, 2), Rat(1, 2), Rat(0)});
    CHECK(check_REG12(ok));
    CHECK(!check_REG12(ok.with(Event::full(sp), Rat(1, 2))));
    CHECK(!check_REG12(ok.with(Event::empty(sp), Rat(1, 2))));
    CHECK_THROWS_AS(SetFunction(sp, {Rat(1), Rat(3, 2), Rat(0), Rat(0)}), DomainError);
    CHECK_THROWS_AS(SetFunction(sp, {Rat(1), Rat(0)}), DomainError);
}

TEST_CASE("a single-event cover catches an increase along inclusion") {
    const auto sp = gen::space(3);
    // f({a}) = 1/5 < f({a,b}) = 1/2
    const SetFunction f(sp, {Rat(1), Rat(1, 5), Rat(1), Rat(1, 2), Rat(1), Rat(0), Rat(1), Rat(0)});
    CHECK(check_REG12(f));
    const auto v = check_REG3_bounded(f, 3, 3);
    REQUIRE(v);
    CHECK(v->events == std::vector<Event>{Event::parse(sp, "a")});
    CHECK(v->target == Event::parse(sp, "ab"));
    CHECK(v->n == 1);
    check_violation_is_genuine(f, *v);
}

TEST_CASE("passing small-bound REG3 forces anti-monotonicity and REG1") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 300; ++i) {
        const auto sp = gen::space(gen::uniform_int(rng, 1, 3));
        std::vector<Rat> values;
        for (std::size_t m = 0; m < sp->event_count(); ++m) {
            values.push_back(gen::weight(rng, 4));
        }
        const SetFunction f(sp, values);
        if (check_REG3_bounded(f, 2, 1)) {
            continue;
        }
        CHECK(f.at(sp->full_mask()).is_zero());
        for (std::uint64_t a = 0; a < sp->event_count(); ++a) {
            for (std::uint64_t b = 0; b < sp->event_count(); ++b) {
                if ((a & b) == a) {
                    CHECK(f.at(a) >= f.at(b));
                }
            }
        }
    }
}

TEST_CASE("bounded REG3 agrees with an independent enumeration") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 150; ++i) {
        const auto sp = gen::space(gen::uniform_int(rng, 1, 3));
        std::vector<Rat> values;
        for (std::size_t m = 0; m < sp->event_count(); ++m) {
            values.push_back(gen::weight(rng, 3));
        }
        values[0] = Rat(1);
        values.back() = Rat(0);
        const SetFunction f(sp, values);
        const auto v = check_REG3_bounded(f, 2, 3);
        CHECK(v.has_value() == oracle::reg3_violated(gen::to_oracle(f), sp->size(), 2, 3));
        if (v) {
            check_violation_is_genuine(f, *v);
        }
    }
}

TEST_CASE("REG2 consistency: two copies of the empty event") {
    const auto f = SetFunction::induced(three_measures());
    // the complements of two copies of the empty event are S, S: a (1,1)-cover of (S, S)
    MultisetOfEvents comps(f.space());
    comps.add(Event::full(f.space()), 2);
    CHECK(is_nk_cover(comps, Event::full(f.space()), 1, 1));
    CHECK(Rat(1) + f(Event::empty(f.space())) <= Rat(2) * f(Event::empty(f.space())));
}

TEST_CASE("oversized enumerations raise a resource error") {
    const auto sp = gen::space(10);
    std::vector<Rat> values(sp->event_count(), Rat(1, 2));
    const SetFunction f(sp, values);
    CHECK_THROWS_AS(check_REG3_bounded(f, 3, 4), ResourceError);
    CHECK_THROWS_AS(check_REG3prime(f, 3, 3, 4), ResourceError);
}

TEST_CASE("lower probabilities satisfy the LP axioms") {
    std::mt19937_64 rng(83);
    for (int i = 0; i < 60; ++i) {
        const auto sp = gen::space(gen::uniform_int(rng, 1, 3));
        const auto set = gen::credal_set(rng, sp, 3, false);
        const auto g = SetFunction::lower_probability(set.measures());
        const auto rep = check_LP_axioms(g, CoverBounds{});
        CHECK(rep.ok());
        CHECK(SetFunction::induced(set).one_minus().one_minus() == SetFunction::induced(set));
        // 1 - P_regret(E) is the lower probability of E once complements are dualized
        const auto dual = SetFunction::induced(set).one_minus();
        for (std::uint64_t m = 0; m < sp->event_count(); ++m) {
            CHECK(dual.at(m) == g.at(m));
        }
        CHECK(check_LP_axioms(dual, CoverBounds{2, 3, 2}).ok());
    }
}

TEST_CASE("LP axioms report each failure") {
    const auto sp = gen::space(2);
    const SetFunction g(sp, {Rat(0), Rat(1, 2), Rat(1, 2), Rat(0)});
    const auto rep = check_LP_axioms(g, CoverBounds{});
    CHECK(!rep.lp1);
    CHECK(rep.lp2);
    CHECK(rep.lp3prime);
    REQUIRE(rep.lp3);
    check_violation_is_genuine(g, *rep.lp3);
}

TEST_CASE("canonical weights") {
    const auto f = SetFunction::induced(three_measures());
    CHECK(canonical_weight(f, ProbMeasure::uniform(f.space())) == Rat(1));
    const auto sp = f.space();
    CHECK(canonical_weight(f, ProbMeasure(sp, {Rat(2, 3), Rat(0), Rat(1, 3)})) == Rat(2, 3));
    std::mt19937_64 rng(89);
    for (int i = 0; i < 50; ++i) {
        const ProbMeasure pr(sp, gen::masses(rng, 3));
        const auto single = SetFunction::induced(WeightedCredalSet({{pr, Rat(1)}}));
        CHECK(canonical_weight(single, pr) == Rat(1));
        const auto w = canonical_weight(f, pr);
        CHECK(w >= Rat(0));
        CHECK(w <= Rat(1));
    }
}

TEST_CASE("the weight-1 system of the three-measure set is feasible") {
    const auto f = SetFunction::induced(three_measures());
    const auto sys = weight_one_system(f);
    CHECK(sys.a.rows() == 7 + 3 + 1);
    const auto res = exact_feasibility(sys);
    REQUIRE(res.feasible());
    CHECK(oracle::witness_holds(gen::to_oracle(sys.a), gen::to_oracle(sys.b), gen::to_oracle(res.witness())));
    const std::vector<Rat> uniform(3, Rat(1, 3));
    CHECK(satisfies(sys.a, sys.b, uniform));
}

TEST_CASE("representability reconstructs the three-measure set's likelihood") {
    const auto f = SetFunction::induced(three_measures());
    const auto rep = representability(f);
    REQUIRE(rep.representable);
    CHECK(SetFunction::induced(*rep.witness_set) == f);
}

TEST_CASE("every non-trivial event of a two-state space at value 1") {
    const auto sp = gen::space(2);
    const SetFunction f(sp, {Rat(1), Rat(1), Rat(1), Rat(0)});
    const auto rep = representability(f);
    REQUIRE(rep.representable);
    CHECK(SetFunction::induced(*rep.witness_set) == f);
    for (const auto& e : rep.witness_set->entries()) {
        CHECK(e.weight == Rat(1));
    }
    CHECK(canonical_weight(f, ProbMeasure::point_mass(sp, 0)) == Rat(1));
}

TEST_CASE("an increase along inclusion blocks representability with a certificate") {
    const auto f0 = SetFunction::induced(three_measures());
    const auto sp = f0.space();
    const auto f = f0.with(Event::parse(sp, "ab"), Rat(5, 6));
    const auto rep = representability(f);
    REQUIRE(!rep.representable);
    REQUIRE(rep.failing_event);
    CHECK(*rep.failing_event == Event::parse(sp, "ab"));
    REQUIRE(rep.failing_system);
    CHECK(oracle::farkas_holds(gen::to_oracle(rep.failing_system->a), gen::to_oracle(rep.failing_system->b),
                               gen::to_oracle(rep.certificate)));
}

TEST_CASE("REG1 or REG2 failures are rejected before any LP") {
    const auto f = SetFunction::induced(three_measures());
    const auto rep = representability(f.with(Event::full(f.space()), Rat(1, 2)));
    CHECK(!rep.representable);
    CHECK(!rep.failing_system);
    CHECK(!rep.reason.empty());
}

TEST_CASE("round trip and maximality on random weighted sets") {
    std::mt19937_64 rng(97);
    for (int i = 0; i < 40; ++i) {
        const auto sp = gen::space(gen::uniform_int(rng, 2, 4));
        const auto set = gen::credal_set(rng, sp);
        const auto f = SetFunction::induced(set);
        const auto rep = representability(f);
        REQUIRE(rep.representable);
        CHECK(SetFunction::induced(*rep.witness_set) == f);
        for (const auto& e : set.entries()) {
            CHECK(e.weight <= canonical_weight(f, e.measure));
        }
        for (const auto& e : rep.witness_set->entries()) {
            CHECK(e.weight == canonical_weight(f, e.measure));
        }
    }
}

TEST_CASE("adversarial functions come with verified certificates") {
    std::mt19937_64 rng(101);
    int made = 0;
    for (int i = 0; i < 400 && made < 20; ++i) {
        const auto sp = gen::space(gen::uniform_int(rng, 2, 4));
        const auto f = gen::adversarial(rng, sp);
        if (!f) {
            continue;
        }
        ++made;
        const auto rep = representability(*f);
        REQUIRE(!rep.representable);
        if (rep.failing_system) {
            CHECK(oracle::farkas_holds(gen::to_oracle(rep.failing_system->a),
                                       gen::to_oracle(rep.failing_system->b), gen::to_oracle(rep.certificate)));
        }
    }
    CHECK(made == 20);
}

TEST_CASE("LP decision and bounded enumeration agree on small spaces") {
    std::mt19937_64 rng(103);
    int disagreements = 0;
    int cases = 0;
    for (int i = 0; i < 120; ++i) {
        const auto sp = gen::space(gen::uniform_int(rng, 1, 3));
        std::optional<SetFunction> f;
        if (i % 3 == 0) {
            f = gen::adversarial(rng, sp);
        } else if (i % 3 == 1) {
            f = SetFunction::induced(gen::credal_set(rng, sp));
        } else {
            std::vector<Rat> values;
            for (std::size_t m = 0; m < sp->event_count(); ++m) {
                values.push_back(gen::weight(rng, 4));
            }
            values[0] = Rat(1);
            values.back() = Rat(0);
            f = SetFunction(sp, values);
        }
        if (!f) {
            continue;
        }
        ++cases;
        const bool by_lp = representability(*f).representable;
        const bool by_covers = !check_REG3_bounded(*f, 3, 4);
        if (by_lp) {
            CHECK(by_covers);
        }
        disagreements += by_lp != by_covers ? 1 : 0;
    }
    MESSAGE("cases: " << cases << ", disagreements outside the enumeration bounds: " << disagreements);
}
