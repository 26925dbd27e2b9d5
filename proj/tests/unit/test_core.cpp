#include <doctest.h>

#include <cstdlib>
#include <random>

#include "../support/generators.hpp"
#include "wregret/core.hpp"
#include "wregret/error.hpp"

using namespace wregret;

TEST_CASE("state spaces validate labels") {
    CHECK_THROWS_AS(StateSpace::make({}), DomainError);
    CHECK_THROWS_AS(StateSpace::make({"a", "a"}), DomainError);
    CHECK_THROWS_AS(StateSpace::make({"a", ""}), DomainError);
    CHECK_THROWS_AS(StateSpace::make({"a+b"}), DomainError);
    CHECK_THROWS_AS(StateSpace::make({"{x}"}), DomainError);
    const auto sp = StateSpace::make({"a", "b"});
    CHECK(sp->index_of("b") == 1);
    CHECK_THROWS_AS((void)sp->index_of("z"), ParseError);
}

TEST_CASE("state cap follows the environment override") {
    std::vector<std::string> labels;
    for (int i = 0; i < 21; ++i) {
        labels.push_back("s" + std::to_string(i));
    }
    CHECK_THROWS_AS(StateSpace::make(labels), DomainError);
    setenv("WREGRET_MAX_STATES", "21", 1);
    CHECK_NOTHROW(StateSpace::make(labels));
    setenv("WREGRET_MAX_STATES", "many", 1);
    CHECK_THROWS_AS(StateSpace::make(labels), DomainError);
    unsetenv("WREGRET_MAX_STATES");
}

TEST_CASE("event keys and display") {
    const auto sp = StateSpace::make({"a", "b", "c"});
    const Event e = Event::parse(sp, "ac");
    CHECK(e.key() == "ac");
    CHECK(e.to_string() == "{a,c}");
    CHECK(e.complement().key() == "b");
    CHECK(Event::parse(sp, "").is_empty());
    CHECK(Event::parse(sp, "{}").is_empty());
    CHECK(Event::parse(sp, "ca") == e);
    CHECK_THROWS_AS(Event::parse(sp, "ad"), ParseError);

    const auto wide = StateSpace::make({"s1", "s2", "s3"});
    const Event w = Event::parse(wide, "s1+s3");
    CHECK(w.key() == "s1+s3");
    CHECK(w.to_string() == "{s1,s3}");
    CHECK(w.count() == 2);
}

TEST_CASE("events from different spaces do not mix") {
    const auto a = StateSpace::make({"a", "b"});
    const auto b = StateSpace::make({"x", "y"});
    CHECK_THROWS_AS((void)(Event::full(a) | Event::full(b)), DomainError);
    CHECK(same_space(a, StateSpace::make({"a", "b"})));
}

TEST_CASE("probability measures validate and are additive") {
    const auto sp = StateSpace::make({"a", "b", "c"});
    CHECK_THROWS_AS(ProbMeasure(sp, {Rat(1, 2), Rat(1, 2), Rat(1, 2)}), DomainError);
    CHECK_THROWS_AS(ProbMeasure(sp, {Rat(3, 2), Rat(-1, 2), Rat(0)}), DomainError);
    CHECK_THROWS_AS(ProbMeasure(sp, {Rat(1)}), DomainError);
    const ProbMeasure pr = ProbMeasure::uniform(sp);
    CHECK(pr.prob(Event::full(sp)) == Rat(1));
    CHECK(pr.prob(Event::empty(sp)) == Rat(0));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const ProbMeasure q(sp, gen::masses(rng, 3));
        for (std::uint64_t x = 0; x < 8; ++x) {
            for (std::uint64_t y = 0; y < 8; ++y) {
                if ((x & y) == 0) {
                    CHECK(q.prob(Event(sp, x | y)) == q.prob(Event(sp, x)) + q.prob(Event(sp, y)));
                }
            }
        }
    }
}

TEST_CASE("weighted credal sets enforce their invariants") {
    const auto sp = StateSpace::make({"h", "t"});
    const ProbMeasure p(sp, {Rat(1, 3), Rat(2, 3)});
    const ProbMeasure q(sp, {Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(WeightedCredalSet({}), DomainError);
    CHECK_THROWS_AS(WeightedCredalSet({{p, Rat(1)}, {p, Rat(1, 2)}}), DomainError);
    CHECK_THROWS_AS(WeightedCredalSet({{p, Rat(1, 2)}}), DomainError);
    CHECK_THROWS_AS(WeightedCredalSet({{p, Rat(3, 2)}}), DomainError);
    CHECK_THROWS_AS(WeightedCredalSet({{p, Rat(-1, 2)}, {q, Rat(1)}}), DomainError);
    const WeightedCredalSet loose({{p, Rat(1, 2)}, {q, Rat(1, 4)}}, Normalization::unnormalized);
    CHECK(!loose.is_normalized());
    const auto norm = loose.normalize_weights();
    CHECK(norm.entries()[0].weight == Rat(1));
    CHECK(norm.entries()[1].weight == Rat(1, 2));
}

TEST_CASE("nk-covers are exactly a k-cover of S together with an (n+k)-cover of E") {
    std::mt19937_64 rng(5);
    const auto sp = gen::space(3);
    for (int i = 0; i < 400; ++i) {
        MultisetOfEvents m(sp);
        const std::size_t len = gen::uniform_int(rng, 0, 4);
        for (std::size_t j = 0; j < len; ++j) {
            m.add(Event(sp, gen::uniform_int(rng, 0, 7)), gen::uniform_int(rng, 1, 2));
        }
        const Event e(sp, gen::uniform_int(rng, 0, 7));
        const std::size_t n = gen::uniform_int(rng, 0, 3);
        const std::size_t k = gen::uniform_int(rng, 0, 2);
        const bool expected = is_n_cover(m, Event::full(sp), k) && is_n_cover(m, e, n + k);
        CHECK(is_nk_cover(m, e, n, k) == expected);
    }
}

TEST_CASE("multiset union adds multiplicities") {
    const auto sp = gen::space(2);
    MultisetOfEvents a(sp);
    a.add(Event::parse(sp, "a"));
    MultisetOfEvents b(sp);
    b.add(Event::parse(sp, "a"), 2);
    b.add(Event::parse(sp, "b"));
    const auto u = a + b;
    CHECK(u.total() == 4);
    CHECK(cover_counts(u) == std::vector<std::size_t>{3, 1});
    CHECK(is_n_cover(u, Event::parse(sp, "a"), 3));
    CHECK(!is_n_cover(u, Event::full(sp), 2));
}
