#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support/generators.hpp"
#include "wregret/error.hpp"
#include "wregret/learning.hpp"

using namespace wregret;

namespace {

SpacePtr coin() { return StateSpace::make({"h", "t"}); }

WeightedCredalSet random_coin_set(std::mt19937_64& rng) { return gen::credal_set(rng, coin(), 5); }

std::vector<std::string> random_stream(std::mt19937_64& rng, std::size_t len) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(gen::uniform_int(rng, 0, 1) == 0 ? "h" : "t");
    }
    return out;
}

} // namespace

TEST_CASE("observation models validate rows") {
    CHECK_THROWS_AS(ObservationModel({"h", "t"}, {{Rat(1, 2), Rat(1, 3)}}), DomainError);
    CHECK_THROWS_AS(ObservationModel({"h", "h"}, {{Rat(1, 2), Rat(1, 2)}}), DomainError);
    CHECK_THROWS_AS(ObservationModel({"h", "t"}, {{Rat(1)}}), DomainError);
    const ObservationModel m({"h", "t"}, {{Rat(1, 4), Rat(3, 4)}});
    CHECK(m.symbol_index("t") == 1);
    CHECK_THROWS_AS((void)m.symbol_index("x"), ParseError);
}

TEST_CASE("observation strings split per character or on commas") {
    CHECK(split_observations("hth") == std::vector<std::string>{"h", "t", "h"});
    CHECK(split_observations("up,down") == std::vector<std::string>{"up", "down"});
    CHECK(split_observations("").empty());
}

TEST_CASE("updates keep the maximum weight at exactly 1") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        const auto set = random_coin_set(rng);
        const auto model = ObservationModel::iid(set);
        const auto obs = random_stream(rng, gen::uniform_int(rng, 1, 6));
        try {
            const auto out = update_weights_sequence(set, model, obs);
            CHECK(out.max_weight() == Rat(1));
        } catch (const DomainError&) {
            // some stream had likelihood 0 under every weighted measure
        }
    }
}

TEST_CASE("i.i.d. updating does not depend on observation order") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        const auto set = random_coin_set(rng);
        const auto model = ObservationModel::iid(set);
        auto obs = random_stream(rng, 5);
        auto shuffled = obs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        try {
            const auto a = update_weights_sequence(set, model, obs);
            const auto b = update_weights_sequence(set, model, shuffled);
            for (std::size_t j = 0; j < a.size(); ++j) {
                CHECK(a.entries()[j].weight == b.entries()[j].weight);
            }
        } catch (const DomainError&) {
            CHECK_THROWS_AS(update_weights_sequence(set, model, shuffled), DomainError);
        }
    }
}

TEST_CASE("sequential updating equals normalizing the joint likelihood") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 100; ++i) {
        const auto set = random_coin_set(rng);
        const auto model = ObservationModel::iid(set);
        const auto obs = random_stream(rng, 4);
        std::vector<Rat> joint;
        Rat top;
        for (std::size_t j = 0; j < set.size(); ++j) {
            Rat w = set.entries()[j].weight;
            for (const auto& o : obs) {
                w *= set.entries()[j].measure.mass(o == "h" ? 0 : 1);
            }
            joint.push_back(w);
            top = max(top, w);
        }
        if (top.is_zero()) {
            CHECK_THROWS_AS(update_weights_sequence(set, model, obs), DomainError);
            continue;
        }
        const auto out = update_weights_sequence(set, model, obs);
        for (std::size_t j = 0; j < set.size(); ++j) {
            CHECK(out.entries()[j].weight == joint[j] / top);
        }
    }
}

TEST_CASE("a zero weight stays zero") {
    const auto sp = coin();
    const WeightedCredalSet set({{ProbMeasure(sp, {Rat(1), Rat(0)}), Rat(1)},
                                 {ProbMeasure(sp, {Rat(1, 2), Rat(1, 2)}), Rat(1, 2)}});
    const auto model = ObservationModel::iid(set);
    const std::vector<std::string> tail{"t"};
    const auto after = update_weights_sequence(set, model, tail);
    CHECK(after.entries()[0].weight == Rat(0));
    CHECK(after.size() == 2);
    std::mt19937_64 rng(53);
    auto current = after;
    for (int i = 0; i < 20; ++i) {
        current = update_weights(current, model, gen::uniform_int(rng, 0, 1) == 0 ? "h" : "t");
        CHECK(current.entries()[0].weight == Rat(0));
    }
    CHECK(drop_zero_weights(after).size() == 1);
}

TEST_CASE("an observation every measure rules out is a domain error") {
    const auto sp = coin();
    const WeightedCredalSet set({{ProbMeasure(sp, {Rat(1), Rat(0)}), Rat(1)}});
    CHECK_THROWS_AS(update_weights(set, ObservationModel::iid(set), "t"), DomainError);
}

TEST_CASE("model rows must line up with the set") {
    const auto sp = coin();
    const WeightedCredalSet set({{ProbMeasure(sp, {Rat(1), Rat(0)}), Rat(1)}});
    const ObservationModel two({"h", "t"}, {{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}});
    CHECK_THROWS_AS(update_weights(set, two, "h"), DomainError);
}

TEST_CASE("threshold filtering keeps measures above the cut") {
    const auto sp = coin();
    const auto grid = coin_grid(sp, Rat(1, 4), Rat(3, 4), Rat(1, 4));
    const auto ms = grid.measures();
    const auto model = ObservationModel::iid(grid);
    const auto kept = epstein_schneider_update(ms, model, "h", Rat(1, 2));
    CHECK(kept.measures.size() == 2);
    CHECK(kept.model.rows() == 2);
    CHECK_THROWS_AS(epstein_schneider_update(ms, model, "h", Rat(1)), DomainError);
    CHECK_THROWS_AS(epstein_schneider_update(ms, model, "h", Rat(4, 5)), DomainError);
}

TEST_CASE("trajectories have one interval per prefix") {
    const auto sp = coin();
    const auto grid = coin_grid(sp, Rat(1, 3), Rat(2, 3), Rat(1, 24));
    CHECK(grid.size() == 9);
    const auto obs = split_observations("hth");
    const auto traj = ambiguity_trajectory(grid, ObservationModel::iid(grid), obs, Event::parse(sp, "h"));
    REQUIRE(traj.size() == 4);
    CHECK(traj[0] == AmbiguityInterval{Rat(1, 3), Rat(2, 3)});
    CHECK(traj[2] == AmbiguityInterval{Rat(11, 27), Rat(16, 27)});
}
