#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wregret/core.hpp"
#include "wregret/feasibility.hpp"

namespace wregret {

// f : 2^S -> [0,1], stored as a table indexed by event bitmask.
class SetFunction {
  public:
    SetFunction(SpacePtr space, std::vector<Rat> values);

    // E -> regret_likelihood(E, set) for every event.
    static SetFunction induced(const WeightedCredalSet& set);
    // E -> min over measures of Pr(E).
    static SetFunction lower_probability(const std::vector<ProbMeasure>& measures);

    [[nodiscard]] const SpacePtr& space() const { return space_; }
    [[nodiscard]] const Rat& operator()(const Event& e) const;
    [[nodiscard]] const Rat& at(std::uint64_t mask) const { return values_.at(mask); }
    [[nodiscard]] const std::vector<Rat>& values() const { return values_; }
    [[nodiscard]] SetFunction with(const Event& e, Rat value) const;
    // E -> 1 - f(E).
    [[nodiscard]] SetFunction one_minus() const;

    friend bool operator==(const SetFunction& a, const SetFunction& b) {
        return a.values_ == b.values_ && same_space(a.space_, b.space_);
    }

  private:
    SpacePtr space_;
    std::vector<Rat> values_;
};

enum class CoverAxiom { reg3, reg3prime, lp3 };

std::string to_string(CoverAxiom axiom);

// A concrete instance where a cover inequality fails.
//  reg3:      complements of events form an n-cover of the complement of target,
//             yet n f(target) > sum f(E_i)
//  reg3prime: complements form an (n,k)-cover of (complement of target, S),
//             yet k + n f(target) > sum f(E_i)
//  lp3:       events form an exact (n,k)-cover of (target, S),
//             yet k + n g(target) < sum g(E_i)
// slack is the signed margin of the inequality and is always negative.
struct CoverViolation {
    CoverAxiom axiom;
    std::vector<Event> events;  // E_1..E_m, sorted, repeated for multiplicity
    Event target;
    std::size_t n;
    std::size_t k;
    Rat bound_side;  // n f(E) or k + n f(E)
    Rat sum_side;    // sum of f(E_i)
    Rat slack;

    [[nodiscard]] MultisetOfEvents multiset() const;
    // The multiset of complements of the events (what REG3/REG3' cover with).
    [[nodiscard]] MultisetOfEvents complement_multiset() const;
};

struct Reg12Report {
    bool reg1;  // f(S) = 0
    bool reg2;  // f({}) = 1
    [[nodiscard]] bool ok() const { return reg1 && reg2; }
};

Reg12Report check_reg12_report(const SetFunction& f);
bool check_REG12(const SetFunction& f);

// Enumeration limits for the cover oracles: multisets of at most max_m
// events, cover multiplicities n <= max_n and k <= max_k.
struct CoverBounds {
    std::size_t max_n = 3;
    std::size_t max_m = 4;
    std::size_t max_k = 3;
};

// Number of (multiset, target) pairs the bounded checks visit; above this
// they throw ResourceError.
inline constexpr double kMaxCoverWork = 2e8;

// Brute-force REG3 oracle. Visits multisets by size, then lexicographically,
// then targets by bitmask, and returns the first violation (nullopt = ok).
std::optional<CoverViolation> check_REG3_bounded(const SetFunction& f, std::size_t max_n,
                                                 std::size_t max_m);

std::optional<CoverViolation> check_REG3prime(const SetFunction& f, std::size_t max_n,
                                              std::size_t max_k, std::size_t max_m);

struct SuperadditivityViolation {
    Event first;
    Event second;
};

struct LpAxiomReport {
    bool lp1;  // g(S) = 1
    bool lp2;  // g({}) = 0
    std::optional<SuperadditivityViolation> lp3prime;
    std::optional<CoverViolation> lp3;
    [[nodiscard]] bool ok() const { return lp1 && lp2 && !lp3prime && !lp3; }
};

// Lower-probability axioms. LP3 uses exact covers: states outside the target
// are covered exactly k times and states inside exactly n + k times.
LpAxiomReport check_LP_axioms(const SetFunction& g, const CoverBounds& bounds);

// sup { b : b Pr(complement of E) <= f(E) for all E }, attained as a finite
// minimum and capped at 1.
Rat canonical_weight(const SetFunction& f, const ProbMeasure& pr);

// The inequality systems whose feasibility decides representability.
// weight_one_system: Pr(complement of E) <= f(E) for all strict subsets E,
// Pr a probability. Variables are the masses of all states.
LinearSystem weight_one_system(const SetFunction& f);
// tightness_system(E): Pr(complement of E) = 1 and f(E) Pr(complement of E')
// <= f(E') for all strict subsets E'. Variables are the masses of the states
// of the complement of E, in state order. Requires 0 < f(E).
LinearSystem tightness_system(const SetFunction& f, const Event& e);

struct TightnessWitness {
    Event event;
    std::optional<ProbMeasure> measure;  // nullopt when f(E) = 0 (trivially tight)
};

struct Representation {
    bool representable = false;
    std::string reason;  // empty when representable

    // Representable: the weight-1 measure, one tightness measure per event
    // with f(E) > 0, and the credal set built from them with canonical weights.
    std::optional<ProbMeasure> weight_one_measure;
    std::vector<TightnessWitness> tightness;
    std::optional<WeightedCredalSet> witness_set;

    // Not representable because an inequality system is infeasible.
    std::optional<Event> failing_event;  // nullopt for the weight-1 system
    std::optional<LinearSystem> failing_system;
    std::vector<Rat> certificate;
};

// Decides whether f is the regret-based likelihood of some weighted credal
// set. Values outside [0,1] are rejected by the SetFunction constructor.
Representation representability(const SetFunction& f);

} // namespace wregret
