#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wregret/rational.hpp"

namespace wregret {

// Dense row-major rational matrix.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    [[nodiscard]] std::span<const Rat> row(std::size_t r) const {
        return std::span<const Rat>(data_).subspan(r * cols_, cols_);
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

// A system A x >= b.
struct LinearSystem {
    RatMatrix a;
    std::vector<Rat> b;
    // Optional one-line description per row, used in reports.
    std::vector<std::string> row_labels;
};

struct FeasibleWitness {
    std::vector<Rat> x;
};

// beta >= 0, beta A = 0, beta b > 0.
struct FarkasCertificate {
    std::vector<Rat> beta;
};

struct FeasibilityResult {
    std::variant<FeasibleWitness, FarkasCertificate> outcome;

    [[nodiscard]] bool feasible() const { return std::holds_alternative<FeasibleWitness>(outcome); }
    [[nodiscard]] const std::vector<Rat>& witness() const { return std::get<FeasibleWitness>(outcome).x; }
    [[nodiscard]] const std::vector<Rat>& certificate() const {
        return std::get<FarkasCertificate>(outcome).beta;
    }
};

// Decides A x >= b over the rationals (x free). Runs an exact phase-one
// simplex with Bland's rule; on infeasibility the certificate is read off the
// optimal dual. Both outcomes are verified exactly before returning.
FeasibilityResult exact_feasibility(const RatMatrix& a, std::span<const Rat> b);
inline FeasibilityResult exact_feasibility(const LinearSystem& sys) {
    return exact_feasibility(sys.a, sys.b);
}

bool satisfies(const RatMatrix& a, std::span<const Rat> b, std::span<const Rat> x);
bool is_farkas_certificate(const RatMatrix& a, std::span<const Rat> b, std::span<const Rat> beta);

} // namespace wregret
