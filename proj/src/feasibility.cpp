#include "wregret/feasibility.hpp"

#include <optional>
#include <stdexcept>

#include "wregret/error.hpp"

namespace wregret {

namespace {

// Phase-one tableau for
//   sigma_i (A_i u - A_i v - s_i) + t_i = sigma_i b_i,   u, v, s, t >= 0,
// minimizing sum t, where sigma_i = sign(b_i) makes the right side
// nonnegative so the artificials t form the starting basis.
class PhaseOne {
  public:
    PhaseOne(const RatMatrix& a, std::span<const Rat> b)
        : m_(a.rows()), n_(a.cols()), cols_(2 * n_ + 2 * m_), tab_(m_, cols_), rhs_(m_),
          reduced_(cols_), basis_(m_), sigma_(m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            sigma_[i] = b[i].sign() < 0 ? -1 : 1;
            const Rat sg(sigma_[i]);
            for (std::size_t j = 0; j < n_; ++j) {
                if (!a(i, j).is_zero()) {
                    tab_(i, j) = sg * a(i, j);
                    tab_(i, n_ + j) = -tab_(i, j);
                }
            }
            tab_(i, 2 * n_ + i) = -sg;
            tab_(i, artificial(i)) = Rat(1);
            rhs_[i] = sg * b[i];
            basis_[i] = artificial(i);
        }
        // Reduced costs with the artificial basis: d_j = c_j - sum_i tab(i,j).
        for (std::size_t j = 0; j < cols_; ++j) {
            Rat d = j >= artificial(0) ? Rat(1) : Rat(0);
            for (std::size_t i = 0; i < m_; ++i) {
                d -= tab_(i, j);
            }
            reduced_[j] = std::move(d);
        }
    }

    void solve() {
        while (true) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (reduced_[j].sign() < 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) {
                return;
            }
            std::optional<std::size_t> leave;
            Rat best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (tab_(i, *entering).sign() <= 0) {
                    continue;
                }
                Rat ratio = rhs_[i] / tab_(i, *entering);
                if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leave) {
                // Phase one is bounded below by 0, so this cannot happen.
                throw std::logic_error("phase-one simplex reported unbounded");
            }
            pivot(*leave, *entering);
        }
    }

    [[nodiscard]] Rat objective() const {
        Rat z;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= artificial(0)) {
                z += rhs_[i];
            }
        }
        return z;
    }

    [[nodiscard]] std::vector<Rat> primal_x() const {
        std::vector<Rat> x(n_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) {
                x[basis_[i]] += rhs_[i];
            } else if (basis_[i] < 2 * n_) {
                x[basis_[i] - n_] -= rhs_[i];
            }
        }
        return x;
    }

    // y_i = c_{t_i} - d_{t_i}; beta_i = sigma_i y_i.
    [[nodiscard]] std::vector<Rat> farkas() const {
        std::vector<Rat> beta(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            beta[i] = Rat(sigma_[i]) * (Rat(1) - reduced_[artificial(i)]);
        }
        return beta;
    }

  private:
    [[nodiscard]] std::size_t artificial(std::size_t i) const { return 2 * n_ + m_ + i; }

    void pivot(std::size_t r, std::size_t c) {
        const Rat p = tab_(r, c);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!tab_(r, j).is_zero()) {
                tab_(r, j) /= p;
            }
        }
        rhs_[r] /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || tab_(i, c).is_zero()) {
                continue;
            }
            const Rat f = tab_(i, c);
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!tab_(r, j).is_zero()) {
                    tab_(i, j) -= f * tab_(r, j);
                }
            }
            rhs_[i] -= f * rhs_[r];
        }
        if (!reduced_[c].is_zero()) {
            const Rat f = reduced_[c];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!tab_(r, j).is_zero()) {
                    reduced_[j] -= f * tab_(r, j);
                }
            }
        }
        basis_[r] = c;
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t cols_;
    RatMatrix tab_;
    std::vector<Rat> rhs_;
    std::vector<Rat> reduced_;
    std::vector<std::size_t> basis_;
    std::vector<int> sigma_;
};

} // namespace

bool satisfies(const RatMatrix& a, std::span<const Rat> b, std::span<const Rat> x) {
    if (x.size() != a.cols() || b.size() != a.rows()) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rat lhs;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a(i, j).is_zero()) {
                lhs += a(i, j) * x[j];
            }
        }
        if (lhs < b[i]) {
            return false;
        }
    }
    return true;
}

bool is_farkas_certificate(const RatMatrix& a, std::span<const Rat> b, std::span<const Rat> beta) {
    if (beta.size() != a.rows() || b.size() != a.rows()) {
        return false;
    }
    for (const auto& v : beta) {
        if (v.sign() < 0) {
            return false;
        }
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Rat col;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (!beta[i].is_zero() && !a(i, j).is_zero()) {
                col += beta[i] * a(i, j);
            }
        }
        if (!col.is_zero()) {
            return false;
        }
    }
    Rat dot;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        dot += beta[i] * b[i];
    }
    return dot.sign() > 0;
}

FeasibilityResult exact_feasibility(const RatMatrix& a, std::span<const Rat> b) {
    if (b.size() != a.rows()) {
        throw DomainError("feasibility system has " + std::to_string(a.rows()) + " rows but " +
                          std::to_string(b.size()) + " right-hand sides");
    }
    PhaseOne lp(a, b);
    lp.solve();
    if (lp.objective().is_zero()) {
        auto x = lp.primal_x();
        if (!satisfies(a, b, x)) {
            throw std::logic_error("simplex witness failed exact verification");
        }
        return {FeasibleWitness{std::move(x)}};
    }
    auto beta = lp.farkas();
    if (!is_farkas_certificate(a, b, beta)) {
        throw std::logic_error("simplex Farkas certificate failed exact verification");
    }
    return {FarkasCertificate{std::move(beta)}};
}

} // namespace wregret
