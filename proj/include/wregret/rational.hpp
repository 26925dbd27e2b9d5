#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wregret {

// Exact rational number. Always kept in lowest terms with a positive
// denominator; all arithmetic is exact.
class Rat {
  public:
    Rat() = default;
    Rat(long value) : v_(value) {}                 // NOLINT(google-explicit-constructor)
    Rat(int value) : v_(static_cast<long>(value)) {} // NOLINT(google-explicit-constructor)
    Rat(long num, long den);
    explicit Rat(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

    // Accepts "p", "-p", "p/q", "-p/q" with q > 0. Non-canonical fractions
    // such as "2/4" are reduced.
    static Rat parse(std::string_view text);

    [[nodiscard]] std::string to_string() const { return v_.get_str(); }
    // Decimal rendering rounded half away from zero, e.g. 11/27 -> "0.407407".
    [[nodiscard]] std::string to_decimal(int places = 6) const;

    [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return v_; }
    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

  private:
    mpq_class v_;
};

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace wregret
