#include "wregret/rational.hpp"

#include <cctype>
#include <ostream>

#include "wregret/error.hpp"

namespace wregret {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace

Rat::Rat(long num, long den) {
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                 : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw ParseError("malformed rational \"" + std::string(text) +
                         "\" (expected p or p/q with decimal digits)");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw ParseError("malformed rational \"" + std::string(text) + "\" (zero denominator)");
    }
    if (negative) {
        n = -n;
    }
    return Rat(mpq_class(n, d));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) {
        throw DomainError("division by zero");
    }
    v_ /= o.v_;
    return *this;
}

std::string Rat::to_decimal(int places) const {
    mpz_class scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    mpz_class num = abs(v_.get_num()) * scale * 2 + v_.get_den();
    mpz_class den = v_.get_den() * 2;
    mpz_class scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());

    mpz_class whole;
    mpz_class frac;
    mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), scaled.get_mpz_t(), scale.get_mpz_t());

    std::string out;
    if (sgn(v_) < 0 && scaled != 0) {
        out += '-';
    }
    out += whole.get_str();
    if (places > 0) {
        std::string digits = frac.get_str();
        out += '.';
        out.append(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

} // namespace wregret
