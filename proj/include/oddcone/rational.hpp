#pragma once

#include <gmpxx.h>

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace oddcone {

// Exact rational scalar, always in lowest terms with positive denominator.
// Thin value wrapper over GMP's mpq_class; every operation is exact.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // implicit on purpose: lets code write M(i, j) = 1
    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    // Accepts "p" or "p/q": p an optionally negated digit string, q an
    // unsigned digit string (nonzero).  Exactly the grammar str() emits.
    static Rational parse(std::string_view s) {
        if (!valid_literal(s))
            throw std::invalid_argument("Rational::parse: bad literal '" + std::string(s) + "'");
        mpq_class v;
        if (mpq_set_str(v.get_mpq_t(), std::string(s).c_str(), 10) != 0)
            throw std::invalid_argument("Rational::parse: bad literal '" + std::string(s) + "'");
        if (v.get_den() == 0)
            throw std::invalid_argument("Rational::parse: zero denominator in '" + std::string(s) + "'");
        return Rational(std::move(v));
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    // "p" when the denominator is 1, otherwise "p/q".
    std::string str() const { return v_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend Rational abs(const Rational& a) { return Rational(mpq_class(abs(a.v_))); }
    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.str(); }

    Rational inverse() const {
        if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

private:
    static bool valid_literal(std::string_view s) {
        size_t i = 0;
        auto digits = [&](size_t& p) {
            size_t start = p;
            while (p < s.size() && s[p] >= '0' && s[p] <= '9') ++p;
            return p > start;
        };
        if (i < s.size() && s[i] == '-') ++i;
        if (!digits(i)) return false;
        if (i == s.size()) return true;
        if (s[i] != '/') return false;
        ++i;
        return digits(i) && i == s.size();
    }

    mpq_class v_;
};

}  // namespace oddcone
