#pragma once

// Exact rational scalar on top of an arbitrary-precision integer.
// Every quantity in the toolkit (discrepancies, thresholds, intersection
// numbers, polynomial coefficients) is a Rational; there is no floating
// point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace folmmp {

using BigInt = boost::multiprecision::cpp_int;

// Thrown when an operation's input contract is violated (rejected inputs,
// non-coprime pairs, zero denominators and the like).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Always stored in lowest terms with a positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(const BigInt& n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return Rational(raw{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw precondition_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt l = a.num_ * b.den_, r = b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // Prints "p" for integers and "p/q" otherwise; parse() accepts both.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos)
                return Rational(BigInt(std::string(text)));
            BigInt n{std::string(text.substr(0, slash))};
            BigInt d{std::string(text.substr(slash + 1))};
            if (d == 0) throw precondition_error("Rational: zero denominator");
            return Rational(std::move(n), std::move(d));
        } catch (const std::runtime_error&) {
            throw precondition_error("Rational: cannot parse '" + std::string(text) + "'");
        }
    }

    // floor(num/den)
    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }
    BigInt ceil() const {
        BigInt q = num_ / den_;
        if (num_ > 0 && q * den_ != num_) ++q;
        return q;
    }

    // True iff this is the square of a rational (both num and den perfect squares).
    bool is_square() const {
        if (num_ < 0) return false;
        BigInt rn = boost::multiprecision::sqrt(num_);
        BigInt rd = boost::multiprecision::sqrt(den_);
        return rn * rn == num_ && rd * rd == den_;
    }

    // Exact square root; caller must check is_square() first.
    Rational sqrt() const {
        if (!is_square()) throw precondition_error("Rational::sqrt of a non-square");
        return Rational(raw{}, boost::multiprecision::sqrt(num_), boost::multiprecision::sqrt(den_));
    }

private:
    struct raw {};
    Rational(raw, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw precondition_error("Rational: zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace folmmp
