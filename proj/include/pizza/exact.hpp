#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace pizza {

// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(int v) : q_(v) {}
    ExactScalar(long v) : q_(v) {}
    ExactScalar(long long v) : q_(static_cast<long>(v)) {}
    ExactScalar(unsigned v) : q_(v) {}
    explicit ExactScalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit ExactScalar(const mpz_class& z) : q_(z) {}
    ExactScalar(long num, long den);

    // Exact conversion of a finite binary double.
    static ExactScalar from_double(double v);
    // Accepts "p/q", integers, finite decimals and decimals with an exponent.
    static ExactScalar parse(std::string_view text);

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    double to_double() const { return q_.get_d(); }
    std::string str() const;  // "p/q" or "p"
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    // Number of bits in numerator plus denominator; a size measure for polishing.
    std::size_t bit_size() const;

    ExactScalar& operator+=(const ExactScalar& o) { q_ += o.q_; return *this; }
    ExactScalar& operator-=(const ExactScalar& o) { q_ -= o.q_; return *this; }
    ExactScalar& operator*=(const ExactScalar& o) { q_ *= o.q_; return *this; }
    ExactScalar& operator/=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    friend ExactScalar operator-(const ExactScalar& a) { return ExactScalar(mpq_class(-a.q_)); }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

using Q = ExactScalar;

inline Q abs(const Q& a) { return a.sign() < 0 ? -a : a; }
inline const Q& min(const Q& a, const Q& b) { return b < a ? b : a; }
inline const Q& max(const Q& a, const Q& b) { return a < b ? b : a; }
inline double to_double(const Q& a) { return a.to_double(); }

// Exact square root when the argument is the square of a rational.
bool exact_sqrt(const Q& a, Q& out);
// Best rational approximation with denominator at most max_den (continued fractions).
Q rationalize(double v, long max_den);
// Largest dyadic p/2^bits not exceeding |v| in magnitude, with v's sign.
Q dyadic_floor(const Q& v, unsigned bits);

// Scalar helpers shared by the exact and float evaluation paths.
namespace num {
inline double abs(double a) { return a < 0 ? -a : a; }
inline double min(double a, double b) { return b < a ? b : a; }
inline double max(double a, double b) { return a < b ? b : a; }
inline double to_double(double a) { return a; }
inline int sign(double a) { return (a > 0) - (a < 0); }
using pizza::abs;
using pizza::max;
using pizza::min;
using pizza::to_double;
inline int sign(const Q& a) { return a.sign(); }
template <class T> T from_q(const Q& q);
template <> inline double from_q<double>(const Q& q) { return q.to_double(); }
template <> inline Q from_q<Q>(const Q& q) { return q; }
}  // namespace num

}  // namespace pizza

template <>
struct std::hash<pizza::ExactScalar> {
    std::size_t operator()(const pizza::ExactScalar& q) const noexcept;
};
