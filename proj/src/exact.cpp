#include "pizza/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace pizza {

ExactScalar::ExactScalar(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

ExactScalar ExactScalar::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite double");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), v);
    return ExactScalar(q);
}

static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

ExactScalar ExactScalar::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    auto bad = [&]() { return std::invalid_argument("malformed numeral: '" + std::string(text) + "'"); };
    if (s.empty()) throw bad();

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) throw bad();
        mpz_class num(std::string(p), 10), den(std::string(q), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        mpq_class r(num, den);
        r.canonicalize();
        if (neg) r = -r;
        return ExactScalar(r);
    }

    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        auto ex = s.substr(e + 1);
        s = s.substr(0, e);
        bool eneg = false;
        if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
            eneg = ex.front() == '-';
            ex.remove_prefix(1);
        }
        if (!all_digits(ex) || ex.size() > 6) throw bad();
        exponent = std::stol(std::string(ex));
        if (eneg) exponent = -exponent;
    }

    std::string digits;
    long frac = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw bad();
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) throw bad();
        digits = std::string(ip) + std::string(fp);
        frac = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw bad();
        digits = std::string(s);
    }
    mpz_class num(digits, 10);
    long shift = exponent - frac;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class r = shift < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
    r.canonicalize();
    if (neg) r = -r;
    return ExactScalar(r);
}

std::string ExactScalar::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t ExactScalar::bit_size() const {
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

bool exact_sqrt(const Q& a, Q& out) {
    if (a.sign() < 0) return false;
    mpz_class n = a.numerator(), d = a.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Q(mpq_class(rn, rd));
    return true;
}

Q rationalize(double v, long max_den) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite value");
    Q exact = Q::from_double(v);
    if (exact.denominator() <= max_den) return exact;
    // Continued-fraction convergents of the exact binary value.
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpq_class x = exact.raw();
    mpz_class limit(max_den);
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > limit) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        mpq_class frac = x - mpq_class(a);
        if (sgn(frac) == 0) break;
        x = 1 / frac;
    }
    return Q(mpq_class(p1, q1));
}

Q dyadic_floor(const Q& v, unsigned bits) {
    mpz_class scale = 1;
    scale <<= bits;
    mpq_class t = abs(v).raw() * scale;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    Q r(mpq_class(fl, scale));
    return v.sign() < 0 ? -r : r;
}

}  // namespace pizza

std::size_t std::hash<pizza::ExactScalar>::operator()(const pizza::ExactScalar& q) const noexcept {
    return std::hash<std::string>()(q.str());
}
