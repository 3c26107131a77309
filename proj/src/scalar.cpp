#include "lambdalin/scalar.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lambdalin {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& r) const {
    return Rational(num_ * r.den_ + r.num_ * den_, den_ * r.den_);
}

Rational Rational::operator-(const Rational& r) const {
    return Rational(num_ * r.den_ - r.num_ * den_, den_ * r.den_);
}

Rational Rational::operator*(const Rational& r) const {
    return Rational(num_ * r.num_, den_ * r.den_);
}

Rational Rational::operator/(const Rational& r) const {
    if (r.num_ == 0) throw std::domain_error("division by zero rational");
    return Rational(num_ * r.den_, den_ * r.num_);
}

int Rational::compare(const Rational& r) const {
    BigInt lhs = num_ * r.den_;
    BigInt rhs = r.num_ * den_;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

double Rational::to_double() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Rational::to_string() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

Scalar Scalar::operator+(const Scalar& s) const {
    return Scalar(a_ + s.a_, b_ + s.b_, c_ + s.c_, d_ + s.d_);
}

Scalar Scalar::operator*(const Scalar& s) const {
    // (a1 + b1 r + c1 i + d1 i r)(a2 + b2 r + c2 i + d2 i r) with r = sqrt2:
    // r*r = 2, i*i = -1, (i r)(i r) = -2.
    const Rational two(2);
    Rational a = a_ * s.a_ + two * (b_ * s.b_) - c_ * s.c_ - two * (d_ * s.d_);
    Rational b = a_ * s.b_ + b_ * s.a_ - c_ * s.d_ - d_ * s.c_;
    Rational c = a_ * s.c_ + c_ * s.a_ + two * (b_ * s.d_ + d_ * s.b_);
    Rational d = a_ * s.d_ + d_ * s.a_ + b_ * s.c_ + c_ * s.b_;
    return Scalar(std::move(a), std::move(b), std::move(c), std::move(d));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero scalar");
    // Write x = A + B i with A, B in Q[sqrt2]. Then 1/x = conj(x) / (A^2 + B^2),
    // and 1/(p + q sqrt2) = (p - q sqrt2) / (p^2 - 2 q^2).
    const Scalar conj(a_, b_, -c_, -d_);
    const Scalar norm = *this * conj;  // A^2 + B^2, purely real in Q[sqrt2]
    const Rational p = norm.a_, q = norm.b_;
    const Rational denom = p * p - Rational(2) * (q * q);
    // denom = 0 would force p = q = 0 (sqrt2 irrational), i.e. x = 0.
    const Scalar real_inv(p / denom, -(q / denom), 0, 0);
    return conj * real_inv;
}

int Scalar::compare(const Scalar& s) const {
    if (int c = a_.compare(s.a_)) return c;
    if (int c = b_.compare(s.b_)) return c;
    if (int c = c_.compare(s.c_)) return c;
    return d_.compare(s.d_);
}

std::complex<double> Scalar::to_complex() const {
    const double r = std::sqrt(2.0);
    return {a_.to_double() + b_.to_double() * r, c_.to_double() + d_.to_double() * r};
}

namespace {

// One monomial "coeff * sym". Renders 1/2*sqrt2 as "sqrt2/2" so that common
// amplitudes read naturally; everything emitted re-parses in scalar position.
std::string monomial(const Rational& coeff, const char* sym) {
    if (!*sym) return coeff.to_string();
    Rational abs = coeff.num() < 0 ? -coeff : coeff;
    if (abs.is_one()) return sym;
    if (abs.num() == 1) return std::string(sym) + "/" + abs.den().str();
    if (abs.is_integer()) return abs.to_string() + "*" + sym;
    return "(" + abs.to_string() + ")*" + sym;
}

}  // namespace

std::string Scalar::to_string() const {
    if (is_zero()) return "0";
    if (*this == omega8()) return "omega8";
    struct Part {
        const Rational* coeff;
        const char* sym;
    };
    const Part parts[] = {{&a_, ""}, {&b_, "sqrt2"}, {&c_, "i"}, {&d_, "i*sqrt2"}};
    std::string out;
    for (const auto& [coeff, sym] : parts) {
        if (coeff->is_zero()) continue;
        const bool neg = coeff->num() < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += monomial(neg ? -*coeff : *coeff, sym);
    }
    return out;
}

}  // namespace lambdalin
