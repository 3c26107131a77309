#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <concepts>
#include <cstdint>
#include <string>

namespace lambdalin {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational with a positive denominator, always reduced.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational operator+(const Rational& r) const;
    Rational operator-(const Rational& r) const;
    Rational operator*(const Rational& r) const;
    Rational operator/(const Rational& r) const;  // throws on zero divisor

    bool operator==(const Rational& r) const { return num_ == r.num_ && den_ == r.den_; }
    bool operator!=(const Rational& r) const { return !(*this == r); }

    // total order; denominators are positive so cross-multiplication is safe
    int compare(const Rational& r) const;
    bool operator<(const Rational& r) const { return compare(r) < 0; }

    double to_double() const;
    std::string to_string() const;  // "7" or "-3/2"

private:
    BigInt num_;
    BigInt den_;
};

/// Element of Q[i, sqrt2] in the unique representation
///   a + b*sqrt2 + c*i + d*i*sqrt2.
/// Canonical by construction: equality is componentwise.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long n) : a_(n) {}
    Scalar(Rational a) : a_(std::move(a)) {}
    Scalar(Rational a, Rational b, Rational c, Rational d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar sqrt2() { return Scalar(0, 1, 0, 0); }
    static Scalar imag_unit() { return Scalar(0, 0, 1, 0); }
    /// e^{i pi/4} = sqrt2/2 + (sqrt2/2) i, which lives in Q[i,sqrt2].
    static Scalar omega8() { return Scalar(0, Rational(1, 2), 0, Rational(1, 2)); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero() && c_.is_zero() && d_.is_zero(); }
    bool is_one() const { return a_.is_one() && b_.is_zero() && c_.is_zero() && d_.is_zero(); }

    Scalar operator-() const { return Scalar(-a_, -b_, -c_, -d_); }
    Scalar operator+(const Scalar& s) const;
    Scalar operator-(const Scalar& s) const { return *this + (-s); }
    Scalar operator*(const Scalar& s) const;  // sqrt2*sqrt2 = 2, i*i = -1
    Scalar inverse() const;                   // throws on zero
    Scalar operator/(const Scalar& s) const { return *this * s.inverse(); }

    bool operator==(const Scalar& s) const = default;

    int compare(const Scalar& s) const;  // lexicographic on (a,b,c,d)
    bool operator<(const Scalar& s) const { return compare(s) < 0; }

    std::complex<double> to_complex() const;

    /// Parseable rendering, e.g. "1/2 - sqrt2/2 + i*sqrt2"; "omega8" when equal to it.
    std::string to_string() const;

private:
    Rational a_, b_, c_, d_;
};

// The engine is generic in spirit over any scalar structure satisfying the
// ring laws below; Scalar (the shipped field) and Rational (used in tests)
// are the two instances. The laws themselves are asserted by property tests.
template <typename S>
concept scalar_ring = requires(S x, S y) {
    { x + y } -> std::convertible_to<S>;
    { x* y } -> std::convertible_to<S>;
    { -x } -> std::convertible_to<S>;
    { x == y } -> std::convertible_to<bool>;
    { x.is_zero() } -> std::convertible_to<bool>;
    { x.is_one() } -> std::convertible_to<bool>;
    { x.to_string() } -> std::convertible_to<std::string>;
    { S(0) };
    { S(1) };
};

static_assert(scalar_ring<Rational>);
static_assert(scalar_ring<Scalar>);

}  // namespace lambdalin
