#pragma once

#include <jetforge/errors.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>

namespace jetforge {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Rational numbers (the field Q)
// ---------------------------------------------------------------------------

/// Exact rational number in canonical form: gcd(|num|, den) = 1, den > 0.
/// Canonicalization is maintained by the underlying cpp_rational.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : v_(n) {}
    Rational(BigInt n) : v_(std::move(n)) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw arithmetic_error("rational with zero denominator");
        // cpp_rational wants a positive denominator; normalize the sign here
        if (den < 0) v_ = boost::multiprecision::cpp_rational(-num, -den);
        else v_ = boost::multiprecision::cpp_rational(num, den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return denominator() == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw arithmetic_error("division by zero");
        return Rational(a.v_ / b.v_);
    }
    Rational operator-() const { return Rational(-v_); }

    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }

    Rational inverse() const {
        if (is_zero()) throw arithmetic_error("inverse of zero");
        return Rational(1) / *this;
    }

    bool operator==(const Rational& b) const { return v_ == b.v_; }
    std::strong_ordering operator<=>(const Rational& b) const {
        if (v_ < b.v_) return std::strong_ordering::less;
        if (v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const { return v_.str(); }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

/// Field descriptor for Q. Stateless; all instances are the same field.
struct RationalField {
    using Element = Rational;

    Element zero() const { return Rational(0); }
    Element one() const { return Rational(1); }
    Element from_int(long long n) const { return Rational(n); }
    Element from_fraction(const BigInt& num, const BigInt& den) const { return Rational(num, den); }

    bool operator==(const RationalField&) const { return true; }

    std::string name() const { return "Q"; }

    /// Coefficient spelling used by the canonical printer: integers bare,
    /// proper fractions as "(num/den)".
    static std::string coeff_string(const Element& e) {
        if (e.is_integer()) return e.numerator().str();
        return "(" + e.numerator().str() + "/" + e.denominator().str() + ")";
    }
};

// ---------------------------------------------------------------------------
// Prime fields F_p
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

/// Element of F_p. Carries its modulus so mixed-modulus use is detectable.
struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }

    static void check(const Fp& a, const Fp& b) {
        if (a.p != b.p) throw field_mismatch_error("prime-field modulus mismatch");
    }

    friend Fp operator+(const Fp& a, const Fp& b) {
        check(a, b);
        std::uint64_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return {s, a.p};
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        check(a, b);
        return {a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p};
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        check(a, b);
        return {(a.v * b.v) % a.p, a.p};
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

    Fp operator-() const { return {v == 0 ? 0 : p - v, p}; }

    Fp& operator+=(const Fp& b) { *this = *this + b; return *this; }
    Fp& operator-=(const Fp& b) { *this = *this - b; return *this; }
    Fp& operator*=(const Fp& b) { *this = *this * b; return *this; }

    Fp inverse() const {
        if (v == 0) throw arithmetic_error("inverse of zero");
        // extended Euclid on (v, p); p prime so gcd = 1
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(v);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t -= q * new_t; std::swap(t, new_t);
            r -= q * new_r; std::swap(r, new_r);
        }
        if (t < 0) t += static_cast<std::int64_t>(p);
        return {static_cast<std::uint64_t>(t), p};
    }

    bool operator==(const Fp& b) const { return v == b.v && p == b.p; }
    std::strong_ordering operator<=>(const Fp& b) const { return v <=> b.v; }

    std::string str() const { return std::to_string(v); }
};

/// Field descriptor for F_p. Primality is validated once, here.
struct PrimeField {
    std::uint64_t p = 0;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t modulus) : p(modulus) {
        if (p >= (1ull << 31)) throw arithmetic_error("prime modulus too large (must be < 2^31)");
        if (!detail::is_prime_u64(p)) throw arithmetic_error("modulus " + std::to_string(p) + " is not prime");
    }

    using Element = Fp;

    Element zero() const { return {0, p}; }
    Element one() const { return {1 % p, p}; }
    Element from_int(long long n) const {
        std::int64_t r = n % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        return {static_cast<std::uint64_t>(r), p};
    }
    Element from_fraction(const BigInt& num, const BigInt& den) const {
        BigInt pp(p);
        BigInt n = num % pp; if (n < 0) n += pp;
        BigInt d = den % pp; if (d < 0) d += pp;
        Element nd{n.convert_to<std::uint64_t>(), p};
        Element dd{d.convert_to<std::uint64_t>(), p};
        if (dd.is_zero()) throw arithmetic_error("denominator vanishes modulo " + std::to_string(p));
        return nd / dd;
    }

    bool operator==(const PrimeField& o) const { return p == o.p; }

    std::string name() const { return "Fp " + std::to_string(p); }

    static std::string coeff_string(const Element& e) { return e.str(); }
};

// ---------------------------------------------------------------------------
// Field concept
// ---------------------------------------------------------------------------

template <typename F>
concept field = requires(const F f, const typename F::Element a, const typename F::Element b) {
    { f.zero() } -> std::same_as<typename F::Element>;
    { f.one() } -> std::same_as<typename F::Element>;
    { f.from_int(1LL) } -> std::same_as<typename F::Element>;
    { a + b } -> std::same_as<typename F::Element>;
    { a - b } -> std::same_as<typename F::Element>;
    { a * b } -> std::same_as<typename F::Element>;
    { a / b } -> std::same_as<typename F::Element>;
    { -a } -> std::same_as<typename F::Element>;
    { a.is_zero() } -> std::same_as<bool>;
    { a == b } -> std::same_as<bool>;
    { f == f } -> std::same_as<bool>;
    { F::coeff_string(a) } -> std::same_as<std::string>;
};

static_assert(field<RationalField>);
static_assert(field<PrimeField>);

template <field F>
void require_same_field(const F& a, const F& b) {
    if (!(a == b)) throw field_mismatch_error("operands belong to different fields");
}

} // namespace jetforge
