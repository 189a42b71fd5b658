#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "fc/errors.hpp"

namespace fc {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (GMP keeps mpq_t canonical through arithmetic).
class BigRational {
  public:
    BigRational() : v_(0) {}
    BigRational(long n) : v_(n) {}  // NOLINT: implicit by design
    BigRational(long n, long d) {
        if (d == 0) throw DivisionByZero();
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit BigRational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit BigRational(const mpz_class& n) : v_(n) {}
    BigRational(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw DivisionByZero();
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    // Parses "123", "-4/7".
    static BigRational parse(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal '" + text + "'", 0);
        if (q.get_den() == 0) throw DivisionByZero();
        q.canonicalize();
        return BigRational(std::move(q));
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    BigRational operator-() const { return BigRational(mpq_class(-v_)); }
    BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
    BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
    BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw DivisionByZero();
        v_ /= o.v_;
        return *this;
    }
    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return a.v_ >= b.v_; }

    BigRational abs() const { return BigRational(mpq_class(::abs(v_))); }
    BigRational reciprocal() const {
        if (is_zero()) throw DivisionByZero();
        return BigRational(mpq_class(1) / v_);
    }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }

    double to_double() const { return v_.get_d(); }

    std::string to_string() const { return v_.get_str(); }

    // gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2): the largest rational dividing
    // both to integer quotients. Used for polynomial content extraction.
    static BigRational content_gcd(const BigRational& a, const BigRational& b) {
        if (a.is_zero()) return b.abs();
        if (b.is_zero()) return a.abs();
        mpz_class n, l;
        mpz_gcd(n.get_mpz_t(), a.v_.get_num_mpz_t(), b.v_.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), a.v_.get_den_mpz_t(), b.v_.get_den_mpz_t());
        return BigRational(n, l);
    }

  private:
    explicit BigRational(mpq_class&& q) : v_(std::move(q)) {}
    mpq_class v_;
};

}  // namespace fc
