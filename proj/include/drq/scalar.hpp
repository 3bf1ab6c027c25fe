#pragma once

#include <string>
#include <vector>

#include "drq/poly.hpp"

namespace drq {

/* Canonical rational function in ℚ(i)(l1..l_nvars): coprime numerator /
 * denominator, denominator monic under grlex.  Equality is map equality on
 * the canonical form. */
class Scalar {
  public:
    Scalar() : num_(0), den_(Poly::one(0)) {}
    explicit Scalar(int nvars) : num_(nvars), den_(Poly::one(nvars)) {}
    Scalar(int nvars, long c) : num_(Poly(nvars, GaussianRational(c))), den_(Poly::one(nvars)) {}
    Scalar(int nvars, const GaussianRational& c)
        : num_(Poly(nvars, c)), den_(Poly::one(nvars)) {}
    Scalar(Poly num, Poly den);  // canonicalizes; throws DivisionByZero on den = 0
    explicit Scalar(Poly num) : num_(std::move(num)), den_(Poly::one(num_.nvars())) {}

    static Scalar variable(int nvars, int idx) { return Scalar(Poly::variable(nvars, idx)); }
    static Scalar imag_unit(int nvars) { return Scalar(nvars, GaussianRational::i()); }

    /* num and den already coprime: only the monic rescale is performed */
    static Scalar from_coprime(Poly num, Poly den);

    int nvars() const { return num_.nvars(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == Poly::one(nvars()) && num_ == Poly::one(nvars()); }
    bool is_polynomial() const { return den_ == Poly::one(nvars()); }
    bool is_constant() const { return num_.is_constant() && is_polynomial(); }
    GaussianRational constant_value() const { return num_.constant_value(); }

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    Scalar inv() const;
    Scalar pow(unsigned e) const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    /* Exact partial derivative d/dl_{v+1} (v is 0-based). */
    Scalar diff(int v) const;

    /* Exact substitution; throws EvalPole if the denominator vanishes. */
    GaussianRational eval(const std::vector<GaussianRational>& point) const;

    std::string str() const;

  private:
    void normalize();
    Poly num_, den_;
};

}  // namespace drq
