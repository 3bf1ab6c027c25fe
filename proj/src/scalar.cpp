#include "drq/scalar.hpp"

namespace drq {

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    normalize();
}

Scalar Scalar::from_coprime(Poly num, Poly den) {
    Scalar r(num.nvars());
    if (num.is_zero()) return r;
    GaussianRational lc = den.leading_coeff();
    if (!lc.is_one()) {
        GaussianRational s = lc.inv();
        num = num.scaled(s);
        den = den.scaled(s);
    }
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::one(num_.nvars());
        return;
    }
    if (!(den_ == Poly::one(num_.nvars()))) {
        Poly g = poly_gcd(num_, den_);
        if (!(g == Poly::one(num_.nvars()))) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
    }
    GaussianRational lc = den_.leading_coeff();
    if (!lc.is_one()) {
        GaussianRational s = lc.inv();
        num_ = num_.scaled(s);
        den_ = den_.scaled(s);
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
    Poly g = poly_gcd(a.den_, b.den_);
    Poly bq = exact_div(b.den_, g);
    return Scalar(a.num_ * bq + b.num_ * exact_div(a.den_, g), a.den_ * bq);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    if (a.den_ == b.den_) return Scalar(a.num_ - b.num_, a.den_);
    Poly g = poly_gcd(a.den_, b.den_);
    Poly bq = exact_div(b.den_, g);
    return Scalar(a.num_ * bq - b.num_ * exact_div(a.den_, g), a.den_ * bq);
}

/* products cross-cancel first so the result is coprime by construction and
 * only the monic rescale of the constructor's normalize runs a gcd */
Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar(a.nvars());
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    Poly one = Poly::one(a.nvars());
    if (a.den_ == one && b.den_ == one) return Scalar(a.num_ * b.num_);
    Poly g1 = poly_gcd(a.num_, b.den_);
    Poly g2 = poly_gcd(b.num_, a.den_);
    Poly n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    Poly d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    return Scalar::from_coprime(std::move(n), std::move(d));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.inv();
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero();
    return from_coprime(den_, num_);
}

Scalar Scalar::pow(unsigned e) const {
    Scalar r(nvars(), 1);
    Scalar base = *this;
    for (; e; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

Scalar Scalar::diff(int v) const {
    if (v < 0 || v >= nvars()) throw DomainError("diff: variable index out of range");
    if (is_polynomial()) return Scalar(num_.diff(v));
    /* (n/d)' = (n'd - nd')/d^2 */
    return Scalar(num_.diff(v) * den_ - num_ * den_.diff(v), den_ * den_);
}

GaussianRational Scalar::eval(const std::vector<GaussianRational>& point) const {
    GaussianRational d = den_.eval(point);
    if (d.is_zero()) throw EvalPole();
    return num_.eval(point) / d;
}

std::string Scalar::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace drq
