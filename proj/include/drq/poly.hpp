#pragma once

#include <map>
#include <string>
#include <vector>

#include "drq/rational.hpp"

namespace drq {

/* Exponent vector; size equals the ambient variable count. */
using Mono = std::vector<unsigned>;

inline unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

/* Graded lexicographic order; the map's last entry is the leading term. */
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/* Sparse multivariate polynomial over ℚ(i) in variables l1..l_nvars. */
class Poly {
  public:
    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}
    Poly(int nvars, const GaussianRational& c);

    static Poly variable(int nvars, int idx);  // idx is 0-based
    static Poly one(int nvars) { return Poly(nvars, GaussianRational(1)); }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussianRational constant_value() const;  // requires is_constant()
    unsigned total_degree() const;
    int main_var() const;  // highest variable appearing, -1 if constant
    unsigned degree_in(int v) const;

    const std::map<Mono, GaussianRational, GrlexLess>& terms() const { return terms_; }
    void set(const Mono& m, const GaussianRational& c);
    GaussianRational leading_coeff() const;  // grlex leading coefficient

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const GaussianRational& c) const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
        return a.terms_ < b.terms_;
    }

    Poly diff(int v) const;
    GaussianRational eval(const std::vector<GaussianRational>& point) const;

    /* Exact division; throws DomainError unless divisor divides exactly. */
    friend Poly exact_div(const Poly& num, const Poly& den);

    /* Monic (grlex) gcd; gcd(0,0) = 0. */
    friend Poly poly_gcd(const Poly& a, const Poly& b);

    std::string str() const;  // parseable by the expression grammar

  private:
    void cleanup();
    int nvars_;
    std::map<Mono, GaussianRational, GrlexLess> terms_;
};

}  // namespace drq
