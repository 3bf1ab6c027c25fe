#pragma once

#include <gmpxx.h>

#include <string>

#include "drq/error.hpp"

namespace drq {

/* Element of ℚ(i): re + im·i with exact rational parts. */
struct GaussianRational {
    mpq_class re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(mpq_class r) : re(std::move(r)), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

    GaussianRational inv() const {
        mpq_class n = re * re + im * im;
        if (n == 0) throw DivisionByZero();
        return {re / n, -im / n};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inv();
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /* Total order used only for canonical map keys / printing. */
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::string str() const;
};

/* Parseable text form: "3", "-3/2", "i", "2*i", "(1+2*i)" style pieces are
 * assembled by the polynomial printer; here we emit the bare a+b*i body. */
inline std::string GaussianRational::str() const {
    auto q = [](const mpq_class& v) { return v.get_str(); };
    if (im == 0) return q(re);
    std::string imag = (im == 1) ? "i" : (im == -1) ? "-i" : q(im) + "*i";
    if (re == 0) return imag;
    if (imag[0] == '-') return q(re) + imag;
    return q(re) + "+" + imag;
}

}  // namespace drq
