#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <sstream>
#include <string>

#include "pfk/errors.hpp"

namespace pfk {

// Default comparison tolerance. The CLI overrides it from PFK_EPS.
inline double& default_eps() {
    static double eps = 1e-9;
    return eps;
}

// A complex scalar that stays a Gaussian rational (exact re/im in Q) as long
// as every value feeding it is rational; irrational constants (sqrt(5),
// 2^{1/4}, ...) demote it to a complex double. A double approximation is kept
// alongside the exact value so magnitude tests never re-convert.
class Scalar {
public:
    Scalar() : exact_(true), re_(0), im_(0), z_(0.0, 0.0) {}
    Scalar(int n) : Scalar(static_cast<long>(n)) {}
    Scalar(long n) : exact_(true), re_(n), im_(0), z_(static_cast<double>(n), 0.0) {}
    explicit Scalar(const mpq_class& re, const mpq_class& im = mpq_class(0))
        : exact_(true), re_(re), im_(im), z_(re.get_d(), im.get_d()) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar from_double(double re, double im = 0.0) {
        Scalar s;
        s.exact_ = false;
        s.z_ = {re, im};
        return s;
    }
    static Scalar from_complex(std::complex<double> z) { return from_double(z.real(), z.imag()); }
    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    bool exact() const { return exact_; }
    std::complex<double> approx() const { return z_; }
    double abs() const { return std::abs(z_); }

    const mpq_class& re() const { require_exact(); return re_; }
    const mpq_class& im() const { require_exact(); return im_; }
    bool is_real_rational() const { return exact_ && im_ == 0; }
    mpq_class rational() const {
        if (!is_real_rational()) throw NotRational("scalar is not an exact real rational");
        return re_;
    }

    bool is_exact_zero() const { return exact_ && re_ == 0 && im_ == 0; }
    bool is_exact_one() const { return exact_ && re_ == 1 && im_ == 0; }

    Scalar operator-() const {
        if (exact_) return Scalar(-re_, -im_);
        return from_complex(-z_);
    }
    Scalar conj() const {
        if (exact_) return Scalar(re_, -im_);
        return from_complex(std::conj(z_));
    }

    Scalar& operator+=(const Scalar& o) {
        if (exact_ && o.exact_) {
            re_ += o.re_;
            im_ += o.im_;
            resync();
        } else {
            demote();
            z_ += o.z_;
        }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += (-o); }
    Scalar& operator*=(const Scalar& o) {
        if (exact_ && o.exact_) {
            mpq_class r = re_ * o.re_ - im_ * o.im_;
            mpq_class i = re_ * o.im_ + im_ * o.re_;
            re_ = r;
            im_ = i;
            resync();
        } else {
            demote();
            z_ *= o.z_;
        }
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (exact_ && o.exact_) {
            mpq_class d = o.re_ * o.re_ + o.im_ * o.im_;
            if (d == 0) throw Error("division by exact zero scalar");
            mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
            mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
            re_ = r;
            im_ = i;
            resync();
        } else {
            demote();
            z_ /= o.z_;
        }
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool exact_eq(const Scalar& o) const {
        return exact_ && o.exact_ && re_ == o.re_ && im_ == o.im_;
    }

    std::string str() const {
        std::ostringstream os;
        if (exact_) {
            if (im_ == 0) {
                os << re_;
            } else if (re_ == 0) {
                os << fmt_imag(im_);
            } else {
                os << re_;
                if (im_ > 0) os << "+";
                os << fmt_imag(im_);
            }
        } else {
            os.precision(17);
            os << z_.real();
            if (z_.imag() != 0.0) {
                if (z_.imag() > 0) os << "+";
                os << z_.imag() << "*i";
            }
        }
        return os.str();
    }

private:
    static std::string fmt_imag(const mpq_class& q) {
        std::ostringstream os;
        if (q == 1) {
            os << "i";
        } else if (q == -1) {
            os << "-i";
        } else {
            os << q << "*i";
        }
        return os.str();
    }
    void require_exact() const {
        if (!exact_) throw NotRational("scalar has been demoted to floating point");
    }
    void resync() { z_ = {re_.get_d(), im_.get_d()}; }
    void demote() {
        if (exact_) {
            exact_ = false;
            re_ = 0;
            im_ = 0;
        }
    }

    bool exact_;
    mpq_class re_, im_;
    std::complex<double> z_;
};

// Tolerance rule used everywhere: |a-b| <= eps * max(1, |a|, |b|).
inline bool approx_equal(const Scalar& a, const Scalar& b, double eps = default_eps()) {
    if (a.exact() && b.exact()) {
        if (a.exact_eq(b)) return true;
    }
    double scale = std::max({1.0, a.abs(), b.abs()});
    return std::abs(a.approx() - b.approx()) <= eps * scale;
}

inline bool is_zero(const Scalar& a, double eps = default_eps()) {
    if (a.exact()) return a.is_exact_zero();
    return a.abs() <= eps;
}

// Post-arithmetic pruning: exact values are pruned only when exactly zero,
// floats when below tolerance.
inline bool prune_to_zero(const Scalar& a, double eps = default_eps()) {
    return is_zero(a, eps);
}

}  // namespace pfk
