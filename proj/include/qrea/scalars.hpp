#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qrea {

using FloatC = std::complex<double>;

// Exact a + b i with a, b rational.
struct Gaussian {
    mpq_class re;
    mpq_class im;

    Gaussian() : re(0), im(0) {}
    Gaussian(long v) : re(v), im(0) {}
    Gaussian(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    Gaussian conj() const { return Gaussian(re, -im); }
    FloatC to_complex() const { return {re.get_d(), im.get_d()}; }

    Gaussian operator-() const { return Gaussian(-re, -im); }
    Gaussian& operator+=(const Gaussian& o);
    Gaussian& operator-=(const Gaussian& o);
    Gaussian& operator*=(const Gaussian& o);
    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    Gaussian inverse() const;
    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re == b.re && a.im == b.im;
    }

    // "a/b" or "a/b+c/d*i"
    std::string str() const;
    static Gaussian parse(std::string_view text);
};

// Laurent polynomial in q with Gaussian-rational coefficients.
// Terms are kept sorted by exponent with no zero coefficients.
class ExactQ {
public:
    using Term = std::pair<std::int64_t, Gaussian>;

    ExactQ() = default;
    ExactQ(long v);
    ExactQ(const Gaussian& c);

    static ExactQ monomial(const Gaussian& c, std::int64_t e);
    static ExactQ qpow(std::int64_t e) { return monomial(Gaussian(1), e); }
    static ExactQ imag_unit() { return ExactQ(Gaussian(0, 1)); }
    // (-q)^e
    static ExactQ neg_qpow(std::int64_t e);
    // q^{-1} - q
    static ExactQ hecke_gap();

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    std::int64_t min_exponent() const;
    std::int64_t max_exponent() const;
    Gaussian coefficient(std::int64_t e) const;

    ExactQ operator-() const;
    ExactQ& operator+=(const ExactQ& o);
    ExactQ& operator-=(const ExactQ& o);
    ExactQ& operator*=(const ExactQ& o);
    friend ExactQ operator+(ExactQ a, const ExactQ& b) { return a += b; }
    friend ExactQ operator-(ExactQ a, const ExactQ& b) { return a -= b; }
    friend ExactQ operator*(const ExactQ& a, const ExactQ& b);
    friend bool operator==(const ExactQ& a, const ExactQ& b);
    friend bool operator!=(const ExactQ& a, const ExactQ& b) { return !(a == b); }

    ExactQ star() const;
    // Inverse of a monomial; throws std::domain_error otherwise.
    ExactQ monomial_inverse() const;

    // Throws std::domain_error unless 0 < q0 < 1.
    FloatC eval(double q0) const;

    std::string str() const;
    static ExactQ parse(std::string_view text);
    std::size_t hash() const;

private:
    void add_scaled(const ExactQ& o, int sign);
    std::vector<Term> terms_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
void check_q0(double q0);

}  // namespace qrea
