#pragma once

// Truncated formal power series in p over exact rationals.  A PSeries of
// order K tracks the coefficients of p^0 .. p^{K-1}; every operation
// truncates, none ever claims a coefficient at or beyond the order.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace qv::formal {

using Rat = mpq_class;

// mpq_class arithmetic canonicalizes its results, but construction from a
// numerator/denominator pair (or from a string) does not.  Every fraction
// literal must come through these two.
Rat rat(long num, long den = 1);
Rat rat_from_string(const std::string& s); // "3", "-3/7"

class PSeries {
public:
    explicit PSeries(std::size_t order);
    static PSeries one(std::size_t order);
    static PSeries constant(const Rat& c, std::size_t order);
    static PSeries monomial(const Rat& c, std::size_t exponent, std::size_t order);
    // 1/(1 - r p^step) = sum_j r^j p^{j step};  step >= 1
    static PSeries geometric(const Rat& r, std::size_t step, std::size_t order);

    std::size_t order() const { return coeffs_.size(); }
    const Rat& coeff(std::size_t e) const;
    void set_coeff(std::size_t e, const Rat& v);
    bool is_zero() const;
    std::size_t first_nonzero() const; // == order() for the zero series

    PSeries& operator+=(const PSeries& o);
    PSeries& operator-=(const PSeries& o);
    PSeries operator+(const PSeries& o) const;
    PSeries operator-(const PSeries& o) const;
    PSeries operator*(const PSeries& o) const;
    PSeries& operator*=(const PSeries& o);
    void add_mul(const PSeries& a, const PSeries& b); // += a*b without temporaries
    PSeries& scale(const Rat& c);
    PSeries shifted(std::size_t s) const; // * p^s
    void mul_one_minus(const Rat& r, std::size_t e); // *= (1 - r p^e)
    PSeries reciprocal() const; // requires a nonzero constant term

    bool operator==(const PSeries& o) const;
    bool operator!=(const PSeries& o) const { return !(*this == o); }

    double eval(double p) const; // Horner; for float cross-validation only
    std::string coeff_string(std::size_t e) const;

private:
    std::vector<Rat> coeffs_;
    void require_same_order(const PSeries& o) const;
};

} // namespace qv::formal
