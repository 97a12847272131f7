#pragma once

// Laurent polynomial in e^{i theta} whose coefficients are PSeries in
// p = q^{1/2}.  Degrees are clamped to |d| <= degree_bound.  For the factor
// expansions used here a degree-d coefficient always carries p-grade at
// least |d| - 2 (the two unit weight factors contribute one free degree
// each; every other factor pays at least one grade per degree), so a bound
// of order + 2 is lossless, including for partial products.

#include <cstddef>
#include <vector>

#include "qv/formal/pseries.hpp"

namespace qv::formal {

class LaurentPSeries {
public:
    LaurentPSeries(long degree_bound, std::size_t order); // zero
    static LaurentPSeries unit(long degree_bound, std::size_t order);

    long degree_bound() const { return bound_; }
    std::size_t order() const { return order_; }
    const PSeries& term(long d) const;
    PSeries& term(long d);

    // e^{i theta} -> e^{-i theta}; valid as complex conjugation because all
    // coefficients are real rationals.
    LaurentPSeries conjugated() const;

    LaurentPSeries operator*(const LaurentPSeries& o) const;
    LaurentPSeries& operator*=(const LaurentPSeries& o);
    bool operator==(const LaurentPSeries& o) const;

private:
    long bound_;
    std::size_t order_;
    std::vector<PSeries> terms_; // index d + bound_
};

} // namespace qv::formal
