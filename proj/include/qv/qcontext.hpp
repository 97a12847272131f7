#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace qv {

using Cx = std::complex<double>;

inline bool is_finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Integer power by repeated squaring.  Used everywhere a power of q is
// needed so that q^{-n} built by a caller matches the value an evaluator
// reconstructs bit for bit.
inline Cx qpow_int(Cx base, long n) {
    if (n < 0) return Cx(1.0, 0.0) / qpow_int(base, -n);
    Cx acc(1.0, 0.0);
    Cx sq = base;
    while (n > 0) {
        if (n & 1) acc *= sq;
        sq *= sq;
        n >>= 1;
    }
    return acc;
}

// Base point of every evaluation: the nome q, its principal square root p,
// and the truncation budget shared by series and infinite products.
struct QContext {
    Cx q;
    Cx p;                // principal sqrt(q)
    double tol_tail;     // relative tail tolerance for truncations
    std::size_t max_terms;

    explicit QContext(Cx q_, double tol_tail_ = 1e-12, std::size_t max_terms_ = 4096)
        : q(q_), p(std::sqrt(q_)), tol_tail(tol_tail_), max_terms(max_terms_) {
        if (!is_finite(q)) throw std::invalid_argument("QContext: q must be finite");
        if (std::abs(q) >= 1.0) throw std::domain_error("QContext: |q| must be < 1");
        if (!(tol_tail > 0.0) || tol_tail > 1e-10)
            throw std::domain_error("QContext: tol_tail must lie in (0, 1e-10]");
        if (max_terms < 64) throw std::domain_error("QContext: max_terms must be >= 64");
    }
};

} // namespace qv
