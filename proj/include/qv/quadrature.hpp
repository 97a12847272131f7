#pragma once

// Periodic trapezoid rule on [0, pi] for even, 2*pi-periodic integrands.
// For analytic integrands the error decays geometrically in the node count,
// so the panel count doubles from 32 until two consecutive doublings agree
// to the requested tolerance.

#include <cstddef>
#include <functional>

#include "qv/errors.hpp"
#include "qv/qcontext.hpp"

namespace qv {

struct IntegralValue {
    Cx value;
    double err_estimate; // last successive difference
    std::size_t nodes_used; // final panel count, 32 * 2^k
};

class quadrature_no_convergence : public no_convergence {
public:
    quadrature_no_convergence(const std::string& what, IntegralValue best_)
        : no_convergence(what), best(best_) {}
    IntegralValue best;
};

// f must be safe to invoke concurrently and free of side effects.
IntegralValue integrate_even_periodic(const std::function<Cx(double)>& f,
                                      double tol, std::size_t max_nodes);

} // namespace qv
