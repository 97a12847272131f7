#include "qv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qv {

IntegralValue integrate_even_periodic(const std::function<Cx(double)>& f,
                                      double tol, std::size_t max_nodes) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_even_periodic: tol must be > 0");
    constexpr std::size_t base = 32;
    const double pi = std::numbers::pi;

    std::size_t n = base;
    double h = pi / static_cast<double>(n);
    Cx sum = 0.5 * (f(0.0) + f(pi));
    for (std::size_t j = 1; j < n; ++j) sum += f(static_cast<double>(j) * h);
    Cx value = sum * h;

    double err = std::abs(value); // no estimate yet
    int agreements = 0;
    while (n < max_nodes) {
        // refine: new nodes are the odd multiples of the halved step
        n *= 2;
        h = pi / static_cast<double>(n);
        Cx odd(0.0, 0.0);
        for (std::size_t j = 1; j < n; j += 2) odd += f(static_cast<double>(j) * h);
        const Cx refined = 0.5 * value + odd * h;
        err = std::abs(refined - value);
        value = refined;
        if (err < tol * std::max(1.0, std::abs(value))) {
            if (++agreements >= 2) return {value, err, n};
        } else {
            agreements = 0;
        }
    }
    throw quadrature_no_convergence("integrate_even_periodic: max_nodes exceeded",
                                    {value, err, n});
}

} // namespace qv
