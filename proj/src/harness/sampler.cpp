#include "qv/harness/sampler.hpp"

#include <cmath>

namespace qv::harness {

double Sampler::unit() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double Sampler::uniform(double lo, double hi) {
    return lo + (hi - lo) * unit();
}

double Sampler::sign() {
    return (rng_() & 1u) ? -1.0 : 1.0;
}

Cx Sampler::draw(double min_mod, double max_mod, bool complex_phase) {
    double r = uniform(min_mod, max_mod);
    if (!complex_phase) return Cx(r * sign(), 0.0);
    double phi = uniform(0.0, 2.0 * 3.14159265358979323846);
    return Cx(r * std::cos(phi), r * std::sin(phi));
}

Cx Sampler::draw_q(bool complex_q) {
    double r = uniform(0.1, 0.8);
    if (!complex_q) return Cx(r, 0.0);
    double phi = uniform(0.0, 2.0 * 3.14159265358979323846);
    return Cx(r * std::cos(phi), r * std::sin(phi));
}

bool pole_clear(Cx x, Cx q, double delta) {
    if (std::abs(q) >= 1.0) return false;
    Cx xm = x;
    int guard = 0;
    while (std::abs(xm) >= 1.0 - delta) {
        if (std::abs(Cx(1.0, 0.0) - xm) <= delta) return false;
        xm *= q;
        if (++guard > 4096) return false;
    }
    return true;
}

} // namespace qv::harness
