#pragma once

#include <cstdint>
#include <random>

#include "qv/qcontext.hpp"

namespace qv::harness {

// Seeded parameter source.  All uniforms are built from the raw 64-bit
// stream with an explicit 53-bit mantissa, so the draw sequence is
// bit-identical on every platform for a given seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double unit();                         // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    double sign();                         // +1.0 or -1.0

    // Modulus uniform in [min_mod, max_mod); uniform phase when
    // complex_phase, otherwise a random sign on the real axis.
    Cx draw(double min_mod, double max_mod, bool complex_phase);

    // Base uniform in [0.1, 0.8); real axis by default, uniform phase
    // when complex_q.
    Cx draw_q(bool complex_q);

private:
    std::mt19937_64 rng_;
};

// True when x stays clear of the lattice {q^-m : m >= 0}: every forward
// q-shift of x with modulus >= 1 - delta must keep |1 - x q^m| > delta.
bool pole_clear(Cx x, Cx q, double delta = 0.05);

} // namespace qv::harness
