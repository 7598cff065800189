#pragma once

#include <cstdint>

#include "krein/cmatrix.hpp"
#include "krein/metric.hpp"

namespace krein {

// SplitMix64. Fixed update constants (documented in the README) so every
// consumer of a fixture seed reproduces the same draw sequence exactly:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    cx complex_box(double re_lo, double re_hi, double im_lo, double im_hi) {
        const double re = uniform(re_lo, re_hi);
        const double im = uniform(im_lo, im_hi);
        return cx(re, im);
    }

    // Disk samples keep |z| <= rmax, half-plane samples keep Re z in
    // [0.1, 3]; both ranges bound the conditioning of kernel Grams.
    cx in_disk(double rmax = 0.9) {
        while (true) {
            const cx z = complex_box(-rmax, rmax, -rmax, rmax);
            if (std::abs(z) <= rmax) return z;
        }
    }

    cx in_halfplane(double re_lo = 0.1, double re_hi = 3.0, double im_span = 2.0) {
        return complex_box(re_lo, re_hi, -im_span, im_span);
    }

    CMatrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0) {
        CMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = cx(uniform(-scale, scale), uniform(-scale, scale));
        return m;
    }

    CMatrix hermitian(std::size_t n, double scale = 1.0) {
        CMatrix m = matrix(n, n, scale);
        return (m + m.adjoint()) * cx(0.5);
    }

    CMatrix anti_hermitian(std::size_t n, double scale = 1.0) {
        CMatrix m = matrix(n, n, scale);
        return (m - m.adjoint()) * cx(0.5);
    }

    CMatrix vector(std::size_t n, double scale = 1.0) { return matrix(n, 1, scale); }

  private:
    std::uint64_t state_;
};

// Random J-unitary matrix, M J M^H = J: exponential of a J-skew
// generator W J with W anti-Hermitian.
inline CMatrix random_j_unitary(SplitMix64& rng, const Metric& j, double scale = 0.6) {
    CMatrix w = rng.anti_hermitian(j.dim(), scale);
    for (std::size_t i = 0; i < j.dim(); ++i)
        for (std::size_t k = 0; k < j.dim(); ++k) w(i, k) *= double(j.sign(k));
    return expm(w);
}

}  // namespace krein
