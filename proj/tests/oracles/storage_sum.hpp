#pragma once

// Direct sum for the stored S1/2 amplitudes: absorb through D5/2 -> P3/2,
// decay P3/2 -> S1/2, project the 393 nm photon on the analyzer. Written out
// term by term from the ladder-oracle coefficients; no library code involved.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "cgc_ladder.hpp"

namespace oracle {

using cd = std::complex<double>;

// (|0>, |x>, |y>) components of the photon after the beam-direction projection.
inline std::array<cd, 3> projected(cd h, cd v, double alpha) {
    return {std::sin(alpha) * h, std::cos(alpha) * h, v};
}

// <q|a> for |+-1> = (|x> +- i|y>)/sqrt(2), |0> = |0>.
inline cd spherical(const std::array<cd, 3>& a, int q) {
    const double r = 1.0 / std::sqrt(2.0);
    const cd i(0.0, 1.0);
    if (q == 0) return a[0];
    return q > 0 ? r * (a[1] - i * a[2]) : r * (a[1] + i * a[2]);
}

/// psi_d indexed by (2 m + 5) / 2, returns {amp(+1/2), amp(-1/2)}.
inline std::array<cd, 2> stored(const std::vector<cd>& psi_d, cd in_h, cd in_v, double alpha,
                                double alpha_prime, cd det_h, cd det_v) {
    const std::array<cd, 3> photon = projected(in_h, in_v, alpha);
    const std::array<cd, 3> analyzer = projected(det_h, det_v, alpha_prime);
    std::array<cd, 2> out{};
    for (int tms : {1, -1}) {
        cd sum = 0.0;
        for (int tmp = -3; tmp <= 3; tmp += 2) {
            const int q2 = (tmp - tms) / 2;
            if (std::abs(q2) > 1) continue;
            cd upper = 0.0;
            for (int tmd = -5; tmd <= 5; tmd += 2) {
                const int q1 = (tmp - tmd) / 2;
                if (std::abs(q1) > 1) continue;
                upper += cgc(5, tmd, 2, 2 * q1, 3, tmp) * psi_d[(tmd + 5) / 2] * spherical(photon, q1);
            }
            // <analyzer| photon emitted in mode |q2>
            sum += std::conj(spherical(analyzer, q2)) * cgc(1, tms, 2, 2 * q2, 3, tmp) * upper;
        }
        out[tms > 0 ? 0 : 1] = sum;
    }
    return out;
}

}  // namespace oracle
