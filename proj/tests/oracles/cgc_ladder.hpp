#pragma once

// Clebsch-Gordan coefficients by building |J M> explicitly in the product
// basis: the highest-weight vector is fixed by J+|J J> = 0 (phase: positive
// coefficient for m1 = j1), then J- = J1- + J2- lowers it. Independent of any
// closed-form sum; used only to cross-check the library.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <utility>

namespace oracle {

// Everything in units of one half: tj = 2j, tm = 2m.
inline double ladder(int tj, int tm_from, int dir) {
    const double j = 0.5 * tj, m = 0.5 * tm_from;
    const double v = j * (j + 1.0) - m * (m + dir);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

using Vec = std::map<std::pair<int, int>, double>;  // (tm1, tm2) -> amplitude

inline Vec highest_weight(int tj1, int tj2, int tJ) {
    Vec v;
    int lo = std::max(-tj1, tJ - tj2);
    double c = 1.0;
    for (int tm1 = tj1; tm1 >= lo; tm1 -= 2) {
        v[{tm1, tJ - tm1}] = c;
        // |m1, J-m1+1> component of J+|J J>: c(m1-1) a+(j1, m1-1) + c(m1) a+(j2, J-m1) = 0
        const double a1 = ladder(tj1, tm1 - 2, +1);
        const double a2 = ladder(tj2, tJ - tm1, +1);
        if (tm1 - 2 < lo) break;
        c = -c * a2 / a1;
    }
    double n = 0.0;
    for (auto& [k, x] : v) n += x * x;
    n = std::sqrt(n);
    for (auto& [k, x] : v) x /= n;
    return v;
}

inline Vec lower(const Vec& v, int tj1, int tj2) {
    Vec out;
    for (const auto& [k, x] : v) {
        const auto [tm1, tm2] = k;
        if (tm1 > -tj1) out[{tm1 - 2, tm2}] += x * ladder(tj1, tm1, -1);
        if (tm2 > -tj2) out[{tm1, tm2 - 2}] += x * ladder(tj2, tm2, -1);
    }
    return out;
}

/// <j1 m1; j2 m2 | J M>, all arguments doubled.
inline double cgc(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    if (tm1 + tm2 != tM) return 0.0;
    if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
    Vec v = highest_weight(tj1, tj2, tJ);
    for (int tm = tJ; tm > tM; tm -= 2) {
        v = lower(v, tj1, tj2);
        const double a = ladder(tJ, tm, -1);
        for (auto& [k, x] : v) x /= a;
    }
    const auto it = v.find({tm1, tm2});
    return it == v.end() ? 0.0 : it->second;
}

}  // namespace oracle
