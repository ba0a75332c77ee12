#include "ionstore/angular.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace ionstore {

namespace {

constexpr int kLogFactorialTableSize = 256;

const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
    static const auto table = [] {
        std::array<double, kLogFactorialTableSize> t{};
        t[0] = 0.0;
        for (int n = 1; n < kLogFactorialTableSize; ++n) t[n] = t[n - 1] + std::log(double(n));
        return t;
    }();
    return table;
}

double log_factorial(int n) {
    if (n < kLogFactorialTableSize) return log_factorial_table()[n];
    return std::lgamma(double(n) + 1.0);
}

int parse_int(std::string_view text, std::string_view whole) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw DomainError("invalid half-integer '" + std::string(whole) + "'");
    return value;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_int(parse_int(text, text));
    const int num = parse_int(text.substr(0, slash), text);
    const int den = parse_int(text.substr(slash + 1), text);
    if (den != 2) throw DomainError("invalid half-integer '" + std::string(text) + "'");
    return from_twice(num);
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

void require_valid_pair(HalfInt j, HalfInt m, std::string_view what) {
    if (!is_valid_pair(j, m))
        throw DomainError("invalid angular momentum pair for " + std::string(what) + ": (j=" +
                          j.str() + ", m=" + m.str() + ")");
}

double cgc(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    require_valid_pair(j1, m1, "(j1, m1)");
    require_valid_pair(j2, m2, "(j2, m2)");
    require_valid_pair(J, M, "(J, M)");
    if (M != m1 + m2 || !is_triangle(j1, j2, J)) return 0.0;

    // All combinations below are integers; work in doubled units and halve.
    const int a = (j1.twice() + j2.twice() - J.twice()) / 2;  // j1+j2-J
    const int b = (j1.twice() - m1.twice()) / 2;              // j1-m1
    const int c = (j2.twice() + m2.twice()) / 2;              // j2+m2
    const int d = (J.twice() - j2.twice() + m1.twice()) / 2;  // J-j2+m1
    const int e = (J.twice() - j1.twice() - m2.twice()) / 2;  // J-j1-m2

    const double log_prefactor =
        0.5 * (std::log(double(J.twice() + 1)) +
               log_factorial((J.twice() + j1.twice() - j2.twice()) / 2) +
               log_factorial((J.twice() - j1.twice() + j2.twice()) / 2) + log_factorial(a) -
               log_factorial((j1.twice() + j2.twice() + J.twice()) / 2 + 1) +
               log_factorial((J.twice() + M.twice()) / 2) +
               log_factorial((J.twice() - M.twice()) / 2) + log_factorial(b) +
               log_factorial((j1.twice() + m1.twice()) / 2) +
               log_factorial((j2.twice() - m2.twice()) / 2) + log_factorial(c));

    const int k_min = std::max({0, -d, -e});
    const int k_max = std::min({a, b, c});
    double sum = 0.0;
    for (int k = k_min; k <= k_max; ++k) {
        const double log_den = log_factorial(k) + log_factorial(a - k) + log_factorial(b - k) +
                               log_factorial(c - k) + log_factorial(d + k) +
                               log_factorial(e + k);
        const double term = std::exp(log_prefactor - log_den);
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

double lande_g(HalfInt l, HalfInt s, HalfInt j) {
    if (l.twice() < 0 || s.twice() < 0 || !is_triangle(l, s, j))
        throw DomainError("Lande factor: (l=" + l.str() + ", s=" + s.str() + ", j=" + j.str() +
                          ") violates the triangle rule");
    if (j.twice() == 0) return 0.0;
    const double jj = j.value() * (j.value() + 1.0);
    const double ss = s.value() * (s.value() + 1.0);
    const double ll = l.value() * (l.value() + 1.0);
    return 1.0 + (jj + ss - ll) / (2.0 * jj);
}

Manifold Manifold::make(std::string label, HalfInt l, HalfInt s, HalfInt j) {
    if (!l.is_integer()) throw DomainError("manifold " + label + ": l must be an integer");
    return Manifold{std::move(label), l, s, j, lande_g(l, s, j)};
}

std::vector<HalfInt> Manifold::sublevels() const {
    std::vector<HalfInt> out;
    out.reserve(sublevel_count());
    for (int i = 0; i < sublevel_count(); ++i) out.push_back(sublevel_at(i));
    return out;
}

int Manifold::index_of(HalfInt m) const {
    if (!contains(m)) throw DomainError("sublevel m=" + m.str() + " not in manifold " + label);
    return (m.twice() + j.twice()) / 2;
}

namespace manifolds {

namespace {
const HalfInt kHalf = HalfInt::from_twice(1);
}

const Manifold& S1_2() {
    static const Manifold m = Manifold::make("S1/2", HalfInt::from_int(0), kHalf, kHalf);
    return m;
}
const Manifold& P3_2() {
    static const Manifold m =
        Manifold::make("P3/2", HalfInt::from_int(1), kHalf, HalfInt::from_twice(3));
    return m;
}
const Manifold& D5_2() {
    static const Manifold m =
        Manifold::make("D5/2", HalfInt::from_int(2), kHalf, HalfInt::from_twice(5));
    return m;
}
const Manifold& D3_2() {
    static const Manifold m =
        Manifold::make("D3/2", HalfInt::from_int(2), kHalf, HalfInt::from_twice(3));
    return m;
}

const Manifold& by_label(std::string_view label) {
    for (const Manifold* m : {&S1_2(), &P3_2(), &D5_2(), &D3_2()})
        if (m->label == label) return *m;
    throw DomainError("unknown manifold '" + std::string(label) + "'");
}

}  // namespace manifolds

const std::vector<BranchingRatio>& p32_branching() {
    static const std::vector<BranchingRatio> ratios = {
        {"S1/2", 0.94, false},
        {"D5/2", 0.06, false},
        {"D3/2", 0.01, true},
    };
    return ratios;
}

bool dipole_coupled(const Manifold& a, const Manifold& b) {
    const int dl = std::abs(a.l.twice() - b.l.twice());
    const int dj = std::abs(a.j.twice() - b.j.twice());
    return dl == 2 && dj <= 2 && !(a.j.twice() == 0 && b.j.twice() == 0);
}

double dipole_amplitude(const Manifold& lower, HalfInt m_lower, const Manifold& upper,
                        HalfInt m_upper) {
    if (std::abs(upper.j.twice() - lower.j.twice()) > 2)
        throw DomainError("dipole amplitude: " + lower.label + " and " + upper.label +
                          " differ by more than one unit of j");
    require_valid_pair(lower.j, m_lower, lower.label);
    require_valid_pair(upper.j, m_upper, upper.label);
    const HalfInt q = m_upper - m_lower;
    if (abs(q).twice() > 2) return 0.0;
    return cgc(lower.j, m_lower, HalfInt::from_int(1), q, upper.j, m_upper);
}

}  // namespace ionstore
