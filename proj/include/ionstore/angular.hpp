#pragma once

// Angular-momentum algebra: half-integer quantum numbers, Clebsch-Gordan
// coefficients, Lande factors and dipole transition amplitudes.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ionstore {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact half-integer, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

    /// Parses "3/2", "-5/2", "+1/2", "2".
    static HalfInt parse(std::string_view text);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const;

private:
    constexpr explicit HalfInt(int twice) : twice_(twice) {}
    int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

/// True when |m| <= j, j >= 0 and j - m is an integer.
constexpr bool is_valid_pair(HalfInt j, HalfInt m) {
    return j.twice() >= 0 && abs(m) <= j && (j.twice() - m.twice()) % 2 == 0;
}

constexpr bool is_triangle(HalfInt a, HalfInt b, HalfInt c) {
    return abs(a - b) <= c && c <= a + b && (a.twice() + b.twice() + c.twice()) % 2 == 0;
}

/// Throws DomainError naming `what` unless (j, m) is a valid pair.
void require_valid_pair(HalfInt j, HalfInt m, std::string_view what);

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention (Racah closed form).
double cgc(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

/// LS-coupling Lande factor. Returns 0 for j = 0.
double lande_g(HalfInt l, HalfInt s, HalfInt j);

/// A fine-structure level with its Zeeman sublevels m = -j..+j.
struct Manifold {
    std::string label;
    HalfInt l;
    HalfInt s;
    HalfInt j;
    double g_lande = 0.0;

    static Manifold make(std::string label, HalfInt l, HalfInt s, HalfInt j);

    int sublevel_count() const { return j.twice() + 1; }
    std::vector<HalfInt> sublevels() const;
    bool contains(HalfInt m) const { return is_valid_pair(j, m); }
    /// Position of m in the ascending sublevel list.
    int index_of(HalfInt m) const;
    HalfInt sublevel_at(int index) const { return HalfInt::from_twice(2 * index - j.twice()); }

    bool operator==(const Manifold& o) const {
        return label == o.label && l == o.l && s == o.s && j == o.j;
    }
};

namespace manifolds {
// 40Ca+ levels involved in the 854 nm absorption / 393 nm herald scheme.
const Manifold& S1_2();
const Manifold& P3_2();
const Manifold& D5_2();
const Manifold& D3_2();
/// Looks up one of the above by label ("S1/2", ...). Throws DomainError.
const Manifold& by_label(std::string_view label);
}  // namespace manifolds

struct BranchingRatio {
    std::string lower;
    double fraction;
    bool upper_bound;  // fraction is only an upper limit
};

/// Decay branching of P3/2 (metadata; not applied to efficiencies).
const std::vector<BranchingRatio>& p32_branching();

/// Electric-dipole selection between two manifolds: |dl| = 1, |dj| <= 1, not 0 -> 0.
bool dipole_coupled(const Manifold& a, const Manifold& b);

/// Amplitude C_{m_lower, q, m_upper} = <j_lower m_lower; 1 q | j_upper m_upper>,
/// q = m_upper - m_lower; zero unless |q| <= 1.
double dipole_amplitude(const Manifold& lower, HalfInt m_lower, const Manifold& upper,
                        HalfInt m_upper);

}  // namespace ionstore
