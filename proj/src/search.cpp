#include "ionstore/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "nelder_mead.hpp"

namespace ionstore {

namespace {

constexpr int kModes = 2;  // HeraldMode::One, HeraldMode::Both
constexpr std::size_t kGridKeep = 4096;

HeraldMode mode_of(int i) { return i == 0 ? HeraldMode::One : HeraldMode::Both; }

struct Point {
    double alpha = 0.0;
    double alpha_prime = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

struct Eval {
    double efficiency = 0.0;
    double residual_max = 0.0;
    double residual_sum = 0.0;
    double relative = 0.0;  // residual / tr(M^dagger M), worst herald
};

Eval evaluate(const StoragePipeline& pipe, HeraldMode mode, const Point& p) {
    const Geometry geom{p.alpha, p.alpha_prime};
    const DetectionBasis det{p.theta, p.phi};
    Eval e;
    const auto add = [&](const PolarizationState& pol) {
        const TransferMatrix m = pipe.transfer(geom, pol);
        const auto [lo, hi] = gram_eigenvalues(m.entries);
        const double gd = (hi - lo) / std::sqrt(2.0);
        e.efficiency += 0.5 * (lo + hi) / kMaxSuccessProbability;
        e.residual_max = std::max(e.residual_max, gd);
        e.residual_sum += gd;
        const double tr = lo + hi;
        e.relative = std::max(e.relative, tr > 0.0 ? gd / tr : 0.0);
    };
    add(det.primary());
    if (mode == HeraldMode::Both) add(det.secondary());
    return e;
}

struct Candidate {
    int psi = 0;
    int mode = 0;
    Point point;
    Eval eval;
    long index = 0;  // grid order, for deterministic ties
};

long long quantized(double eff) { return std::llround(eff * 1e9); }

// Grid ranking: efficiency (to 1e-9), then small |theta'|, then grid order.
bool grid_before(const Candidate& a, const Candidate& b) {
    const auto qa = quantized(a.eval.efficiency), qb = quantized(b.eval.efficiency);
    if (qa != qb) return qa > qb;
    const double ta = std::abs(a.point.theta), tb = std::abs(b.point.theta);
    if (std::abs(ta - tb) > 1e-12) return ta < tb;
    return a.index < b.index;
}

bool less_infeasible(const Candidate& a, const Candidate& b) {
    if (a.eval.relative != b.eval.relative) return a.eval.relative < b.eval.relative;
    return a.index < b.index;
}

std::vector<double> grid_values(Interval r, double step) {
    std::vector<double> out;
    if (r.degenerate()) return {r.lo};
    const int n = static_cast<int>(std::floor(r.width() / step + 1e-9));
    for (int i = 0; i <= n; ++i) out.push_back(r.lo + i * step);
    if (r.hi - out.back() > 1e-9) out.push_back(r.hi);
    return out;
}

// Wraps the detection angles onto theta' in (-90, 90], phi' in [0, 180).
void canonical_detection(Point& p) {
    double phi = std::fmod(p.phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    double theta = p.theta;
    if (phi >= kPi - 1e-13) {
        phi -= kPi;
        theta = -theta;
    }
    theta = theta - kPi * std::ceil(theta / kPi - 0.5);  // into (-pi/2, pi/2]
    if (theta <= -kPi / 2.0 + 1e-13) theta += kPi;
    if (std::abs(std::sin(theta)) < 1e-12 || std::abs(std::cos(theta)) < 1e-12) phi = 0.0;
    if (std::abs(phi) < 1e-13) phi = 0.0;
    p.theta = theta;
    p.phi = phi;
}

bool within(Interval r, double x) { return x >= r.lo - 1e-12 && x <= r.hi + 1e-12; }

template <class Fn>
void parallel_for(long count, int threads, Fn&& fn) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max(1L, count))));
    if (threads == 1) {
        fn(0L, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long b = t * chunk, e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e, t] { fn(b, e, t); });
    }
    for (auto& th : pool) th.join();
}

class Search {
public:
    Search(const SearchSpace& space, double tol, std::uint64_t seed, const SearchOptions& opt)
        : space_(space), tol_(tol), seed_(seed), opt_(opt), members_(space.psi_d_family.members()) {
        unbounded_ = std::isinf(tol);
        weight_ = unbounded_ ? 0.0 : opt.penalty_weight;
        for (const AtomicState& m : members_) pipes_.emplace_back(m);
        alpha_range_ = space.alpha_range;
        if (space.lock_alpha_equal) {
            alpha_range_.lo = std::max(space.alpha_range.lo, space.alpha_prime_range.lo);
            alpha_range_.hi = std::min(space.alpha_range.hi, space.alpha_prime_range.hi);
            if (alpha_range_.lo > alpha_range_.hi)
                throw DomainError("locked alpha = alpha' but the two ranges do not overlap");
        }
    }

    SearchResult run() {
        std::vector<Candidate> grid = grid_stage();
        std::vector<Candidate> starts = pick_starts(grid);

        SearchResult result;
        result.evaluations = evaluations_;

        std::vector<Refined> refined(starts.size());
        parallel_for(static_cast<long>(starts.size()), opt_.threads, [&](long b, long e, int) {
            for (long i = b; i < e; ++i) refined[i] = refine(starts[i], static_cast<int>(i));
        });

        // Merge traces in start order so the record is independent of threading.
        double best_merit = -std::numeric_limits<double>::infinity();
        int iteration = 0;
        for (const Candidate& s : starts) {
            const double m = merit(s);
            if (m > best_merit) best_merit = m;
        }
        if (!starts.empty()) {
            const auto& s0 = *std::max_element(starts.begin(), starts.end(),
                                               [&](const Candidate& a, const Candidate& b) {
                                                   return merit(a) < merit(b);
                                               });
            result.trace.push_back({0, best_merit, s0.eval.efficiency, s0.eval.residual_max});
        }
        for (const Refined& r : refined) {
            for (const TraceEntry& t : r.history) {
                if (t.merit > best_merit) {
                    best_merit = t.merit;
                    result.trace.push_back({iteration + t.iteration, t.merit, t.efficiency,
                                            t.residual});
                }
            }
            iteration += r.iterations;
            result.evaluations += r.evaluations;
        }
        result.iterations = iteration;

        std::vector<Candidate> finals;
        for (const Refined& r : refined) finals.push_back(finalize(r.best));

        const Candidate* chosen = nullptr;
        for (const Candidate& c : finals) {
            if (!feasible(c)) continue;
            if (!chosen || final_before(c, *chosen)) chosen = &c;
        }
        if (!chosen) {
            for (const Candidate& c : finals) {
                if (c.eval.efficiency < opt_.min_efficiency) continue;
                if (!chosen || c.eval.residual_max < chosen->eval.residual_max) chosen = &c;
            }
        }
        if (!chosen && !finals.empty()) chosen = &finals.front();
        if (!chosen) throw DomainError("search space contains no evaluable point");

        result.best = to_scheme(*chosen);
        result.objective = chosen->eval.efficiency;
        result.constraint_residual = chosen->eval.residual_max;
        result.feasible = feasible(*chosen);
        return result;
    }

private:
    struct Refined {
        Candidate best;
        std::vector<TraceEntry> history;
        int iterations = 0;
        long evaluations = 0;
    };

    double merit(const Candidate& c) const { return merit(c.eval); }
    double merit(const Eval& e) const { return e.efficiency - weight_ * e.residual_sum; }

    bool feasible(const Candidate& c) const {
        return c.eval.residual_max <= tol_ && c.eval.efficiency >= opt_.min_efficiency;
    }

    std::vector<double> detection_thetas() const {
        if (!space_.detection_free) return {space_.fixed_detection.theta_prime};
        return grid_values(space_.theta_prime_range, deg_to_rad(opt_.detection_step_deg));
    }
    std::vector<double> detection_phis() const {
        if (!space_.detection_free) return {space_.fixed_detection.phi_prime};
        std::vector<double> out = grid_values(space_.phi_prime_range, deg_to_rad(opt_.detection_step_deg));
        // phi' = pi repeats phi' = 0 with theta' mirrored, which the theta' grid already covers.
        if (out.size() > 1 && space_.phi_prime_range.hi - space_.phi_prime_range.lo >= kPi - 1e-12)
            out.pop_back();
        return out;
    }

    std::vector<Candidate> grid_stage() {
        const double astep = deg_to_rad(opt_.alpha_step_deg);
        const std::vector<double> alphas = grid_values(alpha_range_, astep);
        const std::vector<double> alpha_primes =
            space_.lock_alpha_equal ? std::vector<double>{0.0}
                                    : grid_values(space_.alpha_prime_range, astep);
        const std::vector<double> thetas = detection_thetas();
        const std::vector<double> phis = detection_phis();

        const long na = static_cast<long>(alphas.size()), nap = static_cast<long>(alpha_primes.size());
        const long nt = static_cast<long>(thetas.size()), np = static_cast<long>(phis.size());
        const long total = static_cast<long>(members_.size()) * na * nap * nt * np;
        evaluations_ = total * kModes;

        const int threads = std::max(1, opt_.threads);
        std::vector<std::vector<Candidate>> passing(threads), fallback(threads);

        const double rel_tol = unbounded_ ? std::numeric_limits<double>::infinity()
                                          : opt_.grid_relative_tol;
        parallel_for(total, threads, [&](long b, long e, int t) {
            auto& pass = passing[t];
            auto& fall = fallback[t];
            for (long idx = b; idx < e; ++idx) {
                long r = idx;
                const long ip = r % np; r /= np;
                const long it = r % nt; r /= nt;
                const long iap = r % nap; r /= nap;
                const long ia = r % na; r /= na;
                const int psi = static_cast<int>(r);
                Point p{alphas[ia], space_.lock_alpha_equal ? alphas[ia] : alpha_primes[iap],
                        thetas[it], phis[ip]};
                for (int mode = 0; mode < kModes; ++mode) {
                    Candidate c{psi, mode, p, evaluate(pipes_[psi], mode_of(mode), p),
                                idx * kModes + mode};
                    if (c.eval.efficiency < opt_.min_efficiency) continue;
                    if (c.eval.relative <= rel_tol)
                        keep_best(pass, c, grid_before);
                    else
                        keep_best(fall, c, less_infeasible);
                }
            }
        });

        std::vector<Candidate> merged_pass, merged_fall;
        for (auto& v : passing) merged_pass.insert(merged_pass.end(), v.begin(), v.end());
        for (auto& v : fallback) merged_fall.insert(merged_fall.end(), v.begin(), v.end());
        std::sort(merged_pass.begin(), merged_pass.end(), grid_before);
        std::sort(merged_fall.begin(), merged_fall.end(), less_infeasible);
        merged_pass.insert(merged_pass.end(), merged_fall.begin(), merged_fall.end());

        if (merged_pass.empty()) {
            // Everything vanishes; refine from the first grid point anyway.
            Point p{alphas[0], space_.lock_alpha_equal ? alphas[0] : alpha_primes[0], thetas[0],
                    phis[0]};
            merged_pass.push_back({0, 0, p, evaluate(pipes_[0], HeraldMode::One, p), 0});
        }
        return merged_pass;
    }

    template <class Less>
    static void keep_best(std::vector<Candidate>& v, const Candidate& c, Less less) {
        if (v.size() < 2 * kGridKeep) {
            v.push_back(c);
            return;
        }
        std::nth_element(v.begin(), v.begin() + kGridKeep, v.end(), less);
        v.resize(kGridKeep);
        v.push_back(c);
    }

    // Best K grid points, skipping near-duplicates of already chosen ones.
    std::vector<Candidate> pick_starts(const std::vector<Candidate>& ranked) const {
        const double ra = 2.0 * deg_to_rad(opt_.alpha_step_deg) + 1e-9;
        const double rd = 2.0 * deg_to_rad(opt_.detection_step_deg) + 1e-9;
        const auto angular_gap = [](double a, double b, double period) {
            double d = std::fmod(std::abs(a - b), period);
            return std::min(d, period - d);
        };
        std::vector<Candidate> out;
        for (const Candidate& c : ranked) {
            if (static_cast<int>(out.size()) >= opt_.refine_starts) break;
            const bool near = std::any_of(out.begin(), out.end(), [&](const Candidate& o) {
                return o.psi == c.psi && o.mode == c.mode &&
                       std::abs(o.point.alpha - c.point.alpha) <= ra &&
                       std::abs(o.point.alpha_prime - c.point.alpha_prime) <= ra &&
                       angular_gap(o.point.theta, c.point.theta, kPi) <= rd &&
                       angular_gap(o.point.phi, c.point.phi, kPi) <= rd;
            });
            if (!near) out.push_back(c);
        }
        return out;
    }

    // Free continuous coordinates for the simplex.
    struct Layout {
        bool alpha = false, alpha_prime = false, detection_theta = false, detection_phi = false;
    };

    Layout layout() const {
        Layout l;
        l.alpha = !alpha_range_.degenerate();
        l.alpha_prime = !space_.lock_alpha_equal && !space_.alpha_prime_range.degenerate();
        l.detection_theta = space_.detection_free && !space_.theta_prime_range.degenerate();
        l.detection_phi = space_.detection_free && !space_.phi_prime_range.degenerate();
        return l;
    }

    Point unpack(const Layout& l, const std::vector<double>& x, const Point& base) const {
        Point p = base;
        std::size_t k = 0;
        if (l.alpha) p.alpha = std::clamp(x[k++], alpha_range_.lo, alpha_range_.hi);
        if (l.alpha_prime)
            p.alpha_prime = std::clamp(x[k++], space_.alpha_prime_range.lo, space_.alpha_prime_range.hi);
        if (space_.lock_alpha_equal) p.alpha_prime = p.alpha;
        if (l.detection_theta)
            p.theta = std::clamp(x[k++], space_.theta_prime_range.lo, space_.theta_prime_range.hi);
        if (l.detection_phi)
            p.phi = std::clamp(x[k++], space_.phi_prime_range.lo, space_.phi_prime_range.hi);
        return p;
    }

    Refined refine(const Candidate& start, int start_index) const {
        const Layout l = layout();
        const StoragePipeline& pipe = pipes_[start.psi];
        const HeraldMode mode = mode_of(start.mode);

        std::vector<double> x;
        std::vector<double> steps;
        std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ULL * (start_index + 1)));
        std::uniform_real_distribution<double> jitter(0.5, 1.0);
        const double astep = deg_to_rad(opt_.alpha_step_deg), dstep = deg_to_rad(opt_.detection_step_deg);
        if (l.alpha) { x.push_back(start.point.alpha); steps.push_back(astep * jitter(rng)); }
        if (l.alpha_prime) { x.push_back(start.point.alpha_prime); steps.push_back(astep * jitter(rng)); }
        if (l.detection_theta) { x.push_back(start.point.theta); steps.push_back(dstep * jitter(rng)); }
        if (l.detection_phi) { x.push_back(start.point.phi); steps.push_back(dstep * jitter(rng)); }
        // Keep the initial simplex inside the box.
        std::vector<double> upper;
        if (l.alpha) upper.push_back(alpha_range_.hi);
        if (l.alpha_prime) upper.push_back(space_.alpha_prime_range.hi);
        if (l.detection_theta) upper.push_back(space_.theta_prime_range.hi);
        if (l.detection_phi) upper.push_back(space_.phi_prime_range.hi);
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k] + steps[k] > upper[k]) steps[k] = -steps[k];

        Refined out;
        out.best = start;
        const auto objective = [&](const std::vector<double>& v) {
            return -merit(evaluate(pipe, mode, unpack(l, v, start.point)));
        };

        detail::SimplexOptions so;
        so.max_iterations = opt_.max_iterations;
        double current = -merit(start);
        for (int round = 0; round < 8 && !x.empty(); ++round) {
            const int offset = out.iterations;
            int step = 0;
            const auto record = [&](const std::vector<double>& v, double) {
                const Eval e = evaluate(pipe, mode, unpack(l, v, start.point));
                out.history.push_back({offset + ++step, merit(e), e.efficiency, e.residual_max});
            };
            const detail::SimplexResult sr = detail::nelder_mead(objective, x, steps, so, record);
            out.iterations += sr.iterations;
            out.evaluations += sr.evaluations;
            const bool improved = sr.f < current - 1e-15;
            if (sr.f <= current) {
                x = sr.x;
                current = sr.f;
            }
            if (!improved && round > 0) break;
            for (double& s : steps) s *= 0.1;
        }

        if (!x.empty() && current < -merit(start)) {
            out.best.point = unpack(l, x, start.point);
            out.best.eval = evaluate(pipe, mode, out.best.point);
        }
        return out;
    }

    bool in_box(const Point& p) const {
        if (!within(alpha_range_, p.alpha)) return false;
        if (!space_.lock_alpha_equal && !within(space_.alpha_prime_range, p.alpha_prime)) return false;
        if (!space_.detection_free) return true;
        return within(space_.theta_prime_range, p.theta) && within(space_.phi_prime_range, p.phi);
    }

    Candidate finalize(Candidate c) const {
        const StoragePipeline& pipe = pipes_[c.psi];
        const HeraldMode mode = mode_of(c.mode);
        if (space_.detection_free) {
            Point p = c.point;
            canonical_detection(p);
            if (in_box(p)) c.point = p;
        }
        c.eval = evaluate(pipe, mode, c.point);

        // alpha = alpha' is the preferred geometry; take it whenever nothing is lost.
        if (!space_.lock_alpha_equal && c.point.alpha != c.point.alpha_prime &&
            within(space_.alpha_prime_range, c.point.alpha)) {
            Point q = c.point;
            q.alpha_prime = q.alpha;
            const Eval e = evaluate(pipe, mode, q);
            const bool ok = e.residual_max <= tol_ || e.residual_max <= c.eval.residual_max;
            if (ok && quantized(e.efficiency) >= quantized(c.eval.efficiency)) {
                c.point = q;
                c.eval = e;
            }
        }
        if (c.point.alpha <= kPi / 2.0 + 1e-12) return c;

        // The mirror image is only equivalent for some initial states, so re-check it.
        Point m{kPi - c.point.alpha, kPi - c.point.alpha_prime, -c.point.theta, c.point.phi};
        if (space_.detection_free) {
            canonical_detection(m);
        } else {
            m.theta = c.point.theta;
            m.phi = c.point.phi;
        }
        if (!in_box(m)) return c;
        const Eval e = evaluate(pipe, mode, m);
        const double allowed = c.eval.residual_max <= tol_
                                   ? tol_
                                   : c.eval.residual_max * (1.0 + 1e-6) + 1e-14;
        if (std::abs(e.efficiency - c.eval.efficiency) <= 1e-10 && e.residual_max <= allowed) {
            c.point = m;
            c.eval = e;
        }
        return c;
    }

    // Final ranking: efficiency, then alpha <= 90 deg, small |theta'|, small |alpha - alpha'|,
    // then state order.
    static bool final_before(const Candidate& a, const Candidate& b) {
        const auto qa = quantized(a.eval.efficiency), qb = quantized(b.eval.efficiency);
        if (qa != qb) return qa > qb;
        const bool la = a.point.alpha <= kPi / 2.0 + 1e-12, lb = b.point.alpha <= kPi / 2.0 + 1e-12;
        if (la != lb) return la;
        const double ta = std::abs(a.point.theta), tb = std::abs(b.point.theta);
        if (std::abs(ta - tb) > 1e-9) return ta < tb;
        const double ga = std::abs(a.point.alpha - a.point.alpha_prime);
        const double gb = std::abs(b.point.alpha - b.point.alpha_prime);
        if (std::abs(ga - gb) > 1e-9) return ga < gb;
        if (a.psi != b.psi) return a.psi < b.psi;
        if (std::abs(a.point.alpha - b.point.alpha) > 1e-12) return a.point.alpha < b.point.alpha;
        return a.index < b.index;
    }

    Scheme to_scheme(const Candidate& c) const {
        Scheme s;
        s.name = "optimized";
        s.psi_d = members_[c.psi];
        s.geometry = {c.point.alpha, c.point.alpha_prime};
        s.detection = {c.point.theta, c.point.phi};
        s.heralds = mode_of(c.mode);
        return s;
    }

    const SearchSpace& space_;
    double tol_;
    std::uint64_t seed_;
    SearchOptions opt_;
    std::vector<AtomicState> members_;
    std::vector<StoragePipeline> pipes_;
    Interval alpha_range_;
    bool unbounded_ = false;
    double weight_ = 0.0;
    long evaluations_ = 0;
};

}  // namespace

std::vector<AtomicState> PsiFamily::members() const {
    const Manifold& d = manifolds::D5_2();
    std::vector<AtomicState> out;
    switch (kind) {
        case Kind::Fixed:
            out.push_back(fixed.normalized());
            break;
        case Kind::SingleSublevel:
            for (const HalfInt m : d.sublevels()) out.push_back(AtomicState::basis(d, m));
            break;
        case Kind::BalancedPair: {
            const double r = 1.0 / std::sqrt(2.0);
            for (const HalfInt m : d.sublevels())
                if (m.twice() > 0) out.push_back(AtomicState::superposition(d, {{-m, r}, {m, r}}));
            break;
        }
    }
    return out;
}

void SearchSpace::validate() const {
    const auto check = [](Interval r, const char* what) {
        if (!(r.lo <= r.hi)) throw DomainError(std::string(what) + " range is empty");
        if (r.lo < -1e-12 || r.hi > kPi + 1e-12)
            throw DomainError(std::string(what) + " range must lie within [0, 180] degrees");
    };
    check(alpha_range, "alpha");
    check(alpha_prime_range, "alpha'");
    if (detection_free) {
        for (const Interval r : {theta_prime_range, phi_prime_range})
            if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
                throw DomainError("detection range is empty");
    }
    if (psi_d_family.kind == PsiFamily::Kind::Fixed) {
        if (psi_d_family.fixed.is_zero()) throw DomainError("fixed initial state has zero norm");
        if (!(psi_d_family.fixed.manifold() == manifolds::D5_2()))
            throw DomainError("initial state must live in D5/2");
    }
}

SearchResult optimize(const SearchSpace& space, double feasibility_tol, std::uint64_t seed,
                      const SearchOptions& options) {
    space.validate();
    if (!(feasibility_tol > 0.0)) throw DomainError("feasibility tolerance must be positive");
    if (options.refine_starts < 1 || options.alpha_step_deg <= 0.0 || options.detection_step_deg <= 0.0)
        throw DomainError("invalid search options");
    return Search(space, feasibility_tol, seed, options).run();
}

}  // namespace ionstore
