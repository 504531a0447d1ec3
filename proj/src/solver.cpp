#include "pizza/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <thread>

namespace pizza {

int worker_count(int requested) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    int n = requested > 0 ? requested : std::max(1, hw);
    if (const char* env = std::getenv("PIZZA_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, n);
}

std::vector<double> project_to_sphere(const std::vector<double>& v, double radius) {
    double s = 0;
    for (double x : v) s += std::fabs(x);
    std::vector<double> out(v.size(), 0.0);
    if (s == 0) {
        out.at(0) = radius;
        return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * (radius / s);
    return out;
}

double float_residual(const CompiledInstance& ci, const SpherePointT<double>& p) {
    auto f = bu_eval(ci, p);
    double r = 0;
    for (std::size_t i = 0; i < f.size(); ++i) r = std::max(r, std::fabs(2 * f[i] - ci.totals[i].to_double()));
    return r;
}

std::vector<Q> oracle_gaps(const PizzaInstance& inst, const FeasibleSolution& sol) {
    std::vector<Q> gaps;
    for (auto& [a, b] : region_mass_oracle(inst, sol)) gaps.push_back(abs(a - b));
    return gaps;
}

namespace {

Q exact_residual(const CompiledInstance& ci, const SpherePoint& p) {
    auto f = side_a_mass(ci, sphere_to_solution(p));
    Q r = 0;
    for (std::size_t i = 0; i < f.size(); ++i) r = max(r, abs(Q(2) * f[i] - ci.totals[i]));
    return r;
}

// Snap every coordinate but one; the remaining one absorbs the difference to the radius.
bool snap(const SpherePointT<double>& p, long den, SpherePoint& out) {
    const std::size_t D = p.coords.size();
    const std::size_t r_idx = static_cast<std::size_t>(horizontal_cuts(p.turns));
    std::size_t absorb = r_idx;
    if (std::fabs(p.coords[r_idx]) < 1e-6) {
        absorb = 0;
        for (std::size_t j = 1; j < D; ++j)
            if (std::fabs(p.coords[j]) > std::fabs(p.coords[absorb])) absorb = j;
    }
    out.turns = p.turns;
    out.coords.assign(D, Q(0));
    Q used = 0;
    for (std::size_t j = 0; j < D; ++j) {
        if (j == absorb) continue;
        out.coords[j] = rationalize(p.coords[j], den);
        used += abs(out.coords[j]);
    }
    Q rest = Q(p.turns + 1) - used;
    if (rest.sign() < 0) return false;
    out.coords[absorb] = p.coords[absorb] < 0 ? -rest : rest;
    return true;
}

struct Candidate {
    SpherePointT<double> p;
    double fres = std::numeric_limits<double>::infinity();
    long evals = 0;
};

class LocalSearch {
public:
    LocalSearch(const CompiledInstance& ci, int k, const SolverConfig& cfg)
        : ci_(ci), k_(k), D_(sphere_dimension(k)), radius_(k + 1), cfg_(cfg) {
        for (const auto& t : ci.totals) totals_.push_back(t.to_double());
    }

    Candidate run(std::uint64_t seed_index) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg_.rng_seed), static_cast<std::uint32_t>(cfg_.rng_seed >> 32),
                          static_cast<std::uint32_t>(seed_index)};
        std::mt19937_64 gen(seq);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> q(D_);
        for (auto& x : q) x = u(gen);
        q = canonical(project_to_sphere(q, radius_));

        evals_ = 0;
        const double tol = std::min(1e-12, cfg_.epsilon * 1e-3);
        std::vector<double> F = descend(q, tol);
        // Basin hopping: perturb the best point found so far and descend again.
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double scales[] = {0.5, 0.15, 0.04};
        for (int hop = 0; hop < cfg_.hops && inf_norm(F) > tol; ++hop) {
            auto qn = q;
            const double sigma = scales[hop % 3] * radius_;
            for (auto& x : qn) x += sigma * gauss(gen);
            qn = canonical(project_to_sphere(qn, radius_));
            auto Fn = descend(qn, tol);
            if (inf_norm(Fn) < inf_norm(F)) {
                q = qn;
                F = Fn;
            }
        }
        Candidate c;
        c.p = SpherePointT<double>{q, k_};
        c.fres = inf_norm(F);
        c.evals = evals_;
        return c;
    }

private:
    // Same decoded slices and cuts, with saturated cuts clamped to 1 and the surplus of the slice
    // coordinates moved into the top-slice coordinate, so that no coordinate sits on a flat plateau.
    std::vector<double> canonical(std::vector<double> q) const {
        const int s = horizontal_cuts(k_);
        double top_sign = q[s] > 0 ? 1.0 : (q[s] < 0 ? -1.0 : 0.0);
        if (top_sign == 0) {
            top_sign = 1.0;
            for (double v : q)
                if (v != 0) {
                    top_sign = v > 0 ? 1.0 : -1.0;
                    break;
                }
        }
        double used = 0;
        for (int i = 0; i < s; ++i) {
            double mag = std::min(std::fabs(q[i]), std::max(0.0, 1.0 - used));
            used += mag;
            q[i] = q[i] < 0 ? -mag : mag;
        }
        double rest = radius_ - used;
        for (int i = s + 1; i < D_; ++i) {
            q[i] = std::clamp(q[i], -1.0, 1.0);
            rest -= std::fabs(q[i]);
        }
        q[s] = top_sign * std::max(rest, 0.0);
        return q;
    }

    std::vector<double> descend(std::vector<double>& q, double tol) {
        std::vector<double> F = eval(q);
        double step = 0.25;
        double best = inf_norm(F);
        int stale = 0;
        for (int outer = 0; outer < cfg_.max_iters && inf_norm(F) > tol; ++outer) {
            bool moved = levenberg_marquardt(q, F, tol);
            if (inf_norm(F) <= tol) break;
            if (coordinate_sweep(q, F, step)) moved = true;
            else step *= 0.5;
            if (!moved && step < 1e-15) break;
            if (inf_norm(F) < 0.5 * best) {
                best = inf_norm(F);
                stale = 0;
            } else if (++stale >= 12) {
                break;
            }
        }
        return F;
    }

    std::vector<double> eval(const std::vector<double>& q) {
        ++evals_;
        SpherePointT<double> p{project_to_sphere(q, radius_), k_};
        auto f = bu_eval(ci_, p);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 2 * f[i] - totals_[i];
        return f;
    }
    static double inf_norm(const std::vector<double>& v) {
        double r = 0;
        for (double x : v) r = std::max(r, std::fabs(x));
        return r;
    }
    static double sq_norm(const std::vector<double>& v) {
        double r = 0;
        for (double x : v) r += x * x;
        return r;
    }

    bool levenberg_marquardt(std::vector<double>& q, std::vector<double>& F, double tol) {
        const int n = static_cast<int>(F.size());
        double lambda = 1e-3;
        bool moved = false;
        for (int it = 0; it < 40 && inf_norm(F) > tol; ++it) {
            Eigen::MatrixXd J(n, D_);
            for (int j = 0; j < D_; ++j) {
                double h = 1e-7 * std::max(1.0, std::fabs(q[j]));
                auto qp = q, qm = q;
                qp[j] += h;
                qm[j] -= h;
                auto Fp = eval(qp), Fm = eval(qm);
                for (int i = 0; i < n; ++i) J(i, j) = (Fp[i] - Fm[i]) / (2 * h);
            }
            Eigen::VectorXd r(n);
            for (int i = 0; i < n; ++i) r(i) = F[i];
            Eigen::MatrixXd JtJ = J.transpose() * J;
            Eigen::VectorXd g = J.transpose() * r;
            bool accepted = false;
            while (lambda < 1e12) {
                Eigen::MatrixXd A = JtJ;
                for (int j = 0; j < D_; ++j) A(j, j) += lambda * (1.0 + JtJ(j, j));
                Eigen::VectorXd delta = A.ldlt().solve(-g);
                auto qn = q;
                for (int j = 0; j < D_; ++j) qn[j] += delta(j);
                qn = canonical(project_to_sphere(qn, radius_));
                auto Fn = eval(qn);
                if (sq_norm(Fn) < sq_norm(F)) {
                    q = qn;
                    F = Fn;
                    lambda = std::max(lambda / 4, 1e-12);
                    accepted = moved = true;
                    break;
                }
                lambda *= 8;
            }
            if (!accepted) break;
        }
        return moved;
    }

    bool coordinate_sweep(std::vector<double>& q, std::vector<double>& F, double step) {
        bool improved = false;
        for (int j = 0; j < D_; ++j) {
            for (double dir : {+1.0, -1.0}) {
                auto qn = q;
                qn[j] += dir * step * radius_;
                qn = canonical(project_to_sphere(qn, radius_));
                auto Fn = eval(qn);
                if (inf_norm(Fn) < inf_norm(F)) {
                    q = qn;
                    F = Fn;
                    improved = true;
                    break;
                }
            }
        }
        return improved;
    }

    const CompiledInstance& ci_;
    int k_, D_;
    double radius_;
    const SolverConfig& cfg_;
    std::vector<double> totals_;
    long evals_ = 0;
};

int resolve_turns(const CompiledInstance& ci, const SolverConfig& cfg) {
    int k = cfg.turns < 0 ? static_cast<int>(ci.colors()) - 1 : cfg.turns;
    return std::max(k, 0);
}

void finish(const CompiledInstance& ci, const SolverConfig& cfg, int k, SolveReport& rep) {
    rep.solution = sphere_to_solution(rep.point);
    rep.path = solution_to_path(rep.solution);
    rep.per_color_gap = oracle_gaps(ci.source, rep.solution);
    rep.residual = 0;
    for (const auto& g : rep.per_color_gap) rep.residual = max(rep.residual, g);
    rep.verified_exact = rep.residual <= Q::from_double(cfg.epsilon) && turn_count(rep.path) <= k &&
                         is_y_monotone(rep.path);
}

template <class F>
void parallel_for(int count, int threads, F&& body) {
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) body(i);
    };
    threads = std::min(threads, count);
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

SpherePoint polish(const CompiledInstance& ci, const SpherePointT<double>& p) {
    const double fres = float_residual(ci, p);
    SpherePoint best;
    Q best_res;
    bool have = false;
    for (long den : {16L, 256L, 4096L, 65536L, 1L << 20, 1L << 30}) {
        SpherePoint s;
        if (!snap(p, den, s)) continue;
        Q r = exact_residual(ci, s);
        if (r.to_double() <= fres + 1e-9) return s;
        if (!have || r < best_res) {
            best = s;
            best_res = r;
            have = true;
        }
    }
    if (have) return best;
    // Fall back to the exact binary value of every coordinate, rescaled onto the sphere.
    SpherePoint s;
    s.turns = p.turns;
    Q total = 0;
    for (double x : p.coords) total += abs(Q::from_double(x));
    for (double x : p.coords) s.coords.push_back(Q::from_double(x) * Q(p.turns + 1) / total);
    return s;
}

SolveReport solve(const CompiledInstance& ci, const SolverConfig& cfg) {
    if (cfg.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (cfg.method == SolveMethod::Grid) return solve_grid(ci, cfg);
    auto t0 = std::chrono::steady_clock::now();
    const int k = resolve_turns(ci, cfg);
    const int threads = worker_count(cfg.threads);
    constexpr int kBatch = 8;

    SolveReport best;
    bool have_best = false;
    long evals = 0;
    for (int start = 0; start < cfg.seeds; start += kBatch) {
        const int count = std::min(kBatch, cfg.seeds - start);
        std::vector<SolveReport> reps(count);
        std::vector<long> ev(count, 0);
        parallel_for(count, threads, [&](int i) {
            LocalSearch ls(ci, k, cfg);
            Candidate c = ls.run(static_cast<std::uint64_t>(start + i));
            SolveReport r;
            r.point = polish(ci, c.p);
            r.float_residual = c.fres;
            r.seed_index = start + i;
            finish(ci, cfg, k, r);
            ev[i] = c.evals;
            reps[i] = std::move(r);
        });
        for (int i = 0; i < count; ++i) {
            evals += ev[i];
            const SolveReport& r = reps[i];
            bool better = !have_best || (r.verified_exact && !best.verified_exact) ||
                          (r.verified_exact == best.verified_exact && r.residual < best.residual);
            if (better) {
                best = r;
                have_best = true;
            }
        }
        if (have_best && best.verified_exact) break;
    }
    best.evaluations = evals;
    best.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

SolveReport solve_grid(const CompiledInstance& ci, const SolverConfig& cfg) {
    if (cfg.grid_resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
    auto t0 = std::chrono::steady_clock::now();
    const int k = resolve_turns(ci, cfg);
    const int D = sphere_dimension(k);
    const int N = cfg.grid_resolution;

    // Points: compositions of N into D parts, each nonzero part carrying a sign.
    double count = 0;
    {
        // sum over nonzero-part counts t of C(D,t) * C(N-1,t-1) * 2^t
        for (int t = 1; t <= std::min(D, N); ++t) {
            double c1 = 1, c2 = 1;
            for (int i = 0; i < t; ++i) c1 = c1 * (D - i) / (i + 1);
            for (int i = 0; i < t - 1; ++i) c2 = c2 * (N - 1 - i) / (i + 1);
            count += c1 * c2 * std::pow(2.0, t);
        }
    }
    if (count > cfg.grid_budget)
        throw SolverBudgetError("grid of " + std::to_string(static_cast<long long>(count)) +
                                " points exceeds the budget; lower the resolution or the turn budget");

    struct Scored {
        double res;
        long order;
        std::vector<int> parts;
    };
    std::vector<Scored> keep;
    const std::size_t kKeep = 32;
    std::vector<int> parts(D, 0);
    long order = 0, evals = 0;
    const double radius = k + 1;

    auto consider = [&](const std::vector<int>& signed_parts) {
        SpherePointT<double> p;
        p.turns = k;
        for (int v : signed_parts) p.coords.push_back(radius * v / N);
        double r = float_residual(ci, p);
        ++evals;
        keep.push_back({r, order++, signed_parts});
        if (keep.size() > 4 * kKeep) {
            std::sort(keep.begin(), keep.end(),
                      [](const Scored& a, const Scored& b) { return a.res < b.res || (a.res == b.res && a.order < b.order); });
            keep.resize(kKeep);
        }
    };
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == D - 1) {
            parts[idx] = left;
            std::vector<int> nz;
            for (int j = 0; j < D; ++j)
                if (parts[j] != 0) nz.push_back(j);
            for (unsigned mask = 0; mask < (1u << nz.size()); ++mask) {
                auto sp = parts;
                for (std::size_t b = 0; b < nz.size(); ++b)
                    if (mask & (1u << b)) sp[nz[b]] = -sp[nz[b]];
                consider(sp);
            }
            return;
        }
        for (int v = 0; v <= left; ++v) {
            parts[idx] = v;
            rec(idx + 1, left - v);
        }
    };
    rec(0, N);
    std::sort(keep.begin(), keep.end(),
              [](const Scored& a, const Scored& b) { return a.res < b.res || (a.res == b.res && a.order < b.order); });
    if (keep.size() > kKeep) keep.resize(kKeep);

    SolveReport best;
    bool have = false;
    for (const auto& s : keep) {
        SolveReport r;
        r.point.turns = k;
        for (int v : s.parts) r.point.coords.push_back(Q(static_cast<long>(k + 1) * v, N));
        r.float_residual = s.res;
        r.seed_index = static_cast<int>(s.order);
        finish(ci, cfg, k, r);
        if (!have || r.residual < best.residual) {
            best = std::move(r);
            have = true;
        }
    }
    best.evaluations = evals;
    best.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

}  // namespace pizza
