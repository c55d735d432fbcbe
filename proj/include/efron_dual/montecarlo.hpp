#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "efron_dual/body.hpp"
#include "efron_dual/common.hpp"
#include "efron_dual/duality.hpp"
#include "efron_dual/hull.hpp"
#include "efron_dual/rng.hpp"

namespace efron_dual::mc {

/// One Monte Carlo estimate with its sampling error.
struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0; // sample sd / sqrt(replications)
    std::size_t replications = 0;
    std::uint64_t master_seed = 0;
    std::string estimand;
};

enum class CheckMode { coupled, independent };

inline const char* to_string(CheckMode m) {
    return m == CheckMode::coupled ? "coupled" : "independent";
}

inline CheckMode mode_from_string(const std::string& s) {
    if (s == "coupled") return CheckMode::coupled;
    if (s == "independent") return CheckMode::independent;
    throw ContractViolation("unknown mode: " + s);
}

/// Statistical rendering of one identity instance.
struct IdentityReport {
    std::string identity;
    std::string body;
    long n = 0, k = 0, m = 0, j = 0;
    MomentEstimate lhs;
    MomentEstimate rhs;
    double z_score = 0.0;
    double tolerance_sigma = 4.0;
    bool pass = false;
    std::uint64_t master_seed = 0;
};

namespace detail {

/// Welford accumulator; merging uses the exact pairwise-combination rule.
struct RunningStat {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStat& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        const double delta = o.mean - mean;
        const std::size_t total = n + o.n;
        mean += delta * static_cast<double>(o.n) / static_cast<double>(total);
        m2 += o.m2 + delta * delta * static_cast<double>(n) *
                         static_cast<double>(o.n) / static_cast<double>(total);
        n = total;
    }

    double std_error() const {
        if (n < 2) return 0.0;
        const double var = m2 / static_cast<double>(n - 1);
        return std::sqrt(var / static_cast<double>(n));
    }
};

// Replications are split into fixed-size chunks; chunks may be computed by
// any number of workers but are merged in chunk order, so results are
// bit-identical for every thread count.
inline constexpr std::size_t kChunk = 8192;

template <typename PerRep>
std::vector<RunningStat> run_replications(std::size_t reps, std::size_t n_stats,
                                          std::uint64_t side_master,
                                          PerRep&& per_rep, int threads) {
    const std::size_t n_chunks = (reps + kChunk - 1) / kChunk;
    std::vector<std::vector<RunningStat>> chunk_stats(
        n_chunks, std::vector<RunningStat>(n_stats));

    auto do_chunk = [&](std::size_t c) {
        std::vector<double> stats(n_stats);
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(reps, lo + kChunk);
        for (std::size_t r = lo; r < hi; ++r) {
            RngStream rng({side_master, r});
            per_rep(rng, stats);
            for (std::size_t s = 0; s < n_stats; ++s)
                chunk_stats[c][s].add(stats[s]);
        }
    };

    if (threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) do_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t n_workers =
            std::min<std::size_t>(static_cast<std::size_t>(threads), n_chunks);
        for (std::size_t w = 0; w < n_workers; ++w)
            pool.emplace_back([&]() {
                for (std::size_t c = next.fetch_add(1); c < n_chunks;
                     c = next.fetch_add(1))
                    do_chunk(c);
            });
        for (auto& t : pool) t.join();
    }

    std::vector<RunningStat> out(n_stats);
    for (std::size_t c = 0; c < n_chunks; ++c)
        for (std::size_t s = 0; s < n_stats; ++s) out[s].merge(chunk_stats[c][s]);
    return out;
}

inline MomentEstimate to_estimate(const RunningStat& stat, std::uint64_t seed,
                                  std::string estimand) {
    return {stat.mean, stat.std_error(), stat.n, seed, std::move(estimand)};
}

/// (N)_(j) / (m)_(j) for small integers, in floating point.
inline double falling_ratio(long N, long m, long j) {
    double r = 1.0;
    for (long i = 0; i < j; ++i)
        r *= static_cast<double>(N - i) / static_cast<double>(m - i);
    return r;
}

inline double z_score_of(const MomentEstimate& a, const MomentEstimate& b) {
    const double gap = std::fabs(a.mean - b.mean);
    const double denom =
        std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    if (denom == 0.0)
        return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return gap / denom;
}

// Stream tags for derive_master; replication index is the stream index.
inline constexpr std::uint64_t kTagLhs = 1;
inline constexpr std::uint64_t kTagRhs = 2;
inline constexpr std::uint64_t kTagRhsTermBase = 100;

} // namespace detail

/// E[(V_n / vol K)^k]: one hull per replication raised to the k-th power.
inline MomentEstimate estimate_volume_moment(const geom::ConvexBody& body,
                                             long n, long k, std::size_t reps,
                                             std::uint64_t seed,
                                             int threads = 1) {
    if (n < 1 || k < 1 || reps < 1)
        throw ContractViolation("estimate_volume_moment: need n, k, reps >= 1");
    const double vol = body.reference_volume();
    const int dim = body.dimension();
    auto per_rep = [&](RngStream& rng, std::vector<double>& out) {
        std::vector<geom::Point> pts(static_cast<std::size_t>(n));
        for (auto& p : pts) p = body.sample(rng);
        const auto hull = geom::convex_hull(pts, dim);
        out[0] = std::pow(hull.volume / vol, static_cast<double>(k));
    };
    const auto stats = detail::run_replications(reps, 1, seed, per_rep, threads);
    return detail::to_estimate(stats[0], seed,
                               "EV^" + std::to_string(k) + "_" + std::to_string(n) +
                                   "/volK^" + std::to_string(k));
}

/// E[(N_m)_(j)] / (m)_(j): factorial-moment ratio of the vertex count.
inline MomentEstimate estimate_factorial_moment(const geom::ConvexBody& body,
                                                long m, long j, std::size_t reps,
                                                std::uint64_t seed,
                                                int threads = 1) {
    if (m < 1 || j < 0 || j > m || reps < 1)
        throw ContractViolation("estimate_factorial_moment: need 0 <= j <= m, m >= 1");
    const int dim = body.dimension();
    auto per_rep = [&](RngStream& rng, std::vector<double>& out) {
        std::vector<geom::Point> pts(static_cast<std::size_t>(m));
        for (auto& p : pts) p = body.sample(rng);
        const auto hull = geom::convex_hull(pts, dim);
        out[0] = detail::falling_ratio(static_cast<long>(hull.vertex_count()), m, j);
    };
    const auto stats = detail::run_replications(reps, 1, seed, per_rep, threads);
    return detail::to_estimate(stats[0], seed,
                               "E(N_" + std::to_string(m) + ")_(" + std::to_string(j) +
                                   ")/(" + std::to_string(m) + ")_(" +
                                   std::to_string(j) + ")");
}

/// P(all of j specified points among j+m are hull vertices), estimated
/// directly from the vertex set.
inline MomentEstimate estimate_vertex_prob_direct(const geom::ConvexBody& body,
                                                  long m, long j,
                                                  std::size_t reps,
                                                  std::uint64_t seed,
                                                  int threads = 1) {
    if (j < 1 || m < 0 || reps < 1)
        throw ContractViolation("estimate_vertex_prob_direct: need j >= 1, m >= 0");
    const int dim = body.dimension();
    const std::size_t total = static_cast<std::size_t>(m + j);
    auto per_rep = [&](RngStream& rng, std::vector<double>& out) {
        std::vector<geom::Point> pts(total);
        for (auto& p : pts) p = body.sample(rng);
        const auto hull = geom::convex_hull(pts, dim);
        // vertex_indices is sorted, so the specified points 0..j-1 are
        // vertices iff they are a prefix of it.
        bool all = hull.vertex_count() >= static_cast<std::size_t>(j);
        for (long i = 0; all && i < j; ++i)
            all = hull.vertex_indices[static_cast<std::size_t>(i)] ==
                  static_cast<std::size_t>(i);
        out[0] = all ? 1.0 : 0.0;
    };
    const auto stats = detail::run_replications(reps, 1, seed, per_rep, threads);
    return detail::to_estimate(stats[0], seed,
                               "P(" + std::to_string(j) + " of " +
                                   std::to_string(m + j) + " are vertices)");
}

namespace detail {

inline void require(bool ok, const char* msg) {
    if (!ok) throw ContractViolation(msg);
}

/// Shared draw: both statistics evaluated on one sample of `total` points.
template <typename LhsFn, typename RhsFn>
IdentityReport coupled_check(const geom::ConvexBody& body, std::size_t total,
                             std::size_t reps, std::uint64_t seed, int threads,
                             LhsFn&& lhs_of, RhsFn&& rhs_of) {
    auto per_rep = [&](RngStream& rng, std::vector<double>& out) {
        std::vector<geom::Point> pts(total);
        for (auto& p : pts) p = body.sample(rng);
        out[0] = lhs_of(pts);
        out[1] = rhs_of(pts);
    };
    const auto stats = run_replications(
        reps, 2, derive_master(seed, kTagLhs), per_rep, threads);
    IdentityReport rep;
    rep.lhs = to_estimate(stats[0], seed, "");
    rep.rhs = to_estimate(stats[1], seed, "");
    return rep;
}

} // namespace detail

/// Estimates both sides of one of the paper's identities and reports the
/// z-score of their difference. Coupled mode evaluates both statistics on
/// the same draw of n+k points; independent mode uses disjoint streams per
/// side (and, for the Eq. (4) right-hand side, one stream per j-term).
inline IdentityReport check_identity(const geom::ConvexBody& body,
                                     const std::string& identity, long n, long k,
                                     std::size_t reps, std::uint64_t seed,
                                     CheckMode mode, double tolerance_sigma = 4.0,
                                     int threads = 1) {
    detail::require(reps >= 1, "check_identity: reps >= 1");
    detail::require(tolerance_sigma > 0, "check_identity: tolerance_sigma > 0");
    const int dim = body.dimension();
    const double vol = body.reference_volume();

    IdentityReport rep;
    rep.identity = identity;
    rep.body = body.label();
    rep.master_seed = seed;
    rep.tolerance_sigma = tolerance_sigma;

    auto prefix_volume_pow = [&](const std::vector<geom::Point>& pts,
                                 std::size_t count, long power) {
        const std::vector<geom::Point> head(pts.begin(),
                                            pts.begin() + static_cast<long>(count));
        const auto hull = geom::convex_hull(head, dim);
        return std::pow(hull.volume / vol, static_cast<double>(power));
    };
    auto vertex_count_of = [&](const std::vector<geom::Point>& pts) {
        return static_cast<long>(geom::convex_hull(pts, dim).vertex_count());
    };

    if (identity == "efron-eq1") {
        detail::require(n >= 1, "efron-eq1: n >= 1");
        rep.n = n;
        rep.k = 1;
        const std::size_t total = static_cast<std::size_t>(n) + 1;
        auto lhs_of = [&](const std::vector<geom::Point>& pts) {
            return prefix_volume_pow(pts, static_cast<std::size_t>(n), 1);
        };
        auto rhs_of = [&](const std::vector<geom::Point>& pts) {
            return 1.0 - static_cast<double>(vertex_count_of(pts)) /
                             static_cast<double>(n + 1);
        };
        if (mode == CheckMode::coupled) {
            auto core = detail::coupled_check(body, total, reps, seed, threads,
                                              lhs_of, rhs_of);
            rep.lhs = core.lhs;
            rep.rhs = core.rhs;
        } else {
            rep.lhs = estimate_volume_moment(body, n, 1, reps,
                                             derive_master(seed, detail::kTagLhs),
                                             threads);
            const auto ratio = estimate_factorial_moment(
                body, n + 1, 1, reps, derive_master(seed, detail::kTagRhs), threads);
            rep.rhs = ratio;
            rep.rhs.mean = 1.0 - ratio.mean;
        }
        rep.lhs.estimand = "EV_" + std::to_string(n) + "/volK";
        rep.rhs.estimand = "1 - EN_" + std::to_string(n + 1) + "/" + std::to_string(n + 1);
    } else if (identity == "product-eq2" || identity == "factorial-eq3") {
        detail::require(n >= 1 && k >= 1, "eq2/eq3: n, k >= 1");
        rep.n = n;
        rep.k = k;
        const std::size_t total = static_cast<std::size_t>(n + k);
        auto lhs_of = [&](const std::vector<geom::Point>& pts) {
            return prefix_volume_pow(pts, static_cast<std::size_t>(n), k);
        };
        const bool product_form = identity == "product-eq2";
        auto rhs_of = [&](const std::vector<geom::Point>& pts) {
            const long N = vertex_count_of(pts);
            if (product_form) {
                double prod = 1.0;
                for (long i = 1; i <= k; ++i)
                    prod *= 1.0 - static_cast<double>(N) / static_cast<double>(n + i);
                return prod;
            }
            double sum = 0.0;
            for (long jj = 0; jj <= k; ++jj) {
                const double term = binomial(k, jj).get_d() *
                                    detail::falling_ratio(N, n + k, jj);
                sum += (jj % 2 == 0) ? term : -term;
            }
            return sum;
        };
        if (mode == CheckMode::coupled) {
            auto core = detail::coupled_check(body, total, reps, seed, threads,
                                              lhs_of, rhs_of);
            rep.lhs = core.lhs;
            rep.rhs = core.rhs;
        } else {
            rep.lhs = estimate_volume_moment(
                body, n, k, reps, derive_master(seed, detail::kTagLhs), threads);
            auto per_rep = [&](RngStream& rng, std::vector<double>& out) {
                std::vector<geom::Point> pts(total);
                for (auto& p : pts) p = body.sample(rng);
                out[0] = rhs_of(pts);
            };
            const auto stats = detail::run_replications(
                reps, 1, derive_master(seed, detail::kTagRhs), per_rep, threads);
            rep.rhs = detail::to_estimate(stats[0], seed, "");
        }
        rep.lhs.estimand = "EV^" + std::to_string(k) + "_" + std::to_string(n) +
                           "/volK^" + std::to_string(k);
        rep.rhs.estimand =
            product_form
                ? "E prod_i (1 - N_" + std::to_string(n + k) + "/(n+i))"
                : "sum_j (-1)^j C(k,j) E(N_" + std::to_string(n + k) +
                      ")_(j)/(n+k)_(j)";
    } else if (identity == "dual-eq4") {
        detail::require(n >= 1 && k >= 1, "dual-eq4: n, k >= 1");
        rep.n = n;
        rep.k = k;
        const std::size_t total = static_cast<std::size_t>(n + k);
        if (mode == CheckMode::coupled) {
            // One draw; the Eq. (4) right-hand side uses nested prefixes of
            // sizes n+k-j, which are themselves i.i.d. samples.
            auto lhs_of = [&](const std::vector<geom::Point>& pts) {
                const long N = vertex_count_of(pts);
                return detail::falling_ratio(N, n + k, k);
            };
            auto rhs_of = [&](const std::vector<geom::Point>& pts) {
                double sum = 1.0; // j = 0 term
                for (long jj = 1; jj <= k; ++jj) {
                    const double term =
                        binomial(k, jj).get_d() *
                        prefix_volume_pow(pts, static_cast<std::size_t>(n + k - jj), jj);
                    sum += (jj % 2 == 0) ? term : -term;
                }
                return sum;
            };
            auto core = detail::coupled_check(body, total, reps, seed, threads,
                                              lhs_of, rhs_of);
            rep.lhs = core.lhs;
            rep.rhs = core.rhs;
        } else {
            rep.lhs = estimate_factorial_moment(
                body, n + k, k, reps, derive_master(seed, detail::kTagLhs), threads);
            // E V^j_{n+k-j} for j = 1..k, each from its own stream; the j=0
            // term is the constant 1.
            double mean = 1.0;
            double var = 0.0;
            for (long jj = 1; jj <= k; ++jj) {
                const auto est = estimate_volume_moment(
                    body, n + k - jj, jj, reps,
                    derive_master(seed, detail::kTagRhsTermBase +
                                            static_cast<std::uint64_t>(jj)),
                    threads);
                const double coeff = binomial(k, jj).get_d();
                mean += (jj % 2 == 0 ? 1.0 : -1.0) * coeff * est.mean;
                var += coeff * coeff * est.std_error * est.std_error;
            }
            rep.rhs.mean = mean;
            rep.rhs.std_error = std::sqrt(var);
            rep.rhs.replications = reps;
            rep.rhs.master_seed = seed;
        }
        rep.lhs.estimand = "E(N_" + std::to_string(n + k) + ")_(" +
                           std::to_string(k) + ")/(" + std::to_string(n + k) +
                           ")_(" + std::to_string(k) + ")";
        rep.rhs.estimand = "sum_j (-1)^j C(k,j) EV^j_" + std::to_string(n + k) +
                           "-j/volK^j";
    } else {
        throw ContractViolation("check_identity: unknown identity " + identity);
    }

    rep.z_score = detail::z_score_of(rep.lhs, rep.rhs);
    rep.pass = rep.z_score <= tolerance_sigma;
    return rep;
}

/// Theorem 2 comparison: direct vertex probability vs. factorial-moment
/// ratio (m, j in the theorem's notation).
inline IdentityReport check_theorem2(const geom::ConvexBody& body, long m, long j,
                                     std::size_t reps, std::uint64_t seed,
                                     CheckMode mode, double tolerance_sigma = 4.0,
                                     int threads = 1) {
    detail::require(m >= 1 && j >= 1, "thm2: m, j >= 1");
    detail::require(reps >= 1, "thm2: reps >= 1");
    IdentityReport rep;
    rep.identity = "thm2-direct-vs-ratio";
    rep.body = body.label();
    rep.m = m;
    rep.j = j;
    rep.master_seed = seed;
    rep.tolerance_sigma = tolerance_sigma;

    const int dim = body.dimension();
    if (mode == CheckMode::coupled) {
        const std::size_t total = static_cast<std::size_t>(m + j);
        auto per_rep = [&](RngStream& rng, std::vector<double>& out) {
            std::vector<geom::Point> pts(total);
            for (auto& p : pts) p = body.sample(rng);
            const auto hull = geom::convex_hull(pts, dim);
            bool all = hull.vertex_count() >= static_cast<std::size_t>(j);
            for (long i = 0; all && i < j; ++i)
                all = hull.vertex_indices[static_cast<std::size_t>(i)] ==
                      static_cast<std::size_t>(i);
            out[0] = all ? 1.0 : 0.0;
            out[1] = detail::falling_ratio(static_cast<long>(hull.vertex_count()),
                                           m + j, j);
        };
        const auto stats = detail::run_replications(
            reps, 2, derive_master(seed, detail::kTagLhs), per_rep, threads);
        rep.lhs = detail::to_estimate(stats[0], seed, "");
        rep.rhs = detail::to_estimate(stats[1], seed, "");
    } else {
        rep.lhs = estimate_vertex_prob_direct(
            body, m, j, reps, derive_master(seed, detail::kTagLhs), threads);
        rep.rhs = estimate_factorial_moment(
            body, m + j, j, reps, derive_master(seed, detail::kTagRhs), threads);
    }
    rep.lhs.estimand =
        "P(" + std::to_string(j) + " of " + std::to_string(m + j) + " are vertices)";
    rep.rhs.estimand = "E(N_" + std::to_string(m + j) + ")_(" + std::to_string(j) +
                       ")/(" + std::to_string(m + j) + ")_(" + std::to_string(j) + ")";
    rep.z_score = detail::z_score_of(rep.lhs, rep.rhs);
    rep.pass = rep.z_score <= tolerance_sigma;
    return rep;
}

} // namespace efron_dual::mc
