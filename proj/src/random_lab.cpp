#include "treecross/random_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "treecross/error.hpp"
#include "treecross/kernels.hpp"

namespace treecross {

namespace {

// Stable independent-stream derivation and sample-statistics helpers.
// Estimators accumulate raw integer sums, so the reduction over replicas or
// blocks is associative and the result cannot depend on thread count.

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

struct IntMoments {
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;

    void add(std::int64_t x) {
        sum += x;
        sum_sq += x * x;
    }
    void merge(const IntMoments& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    double mean(std::uint64_t count) const { return static_cast<double>(sum) / count; }
    // unbiased sample variance
    double variance(std::uint64_t count) const {
        if (count < 2) return 0.0;
        double m = mean(count);
        double ss = static_cast<double>(sum_sq) - static_cast<double>(count) * m * m;
        if (ss < 0) ss = 0;  // guard tiny negative round-off
        return ss / static_cast<double>(count - 1);
    }
    double std_error(std::uint64_t count) const {
        return std::sqrt(variance(count) / static_cast<double>(count));
    }
};

void run_partitioned(std::uint64_t units, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& body) {
    int workers = std::max(1, threads);
    if (static_cast<std::uint64_t>(workers) > units) workers = std::max<int>(1, static_cast<int>(units));
    if (workers == 1) {
        body(0, units, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = units / workers;
    std::uint64_t extra = units % workers;
    std::uint64_t start = 0;
    for (int w = 0; w < workers; ++w) {
        std::uint64_t len = chunk + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        pool.emplace_back(body, start, start + len, w);
        start += len;
    }
    for (auto& th : pool) th.join();
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over stream position seed + (index+1)*gamma
    std::uint64_t z = seed + (index + 1) * kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw Error("BadCount", "uniform_below(0)");
    std::uint64_t threshold = (0 - bound) % bound;  // reject the biased top band
    for (;;) {
        std::uint64_t r = engine_();
        if (r >= threshold) return r % bound;
    }
}

void Rng::shuffle(std::vector<std::int32_t>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = uniform_below(i);
        std::swap(values[i - 1], values[j]);
    }
}

std::pair<int, int> Rng::distinct_pair(int n) {
    if (n < 2) throw Error("BadCount", "distinct pair requires n >= 2");
    int a = static_cast<int>(uniform_below(n));
    int b = static_cast<int>(uniform_below(n - 1));
    if (b >= a) ++b;
    return {a + 1, b + 1};
}

LinearArrangement random_arrangement(int n, Rng& rng) {
    std::vector<std::int32_t> values(n);
    for (int i = 0; i < n; ++i) values[i] = i + 1;
    rng.shuffle(values);
    std::vector<int> positions(values.begin(), values.end());
    return LinearArrangement::from_positions(std::move(positions));
}

void McEstimate::write_kv(std::ostream& out) const {
    out << "mean=" << format_double(mean) << "\n"
        << "std_error=" << format_double(std_error) << "\n"
        << "samples=" << samples << "\n"
        << "seed=" << seed << "\n";
}

std::string McEstimate::to_json() const {
    nlohmann::json j;
    j["mean"] = mean;
    j["std_error"] = std_error;
    j["samples"] = samples;
    j["seed"] = seed;
    return j.dump(2);
}

// Samples are grouped into fixed-size blocks, block b seeded with
// derive_seed(seed, b); the thread partition works in whole blocks, so the
// sample stream is the same for every thread count.
static constexpr std::uint64_t kBlock = 4096;

McEstimate estimate_expected_crossings(const Tree& t, std::uint64_t samples,
                                       std::uint64_t seed, int threads) {
    if (samples < 2) throw Error("BadCount", "estimator requires samples >= 2");
    const kernels::CandidatePairs pairs(t);
    const int n = t.n();

    std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<IntMoments> partial(std::max<std::uint64_t>(blocks, 1));
    run_partitioned(blocks, threads, [&](std::uint64_t lo, std::uint64_t hi, int) {
        std::vector<std::int32_t> pos(n + 1);
        for (std::uint64_t b = lo; b < hi; ++b) {
            Rng rng(derive_seed(seed, b));
            std::uint64_t first = b * kBlock;
            std::uint64_t last = std::min(samples, first + kBlock);
            IntMoments m;
            for (std::uint64_t s = first; s < last; ++s) {
                for (int v = 1; v <= n; ++v) pos[v] = v;
                for (int i = n; i > 1; --i) {
                    int j = static_cast<int>(rng.uniform_below(i));
                    std::swap(pos[i], pos[j + 1]);
                }
                m.add(kernels::count_crossings(pairs, pos.data()));
            }
            partial[b] = m;
        }
    });

    IntMoments total;
    for (const auto& m : partial) total.merge(m);
    McEstimate est;
    est.mean = total.mean(samples);
    est.std_error = total.std_error(samples);
    est.samples = samples;
    est.seed = seed;
    return est;
}

McEstimate estimate_crossing_probability(const Tree& t, Edge e1, Edge e2,
                                         std::uint64_t samples, std::uint64_t seed,
                                         int threads) {
    if (samples < 2) throw Error("BadCount", "estimator requires samples >= 2");
    if (!t.has_edge(e1.u, e1.v))
        throw Error("NotAnEdge", "(" + std::to_string(e1.u) + "," + std::to_string(e1.v) + ")");
    if (!t.has_edge(e2.u, e2.v))
        throw Error("NotAnEdge", "(" + std::to_string(e2.u) + "," + std::to_string(e2.v) + ")");
    Edge n1{std::min(e1.u, e1.v), std::max(e1.u, e1.v)};
    Edge n2{std::min(e2.u, e2.v), std::max(e2.u, e2.v)};
    if (n1 == n2) throw Error("DuplicateEdge", "the two edges must be distinct");

    const int n = t.n();
    const bool shares = n1.u == n2.u || n1.u == n2.v || n1.v == n2.u || n1.v == n2.v;

    std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<IntMoments> partial(std::max<std::uint64_t>(blocks, 1));
    run_partitioned(blocks, threads, [&](std::uint64_t lo, std::uint64_t hi, int) {
        std::vector<std::int32_t> pos(n + 1);
        for (std::uint64_t b = lo; b < hi; ++b) {
            Rng rng(derive_seed(seed, b));
            std::uint64_t first = b * kBlock;
            std::uint64_t last = std::min(samples, first + kBlock);
            IntMoments m;
            for (std::uint64_t s = first; s < last; ++s) {
                for (int v = 1; v <= n; ++v) pos[v] = v;
                for (int i = n; i > 1; --i) {
                    int j = static_cast<int>(rng.uniform_below(i));
                    std::swap(pos[i], pos[j + 1]);
                }
                bool crossed = false;
                if (!shares) {
                    std::int32_t pu = pos[n1.u], pv = pos[n1.v];
                    std::int32_t ps = pos[n2.u], pt = pos[n2.v];
                    if (pu > pv) std::swap(pu, pv);
                    if (ps > pt) std::swap(ps, pt);
                    crossed = (pu < ps && ps < pv && pv < pt) || (ps < pu && pu < pt && pt < pv);
                }
                m.add(crossed ? 1 : 0);
            }
            partial[b] = m;
        }
    });

    IntMoments total;
    for (const auto& m : partial) total.merge(m);
    McEstimate est;
    est.mean = total.mean(samples);
    est.std_error = total.std_error(samples);
    est.samples = samples;
    est.seed = seed;
    return est;
}

SwapTrajectory swap_walk(const Tree& t, const LinearArrangement& initial, int swaps,
                         std::uint64_t replicas, std::uint64_t seed, int threads) {
    if (swaps < 0) throw Error("BadCount", "swaps must be >= 0");
    if (replicas < 1) throw Error("BadCount", "replicas must be >= 1");
    if (initial.n() != t.n())
        throw Error("SizeMismatch", "arrangement size " + std::to_string(initial.n()) +
                                        " for tree of " + std::to_string(t.n()));
    const int n = t.n();
    if (n < 2 && swaps > 0) throw Error("BadCount", "swaps require n >= 2");

    const kernels::CandidatePairs pairs(t);
    const kernels::EdgeTable edge_table(t);
    const int steps = swaps + 1;

    struct StepSums {
        std::vector<IntMoments> c, dist;
        explicit StepSums(int count) : c(count), dist(count) {}
        void merge(const StepSums& o) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                c[i].merge(o.c[i]);
                dist[i].merge(o.dist[i]);
            }
        }
    };

    std::vector<StepSums> partial(std::max(1, threads), StepSums(steps));
    run_partitioned(replicas, threads, [&](std::uint64_t lo, std::uint64_t hi, int worker) {
        StepSums& sums = partial[worker];
        std::vector<std::int32_t> pos(n + 1);
        for (std::uint64_t r = lo; r < hi; ++r) {
            Rng rng(derive_seed(seed, r));
            for (int v = 1; v <= n; ++v) pos[v] = initial.data()[v];
            sums.c[0].add(kernels::count_crossings(pairs, pos.data()));
            sums.dist[0].add(kernels::total_distance(edge_table, pos.data()));
            for (int s = 1; s < steps; ++s) {
                auto [a, b] = rng.distinct_pair(n);
                std::swap(pos[a], pos[b]);
                sums.c[s].add(kernels::count_crossings(pairs, pos.data()));
                sums.dist[s].add(kernels::total_distance(edge_table, pos.data()));
            }
        }
    });

    StepSums total(steps);
    for (const auto& p : partial) total.merge(p);

    SwapTrajectory traj;
    traj.replicas = replicas;
    traj.seed = seed;
    traj.steps.resize(steps);
    const double edge_count = n > 1 ? n - 1 : 1;
    for (int s = 0; s < steps; ++s) {
        TrajectoryStep& step = traj.steps[s];
        step.mean_c = total.c[s].mean(replicas);
        step.se_c = total.c[s].std_error(replicas);
        step.mean_d = total.dist[s].mean(replicas) / edge_count;
        step.se_d = total.dist[s].std_error(replicas) / edge_count;
    }
    return traj;
}

void SwapTrajectory::write_tsv(std::ostream& out) const {
    out << "swap\tmean_C\tmean_d\n";
    char buf[96];
    for (std::size_t s = 0; s < steps.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%zu\t%.6g\t%.6g\n", s, steps[s].mean_c,
                      steps[s].mean_d);
        out << buf;
    }
}

}  // namespace treecross
