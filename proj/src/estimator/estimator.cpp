#include "catalyst/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "catalyst/catalysis.hpp"

namespace catalyst::estimator {

namespace {

constexpr std::size_t kShardShots = 8192;

// Born distribution of a Pauli measurement, after rotating X/Y factors to Z.
struct TermSampler {
    std::discrete_distribution<std::size_t> outcome;
    std::vector<int> eigenvalue;
    double scaled_sign = 0.0;  // sign(weight) * one_norm
};

TermSampler make_sampler(const Term& t, double one_norm) {
    Circuit rotated = t.circuit;
    rotated.gateset.reset();
    std::vector<std::size_t> support;
    for (std::size_t q = 0; q < t.observable.paulis.size(); ++q) {
        switch (t.observable.paulis[q]) {
            case 'I': continue;
            case 'X': rotated.add(Gate::h(q)); break;
            case 'Y': rotated.add(Gate::sdg(q)).add(Gate::h(q)); break;
            default: break;
        }
        support.push_back(q);
    }
    const StateVector psi = simulate(rotated, tower_for(rotated));
    std::vector<double> probs;
    TermSampler s;
    for (const auto& [bits, p] : marginal_distribution(psi, support)) {
        probs.push_back(embed_float(p).real());
        const auto ones = std::count(bits.begin(), bits.end(), '1');
        s.eigenvalue.push_back(ones % 2 ? -1 : 1);
    }
    if (probs.empty()) throw std::logic_error("term state has zero norm");
    s.outcome = std::discrete_distribution<std::size_t>(probs.begin(), probs.end());
    const double w = embed_float(t.weight).real();
    s.scaled_sign = (w < 0 ? -1.0 : 1.0) * one_norm;
    return s;
}

struct Shard {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<std::size_t> counts;
    // Running sums after each shot, kept only for convergence output.
    std::vector<double> prefix, prefix_sq;
};

// Spreads a fixed allocation evenly over the shot sequence: shot i goes to the
// term furthest behind its proportional share.
std::vector<std::uint8_t> interleave(const std::vector<std::size_t>& alloc, std::size_t shots) {
    std::vector<std::uint8_t> seq(shots);
    std::vector<std::size_t> used(alloc.size(), 0);
    for (std::size_t i = 0; i < shots; ++i) {
        std::size_t best = alloc.size();
        double best_lag = 0.0;
        for (std::size_t j = 0; j < alloc.size(); ++j) {
            if (used[j] >= alloc[j]) continue;
            const double lag = static_cast<double>(alloc[j]) * static_cast<double>(i + 1) / static_cast<double>(shots) -
                               static_cast<double>(used[j]);
            if (best == alloc.size() || lag > best_lag) {
                best = j;
                best_lag = lag;
            }
        }
        seq[i] = static_cast<std::uint8_t>(best);
        ++used[best];
    }
    return seq;
}

std::vector<Shard> run_shards(const Ensemble& e, std::size_t shots, std::uint64_t seed,
                              const EstimateOptions& opts, bool keep_prefix) {
    if (shots == 0) throw std::invalid_argument("shots must be at least 1");
    if (e.terms.empty()) throw std::invalid_argument("ensemble has no terms");
    if (e.terms.size() > 255) throw std::invalid_argument("ensemble has too many terms");
    std::vector<TermSampler> samplers;
    std::vector<double> weights;
    for (const auto& t : e.terms) {
        samplers.push_back(make_sampler(t, e.one_norm));
        weights.push_back(std::abs(embed_float(t.weight).real()));
    }
    std::vector<std::uint8_t> fixed;
    if (opts.fixed_allocation) fixed = interleave(allocate_shots(e, shots), shots);

    const std::size_t nshards = (shots + kShardShots - 1) / kShardShots;
    std::vector<Shard> shards(nshards);
    auto run_one = [&](std::size_t s) {
        std::mt19937_64 rng(derive_seed(seed, s));
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
        std::vector<TermSampler> local = samplers;  // distributions carry state
        Shard& sh = shards[s];
        sh.counts.assign(e.terms.size(), 0);
        const std::size_t lo = s * kShardShots;
        const std::size_t hi = std::min(shots, lo + kShardShots);
        if (keep_prefix) {
            sh.prefix.reserve(hi - lo);
            sh.prefix_sq.reserve(hi - lo);
        }
        for (std::size_t i = lo; i < hi; ++i) {
            const std::size_t j = opts.fixed_allocation ? fixed[i] : pick(rng);
            TermSampler& ts = local[j];
            const double v = ts.scaled_sign * ts.eigenvalue[ts.outcome(rng)];
            sh.sum += v;
            sh.sum_sq += v * v;
            ++sh.counts[j];
            if (keep_prefix) {
                sh.prefix.push_back(sh.sum);
                sh.prefix_sq.push_back(sh.sum_sq);
            }
        }
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(opts.threads ? opts.threads : default_threads(),
                                                             static_cast<unsigned>(nshards)));
    if (workers == 1) {
        for (std::size_t s = 0; s < nshards; ++s) run_one(s);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t s = next++; s < nshards; s = next++) run_one(s);
            });
        }
        for (auto& th : pool) th.join();
    }
    return shards;
}

double standard_error(double sum, double sum_sq, std::size_t n) {
    if (n < 2) return 0.0;
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
    return std::sqrt(var / nd);
}

std::string fmt(double x) {
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

}  // namespace

void Ensemble::refresh_one_norm() {
    one_norm = 0.0;
    for (const auto& t : terms) one_norm += std::abs(embed_float(t.weight).real());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ index);
}

unsigned default_threads() {
    if (const char* env = std::getenv("CATALYST_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

Ensemble build_ensemble(const Circuit& c, const Observable& obs) {
    if (obs.width() != c.width) throw CircuitError("observable width does not match circuit width");
    const Circuit transpiled = catalysis::transpile_t_to_cs(c);
    const std::size_t cat = c.width;
    Observable extended{obs.paulis + "I"};
    Ensemble e;
    for (const auto& term : catalysis::decompose_t_dm().terms) {
        Circuit ci = transpiled;
        ci.prep.set(cat, term.prep.prep.qubits[0]);
        e.terms.push_back({term.weight, std::move(ci), extended});
    }
    e.refresh_one_norm();
    return e;
}

RingElement exact_value(const Ensemble& e) {
    int depth = 3;
    for (const auto& t : e.terms) depth = std::max(depth, t.circuit.phase_depth());
    const Tower tower = Tower::for_phase_depth(depth);
    RingElement acc = tower.zero();
    for (const auto& t : e.terms) {
        acc += lift_to(t.weight, tower) * expectation(simulate(t.circuit, tower), t.observable);
    }
    return acc;
}

RingElement direct_value(const Circuit& c, const Observable& obs) {
    return expectation(simulate(c, tower_for(c)), obs);
}

EstimateReport qp_estimate(const Ensemble& e, std::size_t shots, std::uint64_t seed,
                           const EstimateOptions& opts) {
    const auto shards = run_shards(e, shots, seed, opts, false);
    EstimateReport r;
    r.shots = shots;
    r.seed = seed;
    r.term_shots.assign(e.terms.size(), 0);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& sh : shards) {
        sum += sh.sum;
        sum_sq += sh.sum_sq;
        for (std::size_t j = 0; j < sh.counts.size(); ++j) r.term_shots[j] += sh.counts[j];
    }
    r.estimate = sum / static_cast<double>(shots);
    r.std_error = standard_error(sum, sum_sq, shots);
    return r;
}

double overhead(const Ensemble& e) {
    return e.one_norm;
}

double overhead_injection(int t_gates) {
    return std::pow(2.0 * std::sqrt(2.0) - 1.0, t_gates);
}

std::vector<std::size_t> allocate_shots(const Ensemble& e, std::size_t shots) {
    std::vector<double> w;
    double total = 0.0;
    for (const auto& t : e.terms) {
        w.push_back(std::abs(embed_float(t.weight).real()));
        total += w.back();
    }
    std::vector<std::size_t> alloc(w.size());
    std::vector<std::pair<double, std::size_t>> rem;
    std::size_t given = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double exact = static_cast<double>(shots) * w[j] / total;
        alloc[j] = static_cast<std::size_t>(std::floor(exact));
        given += alloc[j];
        rem.emplace_back(exact - static_cast<double>(alloc[j]), j);
    }
    // Ties go to the lower index.
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; given < shots; ++i, ++given) ++alloc[rem[i % rem.size()].second];
    return alloc;
}

std::vector<std::size_t> checkpoints(std::size_t shots) {
    std::vector<std::size_t> out;
    for (std::size_t decade = 1; decade <= shots; decade *= 10) {
        for (std::size_t m : {1, 2, 5}) {
            if (decade * m <= shots) out.push_back(decade * m);
        }
        if (decade > shots / 10) break;
    }
    if (out.empty() || out.back() != shots) out.push_back(shots);
    return out;
}

std::vector<ConvergenceRow> convergence(const Ensemble& e, std::size_t shots, std::uint64_t seed,
                                        const EstimateOptions& opts) {
    const auto shards = run_shards(e, shots, seed, opts, true);
    std::vector<ConvergenceRow> rows;
    double base = 0.0, base_sq = 0.0;
    std::size_t done = 0;  // shards folded into base
    for (std::size_t c : checkpoints(shots)) {
        const std::size_t s = (c - 1) / kShardShots;
        for (; done < s; ++done) {
            base += shards[done].sum;
            base_sq += shards[done].sum_sq;
        }
        const std::size_t o = c - s * kShardShots - 1;
        const double sum = base + shards[s].prefix[o];
        const double sum_sq = base_sq + shards[s].prefix_sq[o];
        rows.push_back({c, sum / static_cast<double>(c), standard_error(sum, sum_sq, c)});
    }
    return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows, std::optional<double> exact,
                            std::uint64_t seed) {
    std::ostringstream out;
    out << "shots,estimate,stderr,exact,seed\n";
    for (const auto& r : rows) {
        out << r.shots << "," << fmt(r.estimate) << "," << fmt(r.std_error) << ","
            << (exact ? fmt(*exact) : std::string()) << "," << seed << "\n";
    }
    return out.str();
}

std::string EstimateReport::to_text() const {
    std::ostringstream out;
    out << "estimate=" << fmt(estimate) << "\n";
    out << "stderr=" << fmt(std_error) << "\n";
    out << "shots=" << shots << "\n";
    out << "seed=" << seed << "\n";
    out << "term_shots=";
    for (std::size_t j = 0; j < term_shots.size(); ++j) out << (j ? "," : "") << term_shots[j];
    out << "\n";
    if (exact_value) out << "exact=" << fmt(*exact_value) << "\n";
    return out.str();
}

}  // namespace catalyst::estimator
