#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catalyst/circuit.hpp"

namespace catalyst::estimator {

struct Term {
    RingElement weight;  // real, may be negative
    Circuit circuit;
    Observable observable;
};

struct Ensemble {
    std::vector<Term> terms;
    double one_norm = 0.0;

    /// Recomputes one_norm from the weights (float embedding).
    void refresh_one_norm();
};

struct EstimateReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t shots = 0;
    std::vector<std::size_t> term_shots;
    std::uint64_t seed = 0;
    std::optional<double> exact_value;

    std::string to_text() const;
};

struct EstimateOptions {
    /// Largest-remainder allocation of shots to terms instead of sampling the term per shot.
    bool fixed_allocation = false;
    /// 0 picks CATALYST_THREADS or the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;
};

/// Four-term ensemble: T gates go through the CS gadget on one catalyst qubit,
/// whose |T> preparation is then replaced by each Clifford state of decompose_t_dm.
Ensemble build_ensemble(const Circuit& c, const Observable& obs);
/// Sum_j weight_j <O_j>_j over a common tower.
RingElement exact_value(const Ensemble& e);
/// Expectation of obs on the circuit itself, for comparison.
RingElement direct_value(const Circuit& c, const Observable& obs);

EstimateReport qp_estimate(const Ensemble& e, std::size_t shots, std::uint64_t seed,
                           const EstimateOptions& opts = {});

double overhead(const Ensemble& e);
/// One-norm of injecting every T separately through the four-term decomposition.
double overhead_injection(int t_gates);

/// Largest-remainder split of `shots` proportional to |weight|.
std::vector<std::size_t> allocate_shots(const Ensemble& e, std::size_t shots);

/// 1, 2, 5, 10, 20, 50, ... up to and including `shots`.
std::vector<std::size_t> checkpoints(std::size_t shots);

struct ConvergenceRow {
    std::size_t shots;
    double estimate;
    double std_error;
};

/// Running estimate at each checkpoint; the last row equals qp_estimate(e, shots, seed).
std::vector<ConvergenceRow> convergence(const Ensemble& e, std::size_t shots, std::uint64_t seed,
                                        const EstimateOptions& opts = {});
/// CSV with header shots,estimate,stderr,exact,seed.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows, std::optional<double> exact,
                            std::uint64_t seed);

/// Seed of shard `index` derived from the run seed (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
/// Worker count from CATALYST_THREADS, else hardware concurrency (at least 1).
unsigned default_threads();

}  // namespace catalyst::estimator
