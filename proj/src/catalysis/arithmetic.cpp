#include <algorithm>
#include <numeric>

#include "catalyst/catalysis.hpp"

namespace catalyst::catalysis {

namespace {

Gate multi_x(std::vector<std::size_t> controls, std::size_t target) {
    switch (controls.size()) {
        case 0: return Gate::x(target);
        case 1: return Gate::cx(controls[0], target);
        case 2: return Gate::ccx(controls[0], controls[1], target);
        default: return Gate::mcx(std::move(controls), target);
    }
}

RingMatrix diagonal(const std::vector<RingElement>& d) {
    RingMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

// x - 1 = ~(~x + 1). The increment flips the most significant bit first so
// every MCX sees the lower bits it depends on still untouched.
Circuit controlled_decrementer(std::size_t n) {
    if (n == 0) throw std::invalid_argument("controlled_decrementer needs n >= 1");
    Circuit c(n + 1);
    for (std::size_t q = 1; q <= n; ++q) c.add(Gate::x(q));
    for (std::size_t q = 1; q <= n; ++q) {
        std::vector<std::size_t> controls{0};
        for (std::size_t l = q + 1; l <= n; ++l) controls.push_back(l);
        c.add(multi_x(std::move(controls), q));
    }
    for (std::size_t q = 1; q <= n; ++q) c.add(Gate::x(q));
    return c;
}

Circuit subtractor(std::size_t n) {
    if (n == 0) throw std::invalid_argument("subtractor needs n >= 1");
    Circuit c(2 * n);
    // a_j has weight 2^(n-1-j): decrement the top j+1 bits of b.
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> map{j};
        for (std::size_t p = 0; p <= j; ++p) map.push_back(n + p);
        c.append(controlled_decrementer(j + 1), map);
    }
    return c;
}

Circuit adder(std::size_t n) {
    return inverse(subtractor(n));
}

Preparation catalyst_bank(std::size_t n, int sign) {
    Preparation p(n);
    for (std::size_t j = 0; j < n; ++j) p.set(j, zk_prep(static_cast<int>(n - j), sign));
    return p;
}

Circuit adder_catalysis_circuit(std::size_t n, const std::optional<Preparation>& bank) {
    const Preparation b = bank ? *bank : catalyst_bank(n);
    if (b.qubits.size() != n || !b.ccz_blocks.empty()) {
        throw std::invalid_argument("catalyst bank must have n single-qubit preparations");
    }
    Circuit c(2 * n);
    for (std::size_t j = 0; j < n; ++j) c.prep.set(n + j, b.qubits[j]);
    std::vector<std::size_t> map(2 * n);
    std::iota(map.begin(), map.begin() + static_cast<long>(n), 0);
    for (std::size_t p = 0; p < n; ++p) map[n + p] = n + (n - 1 - p);
    c.append(adder(n), map);
    return c;
}

Report verify_adder_catalysis(std::size_t n, const std::optional<Preparation>& bank) {
    const Circuit c = adder_catalysis_circuit(n, bank);
    const Tower tower = Tower::for_phase_depth(std::max(3, std::max(c.phase_depth(), static_cast<int>(n))));
    std::vector<RingElement> d(std::size_t{1} << n, tower.one());
    for (std::size_t x = 0; x < d.size(); ++x) {
        for (std::size_t i = 0; i < n; ++i) {
            if ((x >> (n - 1 - i)) & 1U) d[x] = d[x] * tower.root_of_unity(static_cast<int>(i + 1), -1);
        }
    }
    Report r = verify_catalysis("adder-catalysis/n=" + std::to_string(n), c, n, diagonal(d), tower);
    r.facts.emplace_back("n", std::to_string(n));
    r.facts.emplace_back("gates", std::to_string(c.gates.size()));
    r.facts.emplace_back("t_count", std::to_string(c.t_count()));
    return r;
}

// ---------------------------------------------------------------------------

Circuit synth_small_phase(int k, long m) {
    if (k < 1) throw std::invalid_argument("synth_small_phase needs k >= 1");
    if (k > 30) throw std::invalid_argument("synth_small_phase: k too large");
    const auto uk = static_cast<std::size_t>(k);
    const long mod = 1L << k;
    if (m < 1 || m >= mod) throw std::invalid_argument("synth_small_phase needs 1 <= m < 2^k");
    const long mm = m;

    Circuit c(2 * uk + 1);
    const Preparation bank = catalyst_bank(uk, -1);
    for (std::size_t j = 0; j < uk; ++j) c.prep.set(uk + 1 + j, bank.qubits[j]);

    // Ancilla 1+p carries bit p of m (big-endian) times the data bit.
    Circuit fan(2 * uk + 1);
    for (std::size_t p = 0; p < uk; ++p) {
        if ((mm >> (uk - 1 - p)) & 1L) fan.add(Gate::cx(0, 1 + p));
    }
    std::vector<std::size_t> map(2 * uk);
    for (std::size_t p = 0; p < uk; ++p) {
        map[p] = 1 + p;
        map[uk + p] = uk + 1 + (uk - 1 - p);
    }
    c.append(fan);
    c.append(adder(uk), map);
    c.append(fan);
    return c;
}

Report verify_synth_small_phase(int k, long m) {
    const Circuit c = synth_small_phase(k, m);
    const Tower tower = Tower::for_phase_depth(std::max(3, k));
    Report r = verify_catalysis("synth-phase/k=" + std::to_string(k) + ",m=" + std::to_string(m), c, 1,
                                diagonal({tower.one(), tower.root_of_unity(k, m)}), tower);
    r.facts.emplace_back("k", std::to_string(k));
    r.facts.emplace_back("m", std::to_string(m));
    r.facts.emplace_back("gates", std::to_string(c.gates.size()));
    r.facts.emplace_back("t_count", std::to_string(c.t_count()));
    return r;
}

Circuit transpile_synth_phase(const Circuit& c) {
    c.validate();
    auto depth = [](const Gate& g) -> int {
        switch (g.kind) {
            case GateKind::T:
            case GateKind::Tdg: return 3;
            case GateKind::PhaseK: return g.k;
            default: return 0;
        }
    };
    int big_k = 0;
    for (const auto& g : c.gates) big_k = std::max(big_k, depth(g));
    if (big_k == 0) return c;

    const auto uk = static_cast<std::size_t>(big_k);
    Circuit out = c;
    out.gates.clear();
    out.gateset.reset();
    out.resize(c.width + 2 * uk);
    const Preparation bank = catalyst_bank(uk, -1);
    for (std::size_t j = 0; j < uk; ++j) out.prep.set(c.width + uk + j, bank.qubits[j]);
    const long mod = 1L << big_k;
    for (const auto& g : c.gates) {
        const int k = depth(g);
        if (k == 0) {
            out.add(g);
            continue;
        }
        const int sign = g.kind == GateKind::Tdg ? -1 : (g.kind == GateKind::T ? 1 : g.sign);
        const long m = ((sign * (1L << (big_k - k))) % mod + mod) % mod;
        std::vector<std::size_t> map{g.qubits[0]};
        for (std::size_t j = 0; j < 2 * uk; ++j) map.push_back(c.width + j);
        out.append(synth_small_phase(big_k, m), map);
    }
    out.validate();
    return out;
}

}  // namespace catalyst::catalysis
