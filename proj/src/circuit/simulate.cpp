#include <cctype>
#include <algorithm>
#include <stdexcept>

#include "catalyst/circuit.hpp"

namespace catalyst {

namespace {

std::size_t bit_of(std::size_t width, std::size_t q) {
    return std::size_t{1} << (width - 1 - q);
}

// (k, power) such that the gate multiplies |1...1> on its qubits by e^{2 pi i power / 2^k}.
std::pair<int, long> diagonal_phase(const Gate& g) {
    switch (g.kind) {
        case GateKind::Z:
        case GateKind::CZ:
        case GateKind::CCZ:
            return {1, 1};
        case GateKind::S:
        case GateKind::CS:
            return {2, 1};
        case GateKind::Sdg:
        case GateKind::CSdg:
            return {2, -1};
        case GateKind::T:
            return {3, 1};
        case GateKind::Tdg:
            return {3, -1};
        case GateKind::PhaseK:
        case GateKind::CPhaseK:
            return {g.k, g.sign};
        default:
            throw std::logic_error("not a diagonal gate");
    }
}

const TowerPtr* find_tower(const StateVector& psi) {
    for (const auto& a : psi.amplitudes) {
        if (a.tower()) return &a.tower();
    }
    return nullptr;
}

}  // namespace

RingElement StateVector::norm_squared() const {
    RingElement acc;
    for (const auto& a : amplitudes) {
        if (!a.is_zero()) acc += conj(a) * a;
    }
    return acc;
}

Tower tower_for(const Circuit& c) {
    return Tower::for_phase_depth(std::max(3, c.phase_depth()));
}

std::vector<RingElement> prep_vector(const QubitPrep& p, const Tower& tower) {
    const RingElement s = tower.inv_sqrt2();
    switch (p.kind) {
        case PrepKind::Zero: return {tower.one(), tower.zero()};
        case PrepKind::One: return {tower.zero(), tower.one()};
        case PrepKind::Plus: return {s, s};
        case PrepKind::Minus: return {s, -s};
        case PrepKind::PlusI: return {s, s * tower.i()};
        case PrepKind::MinusI: return {s, -(s * tower.i())};
        case PrepKind::T: return {s, s * tower.root_of_unity(3)};
        case PrepKind::ZK: return {s, s * tower.root_of_unity(p.k)};
        case PrepKind::ZKdg: return {s, s * tower.root_of_unity(p.k, -1)};
        case PrepKind::CCZ: break;
    }
    throw CircuitError("|CCZ> is a three-qubit preparation");
}

StateVector basis_state(std::size_t width, std::size_t index, const Tower& tower) {
    if (width > kSimulationWidthCap) throw CircuitError("width exceeds simulation cap");
    StateVector psi{width, std::vector<RingElement>(std::size_t{1} << width)};
    if (index >= psi.amplitudes.size()) throw CircuitError("basis index out of range");
    psi.amplitudes[index] = tower.one();
    return psi;
}

StateVector product_state(const std::vector<StateVector>& parts) {
    StateVector out{0, {RingElement()}};
    bool first = true;
    for (const auto& part : parts) {
        if (first) {
            out = part;
            first = false;
            continue;
        }
        StateVector next{out.width + part.width,
                         std::vector<RingElement>(out.amplitudes.size() * part.amplitudes.size())};
        for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
            if (out.amplitudes[i].is_zero()) continue;
            for (std::size_t j = 0; j < part.amplitudes.size(); ++j) {
                if (part.amplitudes[j].is_zero()) continue;
                next.amplitudes[i * part.amplitudes.size() + j] = out.amplitudes[i] * part.amplitudes[j];
            }
        }
        out = std::move(next);
    }
    if (out.width > kSimulationWidthCap) throw CircuitError("width exceeds simulation cap");
    return out;
}

StateVector prepare(const Preparation& p, const Tower& tower) {
    const std::size_t width = p.qubits.size();
    if (width > kSimulationWidthCap) throw CircuitError("width exceeds simulation cap");
    std::vector<StateVector> parts;
    parts.reserve(width);
    for (const auto& q : p.qubits) {
        QubitPrep single = q.kind == PrepKind::CCZ ? QubitPrep{PrepKind::Plus, 0} : q;
        parts.push_back(StateVector{1, prep_vector(single, tower)});
    }
    StateVector psi = width == 0 ? StateVector{0, {tower.one()}} : product_state(parts);
    for (const auto& block : p.ccz_blocks) {
        apply_gate(psi, Gate::ccz(block[0], block[1], block[2]), tower);
    }
    return psi;
}

void apply_gate(StateVector& psi, const Gate& g, const Tower& tower) {
    const std::size_t n = psi.width;
    auto& amp = psi.amplitudes;
    for (auto q : g.qubits) {
        if (q >= n) throw CircuitError("gate qubit out of range");
    }
    const std::size_t dim = amp.size();

    if (g.is_diagonal()) {
        std::size_t mask = 0;
        for (auto q : g.qubits) mask |= bit_of(n, q);
        auto [k, power] = diagonal_phase(g);
        const RingElement phase = tower.root_of_unity(k, power);
        const bool minus = phase.is_minus_one();
        if (phase.is_one()) return;
        for (std::size_t idx = 0; idx < dim; ++idx) {
            if ((idx & mask) != mask || amp[idx].is_zero()) continue;
            amp[idx] = minus ? -amp[idx] : amp[idx] * phase;
        }
        return;
    }

    switch (g.kind) {
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CCX:
        case GateKind::MCX: {
            std::size_t cmask = 0;
            for (std::size_t j = 0; j + 1 < g.qubits.size(); ++j) cmask |= bit_of(n, g.qubits[j]);
            const std::size_t t = bit_of(n, g.qubits.back());
            for (std::size_t idx = 0; idx < dim; ++idx) {
                if ((idx & t) == 0 && (idx & cmask) == cmask) std::swap(amp[idx], amp[idx | t]);
            }
            return;
        }
        case GateKind::SWAP: {
            const std::size_t a = bit_of(n, g.qubits[0]);
            const std::size_t b = bit_of(n, g.qubits[1]);
            for (std::size_t idx = 0; idx < dim; ++idx) {
                if ((idx & a) && !(idx & b)) std::swap(amp[idx], amp[idx ^ a ^ b]);
            }
            return;
        }
        case GateKind::H: {
            const std::size_t t = bit_of(n, g.qubits[0]);
            const RingElement s = tower.inv_sqrt2();
            for (std::size_t idx = 0; idx < dim; ++idx) {
                if (idx & t) continue;
                const RingElement a = amp[idx];
                const RingElement b = amp[idx | t];
                if (a.is_zero() && b.is_zero()) continue;
                amp[idx] = (a + b) * s;
                amp[idx | t] = (a - b) * s;
            }
            return;
        }
        case GateKind::Y: {
            const std::size_t t = bit_of(n, g.qubits[0]);
            const RingElement i = tower.i();
            for (std::size_t idx = 0; idx < dim; ++idx) {
                if (idx & t) continue;
                const RingElement a = amp[idx];
                const RingElement b = amp[idx | t];
                amp[idx] = -(i * b);
                amp[idx | t] = i * a;
            }
            return;
        }
        default:
            throw std::logic_error("unhandled gate kind");
    }
}

void apply_circuit(StateVector& psi, const Circuit& c, const Tower& tower) {
    if (psi.width != c.width) throw CircuitError("state width does not match circuit width");
    for (const auto& g : c.gates) apply_gate(psi, g, tower);
}

StateVector simulate(const Circuit& c, const Tower& tower) {
    c.validate();
    StateVector psi = prepare(c.prep, tower);
    apply_circuit(psi, c, tower);
    return psi;
}

StateVector simulate(const Circuit& c) {
    return simulate(c, tower_for(c));
}

RingMatrix gate_matrix(const Gate& g, const Tower& tower) {
    Circuit local(g.qubits.size());
    Gate mapped = g;
    for (std::size_t j = 0; j < mapped.qubits.size(); ++j) mapped.qubits[j] = j;
    local.add(mapped);
    return unitary_of(local, tower);
}

RingMatrix unitary_of(const Circuit& c, const Tower& tower, std::size_t cap) {
    if (c.width > cap) {
        throw CircuitError("unitary_of: width " + std::to_string(c.width) + " exceeds cap " +
                           std::to_string(cap));
    }
    c.validate();
    const std::size_t dim = std::size_t{1} << c.width;
    RingMatrix u(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector psi = basis_state(c.width, col, tower);
        apply_circuit(psi, c, tower);
        for (std::size_t row = 0; row < dim; ++row) u(row, col) = psi.amplitudes[row];
    }
    return u;
}

// ---------------------------------------------------------------------------

Observable Observable::parse(std::string_view text) {
    Observable obs;
    for (char ch : text) {
        char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (up != 'I' && up != 'X' && up != 'Y' && up != 'Z') {
            throw CircuitError("observable letters must be I, X, Y or Z");
        }
        obs.paulis.push_back(up);
    }
    if (obs.paulis.empty()) throw CircuitError("empty observable");
    return obs;
}

StateVector apply_pauli(const StateVector& psi, const Observable& obs, const Tower& tower) {
    if (obs.width() != psi.width) throw CircuitError("observable width does not match state width");
    StateVector out = psi;
    for (std::size_t q = 0; q < obs.width(); ++q) {
        switch (obs.paulis[q]) {
            case 'X': apply_gate(out, Gate::x(q), tower); break;
            case 'Y': apply_gate(out, Gate::y(q), tower); break;
            case 'Z': apply_gate(out, Gate::z(q), tower); break;
            default: break;
        }
    }
    return out;
}

RingElement expectation(const StateVector& psi, const Observable& obs) {
    if (obs.width() != psi.width) throw CircuitError("observable width does not match state width");
    const TowerPtr* spec = find_tower(psi);
    if (!spec) return RingElement();
    Tower tower(*spec);
    StateVector p_psi = apply_pauli(psi, obs, tower);
    RingElement acc = tower.zero();
    for (std::size_t idx = 0; idx < psi.amplitudes.size(); ++idx) {
        if (psi.amplitudes[idx].is_zero() || p_psi.amplitudes[idx].is_zero()) continue;
        acc += conj(psi.amplitudes[idx]) * p_psi.amplitudes[idx];
    }
    if (conj(acc) != acc) throw std::logic_error("expectation value is not real");
    return acc;
}

std::map<std::string, RingElement> marginal_distribution(const StateVector& psi,
                                                         const std::vector<std::size_t>& keep) {
    for (auto q : keep) {
        if (q >= psi.width) throw CircuitError("marginal qubit out of range");
    }
    std::map<std::string, RingElement> out;
    for (std::size_t idx = 0; idx < psi.amplitudes.size(); ++idx) {
        const RingElement& a = psi.amplitudes[idx];
        if (a.is_zero()) continue;
        std::string key;
        for (auto q : keep) key.push_back((idx & bit_of(psi.width, q)) ? '1' : '0');
        out[key] += conj(a) * a;
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

}  // namespace catalyst
