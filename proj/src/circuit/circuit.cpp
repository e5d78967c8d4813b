#include "catalyst/circuit.hpp"

#include <algorithm>
#include <set>

namespace catalyst {

Gate Gate::mcx(std::vector<std::size_t> controls, std::size_t target) {
    controls.push_back(target);
    return {GateKind::MCX, std::move(controls)};
}

Gate Gate::cphasek(int k, std::vector<std::size_t> controls, std::size_t target, int sign) {
    controls.push_back(target);
    return {GateKind::CPhaseK, std::move(controls), k, sign};
}

bool Gate::is_diagonal() const {
    switch (kind) {
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::CZ:
        case GateKind::CS:
        case GateKind::CSdg:
        case GateKind::CCZ:
        case GateKind::PhaseK:
        case GateKind::CPhaseK:
            return true;
        default:
            return false;
    }
}

bool Gate::is_permutation() const {
    switch (kind) {
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CCX:
        case GateKind::MCX:
        case GateKind::SWAP:
            return true;
        default:
            return false;
    }
}

bool Gate::is_t_like() const {
    return kind == GateKind::T || kind == GateKind::Tdg || (kind == GateKind::PhaseK && k == 3);
}

int Gate::phase_depth() const {
    switch (kind) {
        case GateKind::Z:
        case GateKind::CZ:
        case GateKind::CCZ:
            return 1;
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::CS:
        case GateKind::CSdg:
        case GateKind::Y:
            return 2;
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::H:
            return 3;
        case GateKind::PhaseK:
        case GateKind::CPhaseK:
            return k;
        default:
            return 0;
    }
}

Gate inverse(const Gate& g) {
    Gate out = g;
    switch (g.kind) {
        case GateKind::S: out.kind = GateKind::Sdg; break;
        case GateKind::Sdg: out.kind = GateKind::S; break;
        case GateKind::T: out.kind = GateKind::Tdg; break;
        case GateKind::Tdg: out.kind = GateKind::T; break;
        case GateKind::CS: out.kind = GateKind::CSdg; break;
        case GateKind::CSdg: out.kind = GateKind::CS; break;
        case GateKind::PhaseK:
        case GateKind::CPhaseK: out.sign = -g.sign; break;
        default: break;
    }
    return out;
}

std::string gate_name(const Gate& g) {
    switch (g.kind) {
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::H: return "h";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::CS: return "cs";
        case GateKind::CSdg: return "csdg";
        case GateKind::SWAP: return "swap";
        case GateKind::CCZ: return "ccz";
        case GateKind::CCX: return "ccx";
        case GateKind::MCX: return "mcx";
        case GateKind::PhaseK: return g.sign < 0 ? "phasekdg" : "phasek";
        case GateKind::CPhaseK: return g.sign < 0 ? "cphasekdg" : "cphasek";
    }
    return "?";
}

// ---------------------------------------------------------------------------

void Preparation::set(std::size_t q, QubitPrep p) {
    if (q >= qubits.size()) throw CircuitError("preparation qubit out of range");
    if (p.kind == PrepKind::CCZ) throw CircuitError("use set_ccz for |CCZ> blocks");
    if (qubits[q].kind == PrepKind::CCZ) throw CircuitError("qubit already belongs to a |CCZ> block");
    if ((p.kind == PrepKind::ZK || p.kind == PrepKind::ZKdg) && p.k < 1) {
        throw CircuitError("zk preparation needs k >= 1");
    }
    qubits[q] = p;
}

void Preparation::set_ccz(std::size_t a, std::size_t b, std::size_t c) {
    std::array<std::size_t, 3> block{a, b, c};
    for (auto q : block) {
        if (q >= qubits.size()) throw CircuitError("preparation qubit out of range");
        if (qubits[q].kind != PrepKind::Zero) throw CircuitError("qubit prepared twice");
    }
    if (a == b || b == c || a == c) throw CircuitError("|CCZ> block needs three distinct qubits");
    for (auto q : block) qubits[q] = {PrepKind::CCZ, 0};
    ccz_blocks.push_back(block);
}

bool Preparation::is_all_zero() const {
    return std::all_of(qubits.begin(), qubits.end(),
                       [](const QubitPrep& p) { return p.kind == PrepKind::Zero; });
}

// ---------------------------------------------------------------------------

Circuit& Circuit::add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
}

Circuit& Circuit::append(const Circuit& other, const std::vector<std::size_t>& map) {
    for (Gate g : other.gates) {
        if (!map.empty()) {
            for (auto& q : g.qubits) {
                if (q >= map.size()) throw CircuitError("qubit map too short");
                q = map[q];
            }
        }
        gates.push_back(std::move(g));
    }
    return *this;
}

void Circuit::resize(std::size_t new_width) {
    if (new_width < width) throw CircuitError("cannot shrink a circuit");
    width = new_width;
    prep.qubits.resize(new_width);
}

std::size_t Circuit::t_count() const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_t_like(); }));
}

int Circuit::phase_depth() const {
    int depth = 0;
    for (const auto& g : gates) depth = std::max(depth, g.phase_depth());
    for (const auto& p : prep.qubits) {
        switch (p.kind) {
            case PrepKind::Minus:
                depth = std::max(depth, 1);
                break;
            case PrepKind::PlusI:
            case PrepKind::MinusI:
                depth = std::max(depth, 2);
                break;
            case PrepKind::T:
                depth = std::max(depth, 3);
                break;
            case PrepKind::ZK:
            case PrepKind::ZKdg:
                depth = std::max(depth, p.k);
                break;
            default:
                break;
        }
    }
    return depth;
}

namespace {

std::size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::CS:
        case GateKind::CSdg:
        case GateKind::SWAP:
            return 2;
        case GateKind::CCZ:
        case GateKind::CCX:
            return 3;
        case GateKind::MCX:
        case GateKind::CPhaseK:
            return 0;  // variable
        default:
            return 1;
    }
}

}  // namespace

void Circuit::validate() const {
    if (prep.qubits.size() != width) throw CircuitError("preparation width mismatch");
    for (std::size_t n = 0; n < gates.size(); ++n) {
        const Gate& g = gates[n];
        const std::string where = "gate " + std::to_string(n) + " (" + gate_name(g) + ")";
        const std::size_t arity = gate_arity(g.kind);
        if (arity != 0 && g.qubits.size() != arity) {
            throw CircuitError(where + ": expects " + std::to_string(arity) + " qubits");
        }
        if (g.kind == GateKind::MCX && g.qubits.size() < 2) {
            throw CircuitError(where + ": needs at least one control");
        }
        if (g.kind == GateKind::CPhaseK && g.qubits.empty()) {
            throw CircuitError(where + ": needs at least one qubit");
        }
        if ((g.kind == GateKind::PhaseK || g.kind == GateKind::CPhaseK) && g.k < 1) {
            throw CircuitError(where + ": k must be >= 1");
        }
        std::set<std::size_t> seen;
        for (auto q : g.qubits) {
            if (q >= width) throw CircuitError(where + ": qubit " + std::to_string(q) + " out of range");
            if (!seen.insert(q).second) throw CircuitError(where + ": repeated qubit");
        }
        if (gateset && !gateset_allows(*gateset, g)) {
            throw CircuitError(where + ": not in gate set " + *gateset);
        }
    }
    if (gateset && !gateset_known(*gateset)) throw CircuitError("unknown gate set " + *gateset);
}

Circuit inverse(const Circuit& c) {
    Circuit out = c;
    out.gates.clear();
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(inverse(*it));
    return out;
}

bool gateset_known(std::string_view name) {
    return name == "clifford+t" || name == "cs+h" || name == "clifford+cs" || name == "toffoli+h";
}

bool gateset_allows(std::string_view name, const Gate& g) {
    using K = GateKind;
    auto in = [&](std::initializer_list<K> kinds) {
        return std::find(kinds.begin(), kinds.end(), g.kind) != kinds.end();
    };
    if (name == "clifford+t") {
        return in({K::X, K::Y, K::Z, K::S, K::Sdg, K::T, K::Tdg, K::H, K::CX, K::CZ, K::SWAP});
    }
    if (name == "cs+h" || name == "clifford+cs") {
        return in({K::X, K::Y, K::Z, K::S, K::Sdg, K::H, K::CX, K::CZ, K::SWAP, K::CS, K::CSdg});
    }
    if (name == "toffoli+h") {
        return in({K::X, K::CX, K::CCX, K::H, K::SWAP});
    }
    return false;
}

}  // namespace catalyst
