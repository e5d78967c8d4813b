#include <numeric>

#include "catalyst/catalysis.hpp"

namespace catalyst::catalysis {

namespace {

// Diagonal phase e^{2 pi i sign / 2^k} on |1...1>, using the named gate where one exists.
Gate controlled_phase(int k, std::vector<std::size_t> qubits, int sign) {
    const std::size_t n = qubits.size();
    if (n == 1) {
        const std::size_t q = qubits[0];
        if (k == 1) return Gate::z(q);
        if (k == 2) return sign > 0 ? Gate::s(q) : Gate::sdg(q);
        if (k == 3) return sign > 0 ? Gate::t(q) : Gate::tdg(q);
        return Gate::phasek(k, q, sign);
    }
    if (n == 2 && k == 1) return Gate::cz(qubits[0], qubits[1]);
    if (n == 2 && k == 2) return sign > 0 ? Gate::cs(qubits[0], qubits[1]) : Gate::csdg(qubits[0], qubits[1]);
    if (n == 3 && k == 1) return Gate::ccz(qubits[0], qubits[1], qubits[2]);
    const std::size_t target = qubits.back();
    qubits.pop_back();
    return Gate::cphasek(k, std::move(qubits), target, sign);
}

Gate multi_x(std::vector<std::size_t> controls, std::size_t target) {
    switch (controls.size()) {
        case 0: return Gate::x(target);
        case 1: return Gate::cx(controls[0], target);
        case 2: return Gate::ccx(controls[0], controls[1], target);
        default: return Gate::mcx(std::move(controls), target);
    }
}

}  // namespace

Circuit controlled_phase_gadget(int k, int m) {
    if (k < 1) throw std::invalid_argument("controlled_phase_gadget needs k >= 1");
    if (m < 0) throw std::invalid_argument("controlled_phase_gadget needs m >= 0");
    const auto um = static_cast<std::size_t>(m);
    Circuit c(um + 2);
    const std::size_t cat = um + 1;
    c.prep.set(cat, zk_prep(k));
    std::vector<std::size_t> controls(um + 1);
    std::iota(controls.begin(), controls.end(), 0);  // controls and the data qubit
    c.add(multi_x(controls, cat));
    // For k = 1 the remaining controlled Z^2 is the identity.
    if (k >= 2) {
        controls.push_back(cat);
        c.add(controlled_phase(k - 1, controls, 1));
    }
    return c;
}

Circuit phase_gadget(int k) {
    if (k < 2) throw std::invalid_argument("phase_gadget needs k >= 2");
    return controlled_phase_gadget(k, 0);
}

Circuit t_gadget() {
    return phase_gadget(3);
}

Circuit transpile_t_to_cs(const Circuit& c) {
    c.validate();
    for (const auto& g : c.gates) {
        if (!gateset_allows("clifford+t", g)) {
            throw CircuitError("transpile_t_to_cs: " + gate_name(g) + " is not a Clifford+T gate");
        }
    }
    Circuit out = c;
    out.gates.clear();
    out.resize(c.width + 1);
    const std::size_t cat = c.width;
    out.prep.set(cat, {PrepKind::T, 0});
    for (const auto& g : c.gates) {
        const std::size_t q = g.qubits[0];
        switch (g.kind) {
            case GateKind::T:
                out.add(Gate::cx(q, cat)).add(Gate::cs(q, cat));
                break;
            case GateKind::Tdg:
                out.add(Gate::cx(q, cat)).add(Gate::cs(q, cat)).add(Gate::sdg(q));
                break;
            case GateKind::Y:
                out.add(Gate::sdg(q)).add(Gate::x(q)).add(Gate::s(q));
                break;
            default:
                out.add(g);
        }
    }
    out.gateset = "cs+h";
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------

CatalyticEmbedding t_to_cs_embedding() {
    CatalyticEmbedding e;
    e.name = "t-to-cs";
    e.catalyst_prep = Preparation(1);
    e.catalyst_prep.set(0, {PrepKind::T, 0});
    e.source_gateset = "clifford+t";
    e.target_gateset = "cs+h";

    Circuit t(2);
    t.add(Gate::cx(0, 1)).add(Gate::cs(0, 1));
    Circuit tdg = t;
    tdg.add(Gate::sdg(0));
    Circuit y(2);
    y.add(Gate::sdg(0)).add(Gate::x(0)).add(Gate::s(0));
    e.gadget_map.emplace(GateKind::T, t);
    e.gadget_map.emplace(GateKind::Tdg, tdg);
    e.gadget_map.emplace(GateKind::Y, y);
    return e;
}

Circuit apply_embedding(const Circuit& c, const CatalyticEmbedding& e) {
    c.validate();
    const std::size_t ncat = e.catalyst_width();
    Circuit out = c;
    out.gates.clear();
    out.resize(c.width + ncat);
    for (std::size_t j = 0; j < ncat; ++j) {
        if (e.catalyst_prep.qubits[j].kind != PrepKind::CCZ) out.prep.set(c.width + j, e.catalyst_prep.qubits[j]);
    }
    for (const auto& b : e.catalyst_prep.ccz_blocks) {
        out.prep.set_ccz(c.width + b[0], c.width + b[1], c.width + b[2]);
    }
    for (const auto& g : c.gates) {
        auto it = e.gadget_map.find(g.kind);
        if (it != e.gadget_map.end()) {
            std::vector<std::size_t> map = g.qubits;
            for (std::size_t j = 0; j < ncat; ++j) map.push_back(c.width + j);
            if (it->second.width != map.size()) {
                throw CircuitError("embedding template for " + gate_name(g) + " has the wrong width");
            }
            out.append(it->second, map);
        } else if (gateset_allows(e.target_gateset, g)) {
            out.add(g);
        } else {
            throw CircuitError("embedding " + e.name + " has no template for " + gate_name(g));
        }
    }
    out.gateset = e.target_gateset;
    out.validate();
    return out;
}

std::vector<Report> verify_embedding(const CatalyticEmbedding& e, const Tower& tower) {
    std::vector<Report> reports;
    const std::size_t ncat = e.catalyst_width();
    for (const auto& [kind, tmpl] : e.gadget_map) {
        const std::size_t arity = tmpl.width - ncat;
        Circuit gadget = tmpl;
        for (std::size_t j = 0; j < ncat; ++j) {
            if (e.catalyst_prep.qubits[j].kind != PrepKind::CCZ) gadget.prep.set(arity + j, e.catalyst_prep.qubits[j]);
        }
        for (const auto& b : e.catalyst_prep.ccz_blocks) {
            gadget.prep.set_ccz(arity + b[0], arity + b[1], arity + b[2]);
        }
        Gate g{kind, {}};
        for (std::size_t q = 0; q < arity; ++q) g.qubits.push_back(q);
        reports.push_back(verify_catalysis(e.name + "/" + gate_name(g), gadget, arity,
                                           gate_matrix(g, tower), tower));
    }
    return reports;
}

}  // namespace catalyst::catalysis
