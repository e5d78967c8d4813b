#include <sstream>

#include "catalyst/catalysis.hpp"

namespace catalyst::catalysis {

namespace {

std::string bits(std::size_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t q = 0; q < width; ++q) {
        if ((value >> (width - 1 - q)) & 1U) s[q] = '1';
    }
    return s;
}

StateVector catalyst_state(const Circuit& gadget, std::size_t data_qubits, const Tower& tower) {
    Preparation sub(gadget.width - data_qubits);
    for (std::size_t q = data_qubits; q < gadget.width; ++q) {
        const auto& p = gadget.prep.qubits[q];
        if (p.kind != PrepKind::CCZ) sub.qubits[q - data_qubits] = p;
    }
    for (const auto& b : gadget.prep.ccz_blocks) {
        if (b[0] < data_qubits || b[1] < data_qubits || b[2] < data_qubits) {
            throw CircuitError("|CCZ> blocks may not touch data qubits");
        }
        sub.set_ccz(b[0] - data_qubits, b[1] - data_qubits, b[2] - data_qubits);
    }
    return prepare(sub, tower);
}

StateVector column_state(const RingMatrix& m, std::size_t col, std::size_t width) {
    StateVector s{width, std::vector<RingElement>(m.rows())};
    for (std::size_t r = 0; r < m.rows(); ++r) s.amplitudes[r] = m(r, col);
    return s;
}

RingElement inner(const StateVector& a, const StateVector& b) {
    RingElement acc;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        if (!a.amplitudes[i].is_zero() && !b.amplitudes[i].is_zero()) {
            acc += conj(a.amplitudes[i]) * b.amplitudes[i];
        }
    }
    return acc;
}

StateVector scaled(const StateVector& s, const RingElement& f) {
    StateVector out = s;
    for (auto& a : out.amplitudes) {
        if (!a.is_zero()) a = f * a;
    }
    return out;
}

}  // namespace

std::string Report::to_text() const {
    std::ostringstream out;
    out << name << ": " << (passed ? "PASS" : "FAIL") << " (" << inputs_checked << " inputs";
    if (global_phase.tower() && !global_phase.is_one()) {
        out << ", global phase " << to_string(global_phase);
    }
    out << ")\n";
    out << "name=" << name << "\n";
    out << "passed=" << (passed ? "true" : "false") << "\n";
    out << "inputs=" << inputs_checked << "\n";
    if (global_phase.tower()) {
        auto f = embed_float(global_phase);
        out << "global_phase=" << to_string(global_phase) << "\n";
        out << "global_phase_float=" << f.real() << (f.imag() < 0 ? "" : "+") << f.imag() << "i\n";
    }
    for (const auto& [k, v] : facts) out << k << "=" << v << "\n";
    for (const auto& f : failures) out << "failure=" << f << "\n";
    return out.str();
}

QubitPrep zk_prep(int k, int sign) {
    if (k < 1) throw std::invalid_argument("zk_prep needs k >= 1");
    if (k == 1) return {PrepKind::Minus, 0};
    if (k == 2) return {sign > 0 ? PrepKind::PlusI : PrepKind::MinusI, 0};
    if (k == 3 && sign > 0) return {PrepKind::T, 0};
    return {sign > 0 ? PrepKind::ZK : PrepKind::ZKdg, k};
}

Report verify_catalysis(const std::string& name, const Circuit& gadget, std::size_t data_qubits,
                        const RingMatrix& reference, const Tower& tower, bool allow_phase) {
    gadget.validate();
    if (data_qubits > gadget.width) throw std::invalid_argument("more data qubits than gadget width");
    const std::size_t dim = std::size_t{1} << data_qubits;
    if (reference.rows() != dim || reference.cols() != dim) {
        throw std::invalid_argument("reference matrix does not match the data register");
    }
    Report report;
    report.name = name;
    report.global_phase = tower.one();
    const StateVector cat = catalyst_state(gadget, data_qubits, tower);
    bool have_phase = !allow_phase;
    for (std::size_t v = 0; v < dim; ++v) {
        StateVector psi = product_state({basis_state(data_qubits, v, tower), cat});
        apply_circuit(psi, gadget, tower);
        StateVector expect = product_state({column_state(reference, v, data_qubits), cat});
        if (!have_phase) {
            report.global_phase = inner(expect, psi);
            have_phase = true;
        }
        ++report.inputs_checked;
        if (psi != scaled(expect, report.global_phase)) {
            report.passed = false;
            report.failures.push_back(bits(v, data_qubits));
        }
    }
    return report;
}

bool catalysis_holds_on(const Circuit& gadget, const std::vector<RingElement>& data_state,
                        const RingMatrix& reference, const Tower& tower) {
    std::size_t data_qubits = 0;
    while ((std::size_t{1} << data_qubits) < data_state.size()) ++data_qubits;
    const StateVector cat = catalyst_state(gadget, data_qubits, tower);
    StateVector psi = product_state({StateVector{data_qubits, data_state}, cat});
    apply_circuit(psi, gadget, tower);
    RingMatrix out = reference * RingMatrix::column(data_state);
    StateVector expect = product_state({column_state(out, 0, data_qubits), cat});
    return psi == expect;
}

}  // namespace catalyst::catalysis
