#include <algorithm>
#include <numeric>

#include "catalyst/catalysis.hpp"

namespace catalyst::catalysis {

namespace {

const TowerPtr* any_tower(const RingMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c).tower()) return &m(r, c).tower();
        }
    }
    return nullptr;
}

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    if ((std::size_t{1} << k) != n) throw std::invalid_argument("dimension is not a power of two");
    return k;
}

// Rewrites PhaseK/CPhaseK instances that coincide with a named gate.
Gate canonical(const Gate& g) {
    if (g.kind == GateKind::PhaseK) {
        if (g.k == 1) return Gate::z(g.qubits[0]);
        if (g.k == 2) return g.sign > 0 ? Gate::s(g.qubits[0]) : Gate::sdg(g.qubits[0]);
        if (g.k == 3) return g.sign > 0 ? Gate::t(g.qubits[0]) : Gate::tdg(g.qubits[0]);
    }
    if (g.kind == GateKind::CPhaseK) {
        const auto& q = g.qubits;
        if (q.size() == 1) return canonical(Gate::phasek(g.k, q[0], g.sign));
        if (q.size() == 2 && g.k == 1) return Gate::cz(q[0], q[1]);
        if (q.size() == 2 && g.k == 2) return g.sign > 0 ? Gate::cs(q[0], q[1]) : Gate::csdg(q[0], q[1]);
        if (q.size() == 3 && g.k == 1) return Gate::ccz(q[0], q[1], q[2]);
    }
    return g;
}

}  // namespace

RingMatrix real_encode_matrix(const RingMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("real_encode_matrix: matrix is not square");
    log2_exact(u.rows());
    const TowerPtr* spec = any_tower(u);
    if (!spec) throw std::invalid_argument("real_encode_matrix: input is not unitary");
    Tower tower(*spec);
    const std::size_t n = u.rows();
    if (u * u.adjoint() != RingMatrix::identity(n, tower)) {
        throw std::invalid_argument("real_encode_matrix: input is not unitary");
    }
    RingMatrix r(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const RingElement re = real_part(u(i, j));
            const RingElement im = imag_part(u(i, j));
            r(i, j) = re;
            r(n + i, n + j) = re;
            r(n + i, j) = im;
            r(i, n + j) = -im;
        }
    }
    return r;
}

Circuit real_encode_circuit(const Circuit& c) {
    c.validate();
    Circuit out(c.width + 1);
    for (std::size_t q = 0; q < c.width; ++q) {
        if (c.prep.qubits[q].kind != PrepKind::CCZ) out.prep.set(q + 1, c.prep.qubits[q]);
    }
    for (const auto& b : c.prep.ccz_blocks) out.prep.set_ccz(b[0] + 1, b[1] + 1, b[2] + 1);

    const std::size_t r = 0;
    auto sh = [](std::size_t q) { return q + 1; };
    for (const Gate& raw : c.gates) {
        const Gate g = canonical(raw);
        const auto& q = g.qubits;
        switch (g.kind) {
            case GateKind::X:
            case GateKind::H:
            case GateKind::CX:
            case GateKind::CCX:
            case GateKind::MCX:
            case GateKind::SWAP: {
                Gate s = g;
                for (auto& x : s.qubits) x = sh(x);
                out.add(s);
                break;
            }
            case GateKind::Z:
                out.add(Gate::h(sh(q[0]))).add(Gate::x(sh(q[0]))).add(Gate::h(sh(q[0])));
                break;
            case GateKind::CZ:
                out.add(Gate::h(sh(q[1]))).add(Gate::cx(sh(q[0]), sh(q[1]))).add(Gate::h(sh(q[1])));
                break;
            case GateKind::CCZ:
                out.add(Gate::h(sh(q[2])))
                    .add(Gate::ccx(sh(q[0]), sh(q[1]), sh(q[2])))
                    .add(Gate::h(sh(q[2])));
                break;
            // Im blocks act on the extra qubit as XZ (or ZX for the adjoint).
            case GateKind::S:
                out.add(Gate::h(r)).add(Gate::cx(sh(q[0]), r)).add(Gate::h(r)).add(Gate::cx(sh(q[0]), r));
                break;
            case GateKind::Sdg:
                out.add(Gate::cx(sh(q[0]), r)).add(Gate::h(r)).add(Gate::cx(sh(q[0]), r)).add(Gate::h(r));
                break;
            case GateKind::CS:
                out.add(Gate::h(r))
                    .add(Gate::ccx(sh(q[0]), sh(q[1]), r))
                    .add(Gate::h(r))
                    .add(Gate::ccx(sh(q[0]), sh(q[1]), r));
                break;
            case GateKind::CSdg:
                out.add(Gate::ccx(sh(q[0]), sh(q[1]), r))
                    .add(Gate::h(r))
                    .add(Gate::ccx(sh(q[0]), sh(q[1]), r))
                    .add(Gate::h(r));
                break;
            case GateKind::Y:
                // Ytilde = XZ (x) XZ
                for (std::size_t t : {r, sh(q[0])}) {
                    out.add(Gate::h(t)).add(Gate::x(t)).add(Gate::h(t)).add(Gate::x(t));
                }
                break;
            default:
                throw CircuitError("no real encoding over Toffoli+H for " + gate_name(raw));
        }
    }
    const bool in_set = std::all_of(out.gates.begin(), out.gates.end(),
                                    [](const Gate& g) { return gateset_allows("toffoli+h", g); });
    if (in_set) out.gateset = "toffoli+h";
    return out;
}

// ---------------------------------------------------------------------------

RingMatrix permute_qubits(const RingMatrix& m, const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    if (m.rows() != (std::size_t{1} << n) || m.cols() != m.rows()) {
        throw std::invalid_argument("permute_qubits: size mismatch");
    }
    auto map_index = [&](std::size_t x) {
        std::size_t y = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if ((x >> (n - 1 - j)) & 1U) y |= std::size_t{1} << (n - 1 - perm[j]);
        }
        return y;
    };
    RingMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(map_index(r), map_index(c)) = m(r, c);
    }
    return out;
}

PermutationMatch match_up_to_qubit_permutation(const RingMatrix& a, const RingMatrix& b,
                                               const Tower& tower) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("match_up_to_qubit_permutation: size mismatch");
    }
    const std::size_t n = log2_exact(a.rows());
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    PermutationMatch best;
    bool first = true;
    do {
        RingMatrix pa = permute_qubits(a, perm);
        std::size_t diff = 0;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) diff += pa(r, c) != b(r, c);
        }
        if (first || diff < best.mismatched_entries) {
            best.perm = perm;
            best.mismatched_entries = diff;
            best.residual = b * pa.adjoint();
            first = false;
        }
        if (diff == 0) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    best.exact = best.mismatched_entries == 0;
    if (best.exact) best.residual = RingMatrix::identity(a.rows(), tower);
    return best;
}

}  // namespace catalyst::catalysis
