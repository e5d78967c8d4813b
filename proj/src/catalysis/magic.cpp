#include <cmath>

#include "catalyst/catalysis.hpp"

namespace catalyst::catalysis {

Circuit ccz_to_3t() {
    Circuit c(3);
    c.prep.set_ccz(0, 1, 2);
    c.add(Gate::cx(0, 2))
        .add(Gate::cx(0, 1))
        .add(Gate::s(0))
        .add(Gate::h(0))
        .add(Gate::t(0))
        .add(Gate::cx(0, 1))
        .add(Gate::cx(2, 0))
        .add(Gate::cx(1, 2));
    return c;
}

Report verify_ccz_to_3t(const Tower& tower) {
    const Circuit c = ccz_to_3t();
    Report report;
    report.name = "ccz-to-3t";
    report.inputs_checked = 1;
    StateVector out = simulate(c, tower);
    Preparation ttt(3);
    for (std::size_t q = 0; q < 3; ++q) ttt.set(q, {PrepKind::T, 0});
    StateVector target = prepare(ttt, tower);

    RingElement phase = tower.zero();
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
        phase += conj(target.amplitudes[i]) * out.amplitudes[i];
    }
    report.global_phase = phase;
    bool equal = (conj(phase) * phase).is_one();
    for (std::size_t i = 0; equal && i < out.amplitudes.size(); ++i) {
        equal = out.amplitudes[i] == phase * target.amplitudes[i];
    }
    report.passed = equal && c.t_count() == 1;
    if (!equal) report.failures.push_back("|CCZ> does not map to |T>|T>|T>");
    if (c.t_count() != 1) report.failures.push_back("T-count is " + std::to_string(c.t_count()));
    report.facts.emplace_back("t_count", std::to_string(c.t_count()));
    report.facts.emplace_back("gates", std::to_string(c.gates.size()));
    return report;
}

Circuit transpile_ccz_to_3t(const Circuit& c) {
    c.validate();
    Circuit out = c;
    out.gates.clear();
    const Circuit conversion = ccz_to_3t();
    for (const auto& b : c.prep.ccz_blocks) out.append(conversion, {b[0], b[1], b[2]});
    for (const auto& g : c.gates) out.add(g);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------

double MixedDecomposition::one_norm() const {
    double total = 0.0;
    for (const auto& t : terms) total += std::abs(embed_float(t.weight).real());
    return total;
}

RingMatrix density_matrix(const StateVector& psi) {
    RingMatrix col = RingMatrix::column(psi.amplitudes);
    return col * col.adjoint();
}

RingMatrix MixedDecomposition::reconstruct(const Tower& tower) const {
    RingMatrix acc;
    for (const auto& t : terms) {
        RingMatrix rho = lift_to(t.weight, tower) * density_matrix(simulate(t.prep, tower));
        acc = acc.rows() == 0 ? rho : acc + rho;
    }
    return acc;
}

MixedDecomposition decompose_t_dm() {
    Tower tower = Tower::clifford_t();
    const RingElement half_sqrt2 = tower.sqrt2().shifted(-1);
    const RingElement neg = -(tower.sqrt2() - tower.one()).shifted(-1);
    auto prep = [](PrepKind kind) {
        Circuit c(1);
        c.prep.set(0, {kind, 0});
        return c;
    };
    MixedDecomposition d;
    d.target_description = "|T><T| with |T> = T|+>";
    d.terms.push_back({half_sqrt2, prep(PrepKind::Plus)});
    d.terms.push_back({half_sqrt2, prep(PrepKind::PlusI)});
    d.terms.push_back({neg, prep(PrepKind::Zero)});
    d.terms.push_back({neg, prep(PrepKind::One)});
    return d;
}

}  // namespace catalyst::catalysis
