#include <algorithm>

#include "catalyst/zh.hpp"

namespace catalyst::zh {

std::vector<int> catalyst_boxes(const Diagram& d, const RingElement& a) {
    std::vector<int> out;
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::H && same_label(n.label, a) && d.degree(id) == 1) out.push_back(id);
    }
    return out;
}

namespace {

void check_catalyst_boxes(const Diagram& d, const RingElement& a) {
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::H && same_label(n.label, a) && d.degree(id) != 1) {
            throw ZhError("H-box " + std::to_string(id) + " labelled " + to_string(a) + " has arity " +
                          std::to_string(d.degree(id)) + "; only unary catalyst boxes can be extracted");
        }
    }
}

int only_neighbor(const Diagram& d, int id) { return d.neighbors(id).front(); }

}  // namespace

Extraction extract_catalyst(const Diagram& d, const RingElement& a) {
    check_catalyst_boxes(d, a);
    Extraction ex;
    ex.diagram = d;
    auto boxes = catalyst_boxes(d, a);
    ex.initial_count = boxes.size();
    auto step = [&](const RewriteRule& rule, std::vector<int> ids) {
        ex.diagram = apply_rule(ex.diagram, rule, ids);
        ex.trace.push_back({rule.name, std::move(ids)});
    };

    // Two boxes wired only to each other cannot be paired directly; a third one
    // from the scalar rule breaks the tie.
    if (boxes.size() == 2 && only_neighbor(d, boxes[0]) == boxes[1]) {
        step(scalar_intro_rule(a), {});
        boxes = catalyst_boxes(ex.diagram, a);
    }
    if (boxes.empty()) {
        step(scalar_intro_rule(a), {});
        return ex;
    }
    const RewriteRule cat = catalysis_rule(a);
    while (boxes.size() > 1) {
        // Pair the first box with one that is not its own neighbour.
        const int first = boxes[0];
        int partner = -1;
        for (std::size_t k = 1; k < boxes.size() && partner < 0; ++k) {
            if (only_neighbor(ex.diagram, first) != boxes[k]) partner = boxes[k];
        }
        if (partner < 0) throw ZhError("no catalysis pairing available");
        step(cat, {first, partner});
        boxes = catalyst_boxes(ex.diagram, a);
    }
    return ex;
}

Split split_on_catalyst(const Diagram& d, const RingElement& a, const Tower& tower) {
    check_catalyst_boxes(d, a);
    auto boxes = catalyst_boxes(d, a);
    if (boxes.size() != 1) {
        throw ZhError("split needs exactly one catalyst box, found " + std::to_string(boxes.size()));
    }
    std::optional<std::size_t> gen;
    for (std::size_t j = 0; j < tower.size(); ++j) {
        if (same_label(tower.generator(j), a)) gen = j;
    }
    if (!gen) throw ZhError("catalyst " + to_string(a) + " is not a generator of the evaluation tower");

    // Open the catalyst wire as a new last input.
    Diagram open = d;
    const int box = boxes.front();
    const int neighbor = only_neighbor(d, box);
    open.remove_node(box);
    std::vector<int> inputs = open.inputs();
    Node wire{open.next_id(), NodeKind::Boundary, {}};
    open.insert(wire);
    open.add_edge(wire.id, neighbor);
    inputs.push_back(wire.id);
    open.set_boundaries(inputs, open.outputs());

    const RingMatrix full = eval_tensor(open, tower);
    Split s{RingMatrix(full.rows(), full.cols() / 2), RingMatrix(full.rows(), full.cols() / 2)};
    for (std::size_t r = 0; r < full.rows(); ++r) {
        for (std::size_t c = 0; c < s.m0.cols(); ++c) {
            s.m0(r, c) = full(r, 2 * c);
            s.m1(r, c) = full(r, 2 * c + 1);
        }
    }

    const std::size_t bit = std::size_t{1} << *gen;
    for (const RingMatrix* m : {&s.m0, &s.m1}) {
        for (std::size_t r = 0; r < m->rows(); ++r) {
            for (std::size_t c = 0; c < m->cols(); ++c) {
                const auto& coeffs = (*m)(r, c).coefficients();
                for (std::size_t mask = 0; mask < coeffs.size(); ++mask) {
                    if ((mask & bit) && !coeffs[mask].is_zero()) {
                        throw ZhError("split component depends on the catalyst at entry (" + std::to_string(r) +
                                      ", " + std::to_string(c) + ")");
                    }
                }
            }
        }
    }
    if (eval_tensor(d, tower) != s.m0 + tower.generator(*gen) * s.m1) {
        throw ZhError("split components do not recombine to the diagram");
    }
    return s;
}

// ---------------------------------------------------------------------------

CircuitDiagram circuit_to_diagram(const Circuit& c, const Tower& tower) {
    c.validate();
    CircuitDiagram cd;
    cd.scalar = tower.one();
    Diagram& d = cd.diagram;
    std::vector<int> ins, ends;
    for (std::size_t q = 0; q < c.width; ++q) ins.push_back(d.add_input());
    ends = ins;

    // Z-spider spliced into the wire of q, with one extra free leg to attach to.
    auto tap = [&](std::size_t q) {
        const int z = d.add_z();
        d.add_edge(ends[q], z);
        ends[q] = z;
        return z;
    };
    // Parity spider spliced into the wire of q; returns the free leg.
    auto xor_tap = [&](std::size_t q) {
        auto legs = add_x_spider(d, 3);
        d.add_edge(ends[q], legs[0]);
        ends[q] = legs[1];
        return legs[2];
    };
    auto last_diagonal = [&](const Gate& g) {
        const RingMatrix m = gate_matrix(g, tower);
        return m(m.rows() - 1, m.cols() - 1);
    };

    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::Z: case GateKind::S: case GateKind::Sdg: case GateKind::T: case GateKind::Tdg:
            case GateKind::PhaseK:
            case GateKind::CZ: case GateKind::CS: case GateKind::CSdg: case GateKind::CCZ: case GateKind::CPhaseK: {
                const int h = d.add_h(last_diagonal(g));
                for (std::size_t q : g.qubits) d.add_edge(tap(q), h);
                break;
            }
            case GateKind::H: {
                const int h = d.add_h();
                d.add_edge(ends[g.qubits[0]], h);
                ends[g.qubits[0]] = h;
                cd.scalar *= tower.sqrt2();
                break;
            }
            case GateKind::X: {
                auto [a, b] = add_not(d);
                d.add_edge(ends[g.qubits[0]], a);
                ends[g.qubits[0]] = b;
                break;
            }
            case GateKind::Y: {
                // Y = i X Z
                d.add_edge(tap(g.qubits[0]), d.add_h());
                auto [a, b] = add_not(d);
                d.add_edge(ends[g.qubits[0]], a);
                ends[g.qubits[0]] = b;
                cd.scalar *= -tower.i();
                break;
            }
            case GateKind::CX: {
                const int z = tap(g.qubits[0]);
                d.add_edge(z, xor_tap(g.qubits[1]));
                break;
            }
            case GateKind::CCX: case GateKind::MCX: {
                // AND of the controls, XORed into the target.
                d.add_star();
                const int conj = d.add_h(), out = d.add_h();
                for (std::size_t k = 0; k + 1 < g.qubits.size(); ++k) d.add_edge(tap(g.qubits[k]), conj);
                d.add_edge(conj, out);
                d.add_edge(out, xor_tap(g.qubits.back()));
                break;
            }
            case GateKind::SWAP:
                std::swap(ends[g.qubits[0]], ends[g.qubits[1]]);
                break;
            default:
                throw ZhError("circuit_to_diagram: unsupported gate " + gate_name(g));
        }
    }
    std::vector<int> outs;
    for (std::size_t q = 0; q < c.width; ++q) {
        outs.push_back(d.add_output());
        d.add_edge(ends[q], outs.back());
    }
    d.set_boundaries(ins, outs);
    return cd;
}

}  // namespace catalyst::zh
