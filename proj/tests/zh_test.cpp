#include <random>

#include <gtest/gtest.h>

#include "catalyst/zh.hpp"
#include "support/circuit_gen.hpp"
#include "support/zh_gen.hpp"

namespace catalyst {
void PrintTo(const RingMatrix& m, std::ostream* os) { *os << "\n" << m.to_string(); }
}  // namespace catalyst

using namespace catalyst;
using namespace catalyst::zh;
namespace ct = catalyst::testing;

namespace {

const Tower& ct_tower() {
    static const Tower t = Tower::clifford_t();
    return t;
}

RingElement omega() { return ct_tower().generator("w"); }

// Oracle: sum over one bit per edge, each generator read off its definition.
RingMatrix brute_force(const Diagram& d, const Tower& t) {
    const auto& edges = d.edges();
    const std::size_t n_in = d.inputs().size(), n_out = d.outputs().size();
    RingMatrix m(std::size_t{1} << n_out, std::size_t{1} << n_in);
    RingElement scalar = t.one();
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::Star) scalar *= Dyadic(1).shifted(-1);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            RingElement total = t.zero();
            for (std::size_t bits = 0; bits < (std::size_t{1} << edges.size()); ++bits) {
                RingElement term = t.one();
                for (const auto& [id, n] : d.nodes()) {
                    std::vector<int> seen;
                    for (std::size_t e = 0; e < edges.size(); ++e) {
                        const int b = static_cast<int>((bits >> e) & 1u);
                        if (edges[e].first == id) seen.push_back(b);
                        if (edges[e].second == id) seen.push_back(b);
                    }
                    bool all0 = true, all1 = true;
                    for (int b : seen) (b ? all0 : all1) = false;
                    if (n.kind == NodeKind::Z) {
                        term *= t.integer(static_cast<int>(all0) + static_cast<int>(all1));
                    } else if (n.kind == NodeKind::H) {
                        if (all1) term *= label_of(n, t);
                    } else if (n.kind == NodeKind::Boundary) {
                        auto pos = std::find(d.outputs().begin(), d.outputs().end(), id);
                        int want;
                        if (pos != d.outputs().end()) {
                            want = static_cast<int>((r >> (n_out - 1 - (pos - d.outputs().begin()))) & 1u);
                        } else {
                            pos = std::find(d.inputs().begin(), d.inputs().end(), id);
                            want = static_cast<int>((c >> (n_in - 1 - (pos - d.inputs().begin()))) & 1u);
                        }
                        if (seen[0] != want) term = t.zero();
                    }
                    if (term.is_zero()) break;
                }
                total += term;
            }
            m(r, c) = total * scalar;
        }
    }
    return m;
}

RingMatrix column(std::initializer_list<long> v) {
    std::vector<RingElement> out;
    for (long x : v) out.push_back(ct_tower().integer(x));
    return RingMatrix::column(out);
}

Diagram single(NodeKind kind, std::size_t ins, std::size_t outs, std::optional<RingElement> label = {}) {
    Diagram d;
    std::vector<int> i, o;
    for (std::size_t k = 0; k < ins; ++k) i.push_back(d.add_input());
    for (std::size_t k = 0; k < outs; ++k) o.push_back(d.add_output());
    const int n = kind == NodeKind::Z ? d.add_z() : d.add_h(label);
    for (int b : i) d.add_edge(b, n);
    for (int b : o) d.add_edge(b, n);
    d.set_boundaries(i, o);
    return d;
}

Diagram h_state(const RingElement& a) { return single(NodeKind::H, 0, 1, a); }

// Every boundary of a pattern side becomes an output, and the pattern's
// internal ids are kept, so the lhs can be matched in place.
Diagram in_context(std::mt19937_64& rng, const Diagram& lhs) {
    Diagram d;
    for (const auto& [id, n] : lhs.nodes()) {
        if (n.kind != NodeKind::Boundary) d.insert(n);
    }
    std::vector<int> outs;
    for (int b : lhs.outputs()) {
        const int inner = lhs.neighbors(b).front();
        switch (rng() % 3) {
            case 0: {
                outs.push_back(d.add_output());
                d.add_edge(inner, outs.back());
                break;
            }
            case 1: {
                const int z = d.add_z();
                d.add_edge(inner, z);
                if (rng() % 2) {
                    outs.push_back(d.add_output());
                    d.add_edge(z, outs.back());
                }
                break;
            }
            default: {
                const int h = d.add_h(rng() % 2 ? ct_tower().i() : minus_one());
                d.add_edge(inner, h);
                break;
            }
        }
    }
    for (const auto& [a, b] : lhs.edges()) {
        if (lhs.node(a).kind != NodeKind::Boundary && lhs.node(b).kind != NodeKind::Boundary) d.add_edge(a, b);
    }
    while (outs.size() > 6) outs.pop_back();
    // Drop boundaries that no longer fit the cap by capping them with Z-spiders.
    std::vector<int> keep;
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind == NodeKind::Boundary && std::find(outs.begin(), outs.end(), id) == outs.end()) keep.push_back(id);
    }
    for (int id : keep) {
        const int nb = d.neighbors(id).front();
        d.remove_node(id);
        d.add_edge(nb, d.add_z());
    }
    d.set_boundaries({}, outs);
    return d;
}

std::vector<int> internal_ids(const Diagram& d) {
    std::vector<int> out;
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind != NodeKind::Boundary) out.push_back(id);
    }
    return out;
}

std::vector<RewriteRule> all_rules() {
    auto rules = phase_free_rules();
    rules.push_back(multiply_rule());
    for (const RingElement& a : {ct_tower().i(), omega(), ct_tower().integer(-1)}) {
        rules.push_back(catalysis_rule(a));
        rules.push_back(scalar_intro_rule(a));
        rules.push_back(euler_rule(a));
    }
    return rules;
}

}  // namespace

TEST(eval, generator_examples) {
    const Tower& t = ct_tower();
    EXPECT_EQ(eval_tensor(single(NodeKind::Z, 1, 1)), RingMatrix::identity(2, t));
    EXPECT_EQ(eval_tensor(single(NodeKind::H, 0, 1)), column({1, -1}));
    EXPECT_EQ(eval_tensor(single(NodeKind::Z, 0, 3)), column({1, 0, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(eval_tensor(single(NodeKind::H, 0, 2, t.i())), RingMatrix::column({t.one(), t.one(), t.one(), t.i()}));

    Diagram z0;
    z0.add_z();
    EXPECT_EQ(eval_tensor(z0)(0, 0), t.integer(2));
    Diagram h0;
    h0.add_h(omega());
    EXPECT_EQ(eval_tensor(h0)(0, 0), omega());
    Diagram star;
    star.add_star();
    EXPECT_EQ(eval_tensor(star)(0, 0), t.dyadic(Dyadic(1).shifted(-1)));
}

TEST(eval, matches_brute_force_on_random_diagrams) {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int trial = 0; trial < 300 && checked < 120; ++trial) {
        Diagram d = ct::random_diagram(rng, ct_tower(), omega(), true, {7, 2, 2, 2});
        if (d.edges().size() > 13) continue;
        ++checked;
        EXPECT_EQ(eval_tensor(d, ct_tower()), brute_force(d, ct_tower())) << serialize_diagram(d);
    }
    EXPECT_GE(checked, 100);
}

TEST(eval, self_loops_and_caps) {
    Diagram d;
    const int z = d.add_z(), h = d.add_h();
    d.add_edge(z, z);
    d.add_edge(h, h);
    const int o = d.add_output();
    d.add_edge(z, o);
    d.add_edge(z, h);
    d.set_boundaries({}, {o});
    EXPECT_EQ(eval_tensor(d), brute_force(d, ct_tower()));

    Diagram wide;
    std::vector<int> outs;
    const int c = wide.add_z();
    for (int k = 0; k < 13; ++k) {
        outs.push_back(wide.add_output());
        wide.add_edge(c, outs.back());
    }
    wide.set_boundaries({}, outs);
    EXPECT_THROW(eval_tensor(wide), ZhError);
    EXPECT_NO_THROW(eval_tensor(wide, ct_tower(), {13, 512, 22}));

    Diagram bad = single(NodeKind::H, 0, 1, Tower::cyclotomic(3).root_of_unity(4));
    EXPECT_THROW(eval_tensor(bad, Tower::cyclotomic(1)), ZhError);
}

TEST(eval, derived_generators) {
    const Tower& t = ct_tower();
    for (std::size_t legs = 1; legs <= 4; ++legs) {
        Diagram d;
        auto free = add_x_spider(d, legs);
        std::vector<int> outs;
        for (int f : free) {
            outs.push_back(d.add_output());
            d.add_edge(f, outs.back());
        }
        d.set_boundaries({}, outs);
        RingMatrix m = eval_tensor(d);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            EXPECT_EQ(m(r, 0), t.integer(__builtin_popcountll(r) % 2 == 0 ? 1 : 0));
        }
    }
    Diagram n;
    auto [a, b] = add_not(n);
    const int i = n.add_input(), o = n.add_output();
    n.add_edge(i, a);
    n.add_edge(b, o);
    n.set_boundaries({i}, {o});
    RingMatrix x(2, 2);
    x(0, 1) = t.one();
    x(1, 0) = t.one();
    x(0, 0) = t.zero();
    x(1, 1) = t.zero();
    EXPECT_EQ(eval_tensor(n), x);
}

TEST(compose, identity_tensor_and_functoriality) {
    const Tower& t = ct_tower();
    Diagram s = single(NodeKind::H, 1, 1, t.i());
    EXPECT_EQ(eval_tensor(compose(identity_diagram(1), s)), eval_tensor(s));
    EXPECT_EQ(eval_tensor(compose(s, identity_diagram(1))), eval_tensor(s));
    EXPECT_EQ(eval_tensor(tensor(h_state(minus_one()), h_state(minus_one()))), column({1, -1, -1, 1}));
    EXPECT_THROW(compose(identity_diagram(2), s), ZhError);
    // A closed loop is a Z-spider with no legs.
    Diagram loop = compose(single(NodeKind::Z, 0, 2), single(NodeKind::Z, 2, 0));
    EXPECT_EQ(eval_tensor(loop)(0, 0), t.integer(2));
    Diagram trace = compose(compose(single(NodeKind::Z, 0, 2), tensor(identity_diagram(1), s)),
                            single(NodeKind::Z, 2, 0));
    EXPECT_EQ(eval_tensor(trace)(0, 0), t.one() + t.i());

    std::mt19937_64 rng(5);
    int composed = 0;
    for (int trial = 0; trial < 400 && composed < 60; ++trial) {
        Diagram a = ct::random_diagram(rng, t, omega(), true, {6, 1, 2, 2});
        Diagram b = ct::random_diagram(rng, t, omega(), true, {6, 1, 2, 2});
        EXPECT_EQ(eval_tensor(tensor(a, b), t), kron(eval_tensor(a, t), eval_tensor(b, t)));
        if (a.outputs().size() != b.inputs().size()) continue;
        ++composed;
        EXPECT_EQ(eval_tensor(compose(a, b), t), eval_tensor(b, t) * eval_tensor(a, t));
    }
    EXPECT_GE(composed, 40);
}

TEST(rules, every_library_rule_is_sound) {
    const Tower t = Tower::cyclotomic(3);
    for (const auto& r : all_rules()) {
        SoundnessReport rep = check_soundness(r, t);
        EXPECT_TRUE(rep.sound) << r.name << ": " << rep.witness;
        EXPECT_GT(rep.instances_checked, 0u);
    }
    RuleBook book(t);
    for (auto& r : all_rules()) EXPECT_TRUE(book.register_rule(std::move(r)).sound);
    EXPECT_NE(book.find("ba2"), nullptr);
    EXPECT_NE(book.find("catalysis:w"), nullptr);
}

TEST(rules, unsound_rule_is_rejected_with_witness) {
    RewriteRule wrong = phase_free_rules().front();  // zs
    wrong.name = "zs-wrong";
    wrong.make = [](const RuleArgs& a) {
        Pattern p = phase_free_rules().front().make(a);
        if (a.ints[0] == 2) p.rhs.add_star();
        return p;
    };
    RuleBook book(ct_tower());
    SoundnessReport rep = book.register_rule(wrong);
    EXPECT_FALSE(rep.sound);
    EXPECT_NE(rep.witness.find("ints=(2,"), std::string::npos) << rep.witness;
    EXPECT_EQ(book.find("zs-wrong"), nullptr);
    EXPECT_TRUE(book.rules().empty());

    // Catalysis with the plain label instead of its square on the binary box.
    RewriteRule bad = catalysis_rule(ct_tower().i());
    bad.make = [](const RuleArgs&) {
        Pattern p = catalysis_rule(ct_tower().i()).make({});
        Pattern q = catalysis_rule(omega()).make({});
        p.rhs = q.rhs;
        return p;
    };
    EXPECT_FALSE(check_soundness(bad, ct_tower()).sound);
}

TEST(rules, multiply_minus_one_specialisation) {
    RewriteRule m = multiply_rule({{minus_one(), minus_one()}});
    EXPECT_TRUE(check_soundness(m, ct_tower()).sound);
    EXPECT_EQ(check_soundness(m, ct_tower()).instances_checked, 4u);
}

TEST(rules, catalysis_and_euler_reject_bad_labels) {
    EXPECT_THROW(catalysis_rule(ct_tower().zero()), ZhError);
    EXPECT_THROW(euler_rule(ct_tower().integer(3)), ZhError);
    EXPECT_TRUE(check_soundness(euler_rule(ct_tower().integer(2)), ct_tower()).sound);
}

TEST(apply_rule, examples) {
    const Tower& t = ct_tower();
    Diagram d;
    const int i = d.add_input(), o1 = d.add_output(), o2 = d.add_output();
    const int z1 = d.add_z(), z2 = d.add_z();
    d.add_edge(i, z1);
    d.add_edge(z1, z2);
    d.add_edge(z2, o1);
    d.add_edge(z2, o2);
    d.set_boundaries({i}, {o1, o2});
    const RewriteRule zs = *rule_by_name("zs", t);
    Diagram fused = apply_rule(d, zs, {z1, z2});
    EXPECT_EQ(fused.internal_count(), 1u);
    EXPECT_EQ(eval_tensor(fused), eval_tensor(d));

    const RewriteRule id = *rule_by_name("id", t);
    Diagram wire = single(NodeKind::Z, 1, 1);
    Diagram removed = apply_rule(wire, id, internal_ids(wire));
    EXPECT_EQ(removed.internal_count(), 0u);
    EXPECT_EQ(eval_tensor(removed), RingMatrix::identity(2, t));

    EXPECT_THROW(apply_rule(d, id, {z2}), ZhError);  // z2 has three legs
    EXPECT_TRUE(match_error(d, zs, {z1, o1}).has_value());
    EXPECT_TRUE(match_error(d, zs, {z1, z1}).has_value());
    EXPECT_FALSE(match_error(d, zs, {z2, z1}).has_value());
    EXPECT_FALSE(rule_by_name("nope", t).has_value());
}

TEST(apply_rule, preserves_semantics_at_random_sites) {
    std::mt19937_64 rng(21);
    const Tower t = Tower::cyclotomic(3);
    for (const auto& rule : all_rules()) {
        for (int trial = 0; trial < 12; ++trial) {
            RuleArgs args = rule.soundness_instances[rng() % rule.soundness_instances.size()];
            Pattern p = rule.make(args);
            Diagram host = in_context(rng, p.lhs);
            std::vector<int> ids = internal_ids(p.lhs);
            auto err = match_error(host, rule, ids);
            ASSERT_FALSE(err.has_value()) << rule.name << ": " << *err;
            Diagram after = apply_rule(host, rule, ids);
            after.validate();
            EXPECT_EQ(eval_tensor(after, t), eval_tensor(host, t)) << rule.name;
        }
    }
}

TEST(find_matches, locates_sites_in_random_diagrams) {
    std::mt19937_64 rng(8);
    const Tower& t = ct_tower();
    std::size_t applied = 0;
    for (int trial = 0; trial < 150; ++trial) {
        Diagram d = ct::random_diagram(rng, t, omega(), true, {8, 3, 1, 2});
        for (const auto& rule : all_rules()) {
            for (const auto& ids : find_matches(d, rule, 4)) {
                ASSERT_FALSE(match_error(d, rule, ids).has_value());
                EXPECT_EQ(eval_tensor(apply_rule(d, rule, ids), t), eval_tensor(d, t)) << rule.name;
                ++applied;
            }
        }
    }
    EXPECT_GT(applied, 200u);
    EXPECT_TRUE(find_matches(Diagram(), *rule_by_name("zs", t)).empty());
    EXPECT_EQ(find_matches(Diagram(), scalar_intro_rule(t.i())).size(), 1u);
}

TEST(identities, h_state_equals_z_phase_state) {
    const Tower& t = ct_tower();
    for (const RingElement& a : {t.i(), omega(), t.integer(-1)}) {
        // Z-spider with a phase leg, written as a unary H(a) on its second leg.
        Diagram z;
        const int o = z.add_output(), c = z.add_z();
        z.add_edge(c, o);
        z.add_edge(c, z.add_h(a));
        z.set_boundaries({}, {o});
        EXPECT_TRUE(semantic_equal(z, h_state(a)));
        EXPECT_EQ(eval_tensor(h_state(a)), RingMatrix::column({t.one(), a}));
    }
    // H(1) state is |+> without normalisation, the bare unary Z-spider.
    EXPECT_TRUE(semantic_equal(h_state(t.one()), single(NodeKind::Z, 0, 1)));
}

TEST(identities, euler_decomposition) {
    const Tower t = Tower::cyclotomic(3);
    for (const RingElement& a : {t.i(), t.root_of_unity(3), t.root_of_unity(4)}) {
        Pattern p = euler_rule(a).make({});
        EXPECT_EQ(eval_tensor(p.lhs, t), eval_tensor(p.rhs, t));
        EXPECT_EQ(eval_tensor(p.lhs, t), RingMatrix::column({t.one(), t.one(), t.one(), a * a}));
    }
}

TEST(extract, step_counts_and_semantics) {
    const Tower& t = ct_tower();
    const RingElement a = t.i();
    for (std::size_t count : {0u, 1u, 2u, 5u}) {
        Diagram d;
        const int o = d.add_output(), z = d.add_z();
        d.add_edge(o, z);
        for (std::size_t k = 0; k < count; ++k) d.add_edge(z, d.add_h(a));
        d.set_boundaries({}, {o});
        Extraction ex = extract_catalyst(d, a);
        EXPECT_EQ(ex.initial_count, count);
        EXPECT_EQ(ex.trace.size(), count == 0 ? 1u : count - 1);
        EXPECT_EQ(catalyst_boxes(ex.diagram, a).size(), 1u);
        EXPECT_TRUE(semantic_equal(d, ex.diagram));
        EXPECT_EQ(serialize_diagram(replay(d, ex.trace, t)), serialize_diagram(ex.diagram));
        EXPECT_EQ(serialize_diagram(replay(d, parse_trace(serialize_trace(ex.trace)), t)),
                  serialize_diagram(ex.diagram));
        if (count == 0) {
            EXPECT_EQ(ex.trace[0].rule, "scalar_intro:i");
        }
    }
    Diagram binary = single(NodeKind::H, 1, 1, a);
    EXPECT_THROW(extract_catalyst(binary, a), ZhError);
}

TEST(extract, mutually_wired_pair) {
    const Tower& t = ct_tower();
    Diagram d;
    d.add_edge(d.add_h(omega()), d.add_h(omega()));
    Extraction ex = extract_catalyst(d, omega());
    EXPECT_EQ(catalyst_boxes(ex.diagram, omega()).size(), 1u);
    EXPECT_EQ(eval_tensor(ex.diagram, t), eval_tensor(d, t));
    EXPECT_EQ(eval_tensor(d, t)(0, 0), t.one() + t.i());
}

TEST(extract, random_diagrams) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const bool use_i = trial % 2 == 0;
        const Tower t = use_i ? Tower::cyclotomic(1) : ct_tower();
        const RingElement a = use_i ? t.i() : omega();
        Diagram d = ct::random_diagram(rng, t, a, !use_i);
        const std::size_t count = catalyst_boxes(d, a).size();
        Extraction ex = extract_catalyst(d, a);
        EXPECT_EQ(ex.trace.size(), count == 0 ? 1u : count - 1);
        EXPECT_EQ(catalyst_boxes(ex.diagram, a).size(), 1u);
        EXPECT_EQ(eval_tensor(ex.diagram, t), eval_tensor(d, t));
        Split s = split_on_catalyst(ex.diagram, a, t);
        EXPECT_EQ(eval_tensor(d, t), s.m0 + a * s.m1);
    }
}

TEST(split, catalyst_state_itself) {
    const Tower& t = ct_tower();
    Split s = split_on_catalyst(h_state(t.i()), t.i(), t);
    EXPECT_EQ(s.m0, column({1, 0}));
    EXPECT_EQ(s.m1, column({0, 1}));
    EXPECT_THROW(split_on_catalyst(single(NodeKind::Z, 0, 1), t.i(), t), ZhError);
    EXPECT_THROW(split_on_catalyst(h_state(t.integer(2)), t.integer(2), t), ZhError);
}

TEST(split, intro_bookkeeping) {
    // A catalyst-free diagram after the scalar rule: the whole value sits in m0.
    const Tower& t = ct_tower();
    Diagram d = single(NodeKind::H, 0, 2);
    Extraction ex = extract_catalyst(d, t.i());
    Split s = split_on_catalyst(ex.diagram, t.i(), t);
    EXPECT_EQ(s.m0, eval_tensor(d, t));
    EXPECT_TRUE(s.m1.is_zero());
}

TEST(split, equal_diagrams_give_equal_components) {
    std::mt19937_64 rng(41);
    const Tower t = Tower::cyclotomic(1);
    const RingElement a = t.i();
    for (int trial = 0; trial < 40; ++trial) {
        Diagram d = ct::random_diagram(rng, t, a, false);
        // A semantically equal variant: an extra catalyst from the scalar rule.
        Diagram e = apply_rule(d, scalar_intro_rule(a), {});
        Split s1 = split_on_catalyst(extract_catalyst(d, a).diagram, a, t);
        Split s2 = split_on_catalyst(extract_catalyst(e, a).diagram, a, t);
        EXPECT_EQ(s1.m0, s2.m0);
        EXPECT_EQ(s1.m1, s2.m1);
    }
}

TEST(circuits, gate_constructions) {
    const Tower& t = ct_tower();
    Circuit ccz(3);
    ccz.add(Gate::ccz(0, 1, 2));
    CircuitDiagram cd = circuit_to_diagram(ccz, t);
    RingMatrix expect = RingMatrix::identity(8, t);
    expect(7, 7) = t.integer(-1);
    EXPECT_EQ(eval_tensor(cd.diagram, t), expect);
    EXPECT_TRUE(cd.scalar.is_one());

    for (const Gate& g : {Gate::cx(0, 1), Gate::cz(0, 1), Gate::cs(1, 0), Gate::ccx(0, 2, 1), Gate::swap(0, 2)}) {
        Circuit c(3);
        c.add(g);
        CircuitDiagram d = circuit_to_diagram(c, t);
        EXPECT_EQ(eval_tensor(d.diagram, t), d.scalar * unitary_of(c, t)) << gate_name(g);
        EXPECT_TRUE(d.scalar.is_one());
    }
    Circuit cz(2), cx(2);
    cz.add(Gate::cz(0, 1));
    cx.add(Gate::cx(0, 1));
    EXPECT_FALSE(semantic_equal(circuit_to_diagram(cz, t).diagram, circuit_to_diagram(ccz, t).diagram));
    EXPECT_FALSE(semantic_equal(circuit_to_diagram(cz, t).diagram, circuit_to_diagram(cx, t).diagram));

    Circuit empty(2);
    CircuitDiagram e = circuit_to_diagram(empty, t);
    EXPECT_EQ(e.diagram.internal_count(), 0u);
    EXPECT_EQ(eval_tensor(e.diagram, t), RingMatrix::identity(4, t));

    Circuit tc(1);
    tc.add(Gate::t(0));
    CircuitDiagram td = circuit_to_diagram(tc, t);
    std::size_t omega_boxes = 0;
    for (const auto& [id, n] : td.diagram.nodes()) omega_boxes += n.kind == NodeKind::H && same_label(n.label, omega());
    EXPECT_EQ(omega_boxes, 1u);

    Circuit y(1);
    y.add(Gate::y(0));
    CircuitDiagram yd = circuit_to_diagram(y, t);
    EXPECT_EQ(eval_tensor(yd.diagram, t), yd.scalar * unitary_of(y, t));
    EXPECT_EQ(yd.scalar, -t.i());
}

TEST(circuits, random_circuits_up_to_scalar_record) {
    std::mt19937_64 rng(12);
    const Tower t = Tower::cyclotomic(3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t width = 1 + trial % 3;
        Circuit c = ct::random_circuit(rng, width, 12, ct::clifford_t_pool(), 6);
        if (width >= 3 && trial % 2) c.add(Gate::ccx(2, 0, 1));
        if (width >= 2) c.add(Gate::phasek(4, 1, -1)).add(Gate::cs(0, 1)).add(Gate::x(0));
        CircuitDiagram cd = circuit_to_diagram(c, t);
        EXPECT_EQ(eval_tensor(cd.diagram, t), cd.scalar * unitary_of(c, t));
    }
}

TEST(text, round_trip_and_errors) {
    const Tower& t = ct_tower();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Diagram d = ct::random_diagram(rng, t, omega(), true);
        const std::string text = serialize_diagram(d);
        Diagram back = parse_diagram(text, t);
        EXPECT_EQ(serialize_diagram(back), text);
        EXPECT_EQ(eval_tensor(back, t), eval_tensor(d, t));
    }
    Diagram p = parse_diagram("# cz\nnode 0 boundary\nnode 1 z\nnode 2 h 1/2 + w\nnode 3 h\n"
                              "edge 0 1\nedge 1 2\nedge 1 3\nout 0\n",
                              t);
    EXPECT_EQ(p.node(3).label, minus_one());
    EXPECT_EQ(p.node(2).label, t.parse("1/2 + w"));
    EXPECT_THROW(parse_diagram("node 0 q\n", t), ZhError);
    EXPECT_THROW(parse_diagram("node 0 z\nnode 0 z\n", t), ZhError);
    EXPECT_THROW(parse_diagram("node 0 boundary\n", t), ZhError);  // not listed, degree 0
    EXPECT_THROW(parse_diagram("node 0 z\nedge 0 1\n", t), ZhError);
    EXPECT_THROW(parse_diagram("node 0 z 3\n", t), ZhError);
    EXPECT_THROW(parse_diagram("node 0 h zz\n", t), std::invalid_argument);
    EXPECT_THROW(parse_trace("apply zs 1 2\n"), ZhError);
    ProofTrace tr = parse_trace("step zs 1 2\nstep scalar_intro:i\n");
    ASSERT_EQ(tr.size(), 2u);
    EXPECT_EQ(tr[1].ids.size(), 0u);
    EXPECT_EQ(serialize_trace(tr), "step zs 1 2\nstep scalar_intro:i\n");
}
