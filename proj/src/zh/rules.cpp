#include <algorithm>
#include <set>
#include <functional>
#include <map>
#include <sstream>
#include <variant>

#include "catalyst/zh.hpp"

namespace catalyst::zh {

namespace {

// Brings two labels into one tower (the larger one; dyadic labels adopt the other's).
std::pair<RingElement, RingElement> common(const RingElement& a, const RingElement& b) {
    if (!a.tower() || !b.tower()) return {a, b};
    if (a.tower() == b.tower() || a.tower()->same_structure(*b.tower())) {
        return {a, RingElement(a.tower(), b.coefficients())};
    }
    if (a.is_dyadic()) return {Tower(b.tower()).dyadic(a.coefficient(0)), b};
    if (b.is_dyadic()) return {a, Tower(a.tower()).dyadic(b.coefficient(0))};
    if (a.tower()->size() >= b.tower()->size()) return {a, lift_to(b, Tower(a.tower()))};
    return {lift_to(a, Tower(b.tower())), b};
}

RingElement label_product(const RingElement& a, const RingElement& b) {
    auto [x, y] = common(a, b);
    return x * y;
}

// Both sides of a pattern with `count` shared boundaries, created first so that
// boundary k has the same position in both lists.
struct Builder {
    Pattern p;
    std::vector<int> lb, rb;
    explicit Builder(std::size_t count) {
        for (std::size_t k = 0; k < count; ++k) {
            lb.push_back(p.lhs.add_output());
            rb.push_back(p.rhs.add_output());
        }
    }
};

std::size_t as_size(int v) {
    if (v < 0) throw ZhError("rule parameters must be non-negative");
    return static_cast<std::size_t>(v);
}

int arg(const RuleArgs& a, std::size_t k) {
    if (k >= a.ints.size()) throw ZhError("rule instance is missing parameter " + std::to_string(k));
    return a.ints[k];
}

std::vector<int> internal_nodes(const Diagram& d) {
    std::vector<int> out;
    for (const auto& [id, n] : d.nodes()) {
        if (n.kind != NodeKind::Boundary) out.push_back(id);
    }
    return out;
}

// Edge ends at ids[i] whose other end lies outside `ids`.
int external_degree(const Diagram& d, const std::vector<int>& ids, std::size_t i) {
    std::set<int> inside(ids.begin(), ids.end());
    int count = 0;
    for (const auto& [a, b] : d.edges()) {
        if (a == ids[i] && !inside.count(b)) ++count;
        if (b == ids[i] && !inside.count(a)) ++count;
    }
    return count;
}

std::size_t edges_between(const Diagram& d, int a, int b) {
    std::size_t n = 0;
    for (const auto& [x, y] : d.edges()) n += (x == a && y == b) || (x == b && y == a);
    return n;
}

std::vector<RuleArgs> grid(int lo1, int hi1, int lo2, int hi2) {
    std::vector<RuleArgs> out;
    for (int m = lo1; m <= hi1; ++m) {
        for (int n = lo2; n <= hi2; ++n) out.push_back({{m, n}, {}});
    }
    return out;
}

std::vector<RuleArgs> range(int lo, int hi) {
    std::vector<RuleArgs> out;
    for (int n = lo; n <= hi; ++n) out.push_back({{n}, {}});
    return out;
}

using Infer = std::function<std::optional<RuleArgs>(const Diagram&, const std::vector<int>&)>;

// Infers integer parameters as the external degrees of the given lhs positions.
Infer degrees_of(std::vector<std::size_t> positions, std::size_t expected) {
    return [positions, expected](const Diagram& d, const std::vector<int>& ids) -> std::optional<RuleArgs> {
        if (ids.size() != expected) return std::nullopt;
        for (int id : ids) {
            if (!d.has(id)) return std::nullopt;
        }
        RuleArgs a;
        for (std::size_t p : positions) a.ints.push_back(external_degree(d, ids, p));
        return a;
    };
}

Infer fixed(std::size_t expected) { return degrees_of({}, expected); }

// Z-spider z with boundaries bs.
void attach(Diagram& d, int node, const std::vector<int>& bs, std::size_t from, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) d.add_edge(node, bs[from + k]);
}

RewriteRule zs_rule() {
    RewriteRule r;
    r.name = "zs";
    r.make = [](const RuleArgs& a) {
        const std::size_t m = as_size(arg(a, 0)), n = as_size(arg(a, 1));
        Builder b(m + n);
        const int z1 = b.p.lhs.add_z(), z2 = b.p.lhs.add_z();
        b.p.lhs.add_edge(z1, z2);
        attach(b.p.lhs, z1, b.lb, 0, m);
        attach(b.p.lhs, z2, b.lb, m, n);
        attach(b.p.rhs, b.p.rhs.add_z(), b.rb, 0, m + n);
        return b.p;
    };
    r.infer = degrees_of({0, 1}, 2);
    r.soundness_instances = grid(0, 4, 0, 4);
    r.signature = std::vector{NodeKind::Z, NodeKind::Z};
    return r;
}

RewriteRule id_rule() {
    RewriteRule r;
    r.name = "id";
    r.make = [](const RuleArgs&) {
        Builder b(2);
        attach(b.p.lhs, b.p.lhs.add_z(), b.lb, 0, 2);
        b.p.rhs.add_edge(b.rb[0], b.rb[1]);
        return b.p;
    };
    r.infer = fixed(1);
    r.soundness_instances = {{}};
    r.signature = std::vector{NodeKind::Z};
    return r;
}

// H-boxes joined through a binary H-box fuse.
RewriteRule hs_rule() {
    RewriteRule r;
    r.name = "hs";
    r.make = [](const RuleArgs& a) {
        const std::size_t m = as_size(arg(a, 0)), n = as_size(arg(a, 1));
        Builder b(m + n);
        Diagram& l = b.p.lhs;
        l.add_star();
        const int ha = l.add_h(), h2 = l.add_h(), hb = l.add_h();
        l.add_edge(ha, h2);
        l.add_edge(h2, hb);
        attach(l, ha, b.lb, 0, m);
        attach(l, hb, b.lb, m, n);
        attach(b.p.rhs, b.p.rhs.add_h(), b.rb, 0, m + n);
        return b.p;
    };
    r.infer = degrees_of({1, 3}, 4);
    r.soundness_instances = grid(0, 4, 0, 4);
    r.signature = std::vector{NodeKind::Star, NodeKind::H, NodeKind::H, NodeKind::H};
    return r;
}

// Two unary H-boxes on a Z-spider cancel.
RewriteRule m_rule() {
    RewriteRule r;
    r.name = "m";
    r.make = [](const RuleArgs& a) {
        const std::size_t n = as_size(arg(a, 0));
        Builder b(n);
        Diagram& l = b.p.lhs;
        const int z = l.add_z(), h1 = l.add_h(), h2 = l.add_h();
        l.add_edge(z, h1);
        l.add_edge(z, h2);
        attach(l, z, b.lb, 0, n);
        attach(b.p.rhs, b.p.rhs.add_z(), b.rb, 0, n);
        return b.p;
    };
    r.infer = degrees_of({0}, 3);
    r.soundness_instances = range(0, 3);
    r.signature = std::vector{NodeKind::Z, NodeKind::H, NodeKind::H};
    return r;
}

// AND(x, x) = x.
RewriteRule and_rule() {
    RewriteRule r;
    r.name = "and";
    r.make = [](const RuleArgs&) {
        Builder b(2);
        Diagram& l = b.p.lhs;
        l.add_star();
        const int z = l.add_z(), h3 = l.add_h(), h2 = l.add_h();
        l.add_edge(z, h3);
        l.add_edge(z, h3);
        l.add_edge(h3, h2);
        l.add_edge(z, b.lb[0]);
        l.add_edge(h2, b.lb[1]);
        b.p.rhs.add_edge(b.rb[0], b.rb[1]);
        return b.p;
    };
    r.infer = fixed(4);
    r.soundness_instances = {{}};
    r.signature = std::vector{NodeKind::Star, NodeKind::Z, NodeKind::H, NodeKind::H};
    return r;
}

// |0> into an H-box copies through as all-ones states.
RewriteRule hc_rule() {
    RewriteRule r;
    r.name = "hc";
    r.make = [](const RuleArgs& a) {
        const std::size_t n = as_size(arg(a, 0));
        Builder b(n);
        Diagram& l = b.p.lhs;
        l.add_star();
        const int z = l.add_z(), h2 = l.add_h(), h = l.add_h();
        l.add_edge(z, h2);
        l.add_edge(h2, h);
        attach(l, h, b.lb, 0, n);
        for (std::size_t k = 0; k < n; ++k) b.p.rhs.add_edge(b.p.rhs.add_z(), b.rb[k]);
        return b.p;
    };
    r.infer = degrees_of({3}, 4);
    r.soundness_instances = range(0, 4);
    r.signature = std::vector{NodeKind::Star, NodeKind::Z, NodeKind::H, NodeKind::H};
    return r;
}

// Z-spider (m legs) against a parity spider (n legs) -> complete bipartite graph.
// lhs internal order: Z, star, parity centre, leg joined to Z, then the n free legs.
RewriteRule ba1_rule() {
    RewriteRule r;
    r.name = "ba1";
    r.make = [](const RuleArgs& a) {
        const std::size_t m = as_size(arg(a, 0)), n = as_size(arg(a, 1));
        Builder b(m + n);
        Diagram& l = b.p.lhs;
        const int z = l.add_z();
        auto legs = add_x_spider(l, n + 1);
        l.add_edge(z, legs[0]);
        attach(l, z, b.lb, 0, m);
        for (std::size_t j = 0; j < n; ++j) l.add_edge(legs[1 + j], b.lb[m + j]);

        Diagram& rhs = b.p.rhs;
        std::vector<int> zs;
        for (std::size_t j = 0; j < n; ++j) {
            zs.push_back(rhs.add_z());
            rhs.add_edge(zs.back(), b.rb[m + j]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            auto x = add_x_spider(rhs, n + 1);
            rhs.add_edge(x[0], b.rb[i]);
            for (std::size_t j = 0; j < n; ++j) rhs.add_edge(x[1 + j], zs[j]);
        }
        return b.p;
    };
    r.infer = [](const Diagram& d, const std::vector<int>& ids) -> std::optional<RuleArgs> {
        if (ids.size() < 4) return std::nullopt;
        for (int id : ids) {
            if (!d.has(id)) return std::nullopt;
        }
        return RuleArgs{{external_degree(d, ids, 0), static_cast<int>(ids.size()) - 4}, {}};
    };
    r.soundness_instances = grid(0, 4, 0, 4);
    return r;
}

// H-box (m legs) through a binary H-box into a Z-spider (n legs) -> m copy
// spiders feeding n AND gadgets, each carrying its own star.
RewriteRule ba2_rule() {
    RewriteRule r;
    r.name = "ba2";
    r.make = [](const RuleArgs& a) {
        const std::size_t m = as_size(arg(a, 0)), n = as_size(arg(a, 1));
        Builder b(m + n);
        Diagram& l = b.p.lhs;
        l.add_star();
        const int h = l.add_h(), h2 = l.add_h(), z = l.add_z();
        l.add_edge(h, h2);
        l.add_edge(h2, z);
        attach(l, h, b.lb, 0, m);
        attach(l, z, b.lb, m, n);

        Diagram& rhs = b.p.rhs;
        std::vector<int> copies;
        for (std::size_t i = 0; i < m; ++i) {
            copies.push_back(rhs.add_z());
            rhs.add_edge(copies.back(), b.rb[i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            rhs.add_star();
            const int g = rhs.add_h(), g2 = rhs.add_h();
            for (int c : copies) rhs.add_edge(g, c);
            rhs.add_edge(g, g2);
            rhs.add_edge(g2, b.rb[m + j]);
        }
        return b.p;
    };
    r.infer = degrees_of({1, 3}, 4);
    r.soundness_instances = grid(0, 4, 0, 4);
    r.signature = std::vector{NodeKind::Star, NodeKind::H, NodeKind::H, NodeKind::Z};
    return r;
}

std::string join_labels(const RuleArgs& a) {
    std::ostringstream out;
    out << "ints=(";
    for (std::size_t k = 0; k < a.ints.size(); ++k) out << (k ? "," : "") << a.ints[k];
    out << ") labels=(";
    for (std::size_t k = 0; k < a.labels.size(); ++k) out << (k ? ", " : "") << to_string(a.labels[k]);
    out << ")";
    return out.str();
}

// Parity spider state on the two copies plus a third leg into a unary H(label).
void parity_into(Diagram& d, int z1, int z2, const RingElement& label) {
    auto legs = add_x_spider(d, 3);
    d.add_edge(legs[0], z1);
    d.add_edge(legs[1], z2);
    d.add_edge(legs[2], d.add_h(label));
}

}  // namespace

std::vector<RewriteRule> phase_free_rules() {
    return {zs_rule(), hs_rule(), id_rule(), m_rule(), ba1_rule(), ba2_rule(), and_rule(), hc_rule()};
}

RewriteRule multiply_rule(std::vector<std::pair<RingElement, RingElement>> soundness_labels) {
    RewriteRule r;
    r.name = "multiply";
    r.make = [](const RuleArgs& a) {
        const std::size_t n = as_size(arg(a, 0));
        if (a.labels.size() != 2) throw ZhError("multiply needs two labels");
        Builder b(n);
        Diagram& l = b.p.lhs;
        const int z = l.add_z(), ha = l.add_h(a.labels[0]), hb = l.add_h(a.labels[1]);
        l.add_edge(z, ha);
        l.add_edge(z, hb);
        attach(l, z, b.lb, 0, n);
        Diagram& rhs = b.p.rhs;
        const int zr = rhs.add_z();
        rhs.add_edge(zr, rhs.add_h(label_product(a.labels[0], a.labels[1])));
        attach(rhs, zr, b.rb, 0, n);
        return b.p;
    };
    r.infer = [](const Diagram& d, const std::vector<int>& ids) -> std::optional<RuleArgs> {
        if (ids.size() != 3) return std::nullopt;
        for (int id : ids) {
            if (!d.has(id)) return std::nullopt;
        }
        if (d.node(ids[1]).kind != NodeKind::H || d.node(ids[2]).kind != NodeKind::H) return std::nullopt;
        return RuleArgs{{external_degree(d, ids, 0)}, {d.node(ids[1]).label, d.node(ids[2]).label}};
    };
    if (soundness_labels.empty()) {
        const Tower t = Tower::clifford_t();
        const RingElement w = t.generator("w");
        soundness_labels = {{minus_one(), minus_one()}, {t.i(), w}, {w, w}, {t.dyadic(Dyadic(1).shifted(-1)), t.integer(3)}};
    }
    for (const auto& [a, b] : soundness_labels) {
        for (int n = 0; n <= 3; ++n) r.soundness_instances.push_back({{n}, {a, b}});
    }
    r.signature = std::vector{NodeKind::Z, NodeKind::H, NodeKind::H};
    return r;
}

RewriteRule catalysis_rule(const RingElement& a) {
    if (a.is_zero()) throw ZhError("catalysis rule needs a non-zero label");
    RewriteRule r;
    r.name = "catalysis:" + to_string(a);
    r.make = [a](const RuleArgs&) {
        Builder b(2);
        Diagram& l = b.p.lhs;
        l.add_edge(l.add_h(a), b.lb[0]);
        l.add_edge(l.add_h(a), b.lb[1]);
        Diagram& rhs = b.p.rhs;
        const int z1 = rhs.add_z(), z2 = rhs.add_z();
        rhs.add_edge(z1, b.rb[0]);
        rhs.add_edge(z2, b.rb[1]);
        const int sq = rhs.add_h(a * a);
        rhs.add_edge(z1, sq);
        rhs.add_edge(sq, z2);
        parity_into(rhs, z1, z2, a);
        return b.p;
    };
    r.infer = fixed(2);
    r.soundness_instances = {{}};
    r.signature = std::vector{NodeKind::H, NodeKind::H};
    return r;
}

RewriteRule scalar_intro_rule(const RingElement& a) {
    RewriteRule r;
    r.name = "scalar_intro:" + to_string(a);
    r.make = [a](const RuleArgs&) {
        Pattern p;
        Diagram& rhs = p.rhs;
        rhs.add_star();
        const int z = rhs.add_z(), h2 = rhs.add_h();
        rhs.add_edge(z, h2);
        rhs.add_edge(h2, rhs.add_h(a));
        return p;
    };
    r.infer = fixed(0);
    r.soundness_instances = {{}};
    r.signature = std::vector<NodeKind>{};
    return r;
}

RewriteRule euler_rule(const RingElement& a) {
    auto inv = unit_inverse(a);
    if (!inv) throw ZhError("euler rule needs a unit label, got " + to_string(a));
    RewriteRule r;
    r.name = "euler:" + to_string(a);
    r.make = [a, inv = *inv](const RuleArgs&) {
        Builder b(2);
        Diagram& l = b.p.lhs;
        const int sq = l.add_h(a * a);
        l.add_edge(sq, b.lb[0]);
        l.add_edge(sq, b.lb[1]);
        Diagram& rhs = b.p.rhs;
        const int z1 = rhs.add_z(), z2 = rhs.add_z();
        rhs.add_edge(z1, b.rb[0]);
        rhs.add_edge(z2, b.rb[1]);
        rhs.add_edge(z1, rhs.add_h(a));
        rhs.add_edge(z2, rhs.add_h(a));
        parity_into(rhs, z1, z2, inv);
        return b.p;
    };
    r.infer = fixed(1);
    r.soundness_instances = {{}};
    r.signature = std::vector{NodeKind::H};
    return r;
}

SoundnessReport check_soundness(const RewriteRule& rule, const Tower& tower) {
    SoundnessReport rep;
    rep.rule = rule.name;
    for (const auto& args : rule.soundness_instances) {
        ++rep.instances_checked;
        try {
            Pattern p = rule.make(args);
            if (p.lhs.outputs().size() != p.rhs.outputs().size() || !p.lhs.inputs().empty() ||
                !p.rhs.inputs().empty()) {
                rep.sound = false;
                rep.witness = join_labels(args) + ": boundary arity differs";
                return rep;
            }
            if (eval_tensor(p.lhs, tower) != eval_tensor(p.rhs, tower)) {
                rep.sound = false;
                rep.witness = join_labels(args) + ": lhs and rhs evaluate differently";
                return rep;
            }
        } catch (const std::exception& e) {
            rep.sound = false;
            rep.witness = join_labels(args) + ": " + e.what();
            return rep;
        }
    }
    return rep;
}

SoundnessReport RuleBook::register_rule(RewriteRule rule) {
    SoundnessReport rep = check_soundness(rule, tower_);
    if (rep.sound) {
        rules_.erase(std::remove_if(rules_.begin(), rules_.end(),
                                    [&](const RewriteRule& r) { return r.name == rule.name; }),
                     rules_.end());
        rules_.push_back(std::move(rule));
    }
    return rep;
}

const RewriteRule* RuleBook::find(std::string_view name) const {
    for (const auto& r : rules_) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

std::optional<RewriteRule> rule_by_name(std::string_view name, const Tower& tower) {
    const auto colon = name.find(':');
    if (colon != std::string_view::npos) {
        const std::string_view base = name.substr(0, colon);
        const RingElement label = tower.parse(name.substr(colon + 1));
        if (base == "catalysis") return catalysis_rule(label);
        if (base == "scalar_intro") return scalar_intro_rule(label);
        if (base == "euler") return euler_rule(label);
        return std::nullopt;
    }
    if (name == "multiply") return multiply_rule();
    for (auto& r : phase_free_rules()) {
        if (r.name == name) return r;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

struct Instance {
    Pattern pattern;
    std::vector<int> lhs_internal;
};

std::variant<Instance, std::string> instantiate(const Diagram& d, const RewriteRule& rule,
                                                const std::vector<int>& ids) {
    std::set<int> distinct(ids.begin(), ids.end());
    if (distinct.size() != ids.size()) return std::string("match lists a node twice");
    for (int id : ids) {
        if (!d.has(id)) return "no node " + std::to_string(id);
    }
    auto args = rule.infer(d, ids);
    if (!args) return "site does not have the shape of rule " + rule.name;
    Instance inst;
    try {
        inst.pattern = rule.make(*args);
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
    inst.lhs_internal = internal_nodes(inst.pattern.lhs);
    if (inst.lhs_internal.size() != ids.size()) {
        return "rule " + rule.name + " needs " + std::to_string(inst.lhs_internal.size()) + " nodes, got " +
               std::to_string(ids.size());
    }
    return inst;
}

std::optional<std::string> check_embedding(const Diagram& d, const Instance& inst, const std::vector<int>& ids) {
    const Diagram& lhs = inst.pattern.lhs;
    const auto& li = inst.lhs_internal;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        const Node& want = lhs.node(li[k]);
        const Node& have = d.node(ids[k]);
        if (want.kind != have.kind) return "node " + std::to_string(ids[k]) + " has the wrong kind";
        if (want.kind == NodeKind::H && !same_label(want.label, have.label)) {
            return "node " + std::to_string(ids[k]) + " has label " + to_string(have.label) + ", expected " +
                   to_string(want.label);
        }
        for (std::size_t j = k; j < ids.size(); ++j) {
            if (edges_between(lhs, li[k], li[j]) != edges_between(d, ids[k], ids[j])) {
                return "wiring between nodes " + std::to_string(ids[k]) + " and " + std::to_string(ids[j]) +
                       " does not match";
            }
        }
        std::size_t boundary_edges = 0;
        for (int nb : lhs.neighbors(li[k])) boundary_edges += lhs.node(nb).kind == NodeKind::Boundary;
        if (static_cast<int>(boundary_edges) != external_degree(d, ids, k)) {
            return "node " + std::to_string(ids[k]) + " has " + std::to_string(external_degree(d, ids, k)) +
                   " outside wires, expected " + std::to_string(boundary_edges);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> match_error(const Diagram& d, const RewriteRule& rule, const std::vector<int>& ids) {
    auto inst = instantiate(d, rule, ids);
    if (auto* err = std::get_if<std::string>(&inst)) return *err;
    return check_embedding(d, std::get<Instance>(inst), ids);
}

Diagram apply_rule(const Diagram& d, const RewriteRule& rule, const std::vector<int>& ids) {
    auto inst_or = instantiate(d, rule, ids);
    if (auto* err = std::get_if<std::string>(&inst_or)) throw ZhError("cannot apply " + rule.name + ": " + *err);
    const Instance& inst = std::get<Instance>(inst_or);
    if (auto err = check_embedding(d, inst, ids)) throw ZhError("cannot apply " + rule.name + ": " + *err);

    const Diagram& lhs = inst.pattern.lhs;
    const Diagram& rhs = inst.pattern.rhs;
    const auto& bounds = lhs.outputs();
    std::map<int, std::size_t> boundary_index;
    for (std::size_t k = 0; k < bounds.size(); ++k) boundary_index[bounds[k]] = k;

    // Host endpoint of each pattern boundary: the outside wires of a matched node
    // are paired with its boundary legs in order.
    std::set<int> inside(ids.begin(), ids.end());
    std::vector<int> host_end(bounds.size(), -1);
    for (std::size_t k = 0; k < ids.size(); ++k) {
        std::vector<std::size_t> legs;
        for (const auto& [a, b] : lhs.edges()) {
            if (a == inst.lhs_internal[k] && boundary_index.count(b)) legs.push_back(boundary_index[b]);
            if (b == inst.lhs_internal[k] && boundary_index.count(a)) legs.push_back(boundary_index[a]);
        }
        std::vector<int> outside;
        for (const auto& [a, b] : d.edges()) {
            if (a == ids[k] && !inside.count(b)) outside.push_back(b);
            if (b == ids[k] && !inside.count(a)) outside.push_back(a);
        }
        for (std::size_t j = 0; j < legs.size(); ++j) host_end[legs[j]] = outside[j];
    }

    Diagram out = d;
    for (int id : ids) out.remove_node(id);
    std::map<int, int> placed;
    int next = out.next_id();
    for (const auto& [id, n] : rhs.nodes()) {
        if (n.kind == NodeKind::Boundary) continue;
        Node copy = n;
        copy.id = next++;
        placed[id] = copy.id;
        out.insert(copy);
    }
    std::map<int, std::size_t> rhs_boundary;
    for (std::size_t k = 0; k < rhs.outputs().size(); ++k) rhs_boundary[rhs.outputs()[k]] = k;
    auto resolve = [&](int id) { return rhs_boundary.count(id) ? host_end[rhs_boundary[id]] : placed.at(id); };
    for (const auto& [a, b] : rhs.edges()) out.add_edge(resolve(a), resolve(b));
    return out;
}

std::vector<std::vector<int>> find_matches(const Diagram& d, const RewriteRule& rule, std::size_t limit) {
    std::vector<std::vector<int>> found;
    if (!rule.signature || rule.soundness_instances.empty()) return found;
    const auto& sig = *rule.signature;
    // Wiring among the lhs nodes is the same for every instance of a fixed-signature rule.
    const Pattern shape = rule.make(rule.soundness_instances.front());
    const auto li = internal_nodes(shape.lhs);
    std::vector<std::vector<int>> candidates(sig.size());
    for (std::size_t k = 0; k < sig.size(); ++k) {
        for (const auto& [id, n] : d.nodes()) {
            if (n.kind != sig[k]) continue;
            if (n.kind == NodeKind::H && !rule.name.empty() && rule.name != "multiply" &&
                !same_label(n.label, shape.lhs.node(li[k]).label)) {
                continue;
            }
            candidates[k].push_back(id);
        }
    }
    std::vector<int> ids;
    std::function<void()> search = [&]() {
        if (found.size() >= limit) return;
        const std::size_t k = ids.size();
        if (k == sig.size()) {
            if (!match_error(d, rule, ids)) found.push_back(ids);
            return;
        }
        for (int c : candidates[k]) {
            if (std::find(ids.begin(), ids.end(), c) != ids.end()) continue;
            bool ok = edges_between(shape.lhs, li[k], li[k]) == edges_between(d, c, c);
            for (std::size_t j = 0; ok && j < k; ++j) {
                ok = edges_between(shape.lhs, li[j], li[k]) == edges_between(d, ids[j], c);
            }
            if (!ok) continue;
            ids.push_back(c);
            search();
            ids.pop_back();
            if (found.size() >= limit) return;
        }
    };
    search();
    return found;
}

Diagram replay(const Diagram& start, const ProofTrace& trace, const Tower& tower) {
    Diagram d = start;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        auto rule = rule_by_name(trace[k].rule, tower);
        if (!rule) throw ZhError("step " + std::to_string(k + 1) + ": unknown rule '" + trace[k].rule + "'");
        d = apply_rule(d, *rule, trace[k].ids);
    }
    return d;
}

}  // namespace catalyst::zh
