#include <algorithm>
#include <sstream>

#include "catalyst/zh.hpp"

namespace catalyst::zh {

const RingElement& minus_one() {
    static const RingElement value = Tower::cyclotomic(1).integer(-1);
    return value;
}

bool same_label(const RingElement& a, const RingElement& b) {
    if (a.is_dyadic() && b.is_dyadic()) return a.coefficient(0) == b.coefficient(0);
    if (!a.tower() || !b.tower()) return false;
    if (a.tower() != b.tower() && !a.tower()->same_structure(*b.tower())) {
        const Tower& bigger = a.tower()->size() >= b.tower()->size() ? Tower(a.tower()) : Tower(b.tower());
        try {
            return lift_to(a, bigger) == lift_to(b, bigger);
        } catch (const std::invalid_argument&) {
            return false;
        }
    }
    return a == b;
}

RingElement label_of(const Node& n, const Tower& tower) {
    if (n.label.is_dyadic()) return tower.dyadic(n.label.coefficient(0));
    if (n.label.tower() == tower.spec() || n.label.tower()->same_structure(*tower.spec())) {
        return RingElement(tower.spec(), n.label.coefficients());
    }
    try {
        return lift_to(n.label, tower);
    } catch (const std::invalid_argument&) {
        throw ZhError("H-box label " + to_string(n.label) + " is not in the evaluation tower");
    }
}

// ---------------------------------------------------------------------------

int Diagram::fresh() {
    return next_id_++;
}

int Diagram::add_z() {
    const int id = fresh();
    nodes_[id] = {id, NodeKind::Z, {}};
    return id;
}

int Diagram::add_h(std::optional<RingElement> label) {
    const int id = fresh();
    nodes_[id] = {id, NodeKind::H, label ? *label : minus_one()};
    return id;
}

int Diagram::add_star() {
    const int id = fresh();
    nodes_[id] = {id, NodeKind::Star, {}};
    return id;
}

int Diagram::add_input() {
    const int id = fresh();
    nodes_[id] = {id, NodeKind::Boundary, {}};
    inputs_.push_back(id);
    return id;
}

int Diagram::add_output() {
    const int id = fresh();
    nodes_[id] = {id, NodeKind::Boundary, {}};
    outputs_.push_back(id);
    return id;
}

void Diagram::insert(Node n) {
    if (n.id < 0) throw ZhError("node ids must be non-negative");
    if (nodes_.count(n.id)) throw ZhError("duplicate node id " + std::to_string(n.id));
    if (n.kind == NodeKind::H && !n.label.tower() && !n.label.is_zero()) n.label = minus_one();
    next_id_ = std::max(next_id_, n.id + 1);
    nodes_[n.id] = std::move(n);
}

void Diagram::add_edge(int a, int b) {
    if (!has(a) || !has(b)) throw ZhError("edge refers to a missing node");
    edges_.emplace_back(a, b);
}

void Diagram::remove_node(int id) {
    if (!has(id)) throw ZhError("no node " + std::to_string(id));
    nodes_.erase(id);
    edges_.erase(std::remove_if(edges_.begin(), edges_.end(),
                                [id](const auto& e) { return e.first == id || e.second == id; }),
                 edges_.end());
    inputs_.erase(std::remove(inputs_.begin(), inputs_.end(), id), inputs_.end());
    outputs_.erase(std::remove(outputs_.begin(), outputs_.end(), id), outputs_.end());
}

void Diagram::remove_edge(std::size_t index) {
    edges_.erase(edges_.begin() + static_cast<long>(index));
}

void Diagram::set_boundaries(std::vector<int> inputs, std::vector<int> outputs) {
    inputs_ = std::move(inputs);
    outputs_ = std::move(outputs);
}

const Node& Diagram::node(int id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw ZhError("no node " + std::to_string(id));
    return it->second;
}

std::size_t Diagram::degree(int id) const {
    std::size_t d = 0;
    for (const auto& [a, b] : edges_) d += (a == id) + (b == id);
    return d;
}

std::vector<int> Diagram::neighbors(int id) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    return out;
}

std::size_t Diagram::internal_count() const {
    return nodes_.size() - inputs_.size() - outputs_.size();
}

void Diagram::validate() const {
    std::vector<int> listed = inputs_;
    listed.insert(listed.end(), outputs_.begin(), outputs_.end());
    std::vector<int> sorted = listed;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ZhError("boundary lists contain a duplicate");
    }
    for (int id : listed) {
        if (!has(id) || node(id).kind != NodeKind::Boundary) {
            throw ZhError("boundary list entry " + std::to_string(id) + " is not a boundary node");
        }
    }
    for (const auto& [id, n] : nodes_) {
        if (n.kind == NodeKind::Boundary) {
            if (!std::binary_search(sorted.begin(), sorted.end(), id)) {
                throw ZhError("boundary node " + std::to_string(id) + " is neither input nor output");
            }
            if (degree(id) != 1) throw ZhError("boundary node " + std::to_string(id) + " must have degree 1");
        }
        if (n.kind == NodeKind::Star && degree(id) != 0) {
            throw ZhError("star node " + std::to_string(id) + " must have degree 0");
        }
    }
    for (const auto& [a, b] : edges_) {
        if (!has(a) || !has(b)) throw ZhError("edge refers to a missing node");
    }
}

// ---------------------------------------------------------------------------

std::vector<int> add_x_spider(Diagram& d, std::size_t legs) {
    d.add_star();
    const int centre = d.add_z();
    std::vector<int> out;
    for (std::size_t k = 0; k < legs; ++k) {
        const int h = d.add_h();
        d.add_edge(centre, h);
        out.push_back(h);
    }
    return out;
}

std::pair<int, int> add_not(Diagram& d) {
    d.add_star();
    const int centre = d.add_z();
    const int a = d.add_h();
    const int b = d.add_h();
    const int flip = d.add_h();
    d.add_edge(centre, a);
    d.add_edge(centre, b);
    d.add_edge(centre, flip);
    return {a, b};
}

// ---------------------------------------------------------------------------

namespace {

// Removes a degree-2 wire node, joining its neighbours. A node whose only edge
// is a self-loop is a closed wire and becomes a bare Z-spider (value 2).
void dissolve(Diagram& d, int id) {
    std::vector<int> nb = d.neighbors(id);
    if (nb.size() != 2) throw ZhError("cannot dissolve a node of degree " + std::to_string(nb.size()));
    d.remove_node(id);
    if (nb[0] == id && nb[1] == id) {
        d.add_z();
        return;
    }
    d.add_edge(nb[0], nb[1]);
}

// Copies `src` into `dst` with ids shifted by `offset`; returns the shifted boundary lists.
std::pair<std::vector<int>, std::vector<int>> merge_into(Diagram& dst, const Diagram& src, int offset) {
    for (const auto& [id, n] : src.nodes()) {
        Node copy = n;
        copy.id = id + offset;
        dst.insert(copy);
    }
    for (const auto& [a, b] : src.edges()) dst.add_edge(a + offset, b + offset);
    auto shift = [offset](std::vector<int> v) {
        for (auto& x : v) x += offset;
        return v;
    };
    return {shift(src.inputs()), shift(src.outputs())};
}

}  // namespace

Diagram compose(const Diagram& first, const Diagram& second) {
    if (first.outputs().size() != second.inputs().size()) {
        throw ZhError("compose: " + std::to_string(first.outputs().size()) + " outputs vs " +
                      std::to_string(second.inputs().size()) + " inputs");
    }
    Diagram out;
    auto [in1, out1] = merge_into(out, first, 0);
    auto [in2, out2] = merge_into(out, second, first.next_id());
    out.set_boundaries(in1, out2);
    for (std::size_t k = 0; k < out1.size(); ++k) {
        out.add_edge(out1[k], in2[k]);
        dissolve(out, out1[k]);
        dissolve(out, in2[k]);
    }
    return out;
}

Diagram tensor(const Diagram& top, const Diagram& bottom) {
    Diagram out;
    auto [in1, out1] = merge_into(out, top, 0);
    auto [in2, out2] = merge_into(out, bottom, top.next_id());
    in1.insert(in1.end(), in2.begin(), in2.end());
    out1.insert(out1.end(), out2.begin(), out2.end());
    out.set_boundaries(in1, out1);
    return out;
}

Diagram identity_diagram(std::size_t wires) {
    Diagram d;
    std::vector<int> in, out;
    for (std::size_t k = 0; k < wires; ++k) in.push_back(d.add_input());
    for (std::size_t k = 0; k < wires; ++k) out.push_back(d.add_output());
    for (std::size_t k = 0; k < wires; ++k) d.add_edge(in[k], out[k]);
    return d;
}

// ---------------------------------------------------------------------------

namespace {

std::string kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Z: return "z";
        case NodeKind::H: return "h";
        case NodeKind::Star: return "star";
        case NodeKind::Boundary: return "boundary";
    }
    return "?";
}

int parse_id(const std::string& tok, std::size_t line) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ZhError("line " + std::to_string(line) + ": bad node id '" + tok + "'");
    }
}

}  // namespace

Diagram parse_diagram(std::string_view text, const Tower& tower) {
    Diagram d;
    std::vector<int> inputs, outputs;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string word;
        if (!(line >> word)) continue;
        auto err = [&](const std::string& msg) { return ZhError("line " + std::to_string(line_no) + ": " + msg); };
        try {
            if (word == "node") {
                std::string id, kind;
                if (!(line >> id >> kind)) throw err("expected 'node ID KIND [LABEL]'");
                Node n;
                n.id = parse_id(id, line_no);
                if (kind == "z") {
                    n.kind = NodeKind::Z;
                } else if (kind == "h") {
                    n.kind = NodeKind::H;
                    std::string rest;
                    std::getline(line, rest);
                    if (rest.find_first_not_of(" \t") == std::string::npos) {
                        n.label = minus_one();
                    } else {
                        n.label = tower.parse(rest);
                    }
                } else if (kind == "star") {
                    n.kind = NodeKind::Star;
                } else if (kind == "boundary") {
                    n.kind = NodeKind::Boundary;
                } else {
                    throw err("unknown node kind '" + kind + "'");
                }
                if (n.kind != NodeKind::H) {
                    std::string extra;
                    if (line >> extra) throw err("only H-boxes carry a label");
                }
                d.insert(std::move(n));
            } else if (word == "edge") {
                std::string a, b, extra;
                if (!(line >> a >> b) || (line >> extra)) throw err("expected 'edge A B'");
                d.add_edge(parse_id(a, line_no), parse_id(b, line_no));
            } else if (word == "in" || word == "out") {
                auto& list = word == "in" ? inputs : outputs;
                std::string tok;
                while (line >> tok) list.push_back(parse_id(tok, line_no));
            } else {
                throw err("unknown directive '" + word + "'");
            }
        } catch (const ZhError& e) {
            const std::string what = e.what();
            if (what.rfind("line ", 0) == 0) throw;
            throw err(what);
        } catch (const std::invalid_argument& e) {
            throw err(e.what());
        }
    }
    d.set_boundaries(inputs, outputs);
    d.validate();
    return d;
}

std::string serialize_diagram(const Diagram& d) {
    std::ostringstream out;
    for (const auto& [id, n] : d.nodes()) {
        out << "node " << id << " " << kind_name(n.kind);
        if (n.kind == NodeKind::H) out << " " << to_string(n.label);
        out << "\n";
    }
    for (const auto& [a, b] : d.edges()) out << "edge " << a << " " << b << "\n";
    out << "in";
    for (int id : d.inputs()) out << " " << id;
    out << "\nout";
    for (int id : d.outputs()) out << " " << id;
    out << "\n";
    return out.str();
}

ProofTrace parse_trace(std::string_view text) {
    ProofTrace t;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string word;
        if (!(line >> word)) continue;
        if (word != "step") throw ZhError("line " + std::to_string(line_no) + ": expected 'step RULE ids...'");
        ProofStep s;
        if (!(line >> s.rule)) throw ZhError("line " + std::to_string(line_no) + ": missing rule name");
        std::string tok;
        while (line >> tok) s.ids.push_back(parse_id(tok, line_no));
        t.push_back(std::move(s));
    }
    return t;
}

std::string serialize_trace(const ProofTrace& t) {
    std::ostringstream out;
    for (const auto& s : t) {
        out << "step " << s.rule;
        for (int id : s.ids) out << " " << id;
        out << "\n";
    }
    return out.str();
}

}  // namespace catalyst::zh
