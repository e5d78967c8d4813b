#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catalyst/circuit.hpp"
#include "catalyst/matrix.hpp"

namespace catalyst::zh {

enum class NodeKind { Z, H, Star, Boundary };

struct Node {
    int id = 0;
    NodeKind kind = NodeKind::Z;
    RingElement label;  // H-boxes only
};

class ZhError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Undirected multigraph of generators. Node ids are stable; edges may repeat
/// and self-loops are allowed. Boundary nodes are listed in `inputs`/`outputs`.
class Diagram {
public:
    int add_z();
    /// H-box, labelled -1 unless given.
    int add_h(std::optional<RingElement> label = std::nullopt);
    int add_star();
    int add_input();
    int add_output();
    /// Node with an explicit id (used by the parser).
    void insert(Node n);
    void add_edge(int a, int b);
    void remove_node(int id);
    void remove_edge(std::size_t index);
    void set_boundaries(std::vector<int> inputs, std::vector<int> outputs);

    bool has(int id) const { return nodes_.count(id) != 0; }
    const Node& node(int id) const;
    const std::map<int, Node>& nodes() const { return nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& inputs() const { return inputs_; }
    const std::vector<int>& outputs() const { return outputs_; }
    /// Self-loops count twice.
    std::size_t degree(int id) const;
    /// Neighbour per incident edge end (a self-loop lists the node twice).
    std::vector<int> neighbors(int id) const;
    std::size_t internal_count() const;
    int next_id() const { return next_id_; }

    /// Boundary nodes have degree 1, stars degree 0, boundary lists are exact.
    void validate() const;

private:
    int fresh();

    std::map<int, Node> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> inputs_, outputs_;
    int next_id_ = 0;
};

/// The H-box label expressed in `tower`.
RingElement label_of(const Node& n, const Tower& tower);
/// -1 in a one-generator tower; compares equal to -1 of any tower under same_label.
const RingElement& minus_one();
bool same_label(const RingElement& a, const RingElement& b);

// --- derived constructors ----------------------------------------------------------

/// Parity spider: one star, a central Z-spider and a binary H-box per leg.
/// Returns the H-boxes, each with one free leg to be connected. Tensor: 1 on
/// even-parity inputs, 0 elsewhere.
std::vector<int> add_x_spider(Diagram& d, std::size_t legs);
/// NOT gate as a parity spider with a unary H(-1) on the centre; returns the two free legs.
std::pair<int, int> add_not(Diagram& d);

// --- semantics ----------------------------------------------------------------------

struct EvalLimits {
    std::size_t max_boundary = 12;
    std::size_t max_internal = 512;
    /// Largest intermediate tensor, in variables.
    std::size_t max_factor_vars = 22;
};

/// Exact 2^|out| x 2^|in| matrix. Stars contribute 1/2 each, a Z-spider with no
/// legs 2 and an H-box with no legs its label.
RingMatrix eval_tensor(const Diagram& d, const Tower& tower, const EvalLimits& limits = {});
/// Uses the deepest tower among the labels (at least Clifford+T).
RingMatrix eval_tensor(const Diagram& d, const EvalLimits& limits = {});
Tower default_tower(const Diagram& d);

bool semantic_equal(const Diagram& a, const Diagram& b, const EvalLimits& limits = {});

Diagram compose(const Diagram& first, const Diagram& second);
Diagram tensor(const Diagram& top, const Diagram& bottom);
Diagram identity_diagram(std::size_t wires);

// --- rules -----------------------------------------------------------------------------

struct RuleArgs {
    std::vector<int> ints;
    std::vector<RingElement> labels;
};

/// lhs and rhs share their boundary list (all boundaries are outputs, in order).
struct Pattern {
    Diagram lhs;
    Diagram rhs;
};

struct RewriteRule {
    std::string name;
    std::function<Pattern(const RuleArgs&)> make;
    /// Parameters of the instance matching host nodes `ids` (lhs internal node order).
    std::function<std::optional<RuleArgs>(const Diagram&, const std::vector<int>&)> infer;
    /// Instances checked by the soundness gate.
    std::vector<RuleArgs> soundness_instances;
    /// Kinds of the lhs internal nodes, when their number does not depend on the instance.
    std::optional<std::vector<NodeKind>> signature;
};

struct SoundnessReport {
    std::string rule;
    bool sound = true;
    std::size_t instances_checked = 0;
    std::string witness;  // first failing instance
};

SoundnessReport check_soundness(const RewriteRule& rule, const Tower& tower);

/// Rules admitted through the soundness gate.
class RuleBook {
public:
    explicit RuleBook(Tower tower) : tower_(std::move(tower)) {}
    /// Admits the rule when every instance is sound; otherwise leaves the book unchanged.
    SoundnessReport register_rule(RewriteRule rule);
    const RewriteRule* find(std::string_view name) const;
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const Tower& tower() const { return tower_; }

private:
    Tower tower_;
    std::vector<RewriteRule> rules_;
};

/// zs, hs, id, m, ba1, ba2, and, hc.
std::vector<RewriteRule> phase_free_rules();
/// Z-spider with unary H(a) and H(b) -> Z-spider with unary H(ab). Labels read from the match.
RewriteRule multiply_rule(std::vector<std::pair<RingElement, RingElement>> soundness_labels = {});
/// Two unary H(a) states -> parity spider onto one H(a), copies joined by a binary H(a^2).
RewriteRule catalysis_rule(const RingElement& a);
/// Empty diagram -> parity spider state plugged into a unary H(a) (value 1).
RewriteRule scalar_intro_rule(const RingElement& a);
/// Binary H(a^2) -> unary H(a) on both wires and H(1/a) on their parity. a must be a unit.
RewriteRule euler_rule(const RingElement& a);

/// Resolves "zs", "multiply", "catalysis:LABEL", "scalar_intro:LABEL", "euler:LABEL", ...
std::optional<RewriteRule> rule_by_name(std::string_view name, const Tower& tower);

/// Checks that `ids` embed the rule's lhs; returns the reason when not.
std::optional<std::string> match_error(const Diagram& d, const RewriteRule& rule,
                                       const std::vector<int>& ids);
Diagram apply_rule(const Diagram& d, const RewriteRule& rule, const std::vector<int>& ids);
/// Matches of rules with a fixed signature, at most `limit`.
std::vector<std::vector<int>> find_matches(const Diagram& d, const RewriteRule& rule,
                                           std::size_t limit = 64);

struct ProofStep {
    std::string rule;
    std::vector<int> ids;
};
using ProofTrace = std::vector<ProofStep>;

Diagram replay(const Diagram& start, const ProofTrace& trace, const Tower& tower);

// --- catalyst extraction ----------------------------------------------------------------

struct Extraction {
    Diagram diagram;
    ProofTrace trace;
    std::size_t initial_count = 0;
};

/// Unary H-boxes labelled a.
std::vector<int> catalyst_boxes(const Diagram& d, const RingElement& a);
/// Pairs a-boxes with the catalysis rule until one is left, or introduces one.
Extraction extract_catalyst(const Diagram& d, const RingElement& a);

struct Split {
    RingMatrix m0;
    RingMatrix m1;
};

/// eval(d) = m0 + a m1 with both free of the generator a. Requires exactly one a-box.
Split split_on_catalyst(const Diagram& d, const RingElement& a, const Tower& tower);

// --- circuits ------------------------------------------------------------------------------

struct CircuitDiagram {
    Diagram diagram;
    /// eval(diagram) = scalar * unitary.
    RingElement scalar;
};

CircuitDiagram circuit_to_diagram(const Circuit& c, const Tower& tower);

// --- text ------------------------------------------------------------------------------------

/// Lines: `node ID KIND [LABEL]` (KIND z|h|star|boundary), `edge A B`, `in ID...`, `out ID...`.
Diagram parse_diagram(std::string_view text, const Tower& tower);
std::string serialize_diagram(const Diagram& d);
/// Lines `step RULE ids...`.
ProofTrace parse_trace(std::string_view text);
std::string serialize_trace(const ProofTrace& t);

}  // namespace catalyst::zh
