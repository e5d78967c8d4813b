// Line-based circuit format:
//
//   qubits N
//   gateset NAME             optional; gates are linted against it
//   prep Q TAG               TAG in 0 1 + - i -i T, or "zk K" / "zkdg K"
//   prep ccz A B C           |CCZ> block
//   x q | y q | z q | s q | sdg q | t q | tdg q | h q
//   cx c t | cz a b | cs a b | csdg a b | swap a b
//   ccx a b t | ccz a b c | mcx c... t
//   phasek K q | phasekdg K q | cphasek K c... q | cphasekdg K c... q
//
// '#' starts a comment. Unprepared qubits start in |0>.

#include <charconv>
#include <sstream>

#include "catalyst/circuit.hpp"

namespace catalyst {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw CircuitError("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

std::size_t parse_index(std::string_view word, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
        fail(line, "expected a non-negative integer, got '" + std::string(word) + "'");
    }
    return value;
}

struct GateSyntax {
    std::string_view name;
    GateKind kind;
    std::size_t arity;  // 0: variable
    bool has_k;
    int sign;
};

constexpr GateSyntax kGateSyntax[] = {
    {"x", GateKind::X, 1, false, 1},          {"y", GateKind::Y, 1, false, 1},
    {"z", GateKind::Z, 1, false, 1},          {"s", GateKind::S, 1, false, 1},
    {"sdg", GateKind::Sdg, 1, false, 1},      {"t", GateKind::T, 1, false, 1},
    {"tdg", GateKind::Tdg, 1, false, 1},      {"h", GateKind::H, 1, false, 1},
    {"cx", GateKind::CX, 2, false, 1},        {"cz", GateKind::CZ, 2, false, 1},
    {"cs", GateKind::CS, 2, false, 1},        {"csdg", GateKind::CSdg, 2, false, 1},
    {"swap", GateKind::SWAP, 2, false, 1},    {"ccx", GateKind::CCX, 3, false, 1},
    {"ccz", GateKind::CCZ, 3, false, 1},      {"mcx", GateKind::MCX, 0, false, 1},
    {"phasek", GateKind::PhaseK, 1, true, 1}, {"phasekdg", GateKind::PhaseK, 1, true, -1},
    {"cphasek", GateKind::CPhaseK, 0, true, 1}, {"cphasekdg", GateKind::CPhaseK, 0, true, -1},
};

QubitPrep parse_prep_tag(const std::vector<std::string_view>& words, std::size_t line) {
    std::string_view tag = words[2];
    auto simple = [&](PrepKind kind) {
        if (words.size() != 3) fail(line, "prep " + std::string(tag) + " takes no argument");
        return QubitPrep{kind, 0};
    };
    if (tag == "0") return simple(PrepKind::Zero);
    if (tag == "1") return simple(PrepKind::One);
    if (tag == "+") return simple(PrepKind::Plus);
    if (tag == "-") return simple(PrepKind::Minus);
    if (tag == "i" || tag == "+i") return simple(PrepKind::PlusI);
    if (tag == "-i") return simple(PrepKind::MinusI);
    if (tag == "T") return simple(PrepKind::T);
    if (tag == "zk" || tag == "zkdg") {
        if (words.size() != 4) fail(line, "prep " + std::string(tag) + " needs K");
        int k = static_cast<int>(parse_index(words[3], line));
        if (k < 1) fail(line, "zk needs K >= 1");
        return {tag == "zk" ? PrepKind::ZK : PrepKind::ZKdg, k};
    }
    fail(line, "unknown preparation '" + std::string(tag) + "'");
}

}  // namespace

std::string prep_tag(const QubitPrep& p) {
    switch (p.kind) {
        case PrepKind::Zero: return "0";
        case PrepKind::One: return "1";
        case PrepKind::Plus: return "+";
        case PrepKind::Minus: return "-";
        case PrepKind::PlusI: return "i";
        case PrepKind::MinusI: return "-i";
        case PrepKind::T: return "T";
        case PrepKind::ZK: return "zk " + std::to_string(p.k);
        case PrepKind::ZKdg: return "zkdg " + std::to_string(p.k);
        case PrepKind::CCZ: return "ccz";
    }
    return "?";
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_width = false;
    std::vector<std::size_t> gate_lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto words = split_words(line);
        if (words.empty()) continue;

        const std::string_view head = words[0];
        if (head == "qubits") {
            if (have_width) fail(line_no, "duplicate 'qubits' line");
            if (words.size() != 2) fail(line_no, "usage: qubits N");
            std::size_t n = parse_index(words[1], line_no);
            if (n > kSimulationWidthCap) fail(line_no, "at most 20 qubits are supported");
            c = Circuit(n);
            have_width = true;
            continue;
        }
        if (!have_width) fail(line_no, "the first statement must be 'qubits N'");
        if (head == "gateset") {
            if (words.size() != 2) fail(line_no, "usage: gateset NAME");
            if (!gateset_known(words[1])) fail(line_no, "unknown gate set '" + std::string(words[1]) + "'");
            c.gateset = std::string(words[1]);
            continue;
        }
        if (head == "prep") {
            if (words.size() < 3) fail(line_no, "usage: prep Q TAG");
            try {
                if (words[1] == "ccz") {
                    if (words.size() != 5) fail(line_no, "usage: prep ccz A B C");
                    c.prep.set_ccz(parse_index(words[2], line_no), parse_index(words[3], line_no),
                                   parse_index(words[4], line_no));
                } else {
                    std::size_t q = parse_index(words[1], line_no);
                    if (q >= c.width) fail(line_no, "qubit " + std::to_string(q) + " out of range");
                    c.prep.set(q, parse_prep_tag(words, line_no));
                }
            } catch (const CircuitError& e) {
                std::string what = e.what();
                if (what.rfind("line ", 0) == 0) throw;
                fail(line_no, what);
            }
            continue;
        }

        const GateSyntax* syntax = nullptr;
        for (const auto& s : kGateSyntax) {
            if (s.name == head) syntax = &s;
        }
        if (!syntax) fail(line_no, "unknown statement '" + std::string(head) + "'");
        std::size_t first = 1;
        Gate g{syntax->kind, {}, 0, syntax->sign};
        if (syntax->has_k) {
            if (words.size() < 2) fail(line_no, std::string(head) + " needs K");
            g.k = static_cast<int>(parse_index(words[1], line_no));
            if (g.k < 1) fail(line_no, "K must be >= 1");
            first = 2;
        }
        for (std::size_t w = first; w < words.size(); ++w) g.qubits.push_back(parse_index(words[w], line_no));
        const std::size_t got = g.qubits.size();
        if (syntax->arity != 0 && got != syntax->arity) {
            fail(line_no, std::string(head) + " expects " + std::to_string(syntax->arity) +
                              " qubit" + (syntax->arity == 1 ? "" : "s") + ", got " + std::to_string(got));
        }
        if (syntax->kind == GateKind::MCX && got < 2) fail(line_no, "mcx expects controls and a target");
        if (syntax->kind == GateKind::CPhaseK && got < 1) fail(line_no, std::string(head) + " expects qubits");
        for (std::size_t a = 0; a < got; ++a) {
            if (g.qubits[a] >= c.width) {
                fail(line_no, "qubit " + std::to_string(g.qubits[a]) + " out of range");
            }
            for (std::size_t b = 0; b < a; ++b) {
                if (g.qubits[a] == g.qubits[b]) fail(line_no, "repeated qubit");
            }
        }
        c.gates.push_back(std::move(g));
        gate_lines.push_back(line_no);
    }
    if (!have_width) throw CircuitError("missing 'qubits N' line");
    if (c.gateset) {
        for (std::size_t n = 0; n < c.gates.size(); ++n) {
            if (!gateset_allows(*c.gateset, c.gates[n])) {
                fail(gate_lines[n], gate_name(c.gates[n]) + " is not in gate set " + *c.gateset);
            }
        }
    }
    return c;
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.width << "\n";
    if (c.gateset) out << "gateset " << *c.gateset << "\n";
    for (std::size_t q = 0; q < c.prep.qubits.size(); ++q) {
        const auto& p = c.prep.qubits[q];
        if (p.kind == PrepKind::Zero || p.kind == PrepKind::CCZ) continue;
        out << "prep " << q << " " << prep_tag(p) << "\n";
    }
    for (const auto& block : c.prep.ccz_blocks) {
        out << "prep ccz " << block[0] << " " << block[1] << " " << block[2] << "\n";
    }
    for (const auto& g : c.gates) {
        out << gate_name(g);
        if (g.kind == GateKind::PhaseK || g.kind == GateKind::CPhaseK) out << " " << g.k;
        for (auto q : g.qubits) out << " " << q;
        out << "\n";
    }
    return out.str();
}

}  // namespace catalyst
