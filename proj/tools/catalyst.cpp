// Command-line front end: transpile, simulate, estimate, verify-gadgets, zh.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "catalyst/catalysis.hpp"
#include "catalyst/estimator.hpp"
#include "catalyst/zh.hpp"

using namespace catalyst;
namespace cat = catalyst::catalysis;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::string float_text(const RingElement& x) {
    const auto f = embed_float(x);
    std::ostringstream s;
    s << std::setprecision(10) << f.real();
    if (f.imag() != 0.0) s << (f.imag() < 0 ? " - " : " + ") << std::abs(f.imag()) << "i";
    return s.str();
}

// Exact ring text with the float embedding alongside.
std::string both(const RingElement& x) { return to_string(x) + "  (" + float_text(x) + ")"; }

Tower parse_tower(const std::string& name) {
    if (name == "clifford+t") return Tower::clifford_t();
    if (name.rfind("cyclotomic:", 0) == 0) {
        const int depth = std::stoi(name.substr(11));
        if (depth < 1 || depth > 8) throw UsageError("cyclotomic depth must be 1..8");
        return Tower::cyclotomic(depth);
    }
    throw UsageError("unknown tower '" + name + "' (clifford+t or cyclotomic:K)");
}

std::string bits(std::size_t index, std::size_t width) {
    std::string s;
    for (std::size_t q = 0; q < width; ++q) s.push_back(((index >> (width - 1 - q)) & 1u) ? '1' : '0');
    return s;
}

// Extra register of `out` beyond the original width, as its own preparation.
Preparation tail_prep(const Circuit& out, std::size_t from) {
    Preparation p(out.width - from);
    for (std::size_t q = from; q < out.width; ++q) p.qubits[q - from] = out.prep.qubits[q];
    return p;
}

// --- transpile ----------------------------------------------------------------------

struct TranspileArgs {
    std::string input, pass, output;
    bool verify = false;
};

int cmd_transpile(const TranspileArgs& a) {
    const Circuit c = parse_circuit(read_file(a.input));
    Circuit out;
    std::optional<bool> ok;
    std::string detail;
    if (a.pass == "t-to-cs") {
        out = cat::transpile_t_to_cs(c);
        if (a.verify) {
            Circuit gadget = out;
            for (std::size_t q = 0; q < c.width; ++q) gadget.prep.qubits[q] = {};
            const Tower t = tower_for(out);
            auto rep = cat::verify_catalysis("t-to-cs", gadget, c.width, unitary_of(c, t), t);
            ok = rep.passed && simulate(out, t) == product_state({simulate(c, t), prepare(tail_prep(out, c.width), t)});
            detail = rep.to_text();
        }
    } else if (a.pass == "synth-phase") {
        out = cat::transpile_synth_phase(c);
        if (a.verify) {
            Circuit gadget = out;
            for (std::size_t q = 0; q < c.width; ++q) gadget.prep.qubits[q] = {};
            const Tower t = tower_for(out);
            auto rep = cat::verify_catalysis("synth-phase", gadget, c.width, unitary_of(c, t), t);
            ok = rep.passed;
            detail = rep.to_text();
        }
    } else if (a.pass == "real-encode") {
        out = cat::real_encode_circuit(c);
        if (a.verify) {
            const Tower t = tower_for(c);
            ok = unitary_of(out, t) == cat::real_encode_matrix(unitary_of(c, t));
            detail = std::string("real_encode_matrix(U) == unitary(out): ") + (*ok ? "true" : "false") + "\n";
        }
    } else if (a.pass == "ccz-to-3t") {
        out = cat::transpile_ccz_to_3t(c);
        if (a.verify) {
            // Oracle: the same circuit with every |CCZ> block prepared as |T>^3 instead.
            const Tower t = tower_for(out);
            Circuit ref = c;
            ref.prep.ccz_blocks.clear();
            for (auto& q : ref.prep.qubits) {
                if (q.kind == PrepKind::CCZ) q = {PrepKind::T, 0};
            }
            const RingElement phase = power(cat::verify_ccz_to_3t(t).global_phase, static_cast<unsigned>(c.prep.ccz_blocks.size()));
            StateVector expect = simulate(ref, t);
            for (auto& x : expect.amplitudes) x = phase * x;
            ok = simulate(out, t) == expect;
            detail = "global phase per block " + both(cat::verify_ccz_to_3t(t).global_phase) + "\n";
        }
    } else {
        throw UsageError("unknown pass '" + a.pass + "' (t-to-cs, real-encode, ccz-to-3t, synth-phase)");
    }
    write_output(a.output, serialize_circuit(out));
    if (ok) {
        std::cerr << detail << "verify: " << (*ok ? "PASS" : "FAIL") << "\n";
        return *ok ? kOk : kFailed;
    }
    return kOk;
}

// --- simulate -----------------------------------------------------------------------

int cmd_simulate(const std::string& input, const std::string& obs) {
    const Circuit c = parse_circuit(read_file(input));
    const Tower t = tower_for(c);
    const StateVector psi = simulate(c, t);
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
        if (psi.amplitudes[i].is_zero()) continue;
        std::cout << "|" << bits(i, psi.width) << ">  " << both(psi.amplitudes[i]) << "\n";
    }
    if (!obs.empty()) {
        const Observable o = Observable::parse(obs);
        if (o.width() != c.width) throw UsageError("observable has " + std::to_string(o.width()) + " qubits, circuit has " + std::to_string(c.width));
        std::cout << "expectation " << both(expectation(psi, o)) << "\n";
    }
    return kOk;
}

// --- estimate -----------------------------------------------------------------------

struct EstimateArgs {
    std::string input, obs, csv;
    std::size_t shots = 100000;
    std::uint64_t seed = 1;
    bool fixed = false;
};

int cmd_estimate(const EstimateArgs& a) {
    const Circuit c = parse_circuit(read_file(a.input));
    const Observable o = Observable::parse(a.obs);
    if (o.width() != c.width) {
        throw UsageError("observable has " + std::to_string(o.width()) + " qubits, circuit has " + std::to_string(c.width));
    }
    const estimator::Ensemble e = estimator::build_ensemble(c, o);
    estimator::EstimateOptions opts;
    opts.fixed_allocation = a.fixed;
    estimator::EstimateReport r = estimator::qp_estimate(e, a.shots, a.seed, opts);
    std::optional<RingElement> exact;
    if (c.width + 1 <= kSimulationWidthCap) {
        exact = estimator::exact_value(e);
        r.exact_value = embed_float(*exact).real();
    }
    std::cout << r.to_text();
    if (exact) std::cout << "exact_ring=" << to_string(*exact) << "\n";
    std::cout << "one_norm=" << std::setprecision(17) << e.one_norm << "\n";
    if (!a.csv.empty()) {
        write_output(a.csv, estimator::convergence_csv(estimator::convergence(e, a.shots, a.seed, opts), r.exact_value, a.seed));
    }
    return kOk;
}

// --- verify-gadgets -----------------------------------------------------------------

// |a, b> -> |a, b + sign * a mod 2^n> on every basis state.
cat::Report truth_table(const std::string& name, const Circuit& c, std::size_t n, int sign) {
    cat::Report r;
    r.name = name;
    const Tower t = Tower::cyclotomic(1);
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t a = 0; a < size; ++a) {
        for (std::size_t b = 0; b < size; ++b) {
            StateVector psi = basis_state(2 * n, (a << n) | b, t);
            apply_circuit(psi, c, t);
            const std::size_t want = (a << n) | ((b + size + static_cast<std::size_t>(sign) * a) % size);
            if (psi != basis_state(2 * n, want, t)) r.failures.push_back(bits(a, n) + bits(b, n));
            ++r.inputs_checked;
        }
    }
    r.passed = r.failures.empty();
    return r;
}

int cmd_verify_gadgets(const std::string& scope, bool inject_fault) {
    static const std::vector<std::string> scopes{"all", "t", "phase", "ccz", "adder", "synth"};
    if (std::find(scopes.begin(), scopes.end(), scope) == scopes.end()) {
        throw UsageError("unknown scope '" + scope + "' (all, t, phase, ccz, adder, synth)");
    }
    auto in = [&](const std::string& s) { return scope == "all" || scope == s; };
    std::vector<cat::Report> reports;
    const Tower ct = Tower::clifford_t();

    if (in("t")) {
        RingMatrix t_ref = gate_matrix(Gate::t(0), ct);
        // The fault hook checks the gadget against the wrong gate.
        if (inject_fault) t_ref = gate_matrix(Gate::s(0), ct);
        reports.push_back(cat::verify_catalysis("t_gadget", cat::t_gadget(), 1, t_ref, ct));
    }
    if (in("phase")) {
        for (int k = 2; k <= 6; ++k) {
            const Tower t = Tower::for_phase_depth(k);
            reports.push_back(cat::verify_catalysis("phase_gadget k=" + std::to_string(k), cat::phase_gadget(k), 1,
                                                    gate_matrix(Gate::phasek(k, 0), t), t));
        }
        for (int k = 1; k <= 4; ++k) {
            for (int m = 0; m <= 2; ++m) {
                const Tower t = Tower::for_phase_depth(std::max(k, 2));
                std::vector<std::size_t> controls(static_cast<std::size_t>(m));
                for (int j = 0; j < m; ++j) controls[static_cast<std::size_t>(j)] = static_cast<std::size_t>(j);
                Circuit ref(static_cast<std::size_t>(m) + 1);
                ref.add(m == 0 ? Gate::phasek(k, 0) : Gate::cphasek(k, controls, static_cast<std::size_t>(m)));
                reports.push_back(cat::verify_catalysis(
                    "controlled_phase_gadget k=" + std::to_string(k) + " m=" + std::to_string(m),
                    cat::controlled_phase_gadget(k, m), static_cast<std::size_t>(m) + 1, unitary_of(ref, t), t));
            }
        }
    }
    if (in("ccz")) reports.push_back(cat::verify_ccz_to_3t(ct));
    if (in("adder")) {
        for (std::size_t n = 1; n <= 4; ++n) {
            reports.push_back(truth_table("adder n=" + std::to_string(n), cat::adder(n), n, +1));
            reports.push_back(truth_table("subtractor n=" + std::to_string(n), cat::subtractor(n), n, -1));
        }
        for (std::size_t n = 1; n <= 4; ++n) {
            std::optional<Preparation> bank;
            if (inject_fault && n == 4) bank = cat::catalyst_bank(n, -1);
            reports.push_back(cat::verify_adder_catalysis(n, bank));
        }
    }
    if (in("synth")) {
        for (int k = 1; k <= 4; ++k) {
            for (long m = 1; m < (1L << k); ++m) reports.push_back(cat::verify_synth_small_phase(k, m));
        }
    }
    bool all = true;
    for (const auto& r : reports) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.inputs_checked << " inputs)\n";
        all = all && r.passed;
    }
    std::cout << (all ? "all gadgets verified" : "gadget verification FAILED") << " (" << reports.size() << " checks)\n";
    return all ? kOk : kFailed;
}

// --- zh -------------------------------------------------------------------------------

std::vector<zh::RewriteRule> library(const Tower& t) {
    auto rules = zh::phase_free_rules();
    rules.push_back(zh::multiply_rule());
    std::vector<RingElement> labels{t.i()};
    if (t.has_root_of_unity(3)) labels.push_back(t.root_of_unity(3));
    for (const auto& a : labels) {
        rules.push_back(zh::catalysis_rule(a));
        rules.push_back(zh::scalar_intro_rule(a));
        rules.push_back(zh::euler_rule(a));
    }
    return rules;
}

int cmd_zh_eval(const std::string& path, const Tower& t) {
    const zh::Diagram d = zh::parse_diagram(read_file(path), t);
    const RingMatrix m = zh::eval_tensor(d, t);
    std::cout << "# " << m.rows() << "x" << m.cols() << " (outputs x inputs)\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c).is_zero()) continue;
            std::cout << "[" << bits(r, d.outputs().size()) << "," << bits(c, d.inputs().size()) << "] "
                      << both(m(r, c)) << "\n";
        }
    }
    return kOk;
}

int cmd_zh_rules(const Tower& t) {
    zh::RuleBook book(t);
    bool all = true;
    for (auto& r : library(t)) {
        const auto rep = book.register_rule(std::move(r));
        std::cout << (rep.sound ? "admitted " : "REJECTED ") << rep.rule << " (" << rep.instances_checked
                  << " instances)";
        if (!rep.sound) std::cout << " witness: " << rep.witness;
        std::cout << "\n";
        all = all && rep.sound;
    }
    std::cout << book.rules().size() << " rules admitted\n";
    return all ? kOk : kFailed;
}

int cmd_zh_extract(const std::string& path, const std::string& label, const std::string& out,
                   const std::string& trace_out, const Tower& t) {
    const zh::Diagram d = zh::parse_diagram(read_file(path), t);
    const RingElement a = t.parse(label);
    const zh::Extraction ex = zh::extract_catalyst(d, a);
    const bool preserved = zh::eval_tensor(ex.diagram, t) == zh::eval_tensor(d, t);
    write_output(out, zh::serialize_diagram(ex.diagram));
    if (!trace_out.empty()) write_output(trace_out, zh::serialize_trace(ex.trace));
    std::cerr << "catalyst boxes: " << ex.initial_count << " -> " << zh::catalyst_boxes(ex.diagram, a).size()
              << "\nsteps: " << ex.trace.size() << "\nsemantics preserved: " << (preserved ? "true" : "false")
              << "\n";
    return preserved ? kOk : kFailed;
}

int cmd_zh_equal(const std::string& p1, const std::string& p2, const Tower& t) {
    const zh::Diagram a = zh::parse_diagram(read_file(p1), t);
    const zh::Diagram b = zh::parse_diagram(read_file(p2), t);
    const bool eq = zh::semantic_equal(a, b);
    std::cout << (eq ? "true" : "false") << "\n";
    return eq ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact catalysis compiler, simulator and ZH toolkit"};
    app.require_subcommand(1);

    TranspileArgs ta;
    auto* transpile = app.add_subcommand("transpile", "Apply a pass to a circuit file");
    transpile->add_option("input", ta.input, "Circuit file")->required();
    transpile->add_option("--pass,-p", ta.pass, "t-to-cs | real-encode | ccz-to-3t | synth-phase")->required();
    transpile->add_option("--output,-o", ta.output, "Output path (default stdout)");
    transpile->add_flag("--verify", ta.verify, "Check the result with the exact oracle");

    std::string sim_in, sim_obs;
    auto* sim = app.add_subcommand("simulate", "Exact statevector of a circuit file");
    sim->add_option("input", sim_in, "Circuit file")->required();
    sim->add_option("--obs", sim_obs, "Pauli observable, e.g. XZI");

    EstimateArgs ea;
    auto* est = app.add_subcommand("estimate", "Quasi-probability estimate of <obs> after T -> CS catalysis");
    est->add_option("input", ea.input, "Clifford+T circuit file")->required();
    est->add_option("--obs", ea.obs, "Pauli observable")->required();
    est->add_option("--shots", ea.shots, "Total shots")->check(CLI::PositiveNumber);
    est->add_option("--seed", ea.seed, "Run seed");
    est->add_option("--csv", ea.csv, "Write the convergence table here");
    est->add_flag("--fixed-allocation", ea.fixed, "Split shots over terms deterministically");

    std::string scope = "all";
    bool fault = false;
    auto* vg = app.add_subcommand("verify-gadgets", "Exact checks of the catalysis gadgets");
    vg->add_option("--scope", scope, "all | t | phase | ccz | adder | synth");
    vg->add_flag("--inject-fault", fault, "Corrupt one check (test hook)");

    std::string tower_name = "clifford+t";
    auto* zhc = app.add_subcommand("zh", "ZH-diagram tools");
    zhc->require_subcommand(1);
    zhc->add_option("--tower", tower_name, "clifford+t | cyclotomic:K");
    std::string zpath, zpath2, zlabel = "i", zout, ztrace;
    auto* zeval = zhc->add_subcommand("eval", "Print the exact matrix of a diagram");
    zeval->add_option("diagram", zpath)->required();
    auto* zrules = zhc->add_subcommand("rules", "Run the soundness gate over the rule library");
    auto* zext = zhc->add_subcommand("extract", "Reduce catalyst boxes to exactly one");
    zext->add_option("diagram", zpath)->required();
    zext->add_option("--label", zlabel, "Catalyst label in ring text (default i)");
    zext->add_option("--output,-o", zout, "Extracted diagram (default stdout)");
    zext->add_option("--trace", ztrace, "Write the proof trace here");
    auto* zeq = zhc->add_subcommand("equal", "Compare two diagrams exactly");
    zeq->add_option("first", zpath)->required();
    zeq->add_option("second", zpath2)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (const char* env = std::getenv("CATALYST_THREADS"); env && std::atoi(env) < 1) {
        std::cerr << "error: CATALYST_THREADS must be a positive integer\n";
        return kUsage;
    }

    try {
        if (*transpile) return cmd_transpile(ta);
        if (*sim) return cmd_simulate(sim_in, sim_obs);
        if (*est) return cmd_estimate(ea);
        if (*vg) return cmd_verify_gadgets(scope, fault);
        if (*zhc) {
            const Tower t = parse_tower(tower_name);
            if (*zeval) return cmd_zh_eval(zpath, t);
            if (*zrules) return cmd_zh_rules(t);
            if (*zext) return cmd_zh_extract(zpath, zlabel, zout, ztrace, t);
            if (*zeq) return cmd_zh_equal(zpath, zpath2, t);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        // Parse failures, cap violations and malformed inputs.
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
