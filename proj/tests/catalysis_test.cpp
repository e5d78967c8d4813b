#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "catalyst/catalysis.hpp"
#include "support/circuit_gen.hpp"
#include "support/float_sim.hpp"
#include "support/ring_gen.hpp"

using namespace catalyst;
using namespace catalyst::catalysis;
namespace ct = catalyst::testing;

namespace {

StateVector prepped(std::initializer_list<QubitPrep> preps, const Tower& t) {
    Preparation p(preps.size());
    std::size_t q = 0;
    for (const auto& x : preps) p.set(q++, x);
    return prepare(p, t);
}

const QubitPrep kT{PrepKind::T, 0};

// Diagonal matrix with `phase` on the all-ones index and 1 elsewhere.
RingMatrix controlled_phase_reference(std::size_t qubits, const RingElement& phase, const Tower& t) {
    RingMatrix m = RingMatrix::identity(std::size_t{1} << qubits, t);
    m(m.rows() - 1, m.rows() - 1) = phase;
    return m;
}

// Classical reversible simulation of X/CX/CCX/MCX on a bit vector (qubit 0 first).
std::vector<int> run_classical(const Circuit& c, std::vector<int> bits) {
    for (const auto& g : c.gates) {
        bool fire = true;
        for (std::size_t i = 0; i + 1 < g.qubits.size(); ++i) fire = fire && bits[g.qubits[i]];
        switch (g.kind) {
            case GateKind::X:
            case GateKind::CX:
            case GateKind::CCX:
            case GateKind::MCX:
                if (fire) bits[g.qubits.back()] ^= 1;
                break;
            default:
                ADD_FAILURE() << "non-classical gate " << gate_name(g);
        }
    }
    return bits;
}

std::vector<int> to_bits(std::size_t value, std::size_t width) {
    std::vector<int> b(width);
    for (std::size_t i = 0; i < width; ++i) b[i] = (value >> (width - 1 - i)) & 1U;
    return b;
}

std::size_t from_bits(const std::vector<int>& b, std::size_t lo, std::size_t n) {
    std::size_t v = 0;
    for (std::size_t i = 0; i < n; ++i) v = (v << 1) | static_cast<std::size_t>(b[lo + i]);
    return v;
}

}  // namespace

// --- T gadget ------------------------------------------------------------------

TEST(t_gadget, basis_examples) {
    Tower t = Tower::clifford_t();
    Circuit g = t_gadget();
    ASSERT_EQ(g.width, 2u);
    EXPECT_EQ(g.t_count(), 0u);

    Circuit c0 = g;
    StateVector out = simulate(c0, t);
    EXPECT_EQ(out, prepped({{PrepKind::Zero, 0}, kT}, t));

    Circuit c1 = g;
    c1.prep.set(0, {PrepKind::One, 0});
    StateVector one_t = prepped({{PrepKind::One, 0}, kT}, t);
    StateVector expect = one_t;
    for (auto& a : expect.amplitudes) a = t.generator("w") * a;
    EXPECT_EQ(simulate(c1, t), expect);

    Circuit cp = g;
    cp.prep.set(0, {PrepKind::Plus, 0});
    EXPECT_EQ(simulate(cp, t), prepped({kT, kT}, t));
}

TEST(t_gadget, contract_on_random_ring_states) {
    Tower t = Tower::clifford_t();
    const Circuit g = t_gadget();
    const RingMatrix tm = gate_matrix(Gate::t(0), t);
    EXPECT_TRUE(verify_catalysis("t", g, 1, tm, t).passed);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RingElement> v{ct::random_element(rng, t), ct::random_element(rng, t)};
        EXPECT_TRUE(catalysis_holds_on(g, v, tm, t)) << trial;
    }
}

TEST(t_gadget, matches_float_oracle) {
    Circuit g = t_gadget();
    g.prep.set(0, {PrepKind::Plus, 0});
    const auto ref = ct::float_simulate(g);
    const std::complex<double> tp = ct::phase_of(3, 1) / std::sqrt(2.0);
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<std::complex<double>> expect{s * s, s * tp, tp * s, tp * tp};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(ref[i] - expect[i]), 0.0, 1e-12);
}

TEST(phase_gadget, examples_and_range) {
    EXPECT_EQ(phase_gadget(3), t_gadget());
    EXPECT_THROW(phase_gadget(1), std::invalid_argument);

    Circuit s = phase_gadget(2);
    ASSERT_EQ(s.gates.size(), 2u);
    EXPECT_EQ(s.gates[0], Gate::cx(0, 1));
    EXPECT_EQ(s.gates[1], Gate::cz(0, 1));
    EXPECT_EQ(s.prep.qubits[1].kind, PrepKind::PlusI);

    Circuit z8 = phase_gadget(4);
    EXPECT_EQ(z8.gates[1], Gate::cphasek(3, {0}, 1));
}

TEST(phase_gadget, contract_for_depths_2_to_6) {
    for (int k = 2; k <= 6; ++k) {
        Tower t = Tower::for_phase_depth(std::max(3, k));
        RingMatrix ref = controlled_phase_reference(1, t.root_of_unity(k), t);
        Report r = verify_catalysis("phase", phase_gadget(k), 1, ref, t);
        EXPECT_TRUE(r.passed) << k << "\n" << r.to_text();
        EXPECT_TRUE(r.global_phase.is_one());
    }
}

TEST(controlled_phase_gadget, examples_and_sweep) {
    EXPECT_EQ(controlled_phase_gadget(4, 0), phase_gadget(4));
    for (int k = 1; k <= 4; ++k) {
        for (int m = 0; m <= 3; ++m) {
            if (k == 1 && m == 0) continue;  // Z itself; no smaller phase to use
            Tower t = Tower::for_phase_depth(std::max(3, k));
            const auto data = static_cast<std::size_t>(m + 1);
            RingMatrix ref = controlled_phase_reference(data, t.root_of_unity(k), t);
            Report r = verify_catalysis("cphase", controlled_phase_gadget(k, m), data, ref, t);
            EXPECT_TRUE(r.passed) << "k=" << k << " m=" << m << "\n" << r.to_text();
            EXPECT_EQ(r.inputs_checked, std::size_t{1} << data);
        }
    }
    // m = 1, k = 2 uses a CCZ; for k = 1 only the X ladder onto |-> remains.
    EXPECT_EQ(controlled_phase_gadget(2, 1).gates.back(), Gate::ccz(0, 1, 2));
    EXPECT_EQ(controlled_phase_gadget(1, 1).gates, std::vector<Gate>{Gate::ccx(0, 1, 2)});
    EXPECT_EQ(controlled_phase_gadget(1, 2).gates, std::vector<Gate>{Gate::mcx({0, 1, 2}, 3)});
}

TEST(verify_catalysis, reports_failing_inputs) {
    Tower t = Tower::clifford_t();
    Circuit wrong = t_gadget();
    wrong.prep.set(1, {PrepKind::Plus, 0});
    Report r = verify_catalysis("bad", wrong, 1, gate_matrix(Gate::t(0), t), t);
    EXPECT_FALSE(r.passed);
    ASSERT_FALSE(r.failures.empty());
    EXPECT_EQ(r.failures[0], "1");
    EXPECT_NE(r.to_text().find("passed=false"), std::string::npos);
}

// --- T -> CS transpilation ---------------------------------------------------------

TEST(transpile_t_to_cs, empty_and_single_t) {
    Circuit empty(2);
    Circuit out = transpile_t_to_cs(empty);
    EXPECT_EQ(out.width, 3u);
    EXPECT_TRUE(out.gates.empty());
    EXPECT_EQ(out.prep.qubits[2].kind, PrepKind::T);

    Circuit single(1);
    single.prep.set(0, {PrepKind::Plus, 0});
    single.add(Gate::t(0));
    Circuit ts = transpile_t_to_cs(single);
    EXPECT_EQ(ts.t_count(), 0u);
    Tower t = Tower::clifford_t();
    EXPECT_EQ(simulate(ts, t), prepped({kT, kT}, t));
}

TEST(transpile_t_to_cs, rejects_non_clifford_t) {
    Circuit c(2);
    c.add(Gate::cs(0, 1));
    EXPECT_THROW(transpile_t_to_cs(c), CircuitError);
}

TEST(transpile_t_to_cs, random_circuits_exact) {
    Tower t = Tower::clifford_t();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Circuit c = ct::random_circuit(rng, 4, 40, ct::clifford_t_pool(), 12);
        ct::randomize_prep(rng, c, false);
        Circuit out = transpile_t_to_cs(c);
        EXPECT_EQ(out.t_count(), 0u);
        EXPECT_EQ(out.width, c.width + 1);
        for (const auto& g : out.gates) EXPECT_TRUE(gateset_allows("cs+h", g)) << gate_name(g);
        StateVector expect = product_state({simulate(c, t), prepped({kT}, t)});
        EXPECT_EQ(simulate(out, t), expect) << trial;
    }
}

TEST(apply_embedding, agrees_with_transpile_t_to_cs) {
    const CatalyticEmbedding e = t_to_cs_embedding();
    Tower t = Tower::clifford_t();
    for (const auto& r : verify_embedding(e, t)) EXPECT_TRUE(r.passed) << r.to_text();

    Circuit id(3);
    Circuit idout = apply_embedding(id, e);
    EXPECT_EQ(idout.width, 4u);
    EXPECT_TRUE(idout.gates.empty());

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = ct::random_circuit(rng, 3, 25, ct::clifford_t_pool());
        EXPECT_EQ(apply_embedding(c, e), transpile_t_to_cs(c));
    }
    Circuit bad(3);
    bad.add(Gate::ccx(0, 1, 2));
    EXPECT_THROW(apply_embedding(bad, e), CircuitError);
}

TEST(apply_embedding, composite_with_real_encoding) {
    // Clifford+T -> CS+H -> Toffoli+H, checked by the |-i> catalysis of the encoding.
    Tower t = Tower::clifford_t();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        Circuit c = ct::random_circuit(rng, 3, 20, ct::clifford_t_pool(), 6);
        Circuit real = real_encode_circuit(apply_embedding(c, t_to_cs_embedding()));
        ASSERT_EQ(real.gateset, std::optional<std::string>("toffoli+h"));
        real.prep.set(0, {PrepKind::MinusI, 0});
        StateVector expect =
            product_state({prepped({{PrepKind::MinusI, 0}}, t), simulate(c, t), prepped({kT}, t)});
        EXPECT_EQ(simulate(real, t), expect) << trial;
    }
}

// --- magic states ------------------------------------------------------------------

TEST(ccz_to_3t, exact_conversion) {
    Tower t = Tower::clifford_t();
    Report r = verify_ccz_to_3t(t);
    EXPECT_TRUE(r.passed) << r.to_text();
    EXPECT_EQ(ccz_to_3t().t_count(), 1u);
    // The phase is a unit of the ring.
    EXPECT_TRUE((conj(r.global_phase) * r.global_phase).is_one());

    auto ref = ct::float_simulate(ccz_to_3t());
    const std::complex<double> tp[2] = {1.0 / std::sqrt(2.0), ct::phase_of(3, 1) / std::sqrt(2.0)};
    const std::complex<double> phase = embed_float(r.global_phase);
    for (std::size_t i = 0; i < 8; ++i) {
        const auto expect = phase * tp[i >> 2 & 1] * tp[i >> 1 & 1] * tp[i & 1];
        EXPECT_NEAR(std::abs(ref[i] - expect), 0.0, 1e-12);
    }
}

TEST(ccz_to_3t, transpile_pass_inserts_conversion) {
    Circuit c(4);
    c.prep.set_ccz(1, 2, 3);
    c.add(Gate::h(0));
    Circuit out = transpile_ccz_to_3t(c);
    EXPECT_EQ(out.t_count(), 1u);
    Tower t = Tower::clifford_t();
    StateVector psi = simulate(out, t);
    const RingElement phase = verify_ccz_to_3t(t).global_phase;
    StateVector expect = prepped({{PrepKind::Plus, 0}, kT, kT, kT}, t);
    for (auto& a : expect.amplitudes) a = phase * a;
    EXPECT_EQ(psi, expect);
}

TEST(decompose_t_dm, exact_reconstruction) {
    Tower t = Tower::clifford_t();
    MixedDecomposition d = decompose_t_dm();
    ASSERT_EQ(d.terms.size(), 4u);
    for (const auto& term : d.terms) EXPECT_EQ(conj(term.weight), term.weight);
    RingMatrix target = density_matrix(prepped({kT}, t));
    RingMatrix rho = d.reconstruct(t);
    EXPECT_EQ(rho, target);
    EXPECT_EQ(rho(0, 0) + rho(1, 1), t.one());
    EXPECT_NEAR(d.one_norm(), 2.0 * std::sqrt(2.0) - 1.0, 1e-12);
    EXPECT_NEAR(d.one_norm(), 1.8284, 1e-4);

    // Also exact in a deeper tower.
    Tower deep = Tower::cyclotomic(4);
    EXPECT_EQ(d.reconstruct(deep), density_matrix(prepped({kT}, deep)));
}

// --- real encoding -------------------------------------------------------------------

TEST(real_encode_matrix, hadamard_and_s) {
    Tower t = Tower::clifford_t();
    RingMatrix h = gate_matrix(Gate::h(0), t);
    EXPECT_EQ(real_encode_matrix(h), kron(RingMatrix::identity(2, t), h));

    RingMatrix s = real_encode_matrix(gate_matrix(Gate::s(0), t));
    RingMatrix expect(4, 4);
    expect(0, 0) = t.one();
    expect(2, 2) = t.one();
    expect(3, 1) = t.one();
    expect(1, 3) = -t.one();
    EXPECT_EQ(s, expect);
    EXPECT_EQ(s.transpose() * s, RingMatrix::identity(4, t));
}

TEST(real_encode_matrix, rejects_non_unitary) {
    Tower t = Tower::clifford_t();
    RingMatrix m = RingMatrix::identity(2, t);
    m(0, 0) = t.one() + t.one();
    EXPECT_THROW(real_encode_matrix(m), std::invalid_argument);
    EXPECT_THROW(real_encode_matrix(RingMatrix(2, 2)), std::invalid_argument);
}

TEST(real_encode_matrix, controlled_s_against_toffoli) {
    Tower t = Tower::clifford_t();
    RingMatrix cs = real_encode_matrix(gate_matrix(Gate::cs(0, 1), t));
    RingMatrix toffoli = gate_matrix(Gate::ccx(1, 2, 0), t);
    PermutationMatch m = match_up_to_qubit_permutation(cs, toffoli, t);
    // CS~ carries one -1 entry that no qubit relabelling removes: what is left
    // over is a doubly-controlled Z.
    EXPECT_FALSE(m.exact);
    EXPECT_EQ(m.mismatched_entries, 1u);
    RingMatrix ccz_like = RingMatrix::identity(8, t);
    std::size_t minus = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            if (i != j) EXPECT_TRUE(m.residual(i, j).is_zero());
        }
        if (m.residual(i, i) == -t.one()) ++minus;
    }
    EXPECT_EQ(minus, 1u);
    // Up to that sign the permutation found is exact.
    EXPECT_EQ(m.residual * permute_qubits(cs, m.perm), toffoli);
}

TEST(permute_qubits, swap_of_cx) {
    Tower t = Tower::clifford_t();
    RingMatrix a = gate_matrix(Gate::cx(0, 1), t);
    Circuit rev(2);
    rev.add(Gate::cx(1, 0));
    EXPECT_EQ(permute_qubits(a, {1, 0}), unitary_of(rev, t));
    PermutationMatch m = match_up_to_qubit_permutation(a, unitary_of(rev, t), t);
    EXPECT_TRUE(m.exact);
    EXPECT_EQ(m.perm, (std::vector<std::size_t>{1, 0}));
}

TEST(real_encode_circuit, examples_and_errors) {
    Circuit h(2);
    h.add(Gate::h(0)).add(Gate::h(1));
    Circuit enc = real_encode_circuit(h);
    ASSERT_EQ(enc.width, 3u);
    ASSERT_EQ(enc.gates.size(), 2u);
    EXPECT_EQ(enc.gates[0], Gate::h(1));
    EXPECT_EQ(enc.gates[1], Gate::h(2));

    Circuit tc(1);
    tc.add(Gate::t(0));
    EXPECT_THROW(real_encode_circuit(tc), CircuitError);
    Circuit pk(1);
    pk.add(Gate::phasek(2, 0));
    EXPECT_NO_THROW(real_encode_circuit(pk));
}

TEST(real_encode, random_cs_h_properties) {
    Tower t = Tower::clifford_t();
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t width = 1 + trial % 3;
        Circuit u = ct::random_circuit(rng, width, 8, ct::cs_h_pool());
        Circuit v = ct::random_circuit(rng, width, 8, ct::cs_h_pool());
        RingMatrix mu = unitary_of(u, t);
        RingMatrix mv = unitary_of(v, t);
        RingMatrix ru = real_encode_matrix(mu);
        for (std::size_t i = 0; i < ru.rows(); ++i) {
            for (std::size_t j = 0; j < ru.cols(); ++j) EXPECT_EQ(conj(ru(i, j)), ru(i, j));
        }
        EXPECT_EQ(ru.transpose() * ru, RingMatrix::identity(ru.rows(), t));
        EXPECT_EQ(real_encode_matrix(mu * mv), ru * real_encode_matrix(mv));
        EXPECT_EQ(unitary_of(real_encode_circuit(u), t), ru);

        Circuit uv = v;
        uv.append(u);
        Circuit enc_uv = real_encode_circuit(v);
        enc_uv.append(real_encode_circuit(u));
        EXPECT_EQ(unitary_of(real_encode_circuit(uv), t), unitary_of(enc_uv, t));

        // |-i> is a catalyst for the encoding.
        Circuit data = u;
        ct::randomize_prep(rng, data, false);
        Circuit enc = real_encode_circuit(data);
        enc.prep.set(0, {PrepKind::MinusI, 0});
        EXPECT_EQ(simulate(enc, t),
                  product_state({prepped({{PrepKind::MinusI, 0}}, t), simulate(data, t)}));

        // Real inputs: the data marginal reproduces the original distribution.
        Circuit real_in = u;
        for (std::size_t q = 0; q < width; ++q) {
            const PrepKind opts[4] = {PrepKind::Zero, PrepKind::One, PrepKind::Plus, PrepKind::Minus};
            real_in.prep.set(q, {opts[rng() % 4], 0});
        }
        std::vector<std::size_t> keep_enc(width), keep(width);
        for (std::size_t q = 0; q < width; ++q) {
            keep[q] = q;
            keep_enc[q] = q + 1;
        }
        EXPECT_EQ(marginal_distribution(simulate(real_encode_circuit(real_in), t), keep_enc),
                  marginal_distribution(simulate(real_in, t), keep));
    }
}

// --- arithmetic ---------------------------------------------------------------------

TEST(arithmetic, decrementer_truth_table) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Circuit c = controlled_decrementer(n);
        const std::size_t mod = std::size_t{1} << n;
        for (std::size_t ctl = 0; ctl < 2; ++ctl) {
            for (std::size_t x = 0; x < mod; ++x) {
                std::vector<int> in = to_bits(x, n);
                in.insert(in.begin(), static_cast<int>(ctl));
                auto out = run_classical(c, in);
                EXPECT_EQ(out[0], static_cast<int>(ctl));
                EXPECT_EQ(from_bits(out, 1, n), ctl ? (x + mod - 1) % mod : x) << n << " " << x;
            }
        }
    }
    auto out = run_classical(controlled_decrementer(2), {1, 0, 0});
    EXPECT_EQ(out, (std::vector<int>{1, 1, 1}));
}

TEST(arithmetic, subtractor_and_adder_truth_tables) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const Circuit sub = subtractor(n);
        const Circuit add = adder(n);
        const std::size_t mod = std::size_t{1} << n;
        for (std::size_t a = 0; a < mod; ++a) {
            for (std::size_t b = 0; b < mod; ++b) {
                const std::vector<int> in = to_bits(a * mod + b, 2 * n);
                auto s = run_classical(sub, in);
                EXPECT_EQ(from_bits(s, 0, n), a);
                EXPECT_EQ(from_bits(s, n, n), (b + mod - a) % mod);
                auto d = run_classical(add, in);
                EXPECT_EQ(from_bits(d, 0, n), a);
                EXPECT_EQ(from_bits(d, n, n), (a + b) % mod);
                EXPECT_EQ(run_classical(add, s), in);
            }
        }
    }
    auto out = run_classical(subtractor(3), {0, 1, 0, 1, 0, 1});
    EXPECT_EQ(out, (std::vector<int>{0, 1, 0, 0, 1, 1}));
}

TEST(catalyst_bank, ordering) {
    Preparation b1 = catalyst_bank(1);
    EXPECT_EQ(b1.qubits[0].kind, PrepKind::Minus);
    Preparation b2 = catalyst_bank(2);
    EXPECT_EQ(b2.qubits[0].kind, PrepKind::PlusI);
    EXPECT_EQ(b2.qubits[1].kind, PrepKind::Minus);
    Preparation b3 = catalyst_bank(3);
    EXPECT_EQ(b3.qubits[0].kind, PrepKind::T);
    Preparation b4 = catalyst_bank(4, -1);
    EXPECT_EQ(b4.qubits[0].kind, PrepKind::ZKdg);
    EXPECT_EQ(b4.qubits[0].k, 4);
    EXPECT_EQ(b4.qubits[2].kind, PrepKind::MinusI);
}

TEST(adder_catalysis, passes_up_to_four_bits) {
    for (std::size_t n = 1; n <= 4; ++n) {
        Report r = verify_adder_catalysis(n);
        EXPECT_TRUE(r.passed) << r.to_text();
        EXPECT_EQ(r.inputs_checked, std::size_t{1} << n);
    }
}

TEST(adder_catalysis, corrupted_bank_fails_with_witness) {
    Preparation bad = catalyst_bank(3);
    bad.set(0, {PrepKind::Plus, 0});
    Report r = verify_adder_catalysis(3, bad);
    EXPECT_FALSE(r.passed);
    EXPECT_FALSE(r.failures.empty());
}

TEST(synth_small_phase, all_small_cases) {
    for (int k = 1; k <= 4; ++k) {
        for (long m = 1; m < (1L << k); ++m) {
            Report r = verify_synth_small_phase(k, m);
            EXPECT_TRUE(r.passed) << r.to_text();
            EXPECT_TRUE(r.global_phase.is_one());
        }
    }
    EXPECT_THROW(synth_small_phase(3, 0), std::invalid_argument);
    EXPECT_THROW(synth_small_phase(3, 8), std::invalid_argument);
}

TEST(synth_small_phase, eleven_pi_over_eight_float_oracle) {
    Circuit c = synth_small_phase(4, 11);
    c.prep.set(0, {PrepKind::Plus, 0});
    const auto out = ct::float_simulate(c);
    // Data |+> picks up Z(11 pi / 8); everything else returns to its preparation.
    Circuit expect(c.width);
    expect.prep = c.prep;
    expect.add(Gate::phasek(4, 0));
    auto ref = ct::float_simulate(expect);
    const auto rot = ct::phase_of(4, 11) / ct::phase_of(4, 1);
    const std::size_t half = ref.size() / 2;
    for (std::size_t i = half; i < ref.size(); ++i) ref[i] *= rot;
    double dist = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) dist = std::max(dist, std::abs(out[i] - ref[i]));
    EXPECT_LT(dist, 1e-12);
}

TEST(synth_small_phase, s_and_t_cases) {
    Circuit s = synth_small_phase(2, 2);
    // Only the most significant ancilla is fanned out to.
    EXPECT_EQ(s.gates.front(), Gate::cx(0, 1));
    EXPECT_EQ(s.gates.back(), Gate::cx(0, 1));
    EXPECT_EQ(synth_small_phase(3, 1).prep.qubits[4].kind, PrepKind::ZKdg);
}

TEST(transpile_synth_phase, random_clifford_t) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        Circuit c = ct::random_circuit(rng, 2, 10, ct::clifford_t_pool(), 4);
        if (trial % 2) c.add(Gate::phasek(4, 1, -1));
        ct::randomize_prep(rng, c, false);
        Circuit out = transpile_synth_phase(c);
        EXPECT_EQ(out.t_count(), 0u);
        Tower t = tower_for(out);
        const std::size_t extra = out.width - c.width;
        Preparation rest(extra);
        for (std::size_t q = 0; q < extra; ++q) {
            if (out.prep.qubits[c.width + q].kind != PrepKind::CCZ) rest.set(q, out.prep.qubits[c.width + q]);
        }
        EXPECT_EQ(simulate(out, t), product_state({simulate(c, t), prepare(rest, t)})) << trial;
    }
}
