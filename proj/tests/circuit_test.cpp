#include <random>

#include <gtest/gtest.h>

#include "catalyst/circuit.hpp"
#include "support/circuit_gen.hpp"
#include "support/float_sim.hpp"

using namespace catalyst;
namespace ct = catalyst::testing;

namespace {

Tower ct_tower() { return Tower::clifford_t(); }

}  // namespace

TEST(gate_matrix, standard_definitions) {
    Tower t = ct_tower();
    RingMatrix cs = gate_matrix(Gate::cs(0, 1), t);
    RingMatrix expect = RingMatrix::identity(4, t);
    expect(3, 3) = t.i();
    EXPECT_EQ(cs, expect);

    RingMatrix h = gate_matrix(Gate::h(0), t);
    RingElement s = (t.generator("w") + conj(t.generator("w"))).shifted(-1);
    EXPECT_EQ(h(0, 0), s);
    EXPECT_EQ(h(0, 1), s);
    EXPECT_EQ(h(1, 0), s);
    EXPECT_EQ(h(1, 1), -s);

    RingMatrix tm = gate_matrix(Gate::phasek(3, 0), t);
    EXPECT_EQ(tm(1, 1), t.generator("w"));
    EXPECT_EQ(tm, gate_matrix(Gate::t(0), t));
    EXPECT_EQ(gate_matrix(Gate::phasek(1, 0), t), gate_matrix(Gate::z(0), t));
    EXPECT_EQ(gate_matrix(Gate::phasek(2, 0), t), gate_matrix(Gate::s(0), t));
    EXPECT_EQ(gate_matrix(Gate::tdg(0), t)(1, 1), conj(t.generator("w")));

    EXPECT_THROW(gate_matrix(Gate::phasek(4, 0), t), std::invalid_argument);
}

TEST(gate_matrix, matches_float_reference) {
    Tower t = Tower::cyclotomic(4);
    const std::vector<Gate> gates{
        Gate::x(0), Gate::y(0), Gate::z(0), Gate::s(0), Gate::sdg(0), Gate::t(0), Gate::tdg(0),
        Gate::h(0), Gate::cx(0, 1), Gate::cz(0, 1), Gate::cs(0, 1), Gate::csdg(0, 1),
        Gate::swap(0, 1), Gate::ccz(0, 1, 2), Gate::ccx(0, 1, 2), Gate::mcx({0, 1, 2}, 3),
        Gate::phasek(5, 0), Gate::phasek(4, 0, -1), Gate::cphasek(4, {0, 1}, 2),
        Gate::cphasek(3, {0}, 1, -1)};
    for (const auto& g : gates) {
        RingMatrix u = gate_matrix(g, t);
        auto ref = ct::float_gate_matrix(g);
        const std::size_t d = u.rows();
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                EXPECT_NEAR(std::abs(embed_float(u(r, c)) - ref[r * d + c]), 0.0, 1e-12)
                    << gate_name(g) << " " << r << "," << c;
            }
        }
        EXPECT_EQ(u * u.adjoint(), RingMatrix::identity(d, t)) << gate_name(g);
    }
}

TEST(simulate, small_examples) {
    Tower t = ct_tower();
    Circuit h(1);
    h.add(Gate::h(0));
    StateVector psi = simulate(h, t);
    EXPECT_EQ(psi.amplitudes[0], t.inv_sqrt2());
    EXPECT_EQ(psi.amplitudes[1], t.inv_sqrt2());

    Circuit tc(1);
    tc.prep.set(0, {PrepKind::Plus});
    tc.add(Gate::t(0));
    psi = simulate(tc, t);
    EXPECT_EQ(psi.amplitudes[0], t.inv_sqrt2());
    EXPECT_EQ(psi.amplitudes[1], t.inv_sqrt2() * t.generator("w"));
    Circuit tstate(1);
    tstate.prep.set(0, {PrepKind::T});
    EXPECT_EQ(simulate(tstate, t), psi);

    Circuit empty(3);
    psi = simulate(empty, t);
    EXPECT_EQ(psi, basis_state(3, 0, t));
}

TEST(simulate, ccz_block_preparation) {
    Tower t = ct_tower();
    Circuit c(3);
    c.prep.set_ccz(0, 1, 2);
    StateVector psi = simulate(c, t);
    RingElement amp = t.inv_sqrt2() * t.inv_sqrt2() * t.inv_sqrt2();
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(psi.amplitudes[i], i == 7 ? -amp : amp);
    EXPECT_THROW(c.prep.set_ccz(0, 1, 2), CircuitError);
}

TEST(unitary_of, examples) {
    Tower t = ct_tower();
    Circuit cx(2);
    cx.add(Gate::cx(0, 1));
    RingMatrix u = unitary_of(cx, t);
    RingMatrix expect(4, 4);
    expect(0, 0) = t.one();
    expect(1, 1) = t.one();
    expect(2, 3) = t.one();
    expect(3, 2) = t.one();
    EXPECT_EQ(u, expect);

    Circuit ss(1);
    ss.add(Gate::s(0)).add(Gate::s(0));
    EXPECT_EQ(unitary_of(ss, t), gate_matrix(Gate::z(0), t));

    Circuit inv(2);
    inv.add(Gate::cs(0, 1)).add(Gate::csdg(0, 1));
    EXPECT_EQ(unitary_of(inv, t), RingMatrix::identity(4, t));

    EXPECT_THROW(unitary_of(Circuit(11), t), CircuitError);
}

TEST(expectation, examples) {
    Tower t = ct_tower();
    Circuit plus(1);
    plus.prep.set(0, {PrepKind::Plus});
    EXPECT_TRUE(expectation(simulate(plus, t), Observable::parse("Z")).is_zero());

    Circuit tc(1);
    tc.prep.set(0, {PrepKind::T});
    RingElement w = t.generator("w");
    // oracle: <T|X|T> = 2 Re(conj(a0) a1) with a0 = 1/sqrt2, a1 = w/sqrt2 -> Re(w)
    EXPECT_EQ(expectation(simulate(tc, t), Observable::parse("X")), (w + conj(w)).shifted(-1));
    EXPECT_NEAR(embed_float(expectation(simulate(tc, t), Observable::parse("X"))).real(),
                0.70710678118654752, 1e-12);

    EXPECT_TRUE(expectation(simulate(Circuit(1), t), Observable::parse("Z")).is_one());
    EXPECT_THROW(expectation(simulate(Circuit(2), t), Observable::parse("Z")), CircuitError);
    EXPECT_THROW(Observable::parse("ZQ"), CircuitError);
}

TEST(marginal_distribution, examples) {
    Tower t = ct_tower();
    auto m = marginal_distribution(simulate(Circuit(2), t), {1});
    ASSERT_EQ(m.size(), 1u);
    EXPECT_TRUE(m["0"].is_one());

    Circuit bell(2);
    bell.add(Gate::h(0)).add(Gate::cx(0, 1));
    m = marginal_distribution(simulate(bell, t), {1});
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m["0"], t.dyadic(Dyadic(1).shifted(-1)));
    EXPECT_EQ(m["1"], t.dyadic(Dyadic(1).shifted(-1)));
}

TEST(circuit_text, parse_examples) {
    Circuit c = parse_circuit("qubits 1\nprep 0 +\nt 0");
    EXPECT_EQ(c.width, 1u);
    EXPECT_EQ(c.prep.qubits[0].kind, PrepKind::Plus);
    ASSERT_EQ(c.gates.size(), 1u);
    EXPECT_EQ(c.gates[0], Gate::t(0));

    c = parse_circuit("qubits 2\ncs 0 1");
    EXPECT_EQ(c.gates[0], Gate::cs(0, 1));

    try {
        parse_circuit("qubits 2\ncs 0");
        FAIL() << "expected an arity error";
    } catch (const CircuitError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("expects 2"), std::string::npos);
    }
    EXPECT_THROW(parse_circuit("qubits 2\ncx 0 2"), CircuitError);
    EXPECT_THROW(parse_circuit("cx 0 1"), CircuitError);
    EXPECT_THROW(parse_circuit("qubits 2\nfoo 0"), CircuitError);
    EXPECT_THROW(parse_circuit("qubits 2\ncx 1 1"), CircuitError);
    try {
        parse_circuit("qubits 2\ngateset clifford+t\nh 0\ncs 0 1\n");
        FAIL() << "expected a gateset violation";
    } catch (const CircuitError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
    }
}

TEST(circuit_text, round_trip_normalizes) {
    const std::string text =
        "# comment\n"
        "qubits 5   # five\n"
        "prep 0 T\nprep 1 zkdg 4\nprep ccz 2 3 4\n"
        "h 0\ncphasek 3 0 1 2\nphasekdg 4 1\nmcx 0 1 2 3\ncsdg 3 4\ny 2\n";
    Circuit c = parse_circuit(text);
    std::string once = serialize_circuit(c);
    EXPECT_EQ(parse_circuit(once), c);
    EXPECT_EQ(serialize_circuit(parse_circuit(once)), once);
    EXPECT_EQ(once,
              "qubits 5\nprep 0 T\nprep 1 zkdg 4\nprep ccz 2 3 4\nh 0\ncphasek 3 0 1 2\n"
              "phasekdg 4 1\nmcx 0 1 2 3\ncsdg 3 4\ny 2\n");

    std::mt19937_64 rng(5);
    for (int n = 0; n < 50; ++n) {
        Circuit r = ct::random_circuit(rng, 4, 20, ct::clifford_t_pool());
        ct::randomize_prep(rng, r);
        EXPECT_EQ(parse_circuit(serialize_circuit(r)), r);
    }
}

// --- properties --------------------------------------------------------------

TEST(circuit_properties, norm_is_exactly_preserved) {
    std::mt19937_64 rng(21);
    for (int n = 0; n < 40; ++n) {
        Circuit c = ct::random_circuit(rng, 1 + rng() % 4, 30, ct::clifford_t_pool());
        ct::randomize_prep(rng, c);
        Tower t = tower_for(c);
        StateVector psi = simulate(c, t);
        EXPECT_TRUE(psi.norm_squared().is_one());
        EXPECT_EQ(expectation(psi, Observable::identity(c.width)), psi.norm_squared());
    }
}

TEST(circuit_properties, unitary_of_is_a_monoid_homomorphism) {
    std::mt19937_64 rng(22);
    for (int n = 0; n < 25; ++n) {
        const std::size_t width = 1 + rng() % 4;
        Circuit a = ct::random_circuit(rng, width, 8, ct::cs_h_pool());
        Circuit b = ct::random_circuit(rng, width, 8, ct::clifford_t_pool());
        Circuit ab = a;
        ab.append(b);
        Tower t = ct_tower();
        EXPECT_EQ(unitary_of(ab, t), unitary_of(b, t) * unitary_of(a, t));
        EXPECT_EQ(unitary_of(inverse(ab), t), unitary_of(ab, t).adjoint());
    }
}

TEST(circuit_properties, simulate_agrees_with_unitary_and_float_reference) {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 30; ++n) {
        const std::size_t width = 1 + rng() % 4;
        Circuit c = ct::random_circuit(rng, width, 1 + rng() % 30, ct::clifford_t_pool());
        ct::randomize_prep(rng, c);
        Tower t = tower_for(c);
        StateVector psi = simulate(c, t);
        StateVector input = prepare(c.prep, t);
        RingMatrix out = unitary_of(c, t) * RingMatrix::column(input.amplitudes);
        for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) EXPECT_EQ(out(i, 0), psi.amplitudes[i]);
        EXPECT_LT(ct::max_distance(psi, ct::float_simulate(c)), 1e-9);
    }
}
