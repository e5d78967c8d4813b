#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catalyst/matrix.hpp"
#include "catalyst/ring.hpp"

namespace catalyst {

enum class GateKind {
    X, Y, Z, S, Sdg, T, Tdg, H,
    CX, CZ, CS, CSdg, SWAP, CCZ, CCX,
    MCX,      // controls..., target
    PhaseK,   // Z(sign * 2 pi / 2^k)
    CPhaseK,  // controls..., target; symmetric, so the split only matters for printing
};

/// Qubit lists put controls first and the target last.
struct Gate {
    GateKind kind;
    std::vector<std::size_t> qubits;
    int k = 0;
    int sign = 1;

    static Gate x(std::size_t q) { return {GateKind::X, {q}}; }
    static Gate y(std::size_t q) { return {GateKind::Y, {q}}; }
    static Gate z(std::size_t q) { return {GateKind::Z, {q}}; }
    static Gate s(std::size_t q) { return {GateKind::S, {q}}; }
    static Gate sdg(std::size_t q) { return {GateKind::Sdg, {q}}; }
    static Gate t(std::size_t q) { return {GateKind::T, {q}}; }
    static Gate tdg(std::size_t q) { return {GateKind::Tdg, {q}}; }
    static Gate h(std::size_t q) { return {GateKind::H, {q}}; }
    static Gate cx(std::size_t c, std::size_t t) { return {GateKind::CX, {c, t}}; }
    static Gate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, {a, b}}; }
    static Gate cs(std::size_t a, std::size_t b) { return {GateKind::CS, {a, b}}; }
    static Gate csdg(std::size_t a, std::size_t b) { return {GateKind::CSdg, {a, b}}; }
    static Gate swap(std::size_t a, std::size_t b) { return {GateKind::SWAP, {a, b}}; }
    static Gate ccz(std::size_t a, std::size_t b, std::size_t c) { return {GateKind::CCZ, {a, b, c}}; }
    static Gate ccx(std::size_t a, std::size_t b, std::size_t t) { return {GateKind::CCX, {a, b, t}}; }
    static Gate mcx(std::vector<std::size_t> controls, std::size_t target);
    static Gate phasek(int k, std::size_t q, int sign = 1) { return {GateKind::PhaseK, {q}, k, sign}; }
    static Gate cphasek(int k, std::vector<std::size_t> controls, std::size_t target, int sign = 1);

    bool is_diagonal() const;
    bool is_permutation() const;
    /// T, Tdg and PhaseK(3).
    bool is_t_like() const;
    /// Smallest k such that the gate's phases are 2^k-th roots of unity.
    int phase_depth() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

Gate inverse(const Gate& g);
std::string gate_name(const Gate& g);

enum class PrepKind { Zero, One, Plus, Minus, PlusI, MinusI, T, ZK, ZKdg, CCZ };

struct QubitPrep {
    PrepKind kind = PrepKind::Zero;
    int k = 0;  // ZK / ZKdg only
    friend bool operator==(const QubitPrep&, const QubitPrep&) = default;
};

/// Per-qubit input states; qubits of a |CCZ> block are tagged CCZ and listed in ccz_blocks.
struct Preparation {
    std::vector<QubitPrep> qubits;
    std::vector<std::array<std::size_t, 3>> ccz_blocks;

    explicit Preparation(std::size_t width = 0) : qubits(width) {}
    void set(std::size_t q, QubitPrep p);
    void set_ccz(std::size_t a, std::size_t b, std::size_t c);
    bool is_all_zero() const;
    friend bool operator==(const Preparation&, const Preparation&) = default;
};

class CircuitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Circuit {
    std::size_t width = 0;
    Preparation prep;
    std::vector<Gate> gates;
    std::optional<std::string> gateset;

    Circuit() = default;
    explicit Circuit(std::size_t w) : width(w), prep(w) {}

    Circuit& add(Gate g);
    /// Appends `other`'s gates with qubit j mapped to map[j] (identity when empty).
    Circuit& append(const Circuit& other, const std::vector<std::size_t>& map = {});
    /// Grows the register; new qubits are |0>.
    void resize(std::size_t new_width);

    std::size_t t_count() const;
    int phase_depth() const;
    /// Throws CircuitError on out-of-range/duplicate qubits or gateset violations.
    void validate() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

Circuit inverse(const Circuit& c);

/// Named gate sets: "clifford+t", "cs+h" (alias "clifford+cs"), "toffoli+h".
bool gateset_known(std::string_view name);
bool gateset_allows(std::string_view name, const Gate& g);

struct StateVector {
    std::size_t width = 0;
    std::vector<RingElement> amplitudes;

    RingElement norm_squared() const;
    friend bool operator==(const StateVector&, const StateVector&) = default;
};

/// Smallest cyclotomic tower able to simulate every gate and preparation of c.
Tower tower_for(const Circuit& c);

RingMatrix gate_matrix(const Gate& g, const Tower& tower);
std::vector<RingElement> prep_vector(const QubitPrep& p, const Tower& tower);
StateVector prepare(const Preparation& p, const Tower& tower);
/// Applies g in place. Qubit 0 is the most significant bit of the index.
void apply_gate(StateVector& psi, const Gate& g, const Tower& tower);
void apply_circuit(StateVector& psi, const Circuit& c, const Tower& tower);

StateVector simulate(const Circuit& c, const Tower& tower);
StateVector simulate(const Circuit& c);
/// Basis state |index> of the given width.
StateVector basis_state(std::size_t width, std::size_t index, const Tower& tower);
StateVector product_state(const std::vector<StateVector>& parts);

constexpr std::size_t kUnitaryWidthCap = 10;
constexpr std::size_t kSimulationWidthCap = 20;

RingMatrix unitary_of(const Circuit& c, const Tower& tower, std::size_t cap = kUnitaryWidthCap);

struct Observable {
    std::string paulis;

    static Observable parse(std::string_view text);
    static Observable identity(std::size_t width) { return {std::string(width, 'I')}; }
    std::size_t width() const { return paulis.size(); }
};

/// <psi|P|psi>; throws if the result is not real.
RingElement expectation(const StateVector& psi, const Observable& obs);
/// P|psi>.
StateVector apply_pauli(const StateVector& psi, const Observable& obs, const Tower& tower);

/// Born probabilities of the `keep` qubits (in the given order), keyed by bitstring.
std::map<std::string, RingElement> marginal_distribution(const StateVector& psi,
                                                         const std::vector<std::size_t>& keep);

Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);
std::string prep_tag(const QubitPrep& p);

}  // namespace catalyst
