#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catalyst/circuit.hpp"
#include "catalyst/matrix.hpp"

namespace catalyst::catalysis {

/// Outcome of an exact gadget check. Human-readable summary plus key=value lines.
struct Report {
    std::string name;
    bool passed = true;
    std::size_t inputs_checked = 0;
    /// Global phase the construction introduces (1 for on-the-nose gadgets).
    RingElement global_phase;
    /// Failing inputs as bitstrings over the data qubits, with a short reason.
    std::vector<std::string> failures;
    /// Extra key=value facts (gate counts, permutations, ...).
    std::vector<std::pair<std::string, std::string>> facts;

    std::string to_text() const;
};

/// Canonical preparation tag for |Z(sign * 2 pi / 2^k)>: |->, |+-i>, |T> where they exist.
QubitPrep zk_prep(int k, int sign = 1);

/// Checks gadget(|v> (x) |c>) == (U|v>) (x) |c> for every data basis state v.
/// Data qubits are 0..data_qubits-1; every other qubit is catalyst/ancilla and
/// takes its preparation from gadget.prep. When `allow_phase` is set a single
/// global phase common to all inputs is accepted and recorded.
Report verify_catalysis(const std::string& name, const Circuit& gadget, std::size_t data_qubits,
                        const RingMatrix& reference, const Tower& tower, bool allow_phase = false);

/// Same contract on arbitrary (not necessarily normalized) data vectors.
bool catalysis_holds_on(const Circuit& gadget, const std::vector<RingElement>& data_state,
                        const RingMatrix& reference, const Tower& tower);

// --- phase gadgets ------------------------------------------------------------

/// Qubit 0 data, qubit 1 catalyst prepared |T>: CX(0,1) then CS(0,1).
Circuit t_gadget();
/// Catalyses PhaseK(k) with a controlled PhaseK(k-1) and catalyst |Z(2 pi / 2^k)>. k >= 2.
Circuit phase_gadget(int k);
/// m-controlled PhaseK(k): controls 0..m-1, data m, catalyst m+1. k >= 1, m >= 0.
Circuit controlled_phase_gadget(int k, int m);

/// Replaces every T (Tdg) by the T gadget (followed by Sdg) on one appended |T> catalyst.
/// Y becomes Sdg X S so the output stays inside the CS+H Clifford set.
Circuit transpile_t_to_cs(const Circuit& c);

// --- magic states ---------------------------------------------------------------

/// 3-qubit circuit with a |CCZ> block preparation and one T gate producing |T>^3.
Circuit ccz_to_3t();
Report verify_ccz_to_3t(const Tower& tower);
/// Inserts the CCZ-to-3T conversion right after every |CCZ> block preparation.
Circuit transpile_ccz_to_3t(const Circuit& c);

struct MixedTerm {
    RingElement weight;  // self-conjugate
    Circuit prep;        // preparation of |psi_j>
};

struct MixedDecomposition {
    std::vector<MixedTerm> terms;
    std::string target_description;

    /// Sum of |weight| via the float embedding.
    double one_norm() const;
    /// Sum_j weight_j |psi_j><psi_j|.
    RingMatrix reconstruct(const Tower& tower) const;
};

/// |T><T| = sqrt2/2 (|+><+| + |+i><+i|) - (sqrt2 - 1)/2 (|0><0| + |1><1|).
MixedDecomposition decompose_t_dm();
RingMatrix density_matrix(const StateVector& psi);

// --- real encoding -------------------------------------------------------------

/// [[Re U, -Im U], [Im U, Re U]] with the new qubit as the most significant index.
/// Throws for non-unitary input.
RingMatrix real_encode_matrix(const RingMatrix& u);
/// Gate-by-gate encoding onto width+1 qubits (new qubit 0) over Toffoli+H (+X, CX, SWAP).
Circuit real_encode_circuit(const Circuit& c);

struct PermutationMatch {
    bool exact = false;
    /// Qubit j of `a` becomes qubit perm[j]; best candidate when not exact.
    std::vector<std::size_t> perm;
    std::size_t mismatched_entries = 0;
    /// b * (P a P^T)^dagger for the best permutation; identity when exact.
    RingMatrix residual;
};

/// Searches all qubit relabellings P with P a P^T == b.
PermutationMatch match_up_to_qubit_permutation(const RingMatrix& a, const RingMatrix& b,
                                               const Tower& tower);
/// Conjugates m by the qubit relabelling j -> perm[j].
RingMatrix permute_qubits(const RingMatrix& m, const std::vector<std::size_t>& perm);

// --- generic embeddings ------------------------------------------------------------

struct CatalyticEmbedding {
    std::string name;
    /// Preparation of the catalyst register (its own width).
    Preparation catalyst_prep;
    /// Template per source gate kind. Template qubits 0..a-1 are the gate's
    /// qubits in order, a.. are the catalyst register.
    std::map<GateKind, Circuit> gadget_map;
    std::string source_gateset;
    std::string target_gateset;

    std::size_t catalyst_width() const { return catalyst_prep.qubits.size(); }
};

/// The T -> CS embedding (T, Tdg and Y templates over one |T> catalyst).
CatalyticEmbedding t_to_cs_embedding();
/// Gate-by-gate replacement; gates allowed by the target gate set pass through.
Circuit apply_embedding(const Circuit& c, const CatalyticEmbedding& e);
/// Exact contract check of every template.
std::vector<Report> verify_embedding(const CatalyticEmbedding& e, const Tower& tower);

// --- arithmetic and small-angle synthesis ----------------------------------------

/// Qubit 0 control, 1..n an n-bit register (qubit 1 most significant): x -> x - 1 mod 2^n.
Circuit controlled_decrementer(std::size_t n);
/// Registers a = 0..n-1, b = n..2n-1 (big-endian): |a, b> -> |a, b - a mod 2^n>.
Circuit subtractor(std::size_t n);
/// Inverse of subtractor: |a, b> -> |a, a + b mod 2^n>.
Circuit adder(std::size_t n);

/// n bank qubits, least significant phase first: qubit j holds |Z(sign * 2 pi / 2^(n-j))>.
Preparation catalyst_bank(std::size_t n, int sign = 1);

/// Data 0..n-1 and bank n..2n-1; adder b-register position p is wired to bank qubit n-1-p.
Circuit adder_catalysis_circuit(std::size_t n, const std::optional<Preparation>& bank = std::nullopt);
/// Adder on (data, bank) == (PhaseK(1)^dag (x) ... (x) PhaseK(n)^dag) on data, bank untouched.
Report verify_adder_catalysis(std::size_t n, const std::optional<Preparation>& bank = std::nullopt);

/// Z(2 pi m / 2^k) on qubit 0 using ancillas 1..k (zeroed) and a conjugated bank at k+1..2k.
Circuit synth_small_phase(int k, long m);
Report verify_synth_small_phase(int k, long m);
/// Replaces T/Tdg and PhaseK gates by synth_small_phase instances sharing one ancilla register and bank.
Circuit transpile_synth_phase(const Circuit& c);

}  // namespace catalyst::catalysis
