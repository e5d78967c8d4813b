#pragma once

#include <complex>
#include <iosfwd>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catalyst/dyadic.hpp"

namespace catalyst {

class RingElement;

/// One generator a_j of a quadratic tower Z[1/2][a_1, ..., a_k].
///
/// `square` and `conjugate` are coefficient vectors over the full tower basis
/// (size 2^k, basis monomials indexed by subset bitmask, bit j = a_j).
/// `square` may only use generators below j. An empty `conjugate` is allowed
/// for roots of unity, in which case it is computed as a^(N-1).
struct GeneratorSpec {
    std::string name;
    std::vector<Dyadic> square;
    std::vector<Dyadic> conjugate;
    std::complex<double> float_embedding;
};

struct TowerOptions {
    /// Skip the "generator already lies in the lower ring" rejection.
    bool allow_unverified_generators = false;
};

/// Immutable description of a tower of quadratic extensions of Z[1/2].
class TowerSpec {
public:
    static std::shared_ptr<const TowerSpec> create(std::vector<GeneratorSpec> generators,
                                                   TowerOptions options = {});

    std::size_t size() const { return generators_.size(); }
    std::size_t dimension() const { return std::size_t{1} << generators_.size(); }
    const GeneratorSpec& generator(std::size_t j) const { return generators_.at(j); }
    std::optional<std::size_t> find_generator(std::string_view name) const;

    std::complex<double> monomial_float(std::size_t mask) const { return monomial_float_[mask]; }
    const std::vector<Dyadic>& monomial_conjugate(std::size_t mask) const {
        return monomial_conj_[mask];
    }

    /// Product of coefficient vectors, reduced through the square relations.
    std::vector<Dyadic> multiply(const std::vector<Dyadic>& x, const std::vector<Dyadic>& y) const;

    bool same_structure(const TowerSpec& other) const;

private:
    TowerSpec() = default;
    void multiply_level(const Dyadic* x, const Dyadic* y, std::size_t level, Dyadic* out) const;
    void finish(const TowerOptions& options);

    std::vector<GeneratorSpec> generators_;
    std::vector<std::complex<double>> monomial_float_;
    std::vector<std::vector<Dyadic>> monomial_conj_;
    // square_is_constant_[j]: a_j^2 lies in Z[1/2]
    std::vector<bool> square_is_constant_;
};

using TowerPtr = std::shared_ptr<const TowerSpec>;

/// Exact element of a tower ring. A default-constructed element is the zero
/// of every tower and adopts the tower of whatever it is combined with.
class RingElement {
public:
    RingElement() = default;
    RingElement(TowerPtr tower, std::vector<Dyadic> coefficients);

    const TowerPtr& tower() const { return tower_; }
    /// Coefficient of basis monomial `mask`; zero when the element is empty.
    Dyadic coefficient(std::size_t mask) const;
    const std::vector<Dyadic>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_minus_one() const;
    /// True when every non-constant coefficient is zero.
    bool is_dyadic() const;

    RingElement operator-() const;
    RingElement& operator+=(const RingElement& other);
    RingElement& operator-=(const RingElement& other);
    RingElement& operator*=(const RingElement& other);
    RingElement& operator*=(const Dyadic& scale);

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator*(RingElement a, const Dyadic& b) { return a *= b; }
    friend RingElement operator*(const Dyadic& a, RingElement b) { return b *= a; }
    friend bool operator==(const RingElement& a, const RingElement& b);
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    /// Multiplies by 2^e.
    RingElement shifted(int e) const;

private:
    static const TowerSpec* check_towers(const RingElement& a, const RingElement& b);

    TowerPtr tower_;
    std::vector<Dyadic> coeffs_;
};

RingElement conj(const RingElement& x);
/// (x + conj x) / 2.
RingElement real_part(const RingElement& x);
/// (x - conj x) / (2i). Throws when the tower lacks i and x is not self-conjugate.
RingElement imag_part(const RingElement& x);
/// Non-authoritative double-precision evaluation, for diagnostics only.
std::complex<double> embed_float(const RingElement& x);
/// Sign of a self-conjugate element, decided by its float embedding.
int real_sign(const RingElement& x);
/// |x| for self-conjugate x, as a ring element.
RingElement real_abs(const RingElement& x);
/// Inverse of c * monomial units (c = +-2^e, generators with unit squares).
std::optional<RingElement> unit_inverse(const RingElement& x);
RingElement power(RingElement base, unsigned exponent);
/// Re-expresses x in `target`, whose leading generators must match x's tower.
RingElement lift_to(const RingElement& x, const class Tower& target);

/// Signed dyadic coefficients attached to monomial names, e.g.
/// "1/2 + 3*w - 1/4*i*w". "·" is accepted as a synonym of "*".
std::string to_string(const RingElement& x);
RingElement parse_ring(std::string_view text, const TowerPtr& tower);
std::ostream& operator<<(std::ostream& os, const RingElement& x);

/// Value handle over a TowerSpec with named constructors for common constants.
class Tower {
public:
    explicit Tower(TowerPtr spec) : spec_(std::move(spec)) {}

    /// Z[1/2][i, w] with i^2 = -1 and w^2 = i (w = e^{i pi/4}).
    static Tower clifford_t();
    /// Z[1/2][zeta_4, zeta_8, ..., zeta_{2^{depth+1}}], each generator the
    /// square root of the previous one. depth >= 1.
    static Tower cyclotomic(int depth);
    /// Smallest cyclotomic tower able to represent e^{2 pi i / 2^k} and 1/sqrt2.
    static Tower for_phase_depth(int k);

    const TowerPtr& spec() const { return spec_; }
    std::size_t size() const { return spec_->size(); }

    RingElement zero() const;
    RingElement one() const;
    RingElement integer(std::int64_t v) const;
    RingElement dyadic(const Dyadic& v) const;
    RingElement generator(std::size_t j) const;
    RingElement generator(std::string_view name) const;

    /// e^{2 pi i power / 2^k}; throws when the tower lacks the root.
    RingElement root_of_unity(int k, long power = 1) const;
    bool has_root_of_unity(int k) const;
    RingElement i() const { return root_of_unity(2); }
    RingElement sqrt2() const;
    RingElement inv_sqrt2() const;

    RingElement parse(std::string_view text) const { return parse_ring(text, spec_); }

private:
    std::optional<std::size_t> find_root_generator(int k) const;

    TowerPtr spec_;
};

}  // namespace catalyst
