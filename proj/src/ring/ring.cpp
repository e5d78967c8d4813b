#include "catalyst/ring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace catalyst {

namespace {

constexpr double kFloatTolerance = 1e-12;

bool all_zero(const Dyadic* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!v[i].is_zero()) return false;
    }
    return true;
}

std::vector<Dyadic> unit_vector(std::size_t dim, std::size_t mask) {
    std::vector<Dyadic> v(dim);
    v[mask] = Dyadic(1);
    return v;
}

std::complex<double> float_of(const TowerSpec& spec, const std::vector<Dyadic>& coeffs) {
    std::complex<double> acc = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        if (!coeffs[m].is_zero()) acc += coeffs[m].to_double() * spec.monomial_float(m);
    }
    return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// TowerSpec

std::shared_ptr<const TowerSpec> TowerSpec::create(std::vector<GeneratorSpec> generators,
                                                   TowerOptions options) {
    std::shared_ptr<TowerSpec> spec(new TowerSpec());
    spec->generators_ = std::move(generators);
    spec->finish(options);
    return spec;
}

std::optional<std::size_t> TowerSpec::find_generator(std::string_view name) const {
    for (std::size_t j = 0; j < generators_.size(); ++j) {
        if (generators_[j].name == name) return j;
    }
    return std::nullopt;
}

bool TowerSpec::same_structure(const TowerSpec& other) const {
    if (this == &other) return true;
    if (generators_.size() != other.generators_.size()) return false;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
        if (generators_[j].name != other.generators_[j].name ||
            generators_[j].square != other.generators_[j].square) {
            return false;
        }
    }
    return true;
}

void TowerSpec::multiply_level(const Dyadic* x, const Dyadic* y, std::size_t level,
                               Dyadic* out) const {
    if (level == 0) {
        out[0] = x[0] * y[0];
        return;
    }
    const std::size_t half = std::size_t{1} << (level - 1);
    const Dyadic* x0 = x;
    const Dyadic* x1 = x + half;
    const Dyadic* y0 = y;
    const Dyadic* y1 = y + half;
    const bool x1_zero = all_zero(x1, half);
    const bool y1_zero = all_zero(y1, half);

    std::vector<Dyadic> scratch(half);
    multiply_level(x0, y0, level - 1, out);
    for (std::size_t k = 0; k < half; ++k) out[half + k] = Dyadic();

    if (!y1_zero) {
        multiply_level(x0, y1, level - 1, scratch.data());
        for (std::size_t k = 0; k < half; ++k) out[half + k] += scratch[k];
    }
    if (!x1_zero) {
        multiply_level(x1, y0, level - 1, scratch.data());
        for (std::size_t k = 0; k < half; ++k) out[half + k] += scratch[k];
    }
    if (!x1_zero && !y1_zero) {
        multiply_level(x1, y1, level - 1, scratch.data());
        const auto& square = generators_[level - 1].square;
        if (square_is_constant_[level - 1]) {
            for (std::size_t k = 0; k < half; ++k) out[k] += scratch[k] * square[0];
        } else {
            std::vector<Dyadic> reduced(half);
            multiply_level(scratch.data(), square.data(), level - 1, reduced.data());
            for (std::size_t k = 0; k < half; ++k) out[k] += reduced[k];
        }
    }
}

std::vector<Dyadic> TowerSpec::multiply(const std::vector<Dyadic>& x,
                                        const std::vector<Dyadic>& y) const {
    std::vector<Dyadic> out(dimension());
    multiply_level(x.data(), y.data(), size(), out.data());
    return out;
}

void TowerSpec::finish(const TowerOptions& options) {
    const std::size_t k = generators_.size();
    const std::size_t dim = dimension();
    if (k > 16) throw std::invalid_argument("tower too deep");

    square_is_constant_.assign(k, false);
    for (std::size_t j = 0; j < k; ++j) {
        auto& g = generators_[j];
        if (g.name.empty()) throw std::invalid_argument("generator without a name");
        for (std::size_t i = 0; i < j; ++i) {
            if (generators_[i].name == g.name) {
                throw std::invalid_argument("duplicate generator name '" + g.name + "'");
            }
        }
        if (g.square.size() != dim) {
            throw std::invalid_argument("square of '" + g.name + "' has wrong dimension");
        }
        for (std::size_t m = (std::size_t{1} << j); m < dim; ++m) {
            if (!g.square[m].is_zero()) {
                throw std::invalid_argument("square of '" + g.name +
                                            "' uses generators outside the lower ring");
            }
        }
        if (all_zero(g.square.data(), dim)) {
            throw std::invalid_argument("generator '" + g.name + "' squares to zero");
        }
        square_is_constant_[j] = all_zero(g.square.data() + 1, dim - 1);
        if (std::abs(g.float_embedding) < 1e-9) {
            throw std::invalid_argument("generator '" + g.name + "' has zero float embedding");
        }
    }

    monomial_float_.assign(dim, 1.0);
    for (std::size_t m = 1; m < dim; ++m) {
        std::size_t top = 0;
        while ((m >> (top + 1)) != 0) ++top;
        monomial_float_[m] = monomial_float_[m & ~(std::size_t{1} << top)] *
                             generators_[top].float_embedding;
    }

    for (std::size_t j = 0; j < k; ++j) {
        auto& g = generators_[j];
        std::complex<double> sq = float_of(*this, g.square);
        if (std::abs(g.float_embedding * g.float_embedding - sq) >
            kFloatTolerance * std::max(1.0, std::abs(sq))) {
            throw std::invalid_argument("float embedding of '" + g.name +
                                        "' does not square to its declared square");
        }
    }

    // Conjugates: roots of unity may leave them implicit (a^-1 = a^(N-1)).
    for (std::size_t j = 0; j < k; ++j) {
        auto& g = generators_[j];
        if (!g.conjugate.empty()) continue;
        const auto f = g.float_embedding;
        if (std::abs(std::abs(f) - 1.0) > 1e-9) {
            throw std::invalid_argument("generator '" + g.name +
                                        "' needs an explicit conjugate");
        }
        std::optional<unsigned> order_log2;
        std::complex<double> p = f;
        for (unsigned m = 0; m < 40; ++m) {
            if (std::abs(p - 1.0) < 1e-9) {
                order_log2 = m;
                break;
            }
            p = p * p;
        }
        if (!order_log2 || *order_log2 == 0) {
            throw std::invalid_argument("generator '" + g.name +
                                        "' needs an explicit conjugate");
        }
        // a^(2^m - 1) = a * a^2 * a^4 * ... * a^(2^(m-1))
        std::vector<Dyadic> term = unit_vector(dim, std::size_t{1} << j);
        std::vector<Dyadic> acc = term;
        for (unsigned m = 1; m < *order_log2; ++m) {
            term = multiply(term, term);
            acc = multiply(acc, term);
        }
        g.conjugate = std::move(acc);
    }

    for (const auto& g : generators_) {
        if (g.conjugate.size() != dim) {
            throw std::invalid_argument("conjugate of '" + g.name + "' has wrong dimension");
        }
    }

    monomial_conj_.assign(dim, {});
    monomial_conj_[0] = unit_vector(dim, 0);
    for (std::size_t m = 1; m < dim; ++m) {
        std::size_t top = 0;
        while ((m >> (top + 1)) != 0) ++top;
        monomial_conj_[m] =
            multiply(monomial_conj_[m & ~(std::size_t{1} << top)], generators_[top].conjugate);
    }

    auto apply_conj = [&](const std::vector<Dyadic>& v) {
        std::vector<Dyadic> out(dim);
        for (std::size_t m = 0; m < dim; ++m) {
            if (v[m].is_zero()) continue;
            for (std::size_t n = 0; n < dim; ++n) {
                if (!monomial_conj_[m][n].is_zero()) out[n] += v[m] * monomial_conj_[m][n];
            }
        }
        return out;
    };

    for (std::size_t j = 0; j < k; ++j) {
        const auto& g = generators_[j];
        if (apply_conj(g.conjugate) != unit_vector(dim, std::size_t{1} << j)) {
            throw std::invalid_argument("conjugation is not an involution on '" + g.name + "'");
        }
        if (multiply(g.conjugate, g.conjugate) != apply_conj(g.square)) {
            throw std::invalid_argument("conjugate of '" + g.name +
                                        "' is inconsistent with its square");
        }
        if (std::abs(float_of(*this, g.conjugate) - std::conj(g.float_embedding)) > 1e-9) {
            throw std::invalid_argument("conjugate of '" + g.name +
                                        "' disagrees with its float embedding");
        }
    }

    if (options.allow_unverified_generators) return;

    // Heuristic membership test: look for z in the lower ring with small
    // coefficients, z^2 == a_j^2 and float(z) == float(a_j).
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t lower = std::size_t{1} << j;
        std::vector<Dyadic> values;
        if (lower <= 4) {
            for (int v = -4; v <= 4; ++v) values.push_back(Dyadic(v).shifted(-1));
        } else if (lower <= 8) {
            for (int v = -2; v <= 2; ++v) values.push_back(Dyadic(v).shifted(-1));
        } else {
            continue;
        }
        std::vector<double> re(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) re[i] = values[i].to_double();
        const auto target = generators_[j].float_embedding;
        std::vector<std::size_t> digits(lower, 0);
        while (true) {
            std::complex<double> f = 0.0;
            for (std::size_t m = 0; m < lower; ++m) f += re[digits[m]] * monomial_float_[m];
            if (std::abs(f - target) < 1e-9) {
                std::vector<Dyadic> z(dim);
                for (std::size_t m = 0; m < lower; ++m) z[m] = values[digits[m]];
                if (multiply(z, z) == generators_[j].square) {
                    throw std::invalid_argument(
                        "generator '" + generators_[j].name +
                        "' already lies in the lower ring (pass allow_unverified_generators "
                        "to override)");
                }
            }
            std::size_t pos = 0;
            while (pos < lower && ++digits[pos] == values.size()) digits[pos++] = 0;
            if (pos == lower) break;
        }
    }
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement(TowerPtr tower, std::vector<Dyadic> coefficients)
    : tower_(std::move(tower)), coeffs_(std::move(coefficients)) {
    if (!tower_) throw std::invalid_argument("ring element without a tower");
    if (coeffs_.size() != tower_->dimension()) {
        throw std::invalid_argument("coefficient vector does not match tower dimension");
    }
}

const TowerSpec* RingElement::check_towers(const RingElement& a, const RingElement& b) {
    if (!a.tower_) return b.tower_.get();
    if (!b.tower_) return a.tower_.get();
    if (a.tower_ != b.tower_ && !a.tower_->same_structure(*b.tower_)) {
        throw std::invalid_argument("ring elements belong to different towers");
    }
    return a.tower_.get();
}

Dyadic RingElement::coefficient(std::size_t mask) const {
    if (mask >= coeffs_.size()) return Dyadic();
    return coeffs_[mask];
}

bool RingElement::is_zero() const {
    return all_zero(coeffs_.data(), coeffs_.size());
}

bool RingElement::is_dyadic() const {
    return coeffs_.size() <= 1 || all_zero(coeffs_.data() + 1, coeffs_.size() - 1);
}

bool RingElement::is_one() const {
    return !coeffs_.empty() && coeffs_[0].is_one() && is_dyadic();
}

bool RingElement::is_minus_one() const {
    return !coeffs_.empty() && coeffs_[0].is_minus_one() && is_dyadic();
}

RingElement RingElement::operator-() const {
    RingElement out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

RingElement& RingElement::operator+=(const RingElement& other) {
    check_towers(*this, other);
    if (!other.tower_) return *this;
    if (!tower_) return *this = other;
    for (std::size_t m = 0; m < coeffs_.size(); ++m) {
        if (!other.coeffs_[m].is_zero()) coeffs_[m] += other.coeffs_[m];
    }
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& other) {
    check_towers(*this, other);
    if (!other.tower_) return *this;
    if (!tower_) return *this = -other;
    for (std::size_t m = 0; m < coeffs_.size(); ++m) {
        if (!other.coeffs_[m].is_zero()) coeffs_[m] -= other.coeffs_[m];
    }
    return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    RingElement::check_towers(a, b);
    if (!a.tower_ || !b.tower_) return RingElement();
    if (a.is_dyadic()) return b * a.coeffs_[0];
    if (b.is_dyadic()) return a * b.coeffs_[0];
    return RingElement(a.tower_, a.tower_->multiply(a.coeffs_, b.coeffs_));
}

RingElement& RingElement::operator*=(const RingElement& other) {
    return *this = *this * other;
}

RingElement& RingElement::operator*=(const Dyadic& scale) {
    if (scale.is_one()) return *this;
    for (auto& c : coeffs_) {
        if (!c.is_zero()) c *= scale;
    }
    return *this;
}

bool operator==(const RingElement& a, const RingElement& b) {
    if (!a.tower_) return b.is_zero();
    if (!b.tower_) return a.is_zero();
    RingElement::check_towers(a, b);
    return a.coeffs_ == b.coeffs_;
}

RingElement RingElement::shifted(int e) const {
    RingElement out = *this;
    for (auto& c : out.coeffs_) c = c.shifted(e);
    return out;
}

// ---------------------------------------------------------------------------
// free functions

RingElement conj(const RingElement& x) {
    if (!x.tower()) return x;
    const auto& spec = *x.tower();
    const std::size_t dim = spec.dimension();
    std::vector<Dyadic> out(dim);
    const auto& c = x.coefficients();
    for (std::size_t m = 0; m < dim; ++m) {
        if (c[m].is_zero()) continue;
        const auto& image = spec.monomial_conjugate(m);
        for (std::size_t n = 0; n < dim; ++n) {
            if (!image[n].is_zero()) out[n] += c[m] * image[n];
        }
    }
    return RingElement(x.tower(), std::move(out));
}

RingElement real_part(const RingElement& x) {
    return (x + conj(x)).shifted(-1);
}

RingElement imag_part(const RingElement& x) {
    RingElement diff = x - conj(x);
    if (diff.is_zero()) return RingElement();
    Tower tower(x.tower());
    if (!tower.has_root_of_unity(2)) {
        throw std::invalid_argument("imag_part needs i in the tower");
    }
    return (diff * -tower.i()).shifted(-1);
}

std::complex<double> embed_float(const RingElement& x) {
    if (!x.tower()) return 0.0;
    return float_of(*x.tower(), x.coefficients());
}

int real_sign(const RingElement& x) {
    if (x.is_zero()) return 0;
    const auto f = embed_float(x);
    if (std::abs(f.imag()) > 1e-9 * std::max(1.0, std::abs(f))) {
        throw std::invalid_argument("real_sign of a non-real element");
    }
    return f.real() > 0 ? 1 : -1;
}

RingElement real_abs(const RingElement& x) {
    return real_sign(x) < 0 ? -x : x;
}

std::optional<RingElement> unit_inverse(const RingElement& x) {
    if (!x.tower() || x.is_zero()) return std::nullopt;
    const auto& coeffs = x.coefficients();
    std::optional<std::size_t> mask;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        if (coeffs[m].is_zero()) continue;
        if (mask) return std::nullopt;
        mask = m;
    }
    const Dyadic& c = coeffs[*mask];
    const BigInt magnitude = boost::multiprecision::abs(c.numerator());
    const auto low = static_cast<unsigned>(boost::multiprecision::lsb(magnitude));
    if (magnitude != (BigInt(1) << low)) return std::nullopt;
    const auto& spec = *x.tower();
    RingElement inv(x.tower(), unit_vector(spec.dimension(), 0));
    inv *= Dyadic(c.sign()).shifted(static_cast<int>(c.denom_log2()) - static_cast<int>(low));
    for (std::size_t j = 0; j < spec.size(); ++j) {
        if (((*mask >> j) & 1U) == 0) continue;
        RingElement square(x.tower(), spec.generator(j).square);
        auto square_inv = unit_inverse(square);
        if (!square_inv) return std::nullopt;
        RingElement gen(x.tower(), unit_vector(spec.dimension(), std::size_t{1} << j));
        inv = inv * gen * *square_inv;
    }
    return inv;
}

RingElement power(RingElement base, unsigned exponent) {
    RingElement result = base.tower()
                             ? RingElement(base.tower(), unit_vector(base.tower()->dimension(), 0))
                             : RingElement();
    if (!base.tower()) return exponent == 0 ? result : RingElement();
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

RingElement lift_to(const RingElement& x, const Tower& target) {
    if (!x.tower()) return target.zero();
    const auto& from = *x.tower();
    const auto& to = *target.spec();
    if (&from == &to) return x;
    if (from.size() > to.size()) throw std::invalid_argument("lift_to: target tower is smaller");
    for (std::size_t j = 0; j < from.size(); ++j) {
        const auto& a = from.generator(j);
        const auto& b = to.generator(j);
        bool same = a.name == b.name;
        for (std::size_t m = 0; same && m < to.dimension(); ++m) {
            same = (m < from.dimension() ? a.square[m] : Dyadic()) == b.square[m];
        }
        if (!same) throw std::invalid_argument("lift_to: towers do not share generator '" + a.name + "'");
    }
    std::vector<Dyadic> coeffs(to.dimension());
    std::copy(x.coefficients().begin(), x.coefficients().end(), coeffs.begin());
    return RingElement(target.spec(), std::move(coeffs));
}

std::string to_string(const RingElement& x) {
    if (x.is_zero()) return "0";
    const auto& spec = *x.tower();
    std::string out;
    const auto& coeffs = x.coefficients();
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        const Dyadic& c = coeffs[m];
        if (c.is_zero()) continue;
        std::string monomial;
        for (std::size_t j = 0; j < spec.size(); ++j) {
            if ((m >> j) & 1U) {
                if (!monomial.empty()) monomial += "*";
                monomial += spec.generator(j).name;
            }
        }
        const bool negative = c.sign() < 0;
        const Dyadic magnitude = c.abs();
        std::string term;
        if (monomial.empty()) {
            term = magnitude.to_string();
        } else if (magnitude.is_one()) {
            term = monomial;
        } else {
            term = magnitude.to_string() + "*" + monomial;
        }
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const RingElement& x) {
    return os << to_string(x);
}

namespace {

class RingParser {
public:
    RingParser(std::string_view text, TowerPtr tower) : text_(text), tower_(std::move(tower)) {}

    RingElement parse() {
        RingElement value = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("ring text '" + std::string(text_) + "': " + msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept_times() {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            return true;
        }
        // U+00B7 MIDDLE DOT
        if (text_.substr(pos_, 2) == "\xC2\xB7") {
            pos_ += 2;
            return true;
        }
        return false;
    }

    RingElement constant(const Dyadic& d) const {
        std::vector<Dyadic> v(tower_->dimension());
        v[0] = d;
        return RingElement(tower_, std::move(v));
    }

    RingElement expression() {
        skip_space();
        RingElement acc = term();
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            char op = text_[pos_];
            if (op != '+' && op != '-') break;
            ++pos_;
            RingElement rhs = term();
            if (op == '+') {
                acc += rhs;
            } else {
                acc -= rhs;
            }
        }
        return acc;
    }

    RingElement term() {
        RingElement acc = factor();
        while (accept_times()) acc *= factor();
        return acc;
    }

    RingElement factor() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '+') {
            ++pos_;
            return factor();
        }
        if (c == '(') {
            ++pos_;
            RingElement inner = expression();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                std::size_t den_start = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                if (den_start == pos_) fail("missing denominator");
            }
            return constant(Dyadic::parse(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            auto name = text_.substr(start, pos_ - start);
            auto j = tower_->find_generator(name);
            if (!j) fail("unknown generator '" + std::string(name) + "'");
            std::vector<Dyadic> v(tower_->dimension());
            v[std::size_t{1} << *j] = Dyadic(1);
            return RingElement(tower_, std::move(v));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    TowerPtr tower_;
    std::size_t pos_ = 0;
};

}  // namespace

RingElement parse_ring(std::string_view text, const TowerPtr& tower) {
    if (!tower) throw std::invalid_argument("parse_ring needs a tower");
    return RingParser(text, tower).parse();
}

// ---------------------------------------------------------------------------
// Tower

Tower Tower::cyclotomic(int depth) {
    if (depth < 1 || depth > 8) throw std::invalid_argument("cyclotomic depth must be in [1, 8]");
    static std::mutex mutex;
    static std::map<int, TowerPtr> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(depth);
    if (it != cache.end()) return Tower(it->second);

    const std::size_t dim = std::size_t{1} << depth;
    std::vector<GeneratorSpec> gens;
    for (int j = 0; j < depth; ++j) {
        GeneratorSpec g;
        g.name = j == 0 ? "i" : j == 1 ? "w" : "z" + std::to_string(1 << (j + 2));
        g.square.assign(dim, Dyadic());
        if (j == 0) {
            g.square[0] = Dyadic(-1);
        } else {
            g.square[std::size_t{1} << (j - 1)] = Dyadic(1);
        }
        g.float_embedding = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(1 << (j + 2)));
        gens.push_back(std::move(g));
    }
    auto spec = TowerSpec::create(std::move(gens));
    cache.emplace(depth, spec);
    return Tower(spec);
}

Tower Tower::clifford_t() {
    return cyclotomic(2);
}

Tower Tower::for_phase_depth(int k) {
    return cyclotomic(std::max(2, k - 1));
}

RingElement Tower::zero() const {
    return RingElement(spec_, std::vector<Dyadic>(spec_->dimension()));
}

RingElement Tower::one() const {
    return dyadic(Dyadic(1));
}

RingElement Tower::integer(std::int64_t v) const {
    return dyadic(Dyadic(v));
}

RingElement Tower::dyadic(const Dyadic& v) const {
    std::vector<Dyadic> c(spec_->dimension());
    c[0] = v;
    return RingElement(spec_, std::move(c));
}

RingElement Tower::generator(std::size_t j) const {
    if (j >= spec_->size()) throw std::out_of_range("generator index out of range");
    return RingElement(spec_, unit_vector(spec_->dimension(), std::size_t{1} << j));
}

RingElement Tower::generator(std::string_view name) const {
    auto j = spec_->find_generator(name);
    if (!j) throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
    return generator(*j);
}

std::optional<std::size_t> Tower::find_root_generator(int k) const {
    const auto target = std::polar(1.0, 2.0 * std::numbers::pi / std::ldexp(1.0, k));
    for (std::size_t j = 0; j < spec_->size(); ++j) {
        if (std::abs(spec_->generator(j).float_embedding - target) > 1e-9) continue;
        if (power(generator(j), 1U << (k - 1)) == integer(-1)) return j;
    }
    return std::nullopt;
}

bool Tower::has_root_of_unity(int k) const {
    return k <= 1 || find_root_generator(k).has_value();
}

RingElement Tower::root_of_unity(int k, long power_of_root) const {
    if (k <= 0) return one();
    const long order = 1L << k;
    long p = ((power_of_root % order) + order) % order;
    if (k == 1) return p == 0 ? one() : integer(-1);
    auto j = find_root_generator(k);
    if (!j) {
        throw std::invalid_argument("tower cannot represent e^{2 pi i / 2^" + std::to_string(k) + "}");
    }
    return power(generator(*j), static_cast<unsigned>(p));
}

RingElement Tower::sqrt2() const {
    RingElement w = root_of_unity(3);
    return w + conj(w);
}

RingElement Tower::inv_sqrt2() const {
    return sqrt2().shifted(-1);
}

}  // namespace catalyst
