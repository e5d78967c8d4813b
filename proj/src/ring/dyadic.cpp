#include "catalyst/dyadic.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace catalyst {

namespace {

unsigned trailing_zeros(const BigInt& v) {
    return static_cast<unsigned>(boost::multiprecision::lsb(boost::multiprecision::abs(v)));
}

}  // namespace

Dyadic::Dyadic(BigInt numerator, std::uint32_t denom_log2)
    : num_(std::move(numerator)), exp_(denom_log2) {
    canonicalize();
}

Dyadic Dyadic::pow2(int e) {
    if (e >= 0) {
        return Dyadic(BigInt(1) << e, 0);
    }
    return Dyadic(BigInt(1), static_cast<std::uint32_t>(-e));
}

Dyadic Dyadic::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto parse_int = [](std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty integer");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw std::invalid_argument("bad integer '" + std::string(s) + "'");
        for (std::size_t i = start; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
                throw std::invalid_argument("bad integer '" + std::string(s) + "'");
            }
        }
        BigInt v(std::string(s.substr(start)));
        return s[0] == '-' ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Dyadic(parse_int(text), 0);
    }
    BigInt num = parse_int(trim(text.substr(0, slash)));
    BigInt den = parse_int(trim(text.substr(slash + 1)));
    if (den <= 0 || (den & (den - 1)) != 0) {
        throw std::invalid_argument("denominator of '" + std::string(text) + "' is not a power of two");
    }
    return Dyadic(std::move(num), static_cast<std::uint32_t>(boost::multiprecision::msb(den)));
}

void Dyadic::canonicalize() {
    if (num_.is_zero()) {
        exp_ = 0;
        return;
    }
    if (exp_ == 0) return;
    unsigned tz = trailing_zeros(num_);
    unsigned shift = tz < exp_ ? tz : exp_;
    if (shift > 0) {
        num_ >>= shift;
        exp_ -= shift;
    }
}

double Dyadic::to_double() const {
    return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_));
}

std::string Dyadic::to_string() const {
    std::string s = num_.str();
    if (exp_ == 0) return s;
    return s + "/" + (BigInt(1) << exp_).str();
}

Dyadic Dyadic::shifted(int e) const {
    if (num_.is_zero()) return *this;
    Dyadic out = *this;
    if (e >= 0) {
        auto ue = static_cast<std::uint32_t>(e);
        if (ue <= out.exp_) {
            out.exp_ -= ue;
        } else {
            out.num_ <<= (ue - out.exp_);
            out.exp_ = 0;
        }
    } else {
        out.exp_ += static_cast<std::uint32_t>(-e);
        out.canonicalize();
    }
    return out;
}

Dyadic Dyadic::abs() const {
    Dyadic out = *this;
    if (out.num_.sign() < 0) out.num_ = -out.num_;
    return out;
}

Dyadic Dyadic::operator-() const {
    Dyadic out = *this;
    out.num_ = -out.num_;
    return out;
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
    if (other.num_.is_zero()) return *this;
    if (num_.is_zero()) return *this = other;
    if (exp_ == other.exp_) {
        num_ += other.num_;
    } else if (exp_ > other.exp_) {
        num_ += other.num_ << (exp_ - other.exp_);
    } else {
        num_ <<= (other.exp_ - exp_);
        num_ += other.num_;
        exp_ = other.exp_;
    }
    canonicalize();
    return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& other) {
    return *this += -other;
}

Dyadic& Dyadic::operator*=(const Dyadic& other) {
    num_ *= other.num_;
    exp_ += other.exp_;
    canonicalize();  // an integer factor may carry powers of two
    return *this;
}

bool operator<(const Dyadic& a, const Dyadic& b) {
    return (a - b).sign() < 0;
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.to_string();
}

}  // namespace catalyst
