#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace catalyst {

using BigInt = boost::multiprecision::cpp_int;

/// Element of Z[1/2]: numerator / 2^denom_log2.
///
/// Always canonical: the numerator is odd, or it is zero and the exponent is
/// zero. Equality is therefore field-wise.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Dyadic(BigInt numerator, std::uint32_t denom_log2);

    /// 2^e for any integer e.
    static Dyadic pow2(int e);

    /// Accepts "n", "-n", "n/d" with d a power of two.
    static Dyadic parse(std::string_view text);

    const BigInt& numerator() const { return num_; }
    std::uint32_t denom_log2() const { return exp_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return exp_ == 0 && num_ == 1; }
    bool is_minus_one() const { return exp_ == 0 && num_ == -1; }
    int sign() const { return num_.sign(); }

    double to_double() const;
    std::string to_string() const;

    /// Multiplies by 2^e.
    Dyadic shifted(int e) const;
    Dyadic abs() const;

    Dyadic operator-() const;
    Dyadic& operator+=(const Dyadic& other);
    Dyadic& operator-=(const Dyadic& other);
    Dyadic& operator*=(const Dyadic& other);

    friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
    friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend bool operator<(const Dyadic& a, const Dyadic& b);

private:
    void canonicalize();

    BigInt num_ = 0;
    std::uint32_t exp_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

}  // namespace catalyst
