#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace surflift {

/* Arbitrary-precision signed integer, base 2^32 limbs.  Only the operations
 * needed for exact rational bookkeeping: ring arithmetic, divmod, gcd,
 * powers, comparisons, decimal rendering. */
class BigInt {
public:
    BigInt() = default;
    explicit BigInt(long long v);

    static BigInt pow_ll(long long base, unsigned long exp);
    BigInt pow(unsigned long exp) const;

    bool is_zero() const { return sign_ == 0; }
    int signum() const { return sign_; }
    BigInt abs() const;
    BigInt neg() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    /* Truncated division: q = trunc(a/b), r = a - q*b (sign of r follows a). */
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    static BigInt gcd(const BigInt& a, const BigInt& b);

    /* Total order. */
    static int cmp(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    /* Value if it fits in long long, else throws. */
    long long to_ll() const;
    bool fits_ll() const;

    std::string str() const;

private:
    int sign_ = 0;                 // -1, 0, +1
    std::vector<uint32_t> mag_;    // little-endian, no leading zero limbs

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b); // a >= b
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
    static uint32_t divmod_small(std::vector<uint32_t>& u, uint32_t d); // in place, returns remainder
    static void trim(std::vector<uint32_t>& m);
    BigInt with_sign(int s) const;
};

/* Exact rational number, always reduced, denominator > 0. */
class BigRational {
public:
    BigRational() : num_(0), den_(1) {}
    explicit BigRational(long long v) : num_(v), den_(1) {}
    BigRational(const BigInt& num, const BigInt& den);
    BigRational(long long num, long long den) : BigRational(BigInt(num), BigInt(den)) {}

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    int signum() const { return num_.signum(); }
    bool is_integer() const;

    friend BigRational operator+(const BigRational& a, const BigRational& b);
    friend BigRational operator-(const BigRational& a, const BigRational& b);
    friend BigRational operator*(const BigRational& a, const BigRational& b);

    static int cmp(const BigRational& a, const BigRational& b);
    friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigRational& a, const BigRational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigRational& a, const BigRational& b) { return cmp(a, b) >= 0; }

    double to_double() const;
    std::string str() const;   // "p/q", or "p" when integral

private:
    BigInt num_, den_;
    void reduce();
};

} // namespace surflift
